#include "liftgeom/cover.hpp"

#include <algorithm>
#include <numeric>

namespace liftgeom {

std::string describe(const SmoothnessEvidence& e)
{
    switch (e.kind) {
    case SmoothnessEvidence::Kind::TorusInvariantDisjoint:
        return "torus-invariant-disjoint";
    case SmoothnessEvidence::Kind::Fermat:
        return "fermat(" + std::to_string(e.n) + "," + std::to_string(e.degree) + "," + std::to_string(e.p) + ")";
    case SmoothnessEvidence::Kind::UserAsserted:
        return "user-asserted: " + e.note;
    }
    return {};
}

bool invariant_divisor_smooth(const ToricVariety& x, const std::vector<std::size_t>& rays)
{
    for (auto r : rays)
        if (r >= x.num_rays())
            throw InputError("unknown ray " + std::to_string(r));
    for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t j = i + 1; j < rays.size(); ++j)
            if (rays[i] == rays[j] || x.rays_share_cone(rays[i], rays[j]))
                return false;
    return true;
}

bool fermat_smooth(int n, std::int64_t degree, PrimeP p)
{
    if (n < 1)
        throw InputError("Fermat hypersurface needs n >= 1");
    if (degree < 1)
        throw InputError("Fermat hypersurface needs degree >= 1");
    // Partials N x_i^{N-1} have a common projective zero iff p | N.
    return degree % static_cast<std::int64_t>(p.value()) != 0;
}

namespace {

std::vector<std::size_t> support(const ToricDivisor& d)
{
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0)
            s.push_back(i);
    return s;
}

// Degree of a class on a fan isomorphic to P^n, where every D_rho ~ H.
std::optional<Rational> projective_degree(const Fan& fan, const ToricDivisor& d)
{
    if (static_cast<int>(fan.rays.size()) != fan.dim + 1 || !fans_isomorphic(fan, projective_space_fan(fan.dim)))
        return std::nullopt;
    Rational s = 0;
    for (const auto& c : d.coeffs())
        s += c;
    return s;
}

std::string first_failure(const std::vector<HypothesisCheck>& checks)
{
    for (const auto& c : checks)
        if (!c.passed)
            return c.detail;
    return {};
}

} // namespace

std::vector<HypothesisCheck> check_cyclic_cover(const ToricVariety& x, const ToricDivisor& l, std::int64_t n,
                                                const ToricDivisor& d, PrimeP p, const SmoothnessEvidence& evidence)
{
    require_divisor_on(x, l);
    require_divisor_on(x, d);
    l.integral_coeffs();
    d.integral_coeffs();

    std::vector<HypothesisCheck> checks;
    checks.push_back({"N >= 1", n >= 1, n >= 1 ? "N = " + std::to_string(n) : "N must be positive"});

    bool coprime = n >= 1 && n % static_cast<std::int64_t>(p.value()) != 0;
    checks.push_back({"gcd(N,p) = 1", coprime,
                      coprime ? "p = " + std::to_string(p.value()) + " does not divide N"
                              : "p divides N"});

    bool effective = d.is_effective();
    checks.push_back({"D effective", effective, effective ? "all coefficients >= 0" : "D is not effective"});

    bool classes = n >= 1 && linear_equivalent(x, Rational(n) * l, d).has_value();
    checks.push_back({"N*[L] = [D]", classes, classes ? "N*L - D is principal" : "N*[L] != [D]"});

    HypothesisCheck smooth{"Sing(D_red) empty", false, {}};
    switch (evidence.kind) {
    case SmoothnessEvidence::Kind::TorusInvariantDisjoint:
        smooth.passed = invariant_divisor_smooth(x, support(d));
        smooth.detail = smooth.passed ? "components of D_red are pairwise disjoint invariant divisors"
                                      : "components of D_red meet";
        break;
    case SmoothnessEvidence::Kind::Fermat: {
        std::vector<std::string> why;
        if (evidence.n != x.dim())
            why.push_back("evidence dimension " + std::to_string(evidence.n) + " != " + std::to_string(x.dim()));
        auto degree = projective_degree(x.fan(), d);
        if (!degree)
            why.push_back("base is not a projective space");
        else if (*degree != Rational(evidence.degree))
            why.push_back("evidence degree " + std::to_string(evidence.degree) + " != deg D = " + to_string(*degree));
        if (evidence.p != p.value())
            why.push_back("evidence characteristic " + std::to_string(evidence.p) + " != p");
        else if (evidence.n < 1 || evidence.degree < 1 || !fermat_smooth(evidence.n, evidence.degree, p))
            why.push_back("Fermat hypersurface is singular in characteristic p");
        smooth.passed = why.empty();
        if (smooth.passed)
            smooth.detail = "smooth Fermat member " + describe(evidence);
        else
            for (const auto& w : why)
                smooth.detail += (smooth.detail.empty() ? "" : "; ") + w;
        break;
    }
    case SmoothnessEvidence::Kind::UserAsserted:
        smooth.passed = !evidence.note.empty();
        smooth.detail = smooth.passed ? "asserted by user: " + evidence.note : "missing smoothness evidence";
        break;
    }
    checks.push_back(std::move(smooth));
    return checks;
}

CyclicCoverPlan plan_cyclic_cover(const ToricVariety& x, const ToricDivisor& l, std::int64_t n,
                                  const ToricDivisor& d, PrimeP p, const SmoothnessEvidence& evidence)
{
    auto checks = check_cyclic_cover(x, l, n, d, p, evidence);
    if (auto why = first_failure(checks); !why.empty())
        throw HypothesisViolation(why, checks);
    return CyclicCoverPlan{x.fan(), l, d, n, p.value(), evidence, n, "Z/" + std::to_string(n), std::move(checks)};
}

std::string to_string(HurwitzReport::Verdict v)
{
    switch (v) {
    case HurwitzReport::Verdict::Ample:
        return "ample";
    case HurwitzReport::Verdict::Trivial:
        return "trivial-pullback";
    case HurwitzReport::Verdict::AntiAmple:
        return "anti-ample";
    case HurwitzReport::Verdict::Indefinite:
        return "indefinite";
    }
    return {};
}

HurwitzReport hurwitz_canonical(const CyclicCoverPlan& plan)
{
    ToricVariety x(plan.base);
    if (plan.n < 1 || plan.line_bundle.size() != x.num_rays() || plan.branch.size() != x.num_rays())
        throw InputError("invalid cyclic cover plan");

    HurwitzReport report;
    if (plan.evidence.kind == SmoothnessEvidence::Kind::TorusInvariantDisjoint) {
        RationalVector ind(x.num_rays(), Rational(0));
        for (auto r : support(plan.branch))
            ind[r] = 1;
        report.reduced_branch = ToricDivisor(std::move(ind));
    } else {
        // the Fermat (or asserted) member is itself reduced in the class of D
        report.reduced_branch = plan.branch;
    }
    Rational weight(plan.n - 1, plan.n);
    weight.canonicalize();
    report.canonical_class = canonical_divisor(x) + weight * report.reduced_branch;
    report.degree = projective_degree(plan.base, report.canonical_class);

    using V = HurwitzReport::Verdict;
    if (report.degree) {
        report.verdict = *report.degree > 0 ? V::Ample : *report.degree == 0 ? V::Trivial : V::AntiAmple;
    } else {
        ToricDivisor zero(RationalVector(x.num_rays(), Rational(0)));
        if (is_ample(x, report.canonical_class))
            report.verdict = V::Ample;
        else if (linear_equivalent(x, report.canonical_class, zero))
            report.verdict = V::Trivial;
        else if (is_ample(x, Rational(-1) * report.canonical_class))
            report.verdict = V::AntiAmple;
        else
            report.verdict = V::Indefinite;
    }
    report.general_type = report.verdict == V::Ample;
    return report;
}

namespace {

ToricDivisor prime_divisor(std::size_t num_rays, std::size_t r)
{
    RationalVector a(num_rays, Rational(0));
    a[r] = 1;
    return ToricDivisor(std::move(a));
}

// Candidate classes vanishing on cone 0, by increasing L1 norm then lexicographically.
std::vector<IntVector> scan_candidates(const ToricVariety& x, int bound)
{
    std::vector<std::size_t> free;
    const auto& cone0 = x.fan().max_cones[0];
    for (std::size_t r = 0; r < x.num_rays(); ++r)
        if (!std::binary_search(cone0.begin(), cone0.end(), static_cast<int>(r)))
            free.push_back(r);
    std::vector<IntVector> out;
    IntVector v(free.size(), -bound);
    while (true) {
        IntVector a(x.num_rays(), 0);
        for (std::size_t k = 0; k < free.size(); ++k)
            a[free[k]] = v[k];
        out.push_back(a);
        std::size_t k = free.size();
        while (k-- > 0) {
            if (v[k] < bound) {
                ++v[k];
                break;
            }
            v[k] = -bound;
        }
        if (k == static_cast<std::size_t>(-1))
            break;
    }
    auto norm = [](const IntVector& a) {
        std::int64_t s = 0;
        for (auto c : a)
            s += c < 0 ? -c : c;
        return s;
    };
    std::stable_sort(out.begin(), out.end(), [&](const IntVector& a, const IntVector& b) {
        auto na = norm(a), nb = norm(b);
        return na != nb ? na < nb : a < b;
    });
    return out;
}

} // namespace

KummerCoverPlan plan_kummer_cover(const ToricVariety& x, const QDivisor& d, PrimeP p, const Integer& multiplier,
                                  int scan_bound)
{
    x.require_projective();
    ToricDivisor::from_qdivisor(d, x.num_rays()); // label check
    if (multiplier < 1 || mpz_divisible_ui_p(multiplier.get_mpz_t(), p.value()))
        throw InputError("multiplier must be a positive integer prime to p");
    if (scan_bound < 1)
        throw InputError("scan bound must be >= 1");

    KummerCoverPlan plan;
    plan.base = x.fan();
    plan.divisor = d;
    plan.p = p.value();
    plan.multiplier = multiplier;

    auto report = check_kummer_hypotheses(d, p);
    for (const auto& c : report.components) {
        std::string frac = c.a.get_str() + "/" + c.b.get_str();
        plan.checks.push_back({"component " + c.label + ": 0 < a < b", c.proper, frac});
        plan.checks.push_back({"component " + c.label + ": gcd(a,b) = 1", c.coprime, frac});
        plan.checks.push_back({"component " + c.label + ": p does not divide b", c.prime_to_p,
                               c.prime_to_p ? frac : "p divides the denominator of " + frac});
    }
    if (!report.pass)
        throw HypothesisViolation(first_failure(plan.checks), plan.checks);

    Integer m = 1;
    for (const auto& c : report.components) {
        plan.components.push_back({c.label, c.a, c.b});
        m = lcm(m, c.b);
    }
    m *= multiplier;
    plan.m = m;
    bool integral = frac_part(Rational(m) * frac_part(d)).empty();
    plan.checks.push_back({"m<D> integral", integral, "m = " + m.get_str()});
    bool prime_to_p = !mpz_divisible_ui_p(m.get_mpz_t(), p.value());
    plan.checks.push_back({"p does not divide m", prime_to_p, "m = " + m.get_str()});
    if (!integral || !prime_to_p)
        throw ConsistencyError("m = lcm of denominators violates its own invariants");

    const auto dim = static_cast<std::size_t>(x.dim());
    plan.member_count = plan.components.size() * dim;
    mpz_pow_ui(plan.degree_bound.get_mpz_t(), m.get_mpz_t(), plan.member_count);
    plan.group_bound = "(Z/" + m.get_str() + ")^" + std::to_string(plan.member_count);
    if (plan.components.empty())
        return plan;

    for (const auto& cand : scan_candidates(x, scan_bound)) {
        auto big_m = ToricDivisor::from_ints(cand);
        if (!is_ample(x, big_m))
            continue;
        bool all = true;
        for (const auto& c : plan.components) {
            auto di = prime_divisor(x.num_rays(), std::stoul(c.label));
            if (!is_ample(x, Rational(m) * big_m - di)) {
                all = false;
                break;
            }
        }
        if (!all)
            continue;
        plan.very_ample = big_m;
        break;
    }
    if (!plan.very_ample) {
        plan.checks.push_back({"mM - D_i ample for all i", false,
                               "no ample M within scan bound " + std::to_string(scan_bound)});
        throw HypothesisViolation("no ample M with mM - D_i ample within scan bound " + std::to_string(scan_bound),
                                  plan.checks);
    }
    plan.checks.push_back({"mM - D_i ample for all i", true, "M found by scan (ample implies very ample)"});
    for (const auto& c : plan.components) {
        auto di = prime_divisor(x.num_rays(), std::stoul(c.label));
        for (std::size_t k = 1; k <= dim; ++k)
            plan.members.push_back({c.label, static_cast<int>(k), Rational(m) * *plan.very_ample - di});
    }
    return plan;
}

IntegralityReport pullback_divisor(const KummerCoverPlan& plan, const QDivisor& d)
{
    IntegralityReport report;
    for (const auto& [label, value] : d.coeffs()) {
        bool branch = std::any_of(plan.components.begin(), plan.components.end(),
                                  [&](const auto& c) { return c.label == label; });
        if (!branch && !is_integral(value))
            throw InputError("component " + label + " is not in the plan");
        IntegralityReport::Entry e;
        e.label = label;
        e.coefficient = value;
        e.ramification = branch ? plan.m : Integer(1);
        e.pulled_back = value * Rational(e.ramification);
        e.integral = is_integral(e.pulled_back);
        report.integral = report.integral && e.integral;
        report.entries.push_back(std::move(e));
    }
    return report;
}

} // namespace liftgeom
