#include "liftgeom/liftcert.hpp"

#include "liftgeom/errors.hpp"

#include <algorithm>
#include <set>

namespace liftgeom {

std::string to_string(Conclusion c)
{
    switch (c) {
    case Conclusion::Unknown:
        return "unknown";
    case Conclusion::LiftableW2:
        return "liftable-W2(k)";
    case Conclusion::LiftableW:
        return "liftable-W(k)";
    case Conclusion::StronglyLiftableW2:
        return "strongly-liftable-W2(k)";
    case Conclusion::StronglyLiftableW:
        return "strongly-liftable-W(k)";
    }
    return "unknown";
}

Conclusion parse_conclusion(std::string_view text)
{
    for (auto c : {Conclusion::Unknown, Conclusion::LiftableW2, Conclusion::LiftableW, Conclusion::StronglyLiftableW2,
                   Conclusion::StronglyLiftableW})
        if (to_string(c) == text)
            return c;
    throw InputError("unknown conclusion \"" + std::string(text) + "\"");
}

namespace {

bool is_strong(Conclusion c)
{
    return c == Conclusion::StronglyLiftableW2 || c == Conclusion::StronglyLiftableW;
}

bool over_w(Conclusion c)
{
    return c == Conclusion::LiftableW || c == Conclusion::StronglyLiftableW;
}

} // namespace

bool implies(Conclusion stronger, Conclusion weaker)
{
    if (weaker == Conclusion::Unknown)
        return true;
    if (stronger == Conclusion::Unknown)
        return false;
    if (is_strong(weaker) && !is_strong(stronger))
        return false;
    if (over_w(weaker) && !over_w(stronger))
        return false;
    return true;
}

namespace {

void check_depth(int depth)
{
    if (depth > max_description_depth)
        throw InputError("variety description nested deeper than " + std::to_string(max_description_depth));
}

const VarietyDescription& deref(const VarietyPtr& p)
{
    if (!p)
        throw InputError("variety description has an empty inner variety");
    return *p;
}

std::optional<int> dimension_at(const VarietyDescription& v, int depth)
{
    check_depth(depth);
    return std::visit(
        [&](const auto& x) -> std::optional<int> {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, AffineSpace> || std::is_same_v<T, ProjectiveSpace>) {
                if (x.n < 1)
                    throw InputError("space dimension must be >= 1");
                return x.n;
            } else if constexpr (std::is_same_v<T, SmoothProjectiveCurve>) {
                if (x.genus < 0)
                    throw InputError("curve genus must be >= 0");
                return 1;
            } else if constexpr (std::is_same_v<T, CompleteIntersectionPicardOne>) {
                if (x.n < 1)
                    throw InputError("ambient dimension must be >= 1");
                if (x.multidegrees.empty() || x.multidegrees.size() >= static_cast<std::size_t>(x.n))
                    throw InputError("complete intersection needs between 1 and n-1 equations");
                for (int e : x.multidegrees)
                    if (e < 1)
                        throw InputError("multidegrees must be >= 1");
                return x.n - static_cast<int>(x.multidegrees.size());
            } else if constexpr (std::is_same_v<T, Toric>) {
                make_fan(x.fan.dim, x.fan.rays, x.fan.max_cones);
                return x.fan.dim;
            } else if constexpr (std::is_same_v<T, BlowupAtPoint> || std::is_same_v<T, CyclicCoverOf>
                                 || std::is_same_v<T, KummerCoverOf>) {
                return dimension_at(deref(x.inner), depth + 1);
            } else {
                return std::nullopt;
            }
        },
        v.value);
}

std::string join_ints(const std::vector<int>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

// The fan a description denotes when it is a bare toric variety.
std::optional<Fan> toric_fan(const VarietyDescription& v)
{
    if (const auto* t = std::get_if<Toric>(&v.value))
        return t->fan;
    if (const auto* ps = std::get_if<ProjectiveSpace>(&v.value))
        return projective_space_fan(ps->n);
    return std::nullopt;
}

std::string fan_subject(const Fan& fan)
{
    return "toric variety of dimension " + std::to_string(fan.dim) + " with " + std::to_string(fan.rays.size())
           + " rays";
}

struct Result {
    Conclusion conclusion = Conclusion::Unknown;
    std::optional<DerivationNode> node;
};

Result unknown() { return {}; }

Result leaf(const char* rule, std::string subject)
{
    return {Conclusion::StronglyLiftableW, DerivationNode{rule, Conclusion::StronglyLiftableW, std::move(subject), {}}};
}

Result classify_at(const VarietyDescription& v, int depth);

// Prop5.6 applied along a chain of point blow-ups, without the surface wrapper.
Result blowup_chain(const BlowupAtPoint& b, int depth)
{
    check_depth(depth);
    const auto& inner = deref(b.inner);
    auto dim = dimension_at(inner, depth + 1);
    Result below = std::holds_alternative<BlowupAtPoint>(inner.value)
                       ? blowup_chain(std::get<BlowupAtPoint>(inner.value), depth + 1)
                       : classify_at(inner, depth + 1);
    if (!dim || *dim < 2 || !is_strong(below.conclusion))
        return unknown();
    DerivationNode node{"Prop5.6", below.conclusion, "blow-up of (" + below.node->subject + ") at a point",
                        {*below.node}};
    return {below.conclusion, std::move(node)};
}

// The variety at the bottom of a chain of point blow-ups.
const VarietyDescription& chain_base(const BlowupAtPoint& b, int depth)
{
    check_depth(depth);
    const auto& inner = deref(b.inner);
    if (const auto* next = std::get_if<BlowupAtPoint>(&inner.value))
        return chain_base(*next, depth + 1);
    return inner;
}

// P^2 or a Hirzebruch surface; every smooth complete fan in the plane with
// three or four rays is one of these.
bool minimal_rational_surface(const VarietyDescription& v)
{
    if (const auto* ps = std::get_if<ProjectiveSpace>(&v.value))
        return ps->n == 2;
    if (const auto* t = std::get_if<Toric>(&v.value))
        return t->fan.dim == 2 && t->fan.rays.size() <= 4 && validate_fan(t->fan).ok();
    return false;
}

Result classify_cyclic(const CyclicCoverOf& c, int depth)
{
    const auto& inner = deref(c.inner);
    Result below = classify_at(inner, depth + 1);
    auto fan = toric_fan(inner);
    if (!fan || !below.node || below.conclusion != Conclusion::StronglyLiftableW)
        return unknown();
    if (!fans_isomorphic(*fan, c.plan.base))
        return unknown();
    ToricVariety x(c.plan.base);
    if (!x.projective())
        return unknown();
    auto checks = check_cyclic_cover(x, c.plan.line_bundle, c.plan.n, c.plan.branch, PrimeP(c.plan.p), c.plan.evidence);
    if (!std::all_of(checks.begin(), checks.end(), [](const HypothesisCheck& h) { return h.passed; }))
        return unknown();
    DerivationNode node{"Cor5.13", Conclusion::LiftableW,
                        "cyclic cover of degree " + std::to_string(c.plan.n) + " over (" + below.node->subject + ")",
                        {*below.node}};
    return {Conclusion::LiftableW, std::move(node)};
}

Result classify_kummer(const KummerCoverOf& k, int depth)
{
    const auto& inner = deref(k.inner);
    Result below = classify_at(inner, depth + 1);
    auto fan = toric_fan(inner);
    if (!fan || !below.node || !implies(below.conclusion, Conclusion::StronglyLiftableW2))
        return unknown();
    if (!fans_isomorphic(*fan, k.plan.base))
        return unknown();
    if (!check_kummer_hypotheses(frac_part(k.plan.divisor), PrimeP(k.plan.p)).pass)
        return unknown();
    DerivationNode node{"Thm3.1iii", Conclusion::LiftableW2,
                        "Kummer cover with m = " + k.plan.m.get_str() + " over (" + below.node->subject + ")",
                        {*below.node}};
    return {Conclusion::LiftableW2, std::move(node)};
}

Result classify_at(const VarietyDescription& v, int depth)
{
    auto dim = dimension_at(v, depth);
    (void)dim;
    return std::visit(
        [&](const auto& x) -> Result {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, AffineSpace>) {
                return leaf("Thm5.8i", "A^" + std::to_string(x.n));
            } else if constexpr (std::is_same_v<T, ProjectiveSpace>) {
                return leaf("Thm5.8i", "P^" + std::to_string(x.n));
            } else if constexpr (std::is_same_v<T, SmoothProjectiveCurve>) {
                return leaf("Thm5.8i", "smooth projective curve of genus " + std::to_string(x.genus));
            } else if constexpr (std::is_same_v<T, CompleteIntersectionPicardOne>) {
                return leaf("Thm5.8ii", "complete intersection of multidegree (" + join_ints(x.multidegrees)
                                            + ") in P^" + std::to_string(x.n));
            } else if constexpr (std::is_same_v<T, Toric>) {
                if (!validate_fan(x.fan).ok())
                    return unknown();
                return leaf("Thm5.10", fan_subject(x.fan));
            } else if constexpr (std::is_same_v<T, BlowupAtPoint>) {
                Result chain = blowup_chain(x, depth);
                if (chain.node && *dim == 2 && minimal_rational_surface(chain_base(x, depth))) {
                    DerivationNode node{"Thm5.11", Conclusion::StronglyLiftableW,
                                        "rational surface " + chain.node->subject, {*chain.node}};
                    return {Conclusion::StronglyLiftableW, std::move(node)};
                }
                return chain;
            } else if constexpr (std::is_same_v<T, CyclicCoverOf>) {
                return classify_cyclic(x, depth);
            } else if constexpr (std::is_same_v<T, KummerCoverOf>) {
                return classify_kummer(x, depth);
            } else {
                return unknown();
            }
        },
        v.value);
}

Conclusion replay_at(const DerivationNode& node, int depth)
{
    if (depth > max_description_depth)
        throw ConsistencyError("derivation deeper than " + std::to_string(max_description_depth));
    std::vector<Conclusion> below;
    for (const auto& c : node.children)
        below.push_back(replay_at(c, depth + 1));
    auto fail = [&](const std::string& why) -> Conclusion {
        throw ConsistencyError("rule " + node.rule + " misapplied: " + why);
    };

    Conclusion got = Conclusion::Unknown;
    if (node.rule == "Thm5.8i" || node.rule == "Thm5.8ii" || node.rule == "Thm5.10") {
        if (!below.empty())
            return fail("base rule with premises");
        got = Conclusion::StronglyLiftableW;
    } else if (node.rule == "Prop5.6") {
        if (below.size() != 1 || !is_strong(below[0]))
            return fail("needs one strongly liftable premise");
        got = below[0];
    } else if (node.rule == "Thm5.11") {
        if (below.size() != 1 || node.children[0].rule != "Prop5.6" || below[0] != Conclusion::StronglyLiftableW)
            return fail("needs a blow-up chain strongly liftable over W(k)");
        got = Conclusion::StronglyLiftableW;
    } else if (node.rule == "Cor5.13") {
        const auto& base = node.children.empty() ? std::string() : node.children[0].rule;
        if (below.size() != 1 || (base != "Thm5.10" && base != "Thm5.8i")
            || below[0] != Conclusion::StronglyLiftableW)
            return fail("needs a smooth projective toric base");
        got = Conclusion::LiftableW;
    } else if (node.rule == "Thm3.1iii") {
        if (below.size() != 1 || !implies(below[0], Conclusion::StronglyLiftableW2))
            return fail("needs a base strongly liftable over W2(k)");
        got = Conclusion::LiftableW2;
    } else {
        throw ConsistencyError("unknown rule \"" + node.rule + "\"");
    }
    if (got != node.conclusion)
        throw ConsistencyError("rule " + node.rule + " licenses " + to_string(got) + ", node claims "
                               + to_string(node.conclusion));
    return got;
}

} // namespace

std::optional<int> dimension(const VarietyDescription& v)
{
    return dimension_at(v, 0);
}

Certificate classify(const VarietyDescription& v)
{
    Result r = classify_at(v, 0);
    if (!r.node)
        return {};
    return {r.conclusion, std::move(r.node)};
}

Conclusion replay(const DerivationNode& node)
{
    return replay_at(node, 0);
}

std::string to_string(SurjectivityCertificate::Status s)
{
    switch (s) {
    case SurjectivityCertificate::Status::Surjective:
        return "surjective";
    case SurjectivityCertificate::Status::Vacuous:
        return "vacuous";
    case SurjectivityCertificate::Status::Inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

SurjectivityCertificate restriction_surjectivity(const ToricVariety& x, const ToricDivisor& d, int levels)
{
    require_divisor_on(x, d);
    if (!d.is_integral())
        throw InputError("restriction surjectivity needs an integral divisor");
    if (levels < 1)
        throw InputError("number of lifting levels must be >= 1");

    SurjectivityCertificate cert;
    cert.divisor = d;
    auto report = cohomology(x, d);
    cert.h0 = report.dims[0];
    cert.h1 = report.dims.size() > 1 ? report.dims[1] : 0;
    cert.basis = sections(x, d);
    cert.witnesses_agree = static_cast<std::int64_t>(cert.basis.size()) == cert.h0;
    if (cert.h0 == 0) {
        cert.status = SurjectivityCertificate::Status::Vacuous;
        cert.flagged = true;
    } else if (cert.h1 == 0) {
        cert.status = SurjectivityCertificate::Status::Surjective;
    } else {
        return cert;
    }
    // With H^1 = 0 each W_{n+1} -> W_n step is onto, so lengths add up.
    for (int n = 1; n <= levels; ++n)
        cert.steps.push_back({n, static_cast<std::int64_t>(n) * cert.h0});
    return cert;
}

SweepReport strong_liftability_sweep(const ToricVariety& x, int bound)
{
    if (bound < 1)
        throw InputError("sweep bound must be >= 1");
    double points = 1;
    for (std::size_t r = 0; r < x.num_rays(); ++r)
        points *= bound + 1;
    if (points > 2e6)
        throw InputError("sweep over " + std::to_string(x.num_rays()) + " rays with bound " + std::to_string(bound)
                         + " is too large");

    SweepReport out;
    out.bound = bound;
    std::set<RationalVector> seen;
    IntVector a(x.num_rays(), 0);
    while (true) {
        std::size_t k = a.size();
        while (k-- > 0) {
            if (a[k] < bound) {
                ++a[k];
                break;
            }
            a[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1))
            break;
        auto d = ToricDivisor::from_ints(a);
        if (!seen.insert(normalized_representative(x, d).coeffs()).second)
            continue;
        ++out.classes;
        auto cert = restriction_surjectivity(x, d);
        if (cert.status == SurjectivityCertificate::Status::Inconclusive)
            out.inconclusive.push_back(d);
        else
            ++out.certified;
    }
    return out;
}

VanishingReport kv_vanishing(const ToricVariety& x, const ToricDivisor& d, PrimeP p, unsigned denom_bound)
{
    x.require_projective();
    require_divisor_on(x, d);
    const auto pv = p.value();
    if (!is_ample(x, d))
        throw HypothesisViolation("D is not ample", {{"D ample", false, "support function not strictly convex"}});

    VanishingReport rep;
    rep.divisor = d;
    rep.used = d;
    rep.p = pv;
    rep.dim = x.dim();
    bool bad_denominator = std::any_of(d.coeffs().begin(), d.coeffs().end(), [&](const Rational& q) {
        return mpz_divisible_ui_p(q.get_den_mpz_t(), pv) != 0;
    });
    if (bad_denominator) {
        rep.used = ToricDivisor::from_qdivisor(perturb_coeffs(d.to_qdivisor(), p, denom_bound), x.num_rays());
        rep.perturbed = true;
        if (!is_ample(x, rep.used))
            throw HypothesisViolation("perturbed divisor is no longer ample",
                                      {{"D ample", true, ""}, {"perturbed D ample", false, "ampleness lost"}});
    }

    RationalVector up;
    for (const auto& q : rep.used.coeffs())
        up.emplace_back(ceil(q));
    rep.adjoint = canonical_divisor(x) + ToricDivisor(std::move(up));
    rep.dims = cohomology(x, rep.adjoint).dims;
    rep.threshold = rep.dim - std::min<int>(rep.dim, static_cast<int>(std::min<std::uint32_t>(pv, 1u << 20)));
    rep.pass = true;
    for (int i = rep.threshold + 1; i <= rep.dim; ++i)
        if (rep.dims[static_cast<std::size_t>(i)] != 0)
            rep.pass = false;
    return rep;
}

} // namespace liftgeom
