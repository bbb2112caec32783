#include "fan_internal.hpp"

#include "liftgeom/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace liftgeom {

namespace detail {

std::optional<IntMatrix> unimodular_dual_basis(const Fan& fan, const std::vector<int>& cone)
{
    const auto d = static_cast<std::size_t>(fan.dim);
    if (cone.size() != d)
        return std::nullopt;
    IntMatrix v;
    for (int r : cone)
        v.push_back(fan.rays[static_cast<std::size_t>(r)]);
    Integer det = determinant(v);
    if (det != 1 && det != -1)
        return std::nullopt;
    RationalMatrix vq(d, RationalVector(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            vq[i][j] = Rational(static_cast<long>(v[i][j]));
    IntMatrix duals(d, IntVector(d));
    for (std::size_t j = 0; j < d; ++j) {
        RationalVector e(d, Rational(0));
        e[j] = 1;
        auto u = solve_square(vq, e);
        if (!u)
            throw ConsistencyError("unimodular cone with singular generator matrix");
        for (std::size_t k = 0; k < d; ++k) {
            if (!is_integral((*u)[k]))
                throw ConsistencyError("unimodular cone with non-integral dual basis");
            duals[j][k] = (*u)[k].get_num().get_si();
        }
    }
    return duals;
}

std::optional<std::vector<ToricVariety::Wall>>
pair_facets(const Fan& fan, const std::vector<IntMatrix>& duals, std::vector<std::string>& problems)
{
    // facet (as sorted ray list) -> (cone, position of the removed generator)
    std::map<std::vector<int>, std::vector<std::pair<std::size_t, std::size_t>>> facets;
    for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
        const auto& cone = fan.max_cones[c];
        for (std::size_t j = 0; j < cone.size(); ++j) {
            std::vector<int> facet;
            for (std::size_t k = 0; k < cone.size(); ++k)
                if (k != j)
                    facet.push_back(cone[k]);
            facets[facet].emplace_back(c, j);
        }
    }
    bool ok = true;
    std::vector<ToricVariety::Wall> walls;
    for (const auto& [facet, owners] : facets) {
        if (owners.size() != 2) {
            std::string f;
            for (int r : facet)
                f += (f.empty() ? "" : ",") + std::to_string(r);
            problems.push_back("facet {" + f + "} lies in " + std::to_string(owners.size())
                               + " maximal cone(s), expected 2");
            ok = false;
            continue;
        }
        for (int side = 0; side < 2; ++side) {
            auto [c, j] = owners[static_cast<std::size_t>(side)];
            auto [c2, j2] = owners[static_cast<std::size_t>(1 - side)];
            auto opposite = static_cast<std::size_t>(fan.max_cones[c2][j2]);
            // u_j vanishes on the facet and is positive on the generator it drops.
            if (dot(duals[c][j], fan.rays[opposite]) >= 0) {
                if (side == 0) {
                    problems.push_back("maximal cones " + std::to_string(c) + " and "
                                       + std::to_string(c2) + " lie on the same side of a shared facet");
                    ok = false;
                }
                continue;
            }
            walls.push_back({c, c2, opposite});
        }
    }
    if (!ok)
        return std::nullopt;
    std::sort(walls.begin(), walls.end(), [](const auto& a, const auto& b) {
        return std::tie(a.cone, a.other_cone, a.opposite_ray) < std::tie(b.cone, b.other_cone, b.opposite_ray);
    });
    return walls;
}

IntVector wall_form(const Fan& fan, const IntMatrix& dual, std::size_t cone, std::size_t opposite_ray)
{
    IntVector c(fan.rays.size(), 0);
    c[opposite_ray] += 1;
    const auto& rays = fan.max_cones[cone];
    for (std::size_t i = 0; i < rays.size(); ++i)
        c[static_cast<std::size_t>(rays[i])] -= dot(dual[i], fan.rays[opposite_ray]);
    return c;
}

} // namespace detail

using detail::dot;

Fan make_fan(int dim, std::vector<IntVector> rays, std::vector<std::vector<int>> max_cones)
{
    if (dim < 1)
        throw InputError("fan dimension must be >= 1");
    if (rays.size() > max_rays)
        throw InputError("at most " + std::to_string(max_rays) + " rays are supported");
    for (std::size_t i = 0; i < rays.size(); ++i) {
        if (rays[i].size() != static_cast<std::size_t>(dim))
            throw InputError("ray " + std::to_string(i) + " has " + std::to_string(rays[i].size())
                             + " entries, expected " + std::to_string(dim));
        if (std::all_of(rays[i].begin(), rays[i].end(), [](auto x) { return x == 0; }))
            throw InputError("ray " + std::to_string(i) + " is zero");
        for (auto x : rays[i])
            if (x > (1 << 20) || x < -(1 << 20))
                throw InputError("ray " + std::to_string(i) + " has an entry beyond 2^20");
        for (std::size_t j = 0; j < i; ++j)
            if (rays[i] == rays[j])
                throw InputError("rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    }
    if (max_cones.empty())
        throw InputError("fan has no maximal cones");
    for (std::size_t c = 0; c < max_cones.size(); ++c) {
        auto& cone = max_cones[c];
        if (cone.empty())
            throw InputError("maximal cone " + std::to_string(c) + " is empty");
        for (int r : cone)
            if (r < 0 || static_cast<std::size_t>(r) >= rays.size())
                throw InputError("maximal cone " + std::to_string(c) + " refers to unknown ray "
                                 + std::to_string(r));
        std::sort(cone.begin(), cone.end());
        if (std::adjacent_find(cone.begin(), cone.end()) != cone.end())
            throw InputError("maximal cone " + std::to_string(c) + " repeats a ray");
    }
    return Fan{dim, std::move(rays), std::move(max_cones)};
}

namespace {

// Fourier-Motzkin elimination for { x : rows[k] . x >= rhs[k] }. Returns a
// rational solution or nullopt when the system is infeasible.
struct Inequality {
    RationalVector coeffs;
    Rational rhs;

    auto operator<=>(const Inequality& other) const
    {
        if (coeffs != other.coeffs)
            return std::lexicographical_compare_three_way(
                coeffs.begin(), coeffs.end(), other.coeffs.begin(), other.coeffs.end(),
                [](const Rational& a, const Rational& b) { return cmp(a, b) <=> 0; });
        return cmp(rhs, other.rhs) <=> 0;
    }
    bool operator==(const Inequality&) const = default;
};

Inequality normalized(Inequality q)
{
    Rational scale = 0;
    for (const auto& c : q.coeffs)
        if (c != 0) {
            scale = abs(c);
            break;
        }
    if (scale != 0) {
        for (auto& c : q.coeffs)
            c /= scale;
        q.rhs /= scale;
    }
    return q;
}

std::optional<RationalVector> fourier_motzkin(std::vector<Inequality> system, std::size_t vars)
{
    std::vector<std::vector<Inequality>> stages;
    for (std::size_t k = 0; k < vars; ++k) {
        stages.push_back(system);
        std::vector<Inequality> pos, neg;
        std::set<Inequality> next;
        for (auto& q : system) {
            if (q.coeffs[k] > 0)
                pos.push_back(q);
            else if (q.coeffs[k] < 0)
                neg.push_back(q);
            else
                next.insert(normalized(q));
        }
        for (const auto& p : pos)
            for (const auto& n : neg) {
                Inequality q;
                Rational wp = -n.coeffs[k], wn = p.coeffs[k];
                q.coeffs.resize(vars);
                for (std::size_t j = 0; j < vars; ++j)
                    q.coeffs[j] = wp * p.coeffs[j] + wn * n.coeffs[j];
                q.rhs = wp * p.rhs + wn * n.rhs;
                q.coeffs[k] = 0;
                next.insert(normalized(q));
            }
        system.assign(next.begin(), next.end());
    }
    for (const auto& q : system)
        if (q.rhs > 0)
            return std::nullopt;

    RationalVector x(vars, Rational(0));
    for (std::size_t k = vars; k-- > 0;) {
        std::optional<Rational> lo, hi;
        for (const auto& q : stages[k]) {
            if (q.coeffs[k] == 0)
                continue;
            Rational rest = q.rhs;
            for (std::size_t j = k + 1; j < vars; ++j)
                rest -= q.coeffs[j] * x[j];
            Rational bound = rest / q.coeffs[k];
            if (q.coeffs[k] > 0) {
                if (!lo || bound > *lo)
                    lo = bound;
            } else if (!hi || bound < *hi) {
                hi = bound;
            }
        }
        if (lo) {
            Rational c(ceil(*lo));
            x[k] = (!hi || c <= *hi) ? c : *lo;
        } else if (hi) {
            x[k] = Rational(floor(*hi));
        }
    }
    return x;
}

bool covering_degree_one(const Fan& fan, const std::vector<IntMatrix>& duals, std::vector<std::string>& problems)
{
    // A generic direction must lie in the interior of exactly one maximal cone.
    const auto d = static_cast<std::size_t>(fan.dim);
    for (std::int64_t t = 7; t < 7 + 64; ++t) {
        IntVector g(d);
        std::int64_t v = 1;
        for (std::size_t i = 0; i < d; ++i) {
            g[i] = v;
            v *= t;
        }
        bool degenerate = false;
        int count = 0;
        for (const auto& dual : duals) {
            bool inside = true;
            for (const auto& u : dual) {
                auto c = dot(g, u);
                if (c == 0)
                    degenerate = true;
                if (c <= 0)
                    inside = false;
            }
            count += inside;
        }
        if (degenerate)
            continue;
        if (count != 1) {
            problems.push_back("a generic direction lies in " + std::to_string(count)
                               + " maximal cones, expected 1");
            return false;
        }
        return true;
    }
    problems.push_back("could not find a generic direction to test the covering");
    return false;
}

} // namespace

ValidationReport validate_fan(const Fan& fan)
{
    ValidationReport report;
    report.primitive = true;
    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
        std::int64_t g = 0;
        for (auto x : fan.rays[i])
            g = gcd_i64(g, x);
        if (g != 1) {
            report.primitive = false;
            report.problems.push_back("ray " + std::to_string(i) + " is not primitive (gcd "
                                      + std::to_string(g) + ")");
        }
    }

    report.smooth = true;
    std::vector<IntMatrix> duals;
    for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
        const auto& cone = fan.max_cones[c];
        if (cone.size() != static_cast<std::size_t>(fan.dim)) {
            report.smooth = false;
            report.problems.push_back("maximal cone " + std::to_string(c) + " has "
                                      + std::to_string(cone.size()) + " rays, expected "
                                      + std::to_string(fan.dim));
            continue;
        }
        auto dual = detail::unimodular_dual_basis(fan, cone);
        if (!dual) {
            IntMatrix v;
            for (int r : cone)
                v.push_back(fan.rays[static_cast<std::size_t>(r)]);
            report.smooth = false;
            report.problems.push_back("maximal cone " + std::to_string(c) + " is not unimodular (det "
                                      + determinant(v).get_str() + ")");
            continue;
        }
        duals.push_back(std::move(*dual));
    }
    std::set<std::vector<int>> distinct(fan.max_cones.begin(), fan.max_cones.end());
    if (distinct.size() != fan.max_cones.size()) {
        report.smooth = false;
        report.problems.push_back("a maximal cone is listed twice");
    }
    if (!report.smooth)
        return report;

    auto walls = detail::pair_facets(fan, duals, report.problems);
    report.complete = walls.has_value() && covering_degree_one(fan, duals, report.problems);
    if (!report.complete)
        return report;

    // Strict convexity: every wall form >= 1 with a = 0 on the rays of cone 0.
    const std::size_t n = fan.rays.size();
    std::vector<std::size_t> free_rays;
    for (std::size_t r = 0; r < n; ++r)
        if (!std::binary_search(fan.max_cones[0].begin(), fan.max_cones[0].end(), static_cast<int>(r)))
            free_rays.push_back(r);
    std::vector<Inequality> system;
    for (const auto& w : *walls) {
        IntVector form = detail::wall_form(fan, duals[w.cone], w.cone, w.opposite_ray);
        Inequality q;
        for (auto r : free_rays)
            q.coeffs.push_back(Rational(static_cast<long>(form[r])));
        q.rhs = 1;
        system.push_back(std::move(q));
    }
    auto solution = fourier_motzkin(std::move(system), free_rays.size());
    if (!solution) {
        report.problems.push_back("no strictly convex support function exists");
        return report;
    }
    Integer den = 1;
    for (const auto& x : *solution)
        den = lcm(den, x.get_den());
    IntVector witness(n, 0);
    for (std::size_t k = 0; k < free_rays.size(); ++k)
        witness[free_rays[k]] = to_i64(Integer((*solution)[k] * den));
    for (const auto& w : *walls) {
        IntVector form = detail::wall_form(fan, duals[w.cone], w.cone, w.opposite_ray);
        if (dot(form, witness) <= 0)
            throw ConsistencyError("projectivity witness is not strictly convex");
    }
    report.projective = true;
    report.ample_witness = std::move(witness);
    return report;
}

Fan projective_space_fan(int n)
{
    if (n < 1)
        throw InputError("projective space needs n >= 1");
    const auto d = static_cast<std::size_t>(n);
    std::vector<IntVector> rays;
    for (std::size_t i = 0; i < d; ++i) {
        IntVector e(d, 0);
        e[i] = 1;
        rays.push_back(e);
    }
    rays.push_back(IntVector(d, -1));
    std::vector<std::vector<int>> cones;
    for (int skip = n; skip >= 0; --skip) {
        std::vector<int> cone;
        for (int r = 0; r <= n; ++r)
            if (r != skip)
                cone.push_back(r);
        cones.push_back(cone);
    }
    return make_fan(n, std::move(rays), std::move(cones));
}

Fan hirzebruch_fan(int n)
{
    if (n < 0)
        throw InputError("Hirzebruch surface needs n >= 0");
    return make_fan(2, {{1, 0}, {0, 1}, {-1, n}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

Fan p1xp1_fan()
{
    return make_fan(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

namespace {

std::optional<int> parse_index(std::string_view digits)
{
    if (digits.empty() || digits.size() > 3)
        return std::nullopt;
    int v = 0;
    for (char c : digits) {
        if (c < '0' || c > '9')
            return std::nullopt;
        v = v * 10 + (c - '0');
    }
    return v;
}

} // namespace

Fan builtin_fan(std::string_view name)
{
    if (name == "P1xP1")
        return p1xp1_fan();
    if (name == "Bl1P2")
        return blowup_fixed_point(projective_space_fan(2), 0);
    if (name.size() > 1 && name[0] == 'P')
        if (auto n = parse_index(name.substr(1)); n && *n >= 1 && *n <= 12)
            return projective_space_fan(*n);
    if (name.size() > 1 && name[0] == 'F')
        if (auto n = parse_index(name.substr(1)); n && *n <= 100)
            return hirzebruch_fan(*n);
    throw InputError("unknown built-in fan \"" + std::string(name) + "\"");
}

Fan blowup_fixed_point(const Fan& fan, std::size_t cone)
{
    if (cone >= fan.max_cones.size())
        throw InputError("maximal cone " + std::to_string(cone) + " does not exist (fan has "
                         + std::to_string(fan.max_cones.size()) + ")");
    const auto& gens = fan.max_cones[cone];
    if (!detail::unimodular_dual_basis(fan, gens))
        throw InputError("maximal cone " + std::to_string(cone) + " is not smooth");
    IntVector sum(static_cast<std::size_t>(fan.dim), 0);
    for (int r : gens)
        for (std::size_t k = 0; k < sum.size(); ++k)
            sum[k] += fan.rays[static_cast<std::size_t>(r)][k];
    auto rays = fan.rays;
    const int fresh = static_cast<int>(rays.size());
    rays.push_back(sum);
    std::vector<std::vector<int>> cones;
    for (std::size_t c = 0; c < fan.max_cones.size(); ++c) {
        if (c != cone) {
            cones.push_back(fan.max_cones[c]);
            continue;
        }
        for (std::size_t j = 0; j < gens.size(); ++j) {
            auto sub = gens;
            sub[j] = fresh;
            cones.push_back(sub);
        }
    }
    return make_fan(fan.dim, std::move(rays), std::move(cones));
}

bool fans_isomorphic(const Fan& a, const Fan& b)
{
    if (a.dim != b.dim || a.rays.size() != b.rays.size() || a.max_cones.size() != b.max_cones.size())
        return false;
    const auto d = static_cast<std::size_t>(a.dim);
    const auto& base = a.max_cones.front();
    if (base.size() != d)
        return false;
    RationalMatrix src(d, RationalVector(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k)
            src[i][k] = Rational(static_cast<long>(a.rays[static_cast<std::size_t>(base[i])][k]));

    std::set<std::vector<int>> b_cones(b.max_cones.begin(), b.max_cones.end());
    std::map<IntVector, int> b_index;
    for (std::size_t r = 0; r < b.rays.size(); ++r)
        b_index[b.rays[r]] = static_cast<int>(r);

    for (const auto& target : b.max_cones) {
        if (target.size() != d)
            continue;
        auto perm = target;
        std::sort(perm.begin(), perm.end());
        do {
            // Row-vector map T with src * T = dst, solved column by column.
            IntMatrix t(d, IntVector(d));
            bool integral = true;
            for (std::size_t col = 0; col < d && integral; ++col) {
                RationalVector rhs(d);
                for (std::size_t i = 0; i < d; ++i)
                    rhs[i] = Rational(static_cast<long>(b.rays[static_cast<std::size_t>(perm[i])][col]));
                auto x = solve_square(src, rhs);
                if (!x)
                    return false;
                for (std::size_t i = 0; i < d; ++i) {
                    if (!is_integral((*x)[i])) {
                        integral = false;
                        break;
                    }
                    t[i][col] = (*x)[i].get_num().get_si();
                }
            }
            if (!integral)
                continue;
            Integer det = determinant(t);
            if (det != 1 && det != -1)
                continue;
            std::vector<int> image(a.rays.size());
            bool ok = true;
            for (std::size_t r = 0; r < a.rays.size() && ok; ++r) {
                IntVector w(d, 0);
                for (std::size_t col = 0; col < d; ++col)
                    for (std::size_t i = 0; i < d; ++i)
                        w[col] += a.rays[r][i] * t[i][col];
                auto it = b_index.find(w);
                if (it == b_index.end())
                    ok = false;
                else
                    image[r] = it->second;
            }
            for (std::size_t c = 0; c < a.max_cones.size() && ok; ++c) {
                std::vector<int> mapped;
                for (int r : a.max_cones[c])
                    mapped.push_back(image[static_cast<std::size_t>(r)]);
                std::sort(mapped.begin(), mapped.end());
                ok = b_cones.count(mapped) > 0;
            }
            if (ok)
                return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return false;
}

} // namespace liftgeom
