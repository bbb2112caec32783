#include "fan_internal.hpp"

#include "liftgeom/errors.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <unordered_map>

namespace liftgeom {

namespace {

constexpr std::int64_t max_box_points = 200'000'000;
constexpr std::size_t max_cech_cones = 20;

std::int64_t box_points(const Box& b)
{
    std::int64_t n = 1;
    for (std::size_t k = 0; k < b.lo.size(); ++k) {
        std::int64_t w = b.hi[k] - b.lo[k] + 1;
        if (w <= 0)
            return 0;
        if (n > max_box_points / w)
            throw InputError("divisor too large: lattice search box exceeds "
                             + std::to_string(max_box_points) + " points");
        n *= w;
    }
    return n;
}

void for_each_point(const Box& b, const std::function<void(const IntVector&)>& f)
{
    if (box_points(b) == 0)
        return;
    IntVector m = b.lo;
    const std::size_t d = m.size();
    while (true) {
        f(m);
        std::size_t k = d;
        while (k-- > 0) {
            if (m[k] < b.hi[k]) {
                ++m[k];
                break;
            }
            m[k] = b.lo[k];
        }
        if (k == static_cast<std::size_t>(-1))
            return;
    }
}

// Rays rho with <m, v_rho> < -a_rho.
RayMask negative_rays(const Fan& fan, const IntVector& a, const IntVector& m)
{
    RayMask z = 0;
    for (std::size_t r = 0; r < fan.rays.size(); ++r)
        if (detail::dot(m, fan.rays[r]) < -a[r])
            z |= RayMask{1} << r;
    return z;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f)
{
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
        if (pos == k) {
            f(idx);
            return;
        }
        for (std::size_t i = start; i + (k - pos) <= n; ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    rec(0, 0);
}

// Alternating count of Cech chains: sum over non-empty sets T of maximal
// cones whose common face avoids z of (-1)^{|T|-1}.
std::int64_t cech_euler(const std::vector<RayMask>& cones, RayMask z)
{
    const std::size_t k = cones.size();
    std::vector<RayMask> inter(std::size_t{1} << k);
    std::int64_t chi = 0;
    for (std::size_t s = 1; s < inter.size(); ++s) {
        std::size_t low = static_cast<std::size_t>(std::countr_zero(s));
        std::size_t rest = s & (s - 1);
        inter[s] = rest ? (inter[rest] & cones[low]) : cones[low];
        if ((inter[s] & z) == 0)
            chi += (std::popcount(s) % 2 == 1) ? 1 : -1;
    }
    return chi;
}

struct Tally {
    std::vector<std::int64_t> dims;
    std::vector<std::int64_t> witness;
    std::int64_t euler = 0;
};

Tally tally(const ToricVariety& x, const IntVector& a, const Box& box, bool with_euler)
{
    const auto d = static_cast<std::size_t>(x.dim());
    Tally t{std::vector<std::int64_t>(d + 1, 0), std::vector<std::int64_t>(d + 1, 0), 0};
    std::unordered_map<RayMask, std::vector<std::int64_t>> pieces;
    std::unordered_map<RayMask, std::int64_t> euler_pieces;
    for_each_point(box, [&](const IntVector& m) {
        RayMask z = negative_rays(x.fan(), a, m);
        auto it = pieces.find(z);
        if (it == pieces.end())
            it = pieces.emplace(z, x.subcomplex_cohomology(z)).first;
        for (std::size_t i = 0; i <= d; ++i)
            if (it->second[i] != 0) {
                t.dims[i] += it->second[i];
                ++t.witness[i];
            }
        if (with_euler) {
            auto e = euler_pieces.find(z);
            if (e == euler_pieces.end())
                e = euler_pieces.emplace(z, cech_euler(x.cone_masks(), z)).first;
            t.euler += e->second;
        }
    });
    return t;
}

Box doubled(const Box& b)
{
    Box out = b;
    for (std::size_t k = 0; k < b.lo.size(); ++k) {
        std::int64_t half = (b.hi[k] - b.lo[k] + 2) / 2;
        out.lo[k] -= half;
        out.hi[k] += half;
    }
    return out;
}

} // namespace

Box arrangement_box(const ToricVariety& x, const IntVector& a)
{
    const auto d = static_cast<std::size_t>(x.dim());
    const auto& rays = x.fan().rays;
    std::optional<IntVector> lo, hi;
    for_each_subset(rays.size(), d, [&](const std::vector<std::size_t>& pick) {
        RationalMatrix v(d, RationalVector(d));
        RationalVector rhs(d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t k = 0; k < d; ++k)
                v[i][k] = Rational(static_cast<long>(rays[pick[i]][k]));
            rhs[i] = Rational(static_cast<long>(-a[pick[i]]));
        }
        auto vertex = solve_square(v, rhs);
        if (!vertex)
            return;
        if (!lo) {
            lo = IntVector(d);
            hi = IntVector(d);
            for (std::size_t k = 0; k < d; ++k) {
                (*lo)[k] = to_i64(floor((*vertex)[k]));
                (*hi)[k] = to_i64(ceil((*vertex)[k]));
            }
            return;
        }
        for (std::size_t k = 0; k < d; ++k) {
            (*lo)[k] = std::min((*lo)[k], to_i64(floor((*vertex)[k])));
            (*hi)[k] = std::max((*hi)[k], to_i64(ceil((*vertex)[k])));
        }
    });
    if (!lo)
        throw ConsistencyError("complete fan without arrangement vertices");
    for (std::size_t k = 0; k < d; ++k) {
        --(*lo)[k];
        ++(*hi)[k];
    }
    return Box{*lo, *hi};
}

std::int64_t CohomReport::euler() const
{
    std::int64_t chi = 0;
    for (std::size_t i = 0; i < dims.size(); ++i)
        chi += (i % 2 == 0) ? dims[i] : -dims[i];
    return chi;
}

std::vector<IntVector> sections(const ToricVariety& x, const ToricDivisor& d)
{
    require_divisor_on(x, d);
    IntVector a = d.integral_coeffs();
    std::vector<IntVector> points;
    for_each_point(arrangement_box(x, a), [&](const IntVector& m) {
        if (negative_rays(x.fan(), a, m) == 0)
            points.push_back(m);
    });
    return points;
}

CohomReport cohomology(const ToricVariety& x, const ToricDivisor& d)
{
    require_divisor_on(x, d);
    IntVector a = d.integral_coeffs();
    Box box = arrangement_box(x, a);
    const bool euler = x.num_cones() <= max_cech_cones;
    Tally inner = tally(x, a, box, euler);
    Tally outer = tally(x, a, doubled(box), false);
    if (inner.dims != outer.dims)
        throw ConsistencyError("box instability: doubling the lattice search box changed the cohomology totals");

    CohomReport report{d, inner.dims, inner.witness, 0, box};
    report.euler_check = euler ? inner.euler : report.euler();
    if (report.euler_check != report.euler())
        throw ConsistencyError("Euler characteristic mismatch between the subcomplex and Cech counts");
    return report;
}

std::int64_t cohomology(const ToricVariety& x, const ToricDivisor& d, int i)
{
    if (i < 0 || i > x.dim())
        return 0;
    return cohomology(x, d).dims[static_cast<std::size_t>(i)];
}

std::vector<std::int64_t> cech_cohomology(const ToricVariety& x, const ToricDivisor& d)
{
    require_divisor_on(x, d);
    const auto& fan = x.fan();
    const std::size_t k = fan.max_cones.size();
    if (k > max_cech_cones)
        throw InputError("Cech route supports at most " + std::to_string(max_cech_cones) + " maximal cones");
    IntVector a = d.integral_coeffs();

    // |m_j| at any arrangement vertex is a ratio of determinants; bound the
    // numerator by d! * max|a| * max|v|^(d-1).
    const auto dim = static_cast<std::size_t>(fan.dim);
    std::int64_t amax = 0, vmax = 1;
    for (auto c : a)
        amax = std::max(amax, c < 0 ? -c : c);
    for (const auto& r : fan.rays)
        for (auto c : r)
            vmax = std::max(vmax, c < 0 ? -c : c);
    std::int64_t bound = amax;
    for (std::size_t i = 1; i <= dim; ++i)
        bound *= static_cast<std::int64_t>(i);
    for (std::size_t i = 1; i < dim; ++i)
        bound *= vmax;
    bound += 1;
    Box box{IntVector(dim, -bound), IntVector(dim, bound)};

    // cone-index sets as bitmasks grouped by size, with their common faces
    std::vector<RayMask> common(std::size_t{1} << k);
    std::vector<std::vector<std::size_t>> by_size(k + 1);
    for (std::size_t s = 1; s < common.size(); ++s) {
        RayMask m = ~RayMask{0};
        for (std::size_t c = 0; c < k; ++c)
            if (s >> c & 1)
                m &= x.cone_masks()[c];
        common[s] = m;
        by_size[static_cast<std::size_t>(std::popcount(s))].push_back(s);
    }

    auto piece = [&](RayMask z) {
        std::vector<std::vector<std::size_t>> good(k + 1);
        for (std::size_t q = 1; q <= k; ++q)
            for (auto s : by_size[q])
                if ((common[s] & z) == 0)
                    good[q].push_back(s);
        // differential from sets of size q to sets of size q+1
        std::vector<std::size_t> ranks(k + 1, 0);
        for (std::size_t q = 1; q < k; ++q) {
            const auto& lower = good[q];
            const auto& upper = good[q + 1];
            if (lower.empty() || upper.empty())
                continue;
            RationalMatrix mat(upper.size(), RationalVector(lower.size(), Rational(0)));
            for (std::size_t r = 0; r < upper.size(); ++r) {
                int sign = 1;
                for (std::size_t c = 0; c < k; ++c) {
                    if (!(upper[r] >> c & 1))
                        continue;
                    std::size_t face = upper[r] & ~(std::size_t{1} << c);
                    auto it = std::find(lower.begin(), lower.end(), face);
                    if (it != lower.end())
                        mat[r][static_cast<std::size_t>(it - lower.begin())] = sign;
                    sign = -sign;
                }
            }
            ranks[q] = rank(std::move(mat));
        }
        std::vector<std::int64_t> h(k, 0);
        for (std::size_t q = 1; q <= k; ++q)
            h[q - 1] = static_cast<std::int64_t>(good[q].size() - ranks[q] - ranks[q - 1]);
        return h;
    };

    std::vector<std::int64_t> total(k, 0);
    std::unordered_map<RayMask, std::vector<std::int64_t>> memo;
    for_each_point(box, [&](const IntVector& m) {
        RayMask z = 0;
        for (std::size_t r = 0; r < fan.rays.size(); ++r) {
            std::int64_t s = 0;
            for (std::size_t j = 0; j < dim; ++j)
                s += m[j] * fan.rays[r][j];
            if (s + a[r] < 0)
                z |= RayMask{1} << r;
        }
        auto it = memo.find(z);
        if (it == memo.end())
            it = memo.emplace(z, piece(z)).first;
        for (std::size_t q = 0; q < k; ++q)
            total[q] += it->second[q];
    });
    return total;
}

std::int64_t euler_characteristic(const ToricVariety& x, const ToricDivisor& d)
{
    return cohomology(x, d).euler();
}

} // namespace liftgeom
