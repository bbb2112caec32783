#include "fan_internal.hpp"

#include "liftgeom/errors.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <set>
#include <unordered_map>

namespace liftgeom {

using detail::dot;

ToricDivisor ToricDivisor::from_ints(const IntVector& coeffs)
{
    RationalVector a;
    for (auto c : coeffs)
        a.emplace_back(static_cast<long>(c));
    return ToricDivisor(std::move(a));
}

ToricDivisor ToricDivisor::from_qdivisor(const QDivisor& q, std::size_t num_rays)
{
    RationalVector a(num_rays, Rational(0));
    for (const auto& [label, value] : q.coeffs()) {
        bool digits = !label.empty() && label.size() <= 3
                      && std::all_of(label.begin(), label.end(), [](char c) { return c >= '0' && c <= '9'; });
        std::size_t idx = digits ? std::stoul(label) : num_rays;
        if (idx >= num_rays)
            throw InputError("divisor label \"" + label + "\" is not a ray index below "
                             + std::to_string(num_rays));
        a[idx] = value;
    }
    return ToricDivisor(std::move(a));
}

bool ToricDivisor::is_integral() const
{
    return std::all_of(a_.begin(), a_.end(), [](const Rational& q) { return liftgeom::is_integral(q); });
}

bool ToricDivisor::is_effective() const
{
    return std::all_of(a_.begin(), a_.end(), [](const Rational& q) { return q >= 0; });
}

IntVector ToricDivisor::integral_coeffs() const
{
    IntVector out;
    for (std::size_t i = 0; i < a_.size(); ++i) {
        if (!liftgeom::is_integral(a_[i]))
            throw InputError("divisor coefficient on ray " + std::to_string(i) + " is not integral ("
                             + to_string(a_[i]) + ")");
        out.push_back(to_i64(a_[i].get_num()));
    }
    return out;
}

QDivisor ToricDivisor::to_qdivisor() const
{
    QDivisor q;
    for (std::size_t i = 0; i < a_.size(); ++i)
        q.set(std::to_string(i), a_[i]);
    return q;
}

ToricDivisor operator+(const ToricDivisor& a, const ToricDivisor& b)
{
    if (a.size() != b.size())
        throw InputError("divisors on different fans");
    RationalVector c(a.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a.a_[i] + b.a_[i];
    return ToricDivisor(std::move(c));
}

ToricDivisor operator-(const ToricDivisor& a, const ToricDivisor& b)
{
    return a + Rational(-1) * b;
}

ToricDivisor operator*(const Rational& s, const ToricDivisor& a)
{
    RationalVector c(a.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = s * a.a_[i];
    return ToricDivisor(std::move(c));
}

struct ToricVariety::Cache {
    std::mutex mutex;
    std::unordered_map<RayMask, std::vector<std::int64_t>> subcomplex;
};

ToricVariety::ToricVariety(Fan fan)
    : fan_(std::move(fan)), report_(validate_fan(fan_)), cache_(std::make_shared<Cache>())
{
    if (!report_.primitive || !report_.smooth || !report_.complete) {
        std::string why;
        for (const auto& p : report_.problems)
            why += (why.empty() ? "" : "; ") + p;
        throw InputError("fan is not a smooth complete fan: " + why);
    }
    for (const auto& cone : fan_.max_cones) {
        duals_.push_back(*detail::unimodular_dual_basis(fan_, cone));
        RayMask m = 0;
        for (int r : cone)
            m |= RayMask{1} << r;
        cone_masks_.push_back(m);
    }
    std::vector<std::string> ignored;
    walls_ = *detail::pair_facets(fan_, duals_, ignored);

    std::set<RayMask> faces;
    for (auto m : cone_masks_) {
        // every subset of a maximal cone is a face
        for (RayMask s = m;; s = (s - 1) & m) {
            faces.insert(s);
            if (s == 0)
                break;
        }
    }
    faces_.assign(static_cast<std::size_t>(fan_.dim) + 1, {});
    for (auto f : faces)
        faces_[static_cast<std::size_t>(std::popcount(f))].push_back(f);
}

void ToricVariety::require_projective() const
{
    if (!report_.projective)
        throw InputError("fan is complete but not projective");
}

bool ToricVariety::rays_share_cone(std::size_t i, std::size_t j) const
{
    RayMask both = (RayMask{1} << i) | (RayMask{1} << j);
    return std::any_of(cone_masks_.begin(), cone_masks_.end(), [&](RayMask m) { return (m & both) == both; });
}

namespace {

// rank of the coboundary from faces with k rays to faces with k+1 rays, both
// restricted to the given ray set
std::size_t coboundary_rank(const std::vector<RayMask>& lower, const std::vector<RayMask>& upper)
{
    if (lower.empty() || upper.empty())
        return 0;
    RationalMatrix m(upper.size(), RationalVector(lower.size(), Rational(0)));
    for (std::size_t r = 0; r < upper.size(); ++r) {
        int sign = 1;
        for (RayMask rest = upper[r]; rest; rest &= rest - 1) {
            RayMask bit = rest & -rest;
            RayMask face = upper[r] & ~bit;
            auto it = std::find(lower.begin(), lower.end(), face);
            if (it != lower.end())
                m[r][static_cast<std::size_t>(it - lower.begin())] = sign;
            sign = -sign;
        }
    }
    return rank(std::move(m));
}

} // namespace

std::vector<std::int64_t> ToricVariety::subcomplex_cohomology(RayMask rays) const
{
    {
        std::lock_guard lock(cache_->mutex);
        if (auto it = cache_->subcomplex.find(rays); it != cache_->subcomplex.end())
            return it->second;
    }
    const auto d = static_cast<std::size_t>(fan_.dim);
    std::vector<std::vector<RayMask>> faces(d + 1);
    for (std::size_t k = 0; k <= d; ++k)
        for (auto f : faces_[k])
            if ((f & ~rays) == 0)
                faces[k].push_back(f);
    std::vector<std::size_t> ranks(d + 1, 0); // ranks[k]: faces_k -> faces_{k+1}
    for (std::size_t k = 0; k < d; ++k)
        ranks[k] = coboundary_rank(faces[k], faces[k + 1]);
    std::vector<std::int64_t> dims(d + 1);
    for (std::size_t k = 0; k <= d; ++k)
        dims[k] = static_cast<std::int64_t>(faces[k].size() - ranks[k] - (k ? ranks[k - 1] : 0));
    std::lock_guard lock(cache_->mutex);
    cache_->subcomplex.emplace(rays, dims);
    return dims;
}

void require_divisor_on(const ToricVariety& x, const ToricDivisor& d)
{
    if (d.size() != x.num_rays())
        throw InputError("divisor has " + std::to_string(d.size()) + " coefficients but the fan has "
                         + std::to_string(x.num_rays()) + " rays");
}

ToricDivisor canonical_divisor(const ToricVariety& x)
{
    return ToricDivisor(RationalVector(x.num_rays(), Rational(-1)));
}

std::vector<RationalVector> local_characters(const ToricVariety& x, const ToricDivisor& d)
{
    require_divisor_on(x, d);
    const auto dim = static_cast<std::size_t>(x.dim());
    std::vector<RationalVector> out;
    for (std::size_t c = 0; c < x.num_cones(); ++c) {
        const auto& cone = x.fan().max_cones[c];
        const auto& dual = x.dual_basis(c);
        RationalVector m(dim, Rational(0));
        for (std::size_t i = 0; i < cone.size(); ++i)
            for (std::size_t k = 0; k < dim; ++k)
                m[k] -= d[static_cast<std::size_t>(cone[i])] * static_cast<long>(dual[i][k]);
        out.push_back(std::move(m));
    }
    return out;
}

namespace {

Rational wall_value(const ToricVariety& x, const ToricDivisor& d, const std::vector<RationalVector>& chars,
                    const ToricVariety::Wall& w)
{
    const auto& v = x.fan().rays[w.opposite_ray];
    Rational s = d[w.opposite_ray];
    for (std::size_t k = 0; k < v.size(); ++k)
        s += chars[w.cone][k] * static_cast<long>(v[k]);
    return s;
}

} // namespace

bool is_nef(const ToricVariety& x, const ToricDivisor& d)
{
    auto chars = local_characters(x, d);
    return std::all_of(x.walls().begin(), x.walls().end(),
                       [&](const auto& w) { return wall_value(x, d, chars, w) >= 0; });
}

bool is_ample(const ToricVariety& x, const ToricDivisor& d)
{
    auto chars = local_characters(x, d);
    return std::all_of(x.walls().begin(), x.walls().end(),
                       [&](const auto& w) { return wall_value(x, d, chars, w) > 0; });
}

std::optional<RationalVector> linear_equivalent(const ToricVariety& x, const ToricDivisor& d1,
                                                const ToricDivisor& d2)
{
    require_divisor_on(x, d1);
    require_divisor_on(x, d2);
    const auto dim = static_cast<std::size_t>(x.dim());
    const auto& cone = x.fan().max_cones[0];
    const auto& dual = x.dual_basis(0);
    // <m, v_i> = diff_i on cone 0 gives m = sum_i diff_i u_i.
    RationalVector m(dim, Rational(0));
    for (std::size_t i = 0; i < cone.size(); ++i) {
        auto r = static_cast<std::size_t>(cone[i]);
        Rational diff = d1[r] - d2[r];
        for (std::size_t k = 0; k < dim; ++k)
            m[k] += diff * static_cast<long>(dual[i][k]);
    }
    for (std::size_t r = 0; r < x.num_rays(); ++r) {
        Rational s = 0;
        for (std::size_t k = 0; k < dim; ++k)
            s += m[k] * static_cast<long>(x.fan().rays[r][k]);
        if (s != d1[r] - d2[r])
            return std::nullopt;
    }
    return m;
}

std::size_t class_group_rank(const ToricVariety& x)
{
    return x.num_rays() - static_cast<std::size_t>(x.dim());
}

ToricDivisor normalized_representative(const ToricVariety& x, const ToricDivisor& d)
{
    require_divisor_on(x, d);
    // The character vanishing of d - div(chi^m) on cone 0 is m = sum a_i u_i.
    const auto dim = static_cast<std::size_t>(x.dim());
    const auto& cone = x.fan().max_cones[0];
    const auto& dual = x.dual_basis(0);
    RationalVector m(dim, Rational(0));
    for (std::size_t i = 0; i < cone.size(); ++i)
        for (std::size_t k = 0; k < dim; ++k)
            m[k] += d[static_cast<std::size_t>(cone[i])] * static_cast<long>(dual[i][k]);
    RationalVector a(x.num_rays());
    for (std::size_t r = 0; r < x.num_rays(); ++r) {
        Rational s = 0;
        for (std::size_t k = 0; k < dim; ++k)
            s += m[k] * static_cast<long>(x.fan().rays[r][k]);
        a[r] = d[r] - s;
    }
    return ToricDivisor(std::move(a));
}

} // namespace liftgeom
