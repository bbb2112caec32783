#include "doctest.h"

#include "oracles.hpp"

#include "liftgeom/errors.hpp"
#include "liftgeom/toric.hpp"

using namespace liftgeom;

namespace {

// every integral divisor with coefficients in [-b, b]
std::vector<IntVector> box_divisors(std::size_t rays, std::int64_t b)
{
    std::vector<IntVector> out;
    IntVector a(rays, -b);
    while (true) {
        out.push_back(a);
        std::size_t k = 0;
        while (k < rays && ++a[k] > b)
            a[k++] = -b;
        if (k == rays)
            break;
    }
    return out;
}

IntVector on_p2(std::int64_t d)
{
    return {d, 0, 0};
}

} // namespace

TEST_CASE("projective spaces follow the Bott formula")
{
    for (int n = 1; n <= 4; ++n) {
        ToricVariety x(projective_space_fan(n));
        for (std::int64_t d = -n - 4; d <= 6; ++d) {
            IntVector a(static_cast<std::size_t>(n) + 1, 0);
            a[static_cast<std::size_t>(n)] = d;
            auto r = cohomology(x, ToricDivisor::from_ints(a));
            for (int i = 0; i <= n; ++i) {
                CAPTURE(n);
                CAPTURE(d);
                CAPTURE(i);
                CHECK(r.dims[static_cast<std::size_t>(i)] == oracle::bott(n, d, i));
            }
        }
    }
}

TEST_CASE("sections of O(d) on P2")
{
    ToricVariety x(builtin_fan("P2"));
    for (std::int64_t d = 0; d <= 10; ++d) {
        auto pts = sections(x, ToricDivisor::from_ints(on_p2(d)));
        CHECK(static_cast<std::int64_t>(pts.size()) == (d + 1) * (d + 2) / 2);
        CHECK(std::is_sorted(pts.begin(), pts.end()));
    }
    CHECK(sections(x, ToricDivisor::from_ints(on_p2(-1))).empty());
}

TEST_CASE("P1 x P1 follows the Kunneth formula")
{
    ToricVariety x(builtin_fan("P1xP1"));
    for (auto a : box_divisors(4, 2)) {
        // rays (1,0), (-1,0) belong to the first factor
        auto e = oracle::p1(a[0] + a[2]);
        auto f = oracle::p1(a[1] + a[3]);
        auto r = cohomology(x, ToricDivisor::from_ints(a));
        CHECK(r.dims[0] == e[0] * f[0]);
        CHECK(r.dims[1] == e[0] * f[1] + e[1] * f[0]);
        CHECK(r.dims[2] == e[1] * f[1]);
    }
}

TEST_CASE("surfaces: Riemann-Roch, Serre duality, nef vanishing")
{
    for (auto name : {"F1", "F2", "F3", "Bl1P2"}) {
        CAPTURE(name);
        ToricVariety x(builtin_fan(name));
        auto k = canonical_divisor(x);
        for (auto a : box_divisors(4, 2)) {
            CAPTURE(a);
            auto d = ToricDivisor::from_ints(a);
            auto r = cohomology(x, d);
            CHECK(r.euler() == oracle::surface_rr(x.fan(), a));
            CHECK(r.euler() == r.euler_check);
            auto dual = cohomology(x, k - d);
            for (std::size_t i = 0; i <= 2; ++i)
                CHECK(r.dims[i] == dual.dims[2 - i]);
            bool nef = oracle::surface_nef(x.fan(), a);
            CHECK(is_nef(x, d) == nef);
            if (nef) {
                CHECK(r.dims[1] == 0);
                CHECK(r.dims[2] == 0);
            }
        }
    }
}

TEST_CASE("ampleness on surfaces is positivity on every invariant curve")
{
    for (auto name : {"P2", "P1xP1", "F1", "F2", "F3", "Bl1P2"}) {
        ToricVariety x(builtin_fan(name));
        auto m = oracle::surface_intersections(x.fan());
        for (auto a : box_divisors(x.num_rays(), 2)) {
            bool positive = true;
            for (std::size_t i = 0; i < a.size(); ++i) {
                IntVector e(a.size(), 0);
                e[i] = 1;
                positive = positive && oracle::dot_form(m, a, e) > 0;
            }
            CHECK(is_ample(x, ToricDivisor::from_ints(a)) == positive);
        }
    }
}

TEST_CASE("the fast path agrees with the Cech complex")
{
    for (auto name : {"P2", "P1xP1", "F1", "F3", "P3"}) {
        CAPTURE(name);
        ToricVariety x(builtin_fan(name));
        for (auto a : box_divisors(x.num_rays(), x.dim() == 3 ? 1 : 2)) {
            auto d = ToricDivisor::from_ints(a);
            auto fast = cohomology(x, d).dims;
            auto cech = cech_cohomology(x, d);
            for (std::size_t i = 0; i < cech.size(); ++i)
                CHECK(cech[i] == (i < fast.size() ? fast[i] : 0));
        }
    }
}

TEST_CASE("cohomology depends only on the class")
{
    ToricVariety x(builtin_fan("F2"));
    auto g = oracle::rng(17);
    for (int t = 0; t < 50; ++t) {
        IntVector a(4);
        for (auto& c : a)
            c = oracle::uniform(g, -3, 3);
        std::int64_t m0 = oracle::uniform(g, -3, 3), m1 = oracle::uniform(g, -3, 3);
        IntVector b = a;
        for (std::size_t r = 0; r < 4; ++r)
            b[r] += m0 * x.fan().rays[r][0] + m1 * x.fan().rays[r][1];
        auto da = ToricDivisor::from_ints(a), db = ToricDivisor::from_ints(b);
        CHECK(cohomology(x, da).dims == cohomology(x, db).dims);
        CHECK(linear_equivalent(x, da, db).has_value());
        auto n = normalized_representative(x, da);
        CHECK(n == normalized_representative(x, db));
        CHECK(n[0] == 0);
        CHECK(n[1] == 0);
        CHECK(linear_equivalent(x, n, da).has_value());
    }
    CHECK_FALSE(linear_equivalent(x, ToricDivisor::from_ints({1, 0, 0, 0}), ToricDivisor::from_ints({0, 0, 0, 0})));
    CHECK(class_group_rank(x) == 2);
    CHECK(class_group_rank(ToricVariety(builtin_fan("P3"))) == 1);
}

TEST_CASE("local characters cut out the divisor on each cone")
{
    ToricVariety x(builtin_fan("Bl1P2"));
    auto d = ToricDivisor::from_ints({2, -1, 3, 1});
    auto chars = local_characters(x, d);
    for (std::size_t c = 0; c < x.num_cones(); ++c)
        for (int r : x.fan().max_cones[c]) {
            Rational s = 0;
            for (std::size_t k = 0; k < 2; ++k)
                s += chars[c][k] * static_cast<long>(x.fan().rays[static_cast<std::size_t>(r)][k]);
            CHECK(s == -d[static_cast<std::size_t>(r)]);
        }
}

TEST_CASE("cohomology input contract")
{
    ToricVariety x(builtin_fan("P2"));
    CHECK_THROWS_AS(cohomology(x, ToricDivisor(RationalVector{Rational(1, 2), 0, 0})), InputError);
    CHECK_THROWS_AS(cohomology(x, ToricDivisor::from_ints({1, 0})), InputError);
    CHECK(cohomology(x, ToricDivisor::from_ints({1, 1, 1}), 0) == 10);
    CHECK(euler_characteristic(x, ToricDivisor::from_ints({-3, 0, 0})) == 1);
}
