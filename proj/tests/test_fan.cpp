#include "doctest.h"

#include "liftgeom/errors.hpp"
#include "liftgeom/toric.hpp"

using namespace liftgeom;

TEST_CASE("built-in fans are smooth complete and projective")
{
    for (auto name : {"P1", "P2", "P3", "P4", "P1xP1", "F0", "F1", "F2", "F3", "F7", "Bl1P2"}) {
        CAPTURE(name);
        auto rep = validate_fan(builtin_fan(name));
        CHECK(rep.ok());
        CHECK(rep.problems.empty());
        REQUIRE(rep.ample_witness);
        ToricVariety x(builtin_fan(name));
        CHECK(is_ample(x, ToricDivisor::from_ints(*rep.ample_witness)));
    }
    CHECK_THROWS_AS(builtin_fan("P0"), InputError);
    CHECK_THROWS_AS(builtin_fan("G2"), InputError);
    CHECK_THROWS_AS(builtin_fan(""), InputError);
}

TEST_CASE("shape errors are input errors")
{
    CHECK_THROWS_AS(make_fan(2, {{1, 0}, {0}}, {{0, 1}}), InputError);
    CHECK_THROWS_AS(make_fan(2, {{1, 0}, {0, 0}}, {{0, 1}}), InputError);
    CHECK_THROWS_AS(make_fan(2, {{1, 0}, {1, 0}}, {{0, 1}}), InputError);
    CHECK_THROWS_AS(make_fan(2, {{1, 0}, {0, 1}}, {{0, 2}}), InputError);
    CHECK_THROWS_AS(make_fan(2, {{1, 0}, {0, 1}}, {{0, 0}}), InputError);
    CHECK(make_fan(2, {{1, 0}, {0, 1}}, {{1, 0}}).max_cones[0] == std::vector<int>{0, 1});
}

TEST_CASE("validation reports what is wrong")
{
    auto nonprimitive = validate_fan(make_fan(2, {{2, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}}));
    CHECK_FALSE(nonprimitive.primitive);
    CHECK_FALSE(nonprimitive.ok());

    // weighted projective plane P(1,1,2)
    auto singular = validate_fan(make_fan(2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {2, 0}}));
    CHECK(singular.primitive);
    CHECK_FALSE(singular.smooth);

    auto incomplete = validate_fan(make_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}}));
    CHECK(incomplete.smooth);
    CHECK_FALSE(incomplete.complete);
    CHECK_FALSE(incomplete.problems.empty());
    CHECK_THROWS_AS(ToricVariety(make_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}})), InputError);

    // two cones on the same side of their common wall
    auto folded = validate_fan(make_fan(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 1}, {0, 2}}));
    CHECK(folded.smooth);
    CHECK_FALSE(folded.complete);
}

TEST_CASE("point blow-ups")
{
    auto bl = builtin_fan("Bl1P2");
    CHECK(bl.rays.size() == 4);
    CHECK(fans_isomorphic(bl, builtin_fan("F1")));
    CHECK_FALSE(fans_isomorphic(bl, builtin_fan("F2")));
    CHECK(fans_isomorphic(builtin_fan("P1xP1"), builtin_fan("F0")));
    CHECK_FALSE(fans_isomorphic(builtin_fan("P2"), builtin_fan("F1")));

    auto bl3 = blowup_fixed_point(builtin_fan("P3"), 2);
    CHECK(bl3.rays.size() == 5);
    CHECK(bl3.max_cones.size() == 6);
    CHECK(validate_fan(bl3).ok());

    auto twice = blowup_fixed_point(bl, 0);
    CHECK(validate_fan(twice).ok());
    CHECK(twice.rays.size() == 5);
    CHECK_THROWS_AS(blowup_fixed_point(bl, 17), InputError);
}

TEST_CASE("isomorphism ignores ray and cone order")
{
    auto a = builtin_fan("F2");
    auto b = make_fan(2, {{0, -1}, {-1, 2}, {0, 1}, {1, 0}}, {{0, 3}, {2, 3}, {1, 2}, {0, 1}});
    CHECK(fans_isomorphic(a, b));
    // a lattice automorphism applied to every ray
    auto c = make_fan(2, {{1, 1}, {0, 1}, {-1, 1}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CHECK(validate_fan(c).ok());
    CHECK(fans_isomorphic(c, builtin_fan("F2")));
}
