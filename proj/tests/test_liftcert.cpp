#include "doctest.h"

#include "oracles.hpp"

#include "liftgeom/errors.hpp"
#include "liftgeom/liftcert.hpp"

using namespace liftgeom;

namespace {

Rational q(long n, long d)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

// "Rule[Child,...]"
std::string shape(const DerivationNode& n)
{
    std::string s = n.rule;
    if (!n.children.empty()) {
        s += "[";
        for (std::size_t i = 0; i < n.children.size(); ++i)
            s += (i ? "," : "") + shape(n.children[i]);
        s += "]";
    }
    return s;
}

std::string shape(const Certificate& c)
{
    return c.derivation ? shape(*c.derivation) : "";
}

VarietyPtr toric(const char* name)
{
    return make_variety(Toric{builtin_fan(name)});
}

CyclicCoverPlan fermat_plan(int n, std::int64_t big_n, std::uint32_t p)
{
    ToricVariety x(projective_space_fan(n));
    IntVector l(static_cast<std::size_t>(n) + 1, 0), d(static_cast<std::size_t>(n) + 1, 0);
    l[0] = 1;
    d[0] = big_n;
    return plan_cyclic_cover(x, ToricDivisor::from_ints(l), big_n, ToricDivisor::from_ints(d), PrimeP(p),
                             SmoothnessEvidence::fermat(n, big_n, p));
}

bool strong(Conclusion c)
{
    return c == Conclusion::StronglyLiftableW || c == Conclusion::StronglyLiftableW2;
}

VarietyPtr random_description(std::mt19937_64& g, int depth)
{
    auto pick = oracle::uniform(g, 0, depth >= 4 ? 5 : 9);
    switch (pick) {
    case 0:
        return make_variety(AffineSpace{static_cast<int>(oracle::uniform(g, 1, 4))});
    case 1:
        return make_variety(ProjectiveSpace{static_cast<int>(oracle::uniform(g, 1, 4))});
    case 2:
        return make_variety(SmoothProjectiveCurve{static_cast<int>(oracle::uniform(g, 0, 5))});
    case 3:
        return make_variety(CompleteIntersectionPicardOne{5, {static_cast<int>(oracle::uniform(g, 1, 4)), 2}});
    case 4: {
        const char* names[] = {"P2", "P3", "P1xP1", "F1", "F2", "Bl1P2"};
        return toric(names[oracle::uniform(g, 0, 5)]);
    }
    case 5:
        return make_variety(UnknownVariety{"K3 surface"});
    case 6:
    case 7:
        return make_variety(BlowupAtPoint{random_description(g, depth + 1)});
    case 8: {
        auto big_n = oracle::uniform(g, 1, 9);
        std::uint32_t p = big_n % 5 == 0 ? 3 : 5;
        auto base = oracle::uniform(g, 0, 1) ? toric("P2") : make_variety(ProjectiveSpace{2});
        return make_variety(CyclicCoverOf{base, fermat_plan(2, big_n, p)});
    }
    default: {
        ToricVariety x(builtin_fan("P2"));
        auto plan = plan_kummer_cover(x, QDivisor({{"0", q(1, 3)}}), PrimeP(2));
        auto base = oracle::uniform(g, 0, 1) ? toric("P2") : make_variety(ProjectiveSpace{2});
        return make_variety(KummerCoverOf{base, plan});
    }
    }
}

} // namespace

TEST_CASE("conclusion lattice")
{
    using C = Conclusion;
    CHECK(implies(C::StronglyLiftableW, C::StronglyLiftableW2));
    CHECK(implies(C::StronglyLiftableW, C::LiftableW));
    CHECK(implies(C::StronglyLiftableW, C::LiftableW2));
    CHECK(implies(C::LiftableW, C::LiftableW2));
    CHECK(implies(C::StronglyLiftableW2, C::LiftableW2));
    CHECK_FALSE(implies(C::LiftableW, C::StronglyLiftableW2));
    CHECK_FALSE(implies(C::StronglyLiftableW2, C::LiftableW));
    CHECK_FALSE(implies(C::LiftableW2, C::LiftableW));
    CHECK_FALSE(implies(C::Unknown, C::LiftableW2));
    for (auto c : {C::Unknown, C::LiftableW2, C::LiftableW, C::StronglyLiftableW2, C::StronglyLiftableW}) {
        CHECK(implies(c, c));
        CHECK(implies(c, C::Unknown));
        CHECK(parse_conclusion(to_string(c)) == c);
    }
    CHECK_THROWS_AS(parse_conclusion("liftable"), InputError);
}

TEST_CASE("base and closure rules")
{
    CHECK(shape(classify(VarietyDescription{ProjectiveSpace{2}})) == "Thm5.8i");
    CHECK(shape(classify(VarietyDescription{AffineSpace{2}})) == "Thm5.8i");
    CHECK(shape(classify(VarietyDescription{SmoothProjectiveCurve{2}})) == "Thm5.8i");
    CHECK(shape(classify(VarietyDescription{CompleteIntersectionPicardOne{4, {2, 2}}})) == "Thm5.8ii");
    CHECK(shape(classify(VarietyDescription{Toric{builtin_fan("F2")}})) == "Thm5.10");

    auto bl = classify(VarietyDescription{BlowupAtPoint{toric("P2")}});
    CHECK(bl.conclusion == Conclusion::StronglyLiftableW);
    CHECK(shape(bl) == "Thm5.11[Prop5.6[Thm5.10]]");

    auto bl3 = classify(VarietyDescription{BlowupAtPoint{toric("P3")}});
    CHECK(shape(bl3) == "Prop5.6[Thm5.10]");

    // a surface chain over a toric base with five rays is not a minimal model
    auto five = make_variety(Toric{blowup_fixed_point(builtin_fan("F1"), 0)});
    CHECK(shape(classify(VarietyDescription{BlowupAtPoint{five}})) == "Prop5.6[Thm5.10]");

    CHECK(classify(VarietyDescription{BlowupAtPoint{make_variety(SmoothProjectiveCurve{1})}}).conclusion
          == Conclusion::Unknown);
    CHECK(classify(VarietyDescription{BlowupAtPoint{make_variety(AffineSpace{1})}}).conclusion == Conclusion::Unknown);
    auto unknown = classify(VarietyDescription{BlowupAtPoint{make_variety(UnknownVariety{"Enriques surface"})}});
    CHECK(unknown.conclusion == Conclusion::Unknown);
    CHECK_FALSE(unknown.derivation);

    // P(1,1,2) is not smooth
    auto weighted = make_fan(2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(classify(VarietyDescription{Toric{weighted}}).conclusion == Conclusion::Unknown);
}

TEST_CASE("cover rules")
{
    auto cyc = classify(VarietyDescription{CyclicCoverOf{toric("P2"), fermat_plan(2, 7, 5)}});
    CHECK(cyc.conclusion == Conclusion::LiftableW);
    CHECK(shape(cyc) == "Cor5.13[Thm5.10]");

    auto over_ps = classify(VarietyDescription{CyclicCoverOf{make_variety(ProjectiveSpace{2}), fermat_plan(2, 7, 5)}});
    CHECK(shape(over_ps) == "Cor5.13[Thm5.8i]");

    // base and plan disagree
    CHECK(classify(VarietyDescription{CyclicCoverOf{toric("P3"), fermat_plan(2, 7, 5)}}).conclusion
          == Conclusion::Unknown);
    // not a toric base
    auto bl = make_variety(BlowupAtPoint{toric("P2")});
    CHECK(classify(VarietyDescription{CyclicCoverOf{bl, fermat_plan(2, 7, 5)}}).conclusion == Conclusion::Unknown);

    ToricVariety p2(builtin_fan("P2"));
    auto kplan = plan_kummer_cover(p2, QDivisor({{"0", q(1, 3)}, {"2", q(1, 5)}}), PrimeP(2));
    auto kum = classify(VarietyDescription{KummerCoverOf{toric("P2"), kplan}});
    CHECK(kum.conclusion == Conclusion::LiftableW2);
    CHECK(shape(kum) == "Thm3.1iii[Thm5.10]");
}

TEST_CASE("malformed descriptions")
{
    CHECK_THROWS_AS(classify(VarietyDescription{BlowupAtPoint{nullptr}}), InputError);
    CHECK_THROWS_AS(classify(VarietyDescription{ProjectiveSpace{0}}), InputError);
    CHECK_THROWS_AS(classify(VarietyDescription{SmoothProjectiveCurve{-1}}), InputError);
    CHECK_THROWS_AS(classify(VarietyDescription{CompleteIntersectionPicardOne{3, {2, 2, 2}}}), InputError);
    CHECK_THROWS_AS(classify(VarietyDescription{CompleteIntersectionPicardOne{3, {0}}}), InputError);

    VarietyPtr deep = make_variety(ProjectiveSpace{2});
    for (int i = 0; i < max_description_depth; ++i)
        deep = make_variety(BlowupAtPoint{deep});
    CHECK(classify(*deep).conclusion == Conclusion::StronglyLiftableW);
    deep = make_variety(BlowupAtPoint{deep});
    CHECK_THROWS_AS(classify(*deep), InputError);
}

TEST_CASE("replay rejects tampered trees")
{
    auto cyc = classify(VarietyDescription{CyclicCoverOf{toric("P2"), fermat_plan(2, 7, 5)}});
    REQUIRE(cyc.derivation);
    auto tampered = *cyc.derivation;
    tampered.conclusion = Conclusion::StronglyLiftableW;
    CHECK_THROWS_AS(replay(tampered), ConsistencyError);

    auto orphan = *cyc.derivation;
    orphan.children.clear();
    CHECK_THROWS_AS(replay(orphan), ConsistencyError);

    DerivationNode made_up{"Thm9.9", Conclusion::LiftableW, "x", {}};
    CHECK_THROWS_AS(replay(made_up), ConsistencyError);

    DerivationNode blowup_of_weak{"Prop5.6", Conclusion::LiftableW, "x", {*cyc.derivation}};
    CHECK_THROWS_AS(replay(blowup_of_weak), ConsistencyError);
}

TEST_CASE("random descriptions: determinism, replay, soundness of cover rules")
{
    auto g = oracle::rng(41);
    const std::vector<std::string> bases{"Thm5.8i", "Thm5.8ii", "Thm5.10"};
    for (int t = 0; t < 400; ++t) {
        auto v = random_description(g, 0);
        auto a = classify(*v);
        auto b = classify(*v);
        CHECK(a.conclusion == b.conclusion);
        CHECK(shape(a) == shape(b));
        CHECK((a.conclusion == Conclusion::Unknown) == !a.derivation.has_value());
        if (a.derivation) {
            CHECK(replay(*a.derivation) == a.conclusion);
            CHECK(a.derivation->conclusion == a.conclusion);
        }
        if (std::holds_alternative<CyclicCoverOf>(v->value))
            CHECK_FALSE(strong(a.conclusion));
        if (std::holds_alternative<KummerCoverOf>(v->value))
            CHECK((a.conclusion == Conclusion::LiftableW2 || a.conclusion == Conclusion::Unknown));
        // every leaf is a base rule
        std::vector<const DerivationNode*> stack;
        if (a.derivation)
            stack.push_back(&*a.derivation);
        while (!stack.empty()) {
            auto* n = stack.back();
            stack.pop_back();
            if (n->children.empty())
                CHECK(std::find(bases.begin(), bases.end(), n->rule) != bases.end());
            for (const auto& c : n->children)
                stack.push_back(&c);
        }
    }
}

TEST_CASE("restriction surjectivity")
{
    ToricVariety p2(builtin_fan("P2"));
    auto o2 = restriction_surjectivity(p2, ToricDivisor::from_ints({2, 0, 0}));
    CHECK(o2.h0 == 6);
    CHECK(o2.h1 == 0);
    CHECK(o2.basis.size() == 6);
    CHECK(o2.status == SurjectivityCertificate::Status::Surjective);
    CHECK(o2.witnesses_agree);
    CHECK_FALSE(o2.flagged);
    REQUIRE(o2.steps.size() == 3);
    CHECK(o2.steps[2].length == 18);

    auto neg = restriction_surjectivity(p2, ToricDivisor::from_ints({-1, 0, 0}));
    CHECK(neg.status == SurjectivityCertificate::Status::Vacuous);
    CHECK(neg.flagged);
    CHECK(neg.basis.empty());

    ToricVariety f1(builtin_fan("F1"));
    for (std::int64_t a = 0; a <= 4; ++a)
        for (std::int64_t b = 0; b <= 4; ++b) {
            auto d = ToricDivisor::from_ints({0, 0, a, b});
            if (!is_nef(f1, d))
                continue;
            auto c = restriction_surjectivity(f1, d);
            CHECK(c.h1 == 0);
            CHECK(c.status == SurjectivityCertificate::Status::Surjective);
            CHECK(c.witnesses_agree);
        }

    // the negative section of F_3
    ToricVariety f3(builtin_fan("F3"));
    auto e = restriction_surjectivity(f3, ToricDivisor::from_ints({0, 1, 0, 0}));
    CHECK(e.h1 == 2);
    CHECK(e.status == SurjectivityCertificate::Status::Inconclusive);
    CHECK(e.steps.empty());

    CHECK_THROWS_AS(restriction_surjectivity(p2, ToricDivisor(RationalVector{q(1, 2), 0, 0})), InputError);
}

TEST_CASE("strong liftability sweep reports coverage")
{
    auto p2 = strong_liftability_sweep(ToricVariety(builtin_fan("P2")), 5);
    CHECK(p2.classes == 15);
    CHECK(p2.certified == 15);
    CHECK(p2.inconclusive.empty());

    auto f3 = strong_liftability_sweep(ToricVariety(builtin_fan("F3")), 2);
    CHECK(f3.classes == f3.certified + f3.inconclusive.size());
    CHECK_FALSE(f3.inconclusive.empty());
    CHECK_THROWS_AS(strong_liftability_sweep(ToricVariety(builtin_fan("P2")), 0), InputError);
}

TEST_CASE("vanishing examples")
{
    ToricVariety p2(builtin_fan("P2"));
    auto a = kv_vanishing(p2, ToricDivisor(RationalVector{q(5, 2), 0, 0}), PrimeP(3));
    CHECK(a.pass);
    CHECK_FALSE(a.perturbed);
    CHECK(a.threshold == 0);
    CHECK(a.dims == std::vector<std::int64_t>{1, 0, 0});
    CHECK(linear_equivalent(p2, a.adjoint, ToricDivisor::from_ints({0, 0, 0})));

    auto b = kv_vanishing(p2, ToricDivisor(RationalVector{q(1, 3), 0, 0}), PrimeP(2));
    CHECK(b.pass);
    CHECK(b.dims == std::vector<std::int64_t>{0, 0, 0});

    ToricVariety p3(builtin_fan("P3"));
    auto c = kv_vanishing(p3, ToricDivisor(RationalVector{q(1, 3), 0, 0, 0}), PrimeP(2));
    CHECK(c.pass);
    CHECK(c.threshold == 1);
    CHECK(c.dims[2] == 0);
    CHECK(c.dims[3] == 0);

    auto d = kv_vanishing(p2, ToricDivisor(RationalVector{q(1, 2), 0, 0}), PrimeP(2));
    CHECK(d.perturbed);
    CHECK(d.used[0].get_den() % 2 != 0);
    CHECK(d.pass);

    CHECK_THROWS_AS(kv_vanishing(p2, ToricDivisor(RationalVector{q(-1, 2), 0, 0}), PrimeP(3)), HypothesisViolation);
    CHECK_THROWS_AS(kv_vanishing(p2, ToricDivisor(RationalVector{0, 0, 0}), PrimeP(3)), HypothesisViolation);
    // no admissible fraction with denominator <= 1
    ToricVariety f1(builtin_fan("F1"));
    CHECK_THROWS_AS(kv_vanishing(f1, ToricDivisor(RationalVector{0, 0, q(1, 2), q(1, 2)}), PrimeP(2), 1),
                    HypothesisViolation);
}
