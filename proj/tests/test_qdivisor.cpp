#include "doctest.h"

#include "oracles.hpp"

#include "liftgeom/errors.hpp"
#include "liftgeom/qdivisor.hpp"

using namespace liftgeom;

namespace {

Rational q(long n, long d)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

} // namespace

TEST_CASE("rounding acts coefficient-wise")
{
    QDivisor b({{"A", q(7, 3)}, {"B", q(-1, 2)}, {"C", q(4, 1)}});
    CHECK(round_down(b) == QDivisor({{"A", 2}, {"B", -1}, {"C", 4}}));
    CHECK(round_up(b) == QDivisor({{"A", 3}, {"C", 4}}));
    CHECK(frac_part(b) == QDivisor({{"A", q(1, 3)}, {"B", q(1, 2)}}));
}

TEST_CASE("zero coefficients are never stored")
{
    QDivisor b;
    b.set("x", q(1, 2));
    b.set("x", 0);
    CHECK(b.empty());
    CHECK((QDivisor({{"a", 1}}) - QDivisor({{"a", 1}})).empty());
}

TEST_CASE("rounding identities on random divisors")
{
    auto g = oracle::rng(3);
    for (int t = 0; t < 500; ++t) {
        QDivisor b;
        for (int i = 0; i < 4; ++i)
            b.set(std::to_string(i), q(oracle::uniform(g, -40, 40), oracle::uniform(g, 1, 12)));
        CHECK(round_down(b) + frac_part(b) == b);
        CHECK((round_up(b) - b).coeffs().size() <= b.coeffs().size());
        const auto frac = frac_part(b);
        for (const auto& [label, c] : frac.coeffs()) {
            CHECK(c > 0);
            CHECK(c < 1);
        }
        CHECK(round_up(b) == -round_down(-b));
        CHECK(round_down(b).is_integral());
    }
}

TEST_CASE("Kummer hypotheses per component")
{
    auto r = check_kummer_hypotheses(QDivisor({{"a", q(1, 3)}, {"b", q(5, 2)}}), PrimeP(2));
    CHECK_FALSE(r.pass);
    REQUIRE(r.components.size() == 2);
    CHECK(r.components[0].passed());
    CHECK(r.components[1].a == 1);
    CHECK(r.components[1].b == 2);
    CHECK_FALSE(r.components[1].prime_to_p);
    CHECK(check_kummer_hypotheses(QDivisor({{"a", q(2, 5)}}), PrimeP(3)).pass);
    CHECK(check_kummer_hypotheses(QDivisor({{"a", 3}}), PrimeP(3)).components.empty());
}

TEST_CASE("perturbation picks the nearest admissible fraction, ties upward")
{
    // 1/2 with p = 2: 1/3 and 2/3 are equally near within bound 3
    CHECK(perturb_coeffs(QDivisor({{"a", q(1, 2)}}), PrimeP(2), 3) == QDivisor({{"a", q(2, 3)}}));
    // the integer part is kept
    CHECK(perturb_coeffs(QDivisor({{"a", q(5, 2)}}), PrimeP(2), 3) == QDivisor({{"a", q(8, 3)}}));
    // denominators already prime to p are left alone
    CHECK(perturb_coeffs(QDivisor({{"a", q(1, 5)}}), PrimeP(2), 3) == QDivisor({{"a", q(1, 5)}}));
    CHECK_THROWS_AS(perturb_coeffs(QDivisor({{"a", q(1, 2)}}), PrimeP(2), 2), HypothesisViolation);
}

TEST_CASE("perturbation post-conditions on random input")
{
    auto g = oracle::rng(5);
    for (std::uint32_t p : {2u, 3u, 5u})
        for (int t = 0; t < 300; ++t) {
            QDivisor b;
            for (int i = 0; i < 3; ++i)
                b.set(std::to_string(i), q(oracle::uniform(g, -30, 30), oracle::uniform(g, 1, 20)));
            auto c = perturb_coeffs(b, PrimeP(p), 50);
            CHECK(round_up(c) == round_up(b));
            CHECK(check_kummer_hypotheses(c, PrimeP(p)).pass);
            for (const auto& [label, v] : b.coeffs()) {
                if (v.get_den() % p != 0) {
                    CHECK(c.coeff(label) == v);
                    continue;
                }
                // nothing admissible is strictly closer
                Rational best = abs(c.coeff(label) - v);
                Integer base = floor(v);
                for (unsigned den = 1; den <= 50; ++den) {
                    if (den % p == 0)
                        continue;
                    for (unsigned num = 1; num < den; ++num)
                        CHECK(abs(Rational(base) + q(num, den) - v) >= best);
                }
            }
        }
}
