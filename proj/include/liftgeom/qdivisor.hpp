#pragma once

#include "liftgeom/exact.hpp"
#include "liftgeom/witt.hpp"

#include <map>
#include <string>
#include <vector>

namespace liftgeom {

// A finite formal sum of prime divisors with rational coefficients. Labels are
// opaque strings; for divisors on a toric variety they are decimal ray indices.
// Coefficients are kept in lowest terms and zero coefficients are never stored.
class QDivisor {
public:
    using Map = std::map<std::string, Rational>;

    QDivisor() = default;
    explicit QDivisor(const Map& coeffs);

    const Map& coeffs() const noexcept { return coeffs_; }
    Rational coeff(const std::string& label) const;
    void set(const std::string& label, Rational value);

    bool is_integral() const;
    bool empty() const noexcept { return coeffs_.empty(); }

    friend bool operator==(const QDivisor&, const QDivisor&) = default;
    friend QDivisor operator+(const QDivisor& a, const QDivisor& b);
    friend QDivisor operator-(const QDivisor& a);
    friend QDivisor operator-(const QDivisor& a, const QDivisor& b) { return a + (-b); }
    friend QDivisor operator*(const Rational& s, const QDivisor& a);

private:
    Map coeffs_;
};

QDivisor round_down(const QDivisor& b);
QDivisor round_up(const QDivisor& b);
QDivisor frac_part(const QDivisor& b);

struct KummerComponentCheck {
    std::string label;
    Integer a;
    Integer b;
    bool proper = false;       // 0 < a < b
    bool coprime = false;      // gcd(a, b) = 1
    bool prime_to_p = false;   // p does not divide b

    bool passed() const { return proper && coprime && prime_to_p; }
};

struct KummerHypothesisReport {
    std::uint32_t p = 0;
    std::vector<KummerComponentCheck> components;
    bool pass = true;
};

KummerHypothesisReport check_kummer_hypotheses(const QDivisor& b, PrimeP p);

inline constexpr unsigned default_perturbation_bound = 50;

// Moves every fractional part whose denominator is divisible by p to the
// nearest fraction in (0, 1) with denominator <= denom_bound prime to p,
// breaking ties upward. Integer parts, and therefore the round-up, are kept.
// Throws HypothesisViolation when no admissible fraction exists.
QDivisor perturb_coeffs(const QDivisor& b, PrimeP p, unsigned denom_bound = default_perturbation_bound);

} // namespace liftgeom
