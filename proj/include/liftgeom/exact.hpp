#pragma once

// Exact integer and rational arithmetic shared by every engine. Nothing in
// this library touches floating point.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace liftgeom {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

// Accepts "n", "-n", "n/d"; the result is canonicalized. Throws InputError.
Rational parse_rational(std::string_view text);
// "n" when integral, otherwise "n/d" in lowest terms.
std::string to_string(const Rational& q);

Integer lcm(const Integer& a, const Integer& b);
std::int64_t gcd_i64(std::int64_t a, std::int64_t b);

// Narrowing with a range check; throws InputError on overflow.
std::int64_t to_i64(const Integer& z);

Integer determinant(const IntMatrix& rows);
std::size_t rank(RationalMatrix m);

// Unique solution of a square system A x = b, or nullopt when A is singular.
std::optional<RationalVector> solve_square(const RationalMatrix& a, const RationalVector& b);

} // namespace liftgeom
