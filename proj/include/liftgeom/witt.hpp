#pragma once

// Truncated Witt vectors W_n(F_p).
//
// Arithmetic is carried out through ghost components: coordinates are lifted
// canonically to [0, p), the ghost sums
//
//     w_j(x) = sum_{i <= j} p^i x_i^(p^(j-i))
//
// are combined, and the result coordinates are recovered one at a time by an
// exact division by p^j. The division is checked, never rounded; a remainder
// means the implementation is wrong and raises ConsistencyError.

#include "liftgeom/exact.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace liftgeom {

bool is_prime(std::uint64_t n);

// A prime 2 <= p < 2^31.
class PrimeP {
public:
    explicit PrimeP(std::int64_t p);

    std::uint32_t value() const noexcept { return p_; }
    friend bool operator==(PrimeP, PrimeP) = default;

private:
    std::uint32_t p_;
};

class WittVector {
public:
    // Throws InputError when a coordinate is outside [0, p) or coords is empty.
    WittVector(PrimeP p, std::vector<std::uint32_t> coords);

    static WittVector zero(PrimeP p, std::size_t n);
    static WittVector one(PrimeP p, std::size_t n);

    PrimeP prime() const noexcept { return p_; }
    std::size_t length() const noexcept { return coords_.size(); }
    std::span<const std::uint32_t> coords() const noexcept { return coords_; }
    std::uint32_t operator[](std::size_t i) const { return coords_.at(i); }

    bool is_zero() const noexcept;

    friend bool operator==(const WittVector&, const WittVector&) = default;

private:
    PrimeP p_;
    std::vector<std::uint32_t> coords_;
};

WittVector witt_add(const WittVector& a, const WittVector& b);
WittVector witt_mul(const WittVector& a, const WittVector& b);
WittVector witt_neg(const WittVector& a);
inline WittVector witt_sub(const WittVector& a, const WittVector& b) { return witt_add(a, witt_neg(b)); }

inline WittVector operator+(const WittVector& a, const WittVector& b) { return witt_add(a, b); }
inline WittVector operator*(const WittVector& a, const WittVector& b) { return witt_mul(a, b); }
inline WittVector operator-(const WittVector& a) { return witt_neg(a); }
inline WittVector operator-(const WittVector& a, const WittVector& b) { return witt_sub(a, b); }

// V: W_n -> W_{n+1}, (a_0..a_{n-1}) -> (0, a_0..a_{n-1}).
WittVector verschiebung(const WittVector& a);
// First m coordinates (the (n-m)-fold restriction R). Requires 1 <= m <= n.
WittVector restriction(const WittVector& a, std::size_t m);
// (x mod p, 0, ..., 0) of length n.
WittVector teichmuller(std::int64_t x, PrimeP p, std::size_t n);
// Coordinate-wise p-th power; the identity over F_p.
WittVector frobenius(const WittVector& a);
// The ring isomorphism W_n(F_p) -> Z/p^n, a -> w_{n-1}(a~) mod p^n.
Integer to_zmod(const WittVector& a);

// Ghost component w_j of the canonical lift of a.
Integer ghost_component(const WittVector& a, std::size_t j);

// Comma-separated coordinates, a_0 first.
std::string format_witt(const WittVector& a);
WittVector parse_witt(std::string_view text, PrimeP p);

} // namespace liftgeom
