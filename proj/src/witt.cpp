#include "liftgeom/witt.hpp"

#include "liftgeom/errors.hpp"

#include <functional>

namespace liftgeom {

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

PrimeP::PrimeP(std::int64_t p)
{
    if (p < 2 || p >= (std::int64_t{1} << 31) || !is_prime(static_cast<std::uint64_t>(p)))
        throw InputError("p = " + std::to_string(p) + " is not a prime in [2, 2^31)");
    p_ = static_cast<std::uint32_t>(p);
}

WittVector::WittVector(PrimeP p, std::vector<std::uint32_t> coords)
    : p_(p), coords_(std::move(coords))
{
    if (coords_.empty())
        throw InputError("Witt vector must have length >= 1");
    for (std::size_t i = 0; i < coords_.size(); ++i)
        if (coords_[i] >= p_.value())
            throw InputError("Witt coordinate " + std::to_string(i) + " = "
                             + std::to_string(coords_[i]) + " is not in [0, "
                             + std::to_string(p_.value()) + ")");
}

WittVector WittVector::zero(PrimeP p, std::size_t n)
{
    return WittVector(p, std::vector<std::uint32_t>(n, 0));
}

WittVector WittVector::one(PrimeP p, std::size_t n)
{
    std::vector<std::uint32_t> c(n, 0);
    if (n > 0)
        c[0] = 1;
    return WittVector(p, std::move(c));
}

bool WittVector::is_zero() const noexcept
{
    for (auto c : coords_)
        if (c != 0)
            return false;
    return true;
}

namespace {

void require_same_shape(const WittVector& a, const WittVector& b)
{
    if (a.prime() != b.prime())
        throw InputError("Witt vectors over different primes: "
                         + std::to_string(a.prime().value()) + " vs "
                         + std::to_string(b.prime().value()));
    if (a.length() != b.length())
        throw InputError("Witt vectors of different lengths: "
                         + std::to_string(a.length()) + " vs " + std::to_string(b.length()));
}

Integer power(const Integer& base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Integer ipow(std::uint32_t p, std::size_t e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, e);
    return r;
}

unsigned long exponent(std::uint32_t p, std::size_t e)
{
    // p^e as a machine exponent; only used for lengths where this is sane.
    unsigned long r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (r > (1ul << 40) / p)
            throw InputError("Witt length too large for exact ghost arithmetic");
        r *= p;
    }
    return r;
}

std::vector<Integer> ghosts(const WittVector& a)
{
    std::vector<Integer> w(a.length());
    for (std::size_t j = 0; j < a.length(); ++j)
        w[j] = ghost_component(a, j);
    return w;
}

// Recover Witt coordinates from target ghost components.
WittVector from_ghosts(PrimeP prime, const std::vector<Integer>& target)
{
    const std::uint32_t p = prime.value();
    const std::size_t n = target.size();
    std::vector<Integer> s(n);
    std::vector<std::uint32_t> coords(n);
    for (std::size_t j = 0; j < n; ++j) {
        Integer rest = target[j];
        for (std::size_t i = 0; i < j; ++i)
            rest -= ipow(p, i) * power(s[i], exponent(p, j - i));
        Integer pj = ipow(p, j);
        if (!mpz_divisible_p(rest.get_mpz_t(), pj.get_mpz_t()))
            throw ConsistencyError("ghost recursion: coordinate " + std::to_string(j)
                                   + " is not exactly divisible by p^" + std::to_string(j));
        Integer q;
        mpz_divexact(q.get_mpz_t(), rest.get_mpz_t(), pj.get_mpz_t());
        mpz_fdiv_r_ui(q.get_mpz_t(), q.get_mpz_t(), p);
        s[j] = q;
        coords[j] = static_cast<std::uint32_t>(q.get_ui());
    }
    return WittVector(prime, std::move(coords));
}

WittVector combine(const WittVector& a, const WittVector& b,
                   const std::function<Integer(const Integer&, const Integer&)>& op)
{
    require_same_shape(a, b);
    auto wa = ghosts(a), wb = ghosts(b);
    std::vector<Integer> w(a.length());
    for (std::size_t j = 0; j < w.size(); ++j)
        w[j] = op(wa[j], wb[j]);
    return from_ghosts(a.prime(), w);
}

} // namespace

Integer ghost_component(const WittVector& a, std::size_t j)
{
    const std::uint32_t p = a.prime().value();
    if (j >= a.length())
        throw InputError("ghost index out of range");
    Integer w = 0;
    for (std::size_t i = 0; i <= j; ++i)
        w += ipow(p, i) * power(Integer(a[i]), exponent(p, j - i));
    return w;
}

WittVector witt_add(const WittVector& a, const WittVector& b)
{
    return combine(a, b, [](const Integer& x, const Integer& y) { return Integer(x + y); });
}

WittVector witt_mul(const WittVector& a, const WittVector& b)
{
    return combine(a, b, [](const Integer& x, const Integer& y) { return Integer(x * y); });
}

WittVector witt_neg(const WittVector& a)
{
    auto w = ghosts(a);
    for (auto& x : w)
        x = -x;
    return from_ghosts(a.prime(), w);
}

WittVector verschiebung(const WittVector& a)
{
    std::vector<std::uint32_t> c;
    c.reserve(a.length() + 1);
    c.push_back(0);
    c.insert(c.end(), a.coords().begin(), a.coords().end());
    return WittVector(a.prime(), std::move(c));
}

WittVector restriction(const WittVector& a, std::size_t m)
{
    if (m < 1 || m > a.length())
        throw InputError("restriction length " + std::to_string(m) + " outside [1, "
                         + std::to_string(a.length()) + "]");
    return WittVector(a.prime(), {a.coords().begin(), a.coords().begin() + static_cast<std::ptrdiff_t>(m)});
}

WittVector teichmuller(std::int64_t x, PrimeP p, std::size_t n)
{
    if (n == 0)
        throw InputError("Witt vector must have length >= 1");
    std::int64_t r = x % static_cast<std::int64_t>(p.value());
    if (r < 0)
        r += p.value();
    std::vector<std::uint32_t> c(n, 0);
    c[0] = static_cast<std::uint32_t>(r);
    return WittVector(p, std::move(c));
}

WittVector frobenius(const WittVector& a)
{
    const std::uint32_t p = a.prime().value();
    std::vector<std::uint32_t> c(a.length());
    for (std::size_t i = 0; i < c.size(); ++i) {
        Integer x;
        mpz_ui_pow_ui(x.get_mpz_t(), a[i], p);
        mpz_fdiv_r_ui(x.get_mpz_t(), x.get_mpz_t(), p);
        c[i] = static_cast<std::uint32_t>(x.get_ui());
    }
    return WittVector(a.prime(), std::move(c));
}

Integer to_zmod(const WittVector& a)
{
    Integer w = ghost_component(a, a.length() - 1);
    Integer modulus = ipow(a.prime().value(), a.length());
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), w.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

std::string format_witt(const WittVector& a)
{
    std::string out;
    for (std::size_t i = 0; i < a.length(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(a[i]);
    }
    return out;
}

WittVector parse_witt(std::string_view text, PrimeP p)
{
    std::vector<std::uint32_t> coords;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        auto token = text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
        if (token.empty())
            throw InputError("empty coordinate in Witt vector \"" + std::string(text) + "\"");
        for (char ch : token)
            if (ch < '0' || ch > '9')
                throw InputError("non-numeric coordinate in Witt vector \"" + std::string(text) + "\"");
        if (token.size() > 10)
            throw InputError("coordinate too large in Witt vector \"" + std::string(text) + "\"");
        auto value = std::stoull(std::string(token));
        if (value >= p.value())
            throw InputError("Witt coordinate " + std::string(token) + " is not in [0, "
                             + std::to_string(p.value()) + ")");
        coords.push_back(static_cast<std::uint32_t>(value));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return WittVector(p, std::move(coords));
}

} // namespace liftgeom
