#include "liftgeom/qdivisor.hpp"

#include "liftgeom/errors.hpp"

namespace liftgeom {

QDivisor::QDivisor(const Map& coeffs)
{
    for (const auto& [label, value] : coeffs)
        set(label, value);
}

Rational QDivisor::coeff(const std::string& label) const
{
    auto it = coeffs_.find(label);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void QDivisor::set(const std::string& label, Rational value)
{
    value.canonicalize();
    if (value == 0)
        coeffs_.erase(label);
    else
        coeffs_[label] = value;
}

bool QDivisor::is_integral() const
{
    for (const auto& [label, value] : coeffs_)
        if (!liftgeom::is_integral(value))
            return false;
    return true;
}

QDivisor operator+(const QDivisor& a, const QDivisor& b)
{
    QDivisor r = a;
    for (const auto& [label, value] : b.coeffs_)
        r.set(label, r.coeff(label) + value);
    return r;
}

QDivisor operator-(const QDivisor& a)
{
    return Rational(-1) * a;
}

QDivisor operator*(const Rational& s, const QDivisor& a)
{
    QDivisor r;
    for (const auto& [label, value] : a.coeffs_)
        r.set(label, s * value);
    return r;
}

QDivisor round_down(const QDivisor& b)
{
    QDivisor r;
    for (const auto& [label, value] : b.coeffs())
        r.set(label, Rational(floor(value)));
    return r;
}

QDivisor round_up(const QDivisor& b)
{
    QDivisor r;
    for (const auto& [label, value] : b.coeffs())
        r.set(label, Rational(ceil(value)));
    return r;
}

QDivisor frac_part(const QDivisor& b)
{
    QDivisor r;
    for (const auto& [label, value] : b.coeffs())
        r.set(label, value - Rational(floor(value)));
    return r;
}

KummerHypothesisReport check_kummer_hypotheses(const QDivisor& b, PrimeP p)
{
    KummerHypothesisReport report;
    report.p = p.value();
    const auto frac = frac_part(b);
    for (const auto& [label, value] : frac.coeffs()) {
        KummerComponentCheck c;
        c.label = label;
        c.a = value.get_num();
        c.b = value.get_den();
        c.proper = 0 < c.a && c.a < c.b;
        Integer g;
        mpz_gcd(g.get_mpz_t(), c.a.get_mpz_t(), c.b.get_mpz_t());
        c.coprime = g == 1;
        c.prime_to_p = !mpz_divisible_ui_p(c.b.get_mpz_t(), p.value());
        report.pass = report.pass && c.passed();
        report.components.push_back(std::move(c));
    }
    return report;
}

namespace {

bool admissible_denominator(unsigned den, PrimeP p)
{
    return den % p.value() != 0;
}

} // namespace

QDivisor perturb_coeffs(const QDivisor& b, PrimeP p, unsigned denom_bound)
{
    QDivisor out;
    for (const auto& [label, value] : b.coeffs()) {
        Integer whole = floor(value);
        Rational frac = value - Rational(whole);
        if (frac == 0 || !mpz_divisible_ui_p(frac.get_den_mpz_t(), p.value())) {
            out.set(label, value);
            continue;
        }
        std::optional<Rational> best;
        Rational best_dist;
        for (unsigned den = 2; den <= denom_bound; ++den) {
            if (!admissible_denominator(den, p))
                continue;
            for (unsigned num = 1; num < den; ++num) {
                Rational cand(num, den);
                cand.canonicalize();
                if (cand.get_den() != den)
                    continue; // seen with a smaller denominator
                Rational dist = abs(cand - frac);
                if (!best || dist < best_dist || (dist == best_dist && cand > *best)) {
                    best = cand;
                    best_dist = dist;
                }
            }
        }
        if (!best)
            throw HypothesisViolation("no fraction in (0,1) with denominator <= "
                                      + std::to_string(denom_bound) + " prime to p = "
                                      + std::to_string(p.value()) + " for component " + label);
        out.set(label, Rational(whole) + *best);
    }
    return out;
}

} // namespace liftgeom
