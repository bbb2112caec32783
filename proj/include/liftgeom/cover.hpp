#pragma once

// Planning of cyclic covers (N-th roots of a divisor) and Kummer covers
// (m-th roots making a Q-divisor integral) over smooth projective toric
// varieties. Plans are bookkeeping records: the covers themselves are never
// constructed as schemes.

#include "liftgeom/errors.hpp"
#include "liftgeom/qdivisor.hpp"
#include "liftgeom/toric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace liftgeom {

// How smoothness of D_red is certified.
struct SmoothnessEvidence {
    enum class Kind { TorusInvariantDisjoint, Fermat, UserAsserted };

    Kind kind = Kind::TorusInvariantDisjoint;
    int n = 0;               // Fermat: ambient P^n
    std::int64_t degree = 0; // Fermat: x_0^N + ... + x_n^N
    std::uint32_t p = 0;     // Fermat: characteristic
    std::string note;        // UserAsserted: the assertion text

    static SmoothnessEvidence torus_invariant() { return {}; }
    static SmoothnessEvidence fermat(int n, std::int64_t degree, std::uint32_t p)
    {
        return {Kind::Fermat, n, degree, p, {}};
    }
    static SmoothnessEvidence user_asserted(std::string note)
    {
        return {Kind::UserAsserted, 0, 0, 0, std::move(note)};
    }
};

std::string describe(const SmoothnessEvidence& e);

// No two of the given rays lie in a common cone. Throws InputError for an
// unknown ray index.
bool invariant_divisor_smooth(const ToricVariety& x, const std::vector<std::size_t>& rays);

// Smoothness of the Fermat hypersurface x_0^N + ... + x_n^N = 0 in
// characteristic p, i.e. p does not divide N. Throws InputError for n < 1.
bool fermat_smooth(int n, std::int64_t degree, PrimeP p);

struct CyclicCoverPlan {
    Fan base;
    ToricDivisor line_bundle; // a divisor in the class of L
    ToricDivisor branch;      // D
    std::int64_t n = 0;       // N
    std::uint32_t p = 0;
    SmoothnessEvidence evidence;
    std::int64_t degree = 0;
    std::string group;
    std::vector<HypothesisCheck> checks;
};

std::vector<HypothesisCheck> check_cyclic_cover(const ToricVariety& x, const ToricDivisor& l, std::int64_t n,
                                                const ToricDivisor& d, PrimeP p, const SmoothnessEvidence& evidence);

// Throws HypothesisViolation (carrying the checklist) when a hypothesis fails.
CyclicCoverPlan plan_cyclic_cover(const ToricVariety& x, const ToricDivisor& l, std::int64_t n,
                                  const ToricDivisor& d, PrimeP p, const SmoothnessEvidence& evidence);

struct HurwitzReport {
    enum class Verdict { Ample, Trivial, AntiAmple, Indefinite };

    ToricDivisor reduced_branch;        // D_red
    ToricDivisor canonical_class;       // K_X + (N-1)/N D_red
    std::optional<Rational> degree;     // when the base is a projective space
    Verdict verdict = Verdict::Indefinite;
    bool general_type = false;
};

std::string to_string(HurwitzReport::Verdict v);

HurwitzReport hurwitz_canonical(const CyclicCoverPlan& plan);

struct KummerCoverPlan {
    struct Component {
        std::string label;
        Integer a;
        Integer b;
    };
    struct Member {
        std::string component;
        int k = 0;
        ToricDivisor divisor_class; // m M - D_i
    };

    Fan base;
    QDivisor divisor;
    std::uint32_t p = 0;
    Integer multiplier = 1;
    Integer m = 1;
    std::optional<ToricDivisor> very_ample; // M; absent when <D> = 0
    std::vector<Component> components;
    std::size_t member_count = 0;           // |I| * d
    Integer degree_bound = 1;               // m^{|I| d}
    std::string group_bound;
    std::vector<Member> members;
    std::vector<HypothesisCheck> checks;
};

inline constexpr int default_ample_scan_bound = 3;

// Throws HypothesisViolation when the fractional part fails the Kummer
// hypotheses or no suitable M exists within the scan bound.
KummerCoverPlan plan_kummer_cover(const ToricVariety& x, const QDivisor& d, PrimeP p,
                                  const Integer& multiplier = 1, int scan_bound = default_ample_scan_bound);

struct IntegralityReport {
    struct Entry {
        std::string label;
        Rational coefficient;
        Integer ramification;
        Rational pulled_back;
        bool integral = false;
    };
    std::vector<Entry> entries;
    bool integral = true;
};

// Multiplies each coefficient by the ramification index along its component
// (m over the branch components of the plan, 1 elsewhere). A fractional
// coefficient on a component the plan does not ramify over is an InputError.
IntegralityReport pullback_divisor(const KummerCoverPlan& plan, const QDivisor& d);

} // namespace liftgeom
