#pragma once

// Liftability certificates over W_2(k) and W(k).
//
// A certificate is a derivation tree; every node applies one rule from a
// fixed catalogue and records the conclusion it licenses:
//
//   Thm5.8i    A^n, P^n, smooth projective curves     strongly liftable / W(k)
//   Thm5.8ii   Picard-number-1 complete intersections strongly liftable / W(k)
//   Thm5.10    smooth projective toric varieties      strongly liftable / W(k)
//   Thm5.11    rational surfaces presented as blow-up chains over P^2 or F_n
//   Prop5.6    blow-up at a point, dim >= 2           keeps strong liftability
//   Cor5.13    cyclic cover of a toric variety        liftable / W(k)
//   Thm3.1iii  Kummer cover of a strongly liftable X  liftable / W_2(k)
//
// The system is sound but incomplete: anything it cannot derive is "unknown".

#include "liftgeom/cover.hpp"
#include "liftgeom/toric.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace liftgeom {

enum class Conclusion { Unknown, LiftableW2, LiftableW, StronglyLiftableW2, StronglyLiftableW };

std::string to_string(Conclusion c);
Conclusion parse_conclusion(std::string_view text);
// Order of the conclusion lattice: W(k) above W_2(k), strong above plain.
bool implies(Conclusion stronger, Conclusion weaker);

struct VarietyDescription;
using VarietyPtr = std::shared_ptr<const VarietyDescription>;

struct AffineSpace { int n = 0; };
struct ProjectiveSpace { int n = 0; };
struct SmoothProjectiveCurve { int genus = 0; };
struct CompleteIntersectionPicardOne {
    int n = 0;                     // ambient P^n
    std::vector<int> multidegrees;
};
struct Toric { Fan fan; };
struct BlowupAtPoint { VarietyPtr inner; };
struct CyclicCoverOf { VarietyPtr inner; CyclicCoverPlan plan; };
struct KummerCoverOf { VarietyPtr inner; KummerCoverPlan plan; };
struct UnknownVariety { std::string text; };

struct VarietyDescription {
    std::variant<AffineSpace, ProjectiveSpace, SmoothProjectiveCurve, CompleteIntersectionPicardOne, Toric,
                 BlowupAtPoint, CyclicCoverOf, KummerCoverOf, UnknownVariety>
        value;
};

template <typename T>
VarietyPtr make_variety(T value)
{
    return std::make_shared<const VarietyDescription>(VarietyDescription{std::move(value)});
}

inline constexpr int max_description_depth = 64;

// Throws InputError for malformed or too-deep descriptions.
std::optional<int> dimension(const VarietyDescription& v);

struct DerivationNode {
    std::string rule;
    Conclusion conclusion = Conclusion::Unknown;
    std::string subject;
    std::vector<DerivationNode> children;
};

struct Certificate {
    Conclusion conclusion = Conclusion::Unknown;
    std::optional<DerivationNode> derivation; // empty exactly when unknown
};

Certificate classify(const VarietyDescription& v);

// Re-applies the rule catalogue bottom-up and returns the conclusion the tree
// licenses. Throws ConsistencyError on an ill-formed application.
Conclusion replay(const DerivationNode& node);

struct SurjectivityCertificate {
    enum class Status { Surjective, Vacuous, Inconclusive };
    struct LiftStep {
        int level;              // W_level
        std::int64_t length;    // length of H^0(X_level, L_level) as a W-module
    };

    ToricDivisor divisor;
    std::int64_t h0 = 0;
    std::int64_t h1 = 0;
    std::vector<IntVector> basis; // lattice points whose monomials lift coordinate-wise
    Status status = Status::Inconclusive;
    bool flagged = false;         // vacuous pass
    bool witnesses_agree = false; // |basis| == h0
    std::vector<LiftStep> steps;
};

std::string to_string(SurjectivityCertificate::Status s);

inline constexpr int default_lift_levels = 3;

// Surjectivity of H^0 of a lift onto H^0(X, O(D)), certified by h^1(O(D)) = 0
// stepwise along 0 -> W_1 -> W_{n+1} -> W_n -> 0.
SurjectivityCertificate restriction_surjectivity(const ToricVariety& x, const ToricDivisor& d,
                                                 int levels = default_lift_levels);

struct SweepReport {
    int bound = 0;
    std::size_t classes = 0;
    std::size_t certified = 0;
    std::vector<ToricDivisor> inconclusive;
};

inline constexpr int default_sweep_bound = 5;

// Runs restriction_surjectivity on one representative of every class of
// non-zero effective invariant divisors with coefficients in [0, bound].
SweepReport strong_liftability_sweep(const ToricVariety& x, int bound = default_sweep_bound);

struct VanishingReport {
    ToricDivisor divisor;           // as given
    ToricDivisor used;              // after perturbation, if any
    bool perturbed = false;
    std::uint32_t p = 0;
    int dim = 0;
    int threshold = 0;              // vanishing asserted for i > threshold
    ToricDivisor adjoint;           // K_X + round_up(used)
    std::vector<std::int64_t> dims; // h^0 .. h^d of the adjoint
    bool pass = false;
};

// H^i(X, K_X + round_up(D)) = 0 for i > d - min(d, p), D ample. Throws
// HypothesisViolation when D is not ample (before or after perturbation) or
// the perturbation fails within its bound.
VanishingReport kv_vanishing(const ToricVariety& x, const ToricDivisor& d, PrimeP p,
                             unsigned denom_bound = default_perturbation_bound);

} // namespace liftgeom
