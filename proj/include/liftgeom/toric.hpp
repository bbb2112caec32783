#pragma once

// Smooth complete toric varieties given by their fans.
//
// Conventions: a torus-invariant divisor D = sum_rho a_rho D_rho has polytope
// P_D = { m in M : <m, v_rho> >= -a_rho for all rho }, its support function is
// the piecewise-linear psi with psi(v_rho) = -a_rho, and on the maximal cone
// sigma psi agrees with the linear form m_sigma determined by
// <m_sigma, v_rho> = -a_rho for rho in sigma.

#include "liftgeom/exact.hpp"
#include "liftgeom/qdivisor.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace liftgeom {

using RayMask = std::uint64_t;
inline constexpr std::size_t max_rays = 64;

struct Fan {
    int dim = 0;
    std::vector<IntVector> rays;
    std::vector<std::vector<int>> max_cones;

    friend bool operator==(const Fan&, const Fan&) = default;
};

// Builds a fan after shape checks only: every ray has dim entries and is
// non-zero, rays are pairwise distinct, cone indices are in range and not
// repeated within a cone. Cone index lists are sorted. Throws InputError.
Fan make_fan(int dim, std::vector<IntVector> rays, std::vector<std::vector<int>> max_cones);

struct ValidationReport {
    bool primitive = false;
    bool smooth = false;
    bool complete = false;
    bool projective = false;
    std::vector<std::string> problems;
    // Integral divisor with strictly convex support function, when projective.
    std::optional<IntVector> ample_witness;

    bool ok() const { return primitive && smooth && complete && projective; }
};

ValidationReport validate_fan(const Fan& fan);

Fan projective_space_fan(int n);
Fan hirzebruch_fan(int n);
Fan p1xp1_fan();
// "P<n>", "P1xP1", "F<n>", "Bl1P2". Throws InputError for unknown names.
Fan builtin_fan(std::string_view name);

// Star subdivision of a smooth maximal cone: adds the sum of its generators.
Fan blowup_fixed_point(const Fan& fan, std::size_t cone);

// True when some lattice automorphism carries rays to rays and cones to cones.
bool fans_isomorphic(const Fan& a, const Fan& b);

class ToricDivisor {
public:
    ToricDivisor() = default;
    explicit ToricDivisor(RationalVector coeffs) : a_(std::move(coeffs)) {}
    static ToricDivisor from_ints(const IntVector& coeffs);
    // Labels must be decimal ray indices below num_rays.
    static ToricDivisor from_qdivisor(const QDivisor& q, std::size_t num_rays);

    std::size_t size() const noexcept { return a_.size(); }
    const RationalVector& coeffs() const noexcept { return a_; }
    const Rational& operator[](std::size_t i) const { return a_.at(i); }

    bool is_integral() const;
    bool is_effective() const;
    // Throws InputError unless integral and within 64-bit range.
    IntVector integral_coeffs() const;
    QDivisor to_qdivisor() const;

    friend bool operator==(const ToricDivisor&, const ToricDivisor&) = default;
    friend ToricDivisor operator+(const ToricDivisor& a, const ToricDivisor& b);
    friend ToricDivisor operator-(const ToricDivisor& a, const ToricDivisor& b);
    friend ToricDivisor operator*(const Rational& s, const ToricDivisor& a);

private:
    RationalVector a_;
};

// A fan that passed the smoothness and completeness checks, together with
// the data the engines need: per-cone dual bases, walls and the face poset.
class ToricVariety {
public:
    // Throws InputError unless the fan is primitive, smooth and complete.
    explicit ToricVariety(Fan fan);

    const Fan& fan() const noexcept { return fan_; }
    int dim() const noexcept { return fan_.dim; }
    std::size_t num_rays() const noexcept { return fan_.rays.size(); }
    std::size_t num_cones() const noexcept { return fan_.max_cones.size(); }
    const ValidationReport& validation() const noexcept { return report_; }
    bool projective() const noexcept { return report_.projective; }
    void require_projective() const;

    struct Wall {
        std::size_t cone;
        std::size_t other_cone;
        std::size_t opposite_ray; // the ray of other_cone outside the shared facet
    };
    const std::vector<Wall>& walls() const noexcept { return walls_; }
    const std::vector<RayMask>& cone_masks() const noexcept { return cone_masks_; }
    // All cones of the fan (faces of maximal cones) including {0}, grouped by
    // number of rays.
    const std::vector<std::vector<RayMask>>& faces_by_size() const noexcept { return faces_; }
    // Columns u_j with <v_{sigma_i}, u_j> = delta_ij for maximal cone sigma.
    const IntMatrix& dual_basis(std::size_t cone) const { return duals_.at(cone); }

    bool rays_share_cone(std::size_t i, std::size_t j) const;

    // Dimensions of reduced cohomology H~^{i-1} of the full subcomplex of the
    // fan on the given ray set, for i = 0..dim. Memoized; thread-safe.
    std::vector<std::int64_t> subcomplex_cohomology(RayMask rays) const;

private:
    struct Cache;

    Fan fan_;
    ValidationReport report_;
    std::vector<Wall> walls_;
    std::vector<RayMask> cone_masks_;
    std::vector<std::vector<RayMask>> faces_;
    std::vector<IntMatrix> duals_;
    std::shared_ptr<Cache> cache_;
};

void require_divisor_on(const ToricVariety& x, const ToricDivisor& d);

ToricDivisor canonical_divisor(const ToricVariety& x);

// m_sigma for every maximal cone.
std::vector<RationalVector> local_characters(const ToricVariety& x, const ToricDivisor& d);
bool is_nef(const ToricVariety& x, const ToricDivisor& d);
bool is_ample(const ToricVariety& x, const ToricDivisor& d);

// m with a_rho(d1) - a_rho(d2) = <m, v_rho> for every rho, if one exists.
std::optional<RationalVector> linear_equivalent(const ToricVariety& x, const ToricDivisor& d1,
                                                const ToricDivisor& d2);
std::size_t class_group_rank(const ToricVariety& x);
// The representative of the class of d vanishing on the rays of cone 0.
ToricDivisor normalized_representative(const ToricVariety& x, const ToricDivisor& d);

struct Box {
    IntVector lo;
    IntVector hi;
};

// Axis box around every vertex of the hyperplane arrangement
// <m, v_rho> = -a_rho, padded by one.
Box arrangement_box(const ToricVariety& x, const IntVector& a);

struct CohomReport {
    ToricDivisor divisor;
    std::vector<std::int64_t> dims;          // h^0 .. h^d
    std::vector<std::int64_t> witness_counts; // lattice points with a non-zero piece, per degree
    std::int64_t euler_check = 0;            // alternating Cech chain count
    Box box;

    std::int64_t euler() const;
};

// Lattice points of P_D for integral D, in lexicographic order.
std::vector<IntVector> sections(const ToricVariety& x, const ToricDivisor& d);

// H^i(X, O(D)) degree by degree from full subcomplexes of the fan. Throws
// ConsistencyError if doubling the search box changes a total or the Cech
// Euler count disagrees.
CohomReport cohomology(const ToricVariety& x, const ToricDivisor& d);
std::int64_t cohomology(const ToricVariety& x, const ToricDivisor& d, int i);

// Independent route: the m-graded Cech complex of the affine cover by
// maximal cones, summed over a Cramer-bound box. Returns h^0 .. h^{#cones-1}.
std::vector<std::int64_t> cech_cohomology(const ToricVariety& x, const ToricDivisor& d);

std::int64_t euler_characteristic(const ToricVariety& x, const ToricDivisor& d);

} // namespace liftgeom
