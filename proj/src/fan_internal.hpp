#pragma once

#include "liftgeom/toric.hpp"

#include <optional>
#include <vector>

namespace liftgeom::detail {

inline std::int64_t dot(const IntVector& a, const IntVector& b)
{
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

// u_0..u_{d-1} with <v_{cone[i]}, u_j> = delta_ij, or nullopt unless the cone
// has exactly d generators with determinant +-1.
std::optional<IntMatrix> unimodular_dual_basis(const Fan& fan, const std::vector<int>& cone);

// Walls of a smooth fan in which every facet of a maximal cone is shared by
// exactly one other maximal cone; nullopt when that pairing fails. Problems
// are appended to the list.
std::optional<std::vector<ToricVariety::Wall>>
pair_facets(const Fan& fan, const std::vector<IntMatrix>& duals, std::vector<std::string>& problems);

// Coefficients c (length #rays) of the linear form a -> <m_sigma(a), v_rho'> + a_rho'
// attached to a wall.
IntVector wall_form(const Fan& fan, const IntMatrix& dual, std::size_t cone, std::size_t opposite_ray);

} // namespace liftgeom::detail
