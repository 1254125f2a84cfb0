#pragma once

#include <vector>

#include "sosc/states.hpp"

namespace sosc::detail {

struct BasisSum {
  GridWave value;
  GridWave dx;  // empty unless requested
};

/// sum_n c_n psi_n and, on request, its closed-form x derivative. `proto`
/// fixes the branch and alpha; its n is ignored.
BasisSum basis_sum(const std::vector<cplx>& coeffs, const BasisIndex& proto, const PhysParams& p,
                   const Envelope& env, std::shared_ptr<const RadialGrid> grid, bool with_derivative,
                   bool normalized);

}  // namespace sosc::detail
