#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hpl/grid.hpp"

namespace hpl {

struct PiecewisePolyResult {
  std::vector<double> approx;  // on the input grid
  double error_l2_sq;          // ‖f - approx‖₂² in L2(λ)
  std::size_t dimension;       // (r+1)^k · ∏ N_j
};

/// L2 projection of a grid function on [0,1)^k (k ≤ 2) onto piecewise
/// tensor-product polynomials of per-variable degree ≤ r (r ≤ 2) over the
/// regular partition into ∏ N_j boxes. Each box uses a discrete
/// orthonormal polynomial basis built on its own grid points, so the
/// projection is exact linear algebra, no quadrature.
PiecewisePolyResult piecewise_poly_approx(const GridFunction& f,
                                          std::span<const std::size_t> cells_per_axis,
                                          int degree);

}  // namespace hpl
