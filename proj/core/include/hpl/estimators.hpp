#pragma once

#include <optional>
#include <span>

#include "hpl/grid.hpp"
#include "hpl/net.hpp"
#include "hpl/process.hpp"

namespace hpl {

struct EstimatorReport {
  GridFunction raw;         // the estimator before clipping; may be signed
  GridIntensity estimate;   // positive part
  std::optional<double> loss_l2_sq;         // ‖raw − s‖₂² when truth supplied
  std::optional<double> loss_hellinger_sq;  // H²(estimate, s)
};

/// ŝ = Σ_j [Σ_i φ_j(X_i)] φ_j for an orthonormal basis. Clipping the
/// negative part can only reduce the risk against a nonnegative truth.
EstimatorReport projection_estimator(const PointSample& sample, const BasisSpec& basis,
                                     const GridIntensity* truth = nullptr);

/// Partition cells as half-open grid index ranges [begin, end).
using CellRanges = std::vector<std::pair<std::size_t, std::size_t>>;

/// ŝ_m = Σ_j N_j/λ(I_j)·1_{I_j}: counts over cell measures.
EstimatorReport histogram_estimator(const PointSample& sample, const CellRanges& cells,
                                    const GridIntensity* truth = nullptr);

/// The projection s̄_m of the truth onto the same piecewise-constant space.
GridIntensity histogram_projection(const GridIntensity& truth, const CellRanges& cells);

struct AggregateResult {
  GridFunction raw;
  GridIntensity estimate;
  std::size_t retained_dim;  // rank kept by the span orthonormalization
};

/// Aggregation by sample splitting: orthonormalizes the span of the
/// first-half estimates (dropping directions below rank_tol), projects
/// empirically with the second-half sample, and rescales by 1/(1-p).
AggregateResult rt_aggregate(std::span<const GridIntensity> estimates,
                             const PointSample& sample2, double p,
                             double rank_tol = 1e-10);

/// Gram-Schmidt with rank revelation: directions whose residual norm falls
/// below rank_tol times the largest input norm are dropped.
std::vector<GridFunction> orthonormalize(std::span<const GridFunction> fns,
                                         double rank_tol = 1e-10);

struct LinearAggregationParams {
  double theta_scale = 0.5;  // lattice pitch = scale · 2η_m/√dim
  std::size_t max_inputs = 12;
  std::size_t max_candidates = 10'000'000;
};

/// Builds the candidate nets for linear aggregation on the √ scale: one
/// model per nonvoid subset m of the estimates, spanning {√ŝ_j, j ∈ m},
/// discretized to a lattice net with Δ_m = log C(k,|m|) + 2 log|m| and
/// η_m² = 84Δ_m (floored by the dimension condition). Returns the merged
/// net; run the selection engine on the second sample to aggregate.
Net linear_aggregation_net(std::span<const GridIntensity> estimates, double n_observed,
                           const LinearAggregationParams& params = {});

}  // namespace hpl
