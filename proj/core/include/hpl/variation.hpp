#pragma once

#include <span>
#include <vector>

#include "hpl/partition.hpp"

namespace hpl {

/// sup over increasing subsequences of Σ |f(x_j) - f(x_{j-1})|^p, exact for
/// functions that are piecewise constant on the grid (the sup over real
/// subdivisions is attained on grid breakpoints). Dynamic program, O(n²).
double p_variation_sum(std::span<const double> f, double p);

/// V_α(f) = (p_variation_sum with p = 1/α)^α. α = 1 is total variation.
double alpha_variation(std::span<const double> f, double alpha);

/// Adaptive dyadic splitting: refine any cell I with E(I) = |I|·V_α(f; I)²
/// above epsilon into two halves, until every cell passes. The piecewise
/// mean f̄ on the result satisfies ‖f - f̄‖₂² ≤ epsilon·|m|.
/// Throws ResolutionError if a single grid cell still violates the budget
/// (cannot happen for f piecewise constant on the grid, where single-cell
/// variation is zero).
DyadicPartition adaptive_alpha_partition(std::span<const double> f, double interval_a,
                                         double interval_length, double alpha,
                                         double epsilon);

/// The two constants governing the adaptive split:
/// c1 = (1 - 2^{-(1/(2α)+1)}) / (1 - 2^{-1/(2α)}) bounds |m|/2^j and
/// c2 = [2^{1+2α}(1 - 2^{-(1/(2α)+1)})^{1-2α} / (1 - 2^{-1/(2α)})]^{1/2}
/// bounds the normalized L2 error.
struct AdaptiveSplitConstants {
  double c1;
  double c2;
};
AdaptiveSplitConstants adaptive_split_constants(double alpha);

/// The epsilon for which the c1/c2 guarantees at scale index j hold:
/// ε = 2L(γ/2)^{-2α} V² with γ = (1 - 2^{-(1/(2α)+1)})·2^{j(1/(2α)+1)}.
double adaptive_split_epsilon(double alpha, int j, double interval_length, double variation);

/// Per-cell means of f over the partition leaves (grid-aligned).
std::vector<double> piecewise_mean(std::span<const double> f, const DyadicPartition& partition);

/// ‖f - f̄‖₂² on the grid, with cell measure `cell_measure`.
double piecewise_mean_error_sq(std::span<const double> f, const DyadicPartition& partition,
                               double cell_measure);

}  // namespace hpl
