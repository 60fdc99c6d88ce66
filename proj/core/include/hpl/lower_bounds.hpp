#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "hpl/grid.hpp"
#include "hpl/process.hpp"
#include "hpl/rng.hpp"

namespace hpl {

/// A hypercube-indexed family of intensities on [0, 1]:
///   s_δ = a^{-1}[1 + Σ_j (δ_j - 1/2) g_j],  δ ∈ {0,1}^D,
/// where g_j translates a bump g supported on [0, 1/D) with 0 ≤ g ≤ 1 and
/// a = ∫g² > 0. Then ‖s_δ - s_δ'‖₂² = a^{-1}Δ(δ, δ') exactly and every
/// coordinate flip contributes the same Hellinger amount c ∈ [Δ/8, Δ/7].
class AssouadFamily {
 public:
  AssouadFamily(std::size_t d, GridFunction g);

  std::size_t dim() const { return d_; }
  double a() const { return a_; }
  const GridFunction& g() const { return g_; }

  /// H² between members differing in exactly one coordinate.
  double per_coordinate_hsq() const { return c_; }

  GridIntensity member(std::uint64_t delta_bits) const;
  std::uint64_t member_count_log2() const { return d_; }

 private:
  std::size_t d_;
  GridFunction g_;
  double a_;
  double c_;
  std::size_t block_cells_;
};

/// Validates the bump and builds the family (g as grid values on the [0,1]
/// grid, supported in the first 1/D block; D must divide the cell count).
AssouadFamily build_perturbation_family(std::size_t d, const GridFunction& g);

/// Flat bump g = √(D/θ)·1_{[0,1/D)} with θ = 2L/3; every member satisfies
/// ‖s_δ‖_∞ ≤ L. Requires L ≥ 3D/2.
AssouadFamily build_flat_family(std::size_t d, double l, int resolution);

/// Triangular bump g(x) = x ∧ (1/D - x) on [0, 1/D], discretized per cell as
/// √(mean of g²) so that ∫g² = (12D³)^{-1} holds exactly on the grid.
/// Member values lie in [9D³, 15D³] and √s_δ has small α-variation.
/// Requires at least 64·D grid cells.
AssouadFamily build_triangular_family(std::size_t d, int resolution);

/// |C|^{-1} Σ_{(δ,δ') ∈ C} exp[-2H²(s_δ, s_δ')] over the neighbor-pair set
/// (|C| = D·2^{D-1}); enumerated for D ≤ 16, seeded sampling above.
double assouad_average(const AssouadFamily& family, std::size_t sample_cap = 1u << 16,
                       Seed seed = {});

/// The minimax bound (Dθ/16)·average, where θ is the d²-to-Hamming ratio of
/// the family (θ = 1/a for the L2 distance on these constructions).
double assouad_lower_bound(const AssouadFamily& family, double theta);
double assouad_lower_bound(const AssouadFamily& family);  // θ = 1/a

/// Closed-form value (DL/24)·e^{-2/7} of the sup-norm-constrained bound.
double flat_family_bound(std::size_t d, double l);

/// Two-point bound d²(s0,s1)/16 · exp[-2H²(s0,s1)] with d the L2 distance.
double two_point_bound(const GridIntensity& s0, const GridIntensity& s1);

struct EstimatorVsBoundReport {
  double bound = 0.0;
  double max_risk_l2 = 0.0;      // max over members of MC E‖ŝ - s_δ‖₂²
  double max_risk_hellinger = 0.0;
  double stderr_at_max = 0.0;
  std::size_t members_tested = 0;
  bool pass = false;  // max_risk_l2 ≥ bound - 3·stderr
};

/// Sanity check that an estimator cannot beat the family's lower bound: runs
/// the estimator over every member (or a seeded subsample when 2^D is large)
/// and compares the worst risk to the bound.
EstimatorVsBoundReport estimator_vs_bound(
    const AssouadFamily& family,
    const std::function<GridIntensity(const PointSample&)>& procedure, std::size_t reps,
    Seed seed, std::size_t member_cap = 256, unsigned jobs = 1);

}  // namespace hpl
