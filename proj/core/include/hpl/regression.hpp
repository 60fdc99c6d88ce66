#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hpl/net.hpp"
#include "hpl/selector.hpp"

namespace hpl {

/// One piecewise-constant model over {1..N}: the fenceposts 0 = b_0 < ... <
/// b_D = N of an interval partition, its weight, and whether it comes from
/// the dyadic (binary-tree) family.
struct RegressionModel {
  bool dyadic = false;
  std::vector<std::size_t> boundaries;
  double delta = 0.0;
  std::size_t parts() const { return boundaries.size() - 1; }
};

/// The mixed partition family on {1..2^n}: all dyadic partitions (weights
/// 2|m|) plus all non-dyadic interval partitions with at most max_parts
/// parts (weights log C(N,|m|) + 2 log|m|). Regular partitions are members
/// of the dyadic family and keep the dyadic weight.
struct RegressionFamily {
  int n_exp = 0;
  std::size_t n_cells = 0;
  std::vector<RegressionModel> models;
  double sigma_enumerated = 0.0;  // Σ exp(-Δ) over the models listed above
  double sigma_full = 0.0;        // closed-form bound over the untruncated family
};

RegressionFamily build_regression_family(int n, std::size_t max_parts);

/// True if the partition (as fenceposts over N cells) is generated by a
/// complete binary tree of halvings.
bool is_dyadic_partition(std::span<const std::size_t> boundaries, std::size_t n_cells);

struct RegressionParams {
  /// Lattice pitch per model = theta_scale · 2η_m/√D̄_m; the default halves
  /// the pitch the η/θ coupling would give, for a finer net.
  double theta_scale = 0.5;
  std::size_t element_cap = 2000;
  std::size_t max_candidates = 10'000'000;
};

struct RegressionResult {
  GridIntensity estimate;
  std::size_t element = 0;
  std::size_t model = 0;  // index into family.models: min-η model owning the element
  std::vector<std::size_t> boundaries;
  bool dyadic = false;
};

/// Builds the merged candidate net for a family once (lattice radius from
/// n_for_radius, normally the expected or observed total count) and selects
/// with the pairwise-test engine per counts vector. Build once per scenario;
/// estimate() is cheap.
class RegressionEngine {
 public:
  RegressionEngine(RegressionFamily family, double n_for_radius,
                   RegressionParams params = {});

  const RegressionFamily& family() const { return family_; }
  const SelectionEngine& selector() const { return engine_; }

  RegressionResult estimate(std::span<const std::int64_t> counts) const;

 private:
  RegressionFamily family_;
  SelectionEngine engine_;
  std::vector<std::size_t> owner_model_;  // per element, min-η model
};

/// One-shot path: radius from the observed total count.
RegressionResult regression_estimate(const RegressionFamily& family,
                                     std::span<const std::int64_t> counts,
                                     RegressionParams params = {});

}  // namespace hpl
