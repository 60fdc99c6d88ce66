#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hpl/grid.hpp"
#include "hpl/rng.hpp"

namespace hpl {

/// An orthonormal family φ_1..φ_k of grid functions (signed values allowed).
struct BasisSpec {
  std::vector<GridFunction> functions;

  explicit BasisSpec(std::vector<GridFunction> fns, double tol = 1e-10);
  int dim_count() const { return static_cast<int>(functions.size()); }
  const Domain& domain() const { return functions.front().domain(); }
  int resolution() const { return functions.front().resolution(); }
};

struct NetModel {
  std::string id;
  double eta = 0.0;      // η_m
  double d_param = 0.5;  // D_m
  double delta = 0.0;    // Δ_m
  std::vector<std::size_t> members;  // indices into Net::elements
};

/// A finite candidate set S = ∪_m S_m with per-element radius
/// η(t) = min{η_m : S_m ∋ t} and per-model bookkeeping.
struct Net {
  std::vector<GridIntensity> elements;
  std::vector<NetModel> models;
  std::vector<double> eta;  // aligned with elements
  double b_prime = 1.0;

  std::size_t size() const { return elements.size(); }
  double eta_of(std::size_t element_index) const;
  void recompute_eta();

  double sigma_eta() const;    // Σ_m exp(-η_m²/84)
  double sigma_delta() const;  // Σ_m exp(-Δ_m)
};

enum class EtaRule {
  LatticePitch,    // η_m = √k·θ/2, the lattice quantization radius
  LogCardinality,  // η_m² = 4.2·k·log(c(√(N/k)+1)), c = √(πe/2)
  Explicit,        // caller supplies η_m
};

struct GridNetParams {
  double theta = 0.0;  // lattice pitch; <= 0 derives θ = 2η/√k from the η rule
  EtaRule eta_rule = EtaRule::LatticePitch;
  double explicit_eta = 0.0;
  std::optional<double> delta;    // Δ_m; defaults to η_m²/84
  std::optional<double> d_param;  // D_m; defaults to max(1/2, log|S|/4)
  double b_prime = 1.0;
  std::size_t max_candidates = 10'000'000;
  /// Restrict enumeration to coefficients >= 0. Only sensible for bases with
  /// disjoint nonnegative supports, where clipping folds the remaining
  /// orthants onto this one anyway.
  bool nonnegative_orthant = false;
  std::string model_id = "grid";
};

/// Discretizes the span of the basis: enumerates lattice points a ∈ θZ^k
/// with |a|₂ ≤ √(2·n_observed) + η_lat (exact ball intersection, recursive
/// per-coordinate bounds), maps each to (Σ a_i φ_i ∨ 0)², and de-duplicates.
Net build_grid_net(const BasisSpec& basis, double n_observed,
                   const GridNetParams& params = {});

/// η_m² = 4.2·k·log(c(√(N/k)+1)); makes η² ≥ 4.2·log K hold by construction.
double log_cardinality_eta_sq(int k, double n_observed);

/// K = [c(√(2N)/η + 1)]^k with c = √(πe/2): the closed-form cap on the
/// lattice-ball cardinality.
double grid_net_cardinality_bound(int k, double n_observed, double eta);

/// The weaker closed form [c(√(N/k)+1)]^k, valid once η ≥ √(2k).
double grid_net_reduced_bound(int k, double n_observed);

struct DModelCheckResult {
  bool ok = true;
  double worst_ratio = 0.0;  // max over (probe, x) of count / (B'·e^{Dx²})
  std::size_t witness_probe = 0;
  double witness_x = 0.0;
  std::size_t witness_count = 0;
};

/// Empirically checks the ball-counting condition
/// |S ∩ B(t, xη)| ≤ B'·exp(Dx²) for every probe center and every x ≥ 2 in
/// x_grid (open balls in the metric H).
DModelCheckResult dmodel_check(const Net& net, double eta, double d_param, double b_prime,
                               std::span<const GridIntensity> probes,
                               std::span<const double> x_grid);

/// Net elements plus `extra` random square-root-scale mixtures of element
/// pairs; the default probe set for dmodel_check.
std::vector<GridIntensity> default_probes(const Net& net, std::size_t extra, Seed seed);

inline const double kDefaultXGrid[] = {2.0, 2.5, 3.0, 4.0};

struct WeightReport {
  bool dims_ok = true;          // D_m ≥ 1/2 and η_m² ≥ 84·D_m/5 for every model
  double sigma_eta = 0.0;       // Σ exp(-η_m²/84)
  double sigma_delta = 0.0;     // Σ exp(-Δ_m)
  bool sigma_eta_finite = true;
  std::vector<std::string> violations;
  bool ok() const { return dims_ok && violations.empty(); }
};

WeightReport weight_conditions(const Net& net);

/// Concatenates nets, de-duplicating identical elements (memberships merge,
/// η(t) is recomputed as the min over containing models). Model weights are
/// shifted by delta_shift; B' becomes the max.
Net merge_nets(std::span<const Net> nets, double delta_shift = 0.0);

/// Merging J separately-weighted families: Δ'_m = Δ_m + log J preserves the
/// weight-sum bound each family satisfied on its own.
Net mix_families(std::span<const Net> families);

/// Manifest plus one element file per member, in the grid text format.
void write_net(const Net& net, const std::string& directory);
Net read_net(const std::string& directory);

}  // namespace hpl
