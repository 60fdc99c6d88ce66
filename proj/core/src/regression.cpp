#include "hpl/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hpl/numeric.hpp"
#include "hpl/partition.hpp"

namespace hpl {

bool is_dyadic_partition(std::span<const std::size_t> boundaries, std::size_t n_cells) {
  if (boundaries.size() < 2 || boundaries.front() != 0 || boundaries.back() != n_cells)
    return false;
  const auto check = [&](auto&& self, std::size_t lo, std::size_t hi) -> bool {
    bool any = false;
    for (std::size_t b : boundaries)
      if (b > lo && b < hi) any = true;
    if (!any) return true;
    if ((hi - lo) % 2 != 0) return false;
    const std::size_t mid = lo + (hi - lo) / 2;
    if (std::find(boundaries.begin(), boundaries.end(), mid) == boundaries.end()) return false;
    return self(self, lo, mid) && self(self, mid, hi);
  };
  return check(check, 0, n_cells);
}

RegressionFamily build_regression_family(int n, std::size_t max_parts) {
  if (n < 0 || n > 6)
    throw std::invalid_argument("build_regression_family: need 0 <= n <= 6 for enumeration");
  RegressionFamily family;
  family.n_exp = n;
  family.n_cells = std::size_t{1} << n;
  const std::size_t n_cells = family.n_cells;
  max_parts = std::min(max_parts, n_cells);
  if (max_parts == 0) throw std::invalid_argument("build_regression_family: max_parts >= 1");

  // dyadic trees, depth-capped so leaves align with single cells
  const auto trees = catalan_tree_family(max_parts, 0.0, 1.0, n);
  for (const auto& tree : trees) {
    RegressionModel m;
    m.dyadic = true;
    m.boundaries.push_back(0);
    for (const auto& [b, e] : tree.cell_ranges(n_cells)) m.boundaries.push_back(e);
    m.delta = catalan_weight(tree.leaf_count());
    family.models.push_back(std::move(m));
  }

  for (std::size_t d = 1; d <= max_parts; ++d) {
    const double weight = interval_partition_weight(n_cells, d);
    for (auto& p : interval_partitions(n_cells, d)) {
      if (is_dyadic_partition(p.boundaries, n_cells)) continue;  // keeps the dyadic weight
      RegressionModel m;
      m.dyadic = false;
      m.boundaries = std::move(p.boundaries);
      m.delta = weight;
      family.models.push_back(std::move(m));
    }
  }

  family.sigma_enumerated = 0.0;
  for (const auto& m : family.models) family.sigma_enumerated += std::exp(-m.delta);

  // Untruncated bound: the binary-tree series Σ_j 4^j e^{-2(j+1)}/(j+1)
  // plus Σ_d C(N-1,d-1)·exp(-Δ) = (1/N)·Σ_d 1/d over all interval counts.
  double tree_series = 0.0;
  double term_scale = std::exp(-2.0);
  const double x = 4.0 * std::exp(-2.0);
  double xj = 1.0;
  for (int j = 0; j < 200; ++j) {
    tree_series += term_scale * xj / static_cast<double>(j + 1);
    xj *= x;
  }
  double harmonic = 0.0;
  for (std::size_t d = 1; d <= n_cells; ++d) harmonic += 1.0 / static_cast<double>(d);
  family.sigma_full = tree_series + harmonic / static_cast<double>(n_cells);
  return family;
}

namespace {

BasisSpec partition_basis(const RegressionModel& model, std::size_t n_cells) {
  const Domain domain = Domain::discrete_grid(static_cast<std::int64_t>(n_cells));
  std::vector<GridFunction> fns;
  for (std::size_t j = 0; j + 1 < model.boundaries.size(); ++j) {
    const std::size_t b = model.boundaries[j], e = model.boundaries[j + 1];
    std::vector<double> v(n_cells, 0.0);
    const double level = 1.0 / std::sqrt(static_cast<double>(e - b));
    for (std::size_t i = b; i < e; ++i) v[i] = level;
    fns.emplace_back(domain, 0, std::move(v));
  }
  return BasisSpec(std::move(fns));
}

Net family_net(const RegressionFamily& family, double n_for_radius,
               const RegressionParams& params) {
  std::vector<Net> nets;
  nets.reserve(family.models.size());
  for (std::size_t mi = 0; mi < family.models.size(); ++mi) {
    const auto& model = family.models[mi];
    const auto dim = static_cast<double>(model.parts());
    // η² = 84Δ, the weight-to-radius coupling used for selection families;
    // every Δ here is ≥ 2, so the dimension condition holds with slack
    const double eta = std::sqrt(84.0 * model.delta);
    GridNetParams gp;
    gp.eta_rule = EtaRule::Explicit;
    gp.explicit_eta = eta;
    gp.theta = params.theta_scale * 2.0 * eta / std::sqrt(dim);
    gp.delta = model.delta;
    gp.max_candidates = params.max_candidates;
    gp.nonnegative_orthant = true;  // disjoint-support indicator basis
    gp.model_id = "m" + std::to_string(mi);
    nets.push_back(build_grid_net(partition_basis(model, family.n_cells), n_for_radius, gp));
  }
  return merge_nets(nets, 0.0);
}

}  // namespace

RegressionEngine::RegressionEngine(RegressionFamily family, double n_for_radius,
                                   RegressionParams params)
    : family_(std::move(family)),
      engine_(family_net(family_, n_for_radius, params),
              SelectionEngine::Options{params.element_cap, 256u << 20}) {
  const Net& net = engine_.net();
  owner_model_.assign(net.size(), net.models.size());
  std::vector<double> owner_eta(net.size(), std::numeric_limits<double>::infinity());
  for (std::size_t m = 0; m < net.models.size(); ++m) {
    for (std::size_t e : net.models[m].members) {
      if (net.models[m].eta < owner_eta[e]) {
        owner_eta[e] = net.models[m].eta;
        owner_model_[e] = m;
      }
    }
  }
}

RegressionResult RegressionEngine::estimate(std::span<const std::int64_t> counts) const {
  const std::size_t element = engine_.select_counts(counts);
  const std::size_t model = owner_model_[element];
  RegressionResult result{engine_.net().elements[element], element, model,
                          family_.models[model].boundaries, family_.models[model].dyadic};
  return result;
}

RegressionResult regression_estimate(const RegressionFamily& family,
                                     std::span<const std::int64_t> counts,
                                     RegressionParams params) {
  const double total = static_cast<double>(
      std::accumulate(counts.begin(), counts.end(), std::int64_t{0}));
  RegressionEngine engine(family, total, params);
  return engine.estimate(counts);
}

}  // namespace hpl
