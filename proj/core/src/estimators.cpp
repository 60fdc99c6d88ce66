#include "hpl/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "hpl/numeric.hpp"

namespace hpl {

namespace {

EstimatorReport finish_report(GridFunction raw, const GridIntensity* truth) {
  EstimatorReport r{raw, clip_to_intensity(raw), {}, {}};
  if (truth) {
    r.loss_l2_sq = l2_dist_sq(raw, truth->fn());
    r.loss_hellinger_sq = hellinger_sq(r.estimate, *truth);
  }
  return r;
}

}  // namespace

EstimatorReport projection_estimator(const PointSample& sample, const BasisSpec& basis,
                                     const GridIntensity* truth) {
  std::vector<double> acc(basis.functions.front().size(), 0.0);
  for (const auto& phi : basis.functions) {
    const double coeff = empirical_functional(sample, phi);
    for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += coeff * phi[c];
  }
  GridFunction raw(basis.domain(), basis.resolution(), std::move(acc));
  return finish_report(std::move(raw), truth);
}

EstimatorReport histogram_estimator(const PointSample& sample, const CellRanges& cells,
                                    const GridIntensity* truth) {
  if (cells.empty()) throw std::invalid_argument("histogram_estimator: empty partition");
  Domain domain = sample.domain();
  if (domain.dim != 1)
    throw std::invalid_argument("histogram_estimator: partitions are 1-D index ranges");
  std::size_t grid_size = 0;
  for (const auto& [b, e] : cells) {
    if (e <= b) throw std::invalid_argument("histogram_estimator: zero-measure cell");
    grid_size = std::max(grid_size, e);
  }
  {
    auto sorted = cells;
    std::sort(sorted.begin(), sorted.end());
    std::size_t at = 0;
    for (const auto& [b, e] : sorted) {
      if (b != at) throw std::invalid_argument("histogram_estimator: ranges must tile the grid");
      at = e;
    }
    if (at != grid_size)
      throw std::invalid_argument("histogram_estimator: ranges must tile the grid");
  }
  int resolution = 0;
  if (domain.kind == DomainKind::ContinuousBox) {
    while ((std::size_t{1} << resolution) < grid_size) ++resolution;
    if ((std::size_t{1} << resolution) != grid_size)
      throw std::invalid_argument("histogram_estimator: ranges do not fill a dyadic grid");
  } else if (static_cast<std::size_t>(domain.cells) != grid_size) {
    throw std::invalid_argument("histogram_estimator: ranges do not cover the domain");
  }
  GridFunction ref = GridFunction::constant(domain, resolution, 0.0);
  const auto counts = bin_counts(sample, ref);

  std::vector<double> values(grid_size, 0.0);
  for (const auto& [b, e] : cells) {
    std::int64_t n = 0;
    for (std::size_t i = b; i < e; ++i) n += counts[i];
    const double measure = static_cast<double>(e - b) * ref.cell_measure();
    const double level = static_cast<double>(n) / measure;
    for (std::size_t i = b; i < e; ++i) values[i] = level;
  }
  GridFunction raw(domain, resolution, std::move(values));
  return finish_report(std::move(raw), truth);
}

GridIntensity histogram_projection(const GridIntensity& truth, const CellRanges& cells) {
  std::vector<double> values(truth.size(), 0.0);
  for (const auto& [b, e] : cells) {
    if (e <= b) throw std::invalid_argument("histogram_projection: zero-measure cell");
    double sum = 0.0;
    for (std::size_t i = b; i < e; ++i) sum += truth[i];
    const double level = sum / static_cast<double>(e - b);
    for (std::size_t i = b; i < e; ++i) values[i] = level;
  }
  return GridIntensity(truth.domain(), truth.resolution(), std::move(values));
}

std::vector<GridFunction> orthonormalize(std::span<const GridFunction> fns, double rank_tol) {
  if (fns.empty()) throw std::invalid_argument("orthonormalize: empty family");
  double scale = 0.0;
  for (const auto& f : fns) scale = std::max(scale, std::sqrt(f.norm2_sq()));
  if (scale == 0.0) throw std::invalid_argument("orthonormalize: zero span");
  std::vector<GridFunction> basis;
  for (const auto& f : fns) {
    std::vector<double> w(f.values().begin(), f.values().end());
    GridFunction wf(f.domain(), f.resolution(), w);
    for (const auto& b : basis) {
      const double c = wf.inner(b);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= c * b[i];
      wf = GridFunction(f.domain(), f.resolution(), w);
    }
    const double norm = std::sqrt(wf.norm2_sq());
    if (norm <= rank_tol * scale) continue;  // linearly dependent direction
    for (double& x : w) x /= norm;
    basis.emplace_back(f.domain(), f.resolution(), std::move(w));
  }
  if (basis.empty()) throw std::invalid_argument("orthonormalize: zero span");
  return basis;
}

AggregateResult rt_aggregate(std::span<const GridIntensity> estimates,
                             const PointSample& sample2, double p, double rank_tol) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("rt_aggregate: p must be in (0, 1)");
  if (estimates.empty()) throw std::invalid_argument("rt_aggregate: no estimates");
  std::vector<GridFunction> fns;
  fns.reserve(estimates.size());
  for (const auto& e : estimates) fns.push_back(e.fn());
  const auto basis = orthonormalize(fns, rank_tol);

  std::vector<double> acc(basis.front().size(), 0.0);
  for (const auto& psi : basis) {
    const double coeff = empirical_functional(sample2, psi);
    for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += coeff * psi[c];
  }
  const double scale = 1.0 / (1.0 - p);
  for (double& v : acc) v *= scale;
  GridFunction raw(basis.front().domain(), basis.front().resolution(), std::move(acc));
  return AggregateResult{raw, clip_to_intensity(raw), basis.size()};
}

Net linear_aggregation_net(std::span<const GridIntensity> estimates, double n_observed,
                           const LinearAggregationParams& params) {
  const std::size_t k = estimates.size();
  if (k == 0) throw std::invalid_argument("linear_aggregation_net: no estimates");
  if (k > params.max_inputs)
    throw CapacityError("linear_aggregation_net: too many inputs", k, params.max_inputs);

  std::vector<GridFunction> roots;
  roots.reserve(k);
  for (const auto& e : estimates) roots.push_back(e.sqrt_fn());

  std::vector<Net> nets;
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    std::vector<GridFunction> subset;
    for (std::size_t j = 0; j < k; ++j)
      if (mask & (std::size_t{1} << j)) subset.push_back(roots[j]);
    const auto size = subset.size();
    std::vector<GridFunction> basis_fns;
    try {
      basis_fns = orthonormalize(subset);
    } catch (const std::invalid_argument&) {
      continue;  // zero span (all-zero estimates in the subset)
    }
    const double delta = log_binomial(static_cast<double>(k), static_cast<double>(size)) +
                         2.0 * std::log(static_cast<double>(size));
    // η² = 84Δ keeps the weight sums aligned; floor by the dimension rule
    const double eta = std::sqrt(std::max(84.0 * std::max(delta, 0.0), 8.4));
    GridNetParams gp;
    gp.eta_rule = EtaRule::Explicit;
    gp.explicit_eta = eta;
    gp.theta = params.theta_scale * 2.0 * eta / std::sqrt(static_cast<double>(basis_fns.size()));
    gp.delta = delta;
    gp.max_candidates = params.max_candidates;
    gp.model_id = "subset" + std::to_string(mask);
    nets.push_back(build_grid_net(BasisSpec(std::move(basis_fns)), n_observed, gp));
  }
  if (nets.empty()) throw std::invalid_argument("linear_aggregation_net: zero span");
  return merge_nets(nets, 0.0);
}

}  // namespace hpl
