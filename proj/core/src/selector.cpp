#include "hpl/selector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hpl/numeric.hpp"

namespace hpl {

namespace {

constexpr double kXi = 0.25;

std::size_t flat_pair_index(std::size_t n, std::size_t i, std::size_t j) {
  // pairs (i, j), i < j, lexicographic
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

}  // namespace

std::size_t SelectionTrace::pair_index(std::size_t i, std::size_t j) const {
  if (i >= j || j >= n) throw std::out_of_range("SelectionTrace: bad pair");
  return flat_pair_index(n, i, j);
}

std::string SelectionTrace::pairs_csv() const {
  std::string out = "i,j,statistic,decision\n";
  std::size_t p = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++p) {
      out += std::to_string(i) + "," + std::to_string(j) + "," +
             format_double(statistics[p]) + "," + std::to_string(decisions[p] ? j : i) + "\n";
    }
  return out;
}

std::string SelectionTrace::elements_csv(const Net& net) const {
  std::string out = "i,eta,dx\n";
  for (std::size_t i = 0; i < n; ++i)
    out += std::to_string(i) + "," + format_double(net.eta_of(i)) + "," +
           format_double(dx[i]) + "\n";
  return out;
}

SelectionEngine::SelectionEngine(Net net) : SelectionEngine(std::move(net), Options{}) {}

SelectionEngine::SelectionEngine(Net net, Options options) : net_(std::move(net)) {
  const std::size_t n = net_.size();
  if (n == 0) throw std::invalid_argument("SelectionEngine: empty net");
  if (n > options.element_cap)
    throw CapacityError("SelectionEngine: net too large for O(n²) testing", n,
                        options.element_cap);
  weights_ok_ = weight_conditions(net_).ok();
  pair_count_ = n * (n - 1) / 2;

  const std::size_t cells = net_.elements.front().size();
  for (const auto& e : net_.elements)
    if (!e.same_grid(net_.elements.front()))
      throw DomainMismatchError("SelectionEngine: elements on different grids");

  sqrt_values_.resize(n * cells);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < cells; ++c)
      sqrt_values_[i * cells + c] = std::sqrt(net_.elements[i][c]);

  pair_h_.resize(pair_count_);
  pair_const_.resize(pair_count_);
  table_ = pair_count_ * cells * sizeof(double) <= options.table_budget_bytes;
  if (table_) pair_logratio_.resize(pair_count_ * cells);

  const double cm = net_.elements.front().cell_measure();
  std::size_t p = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++p) {
      const double* st = &sqrt_values_[i * cells];
      const double* su = &sqrt_values_[j * cells];
      double hsq = 0.0, pi_mass = 0.0, nu_mass = 0.0;
      for (std::size_t c = 0; c < cells; ++c) {
        const double d = st[c] - su[c];
        hsq += d * d;
        const double a = kXi * su[c] + (1.0 - kXi) * st[c];
        const double b = kXi * st[c] + (1.0 - kXi) * su[c];
        pi_mass += a * a;
        nu_mass += b * b;
        if (table_) {
          // both mixtures vanish only where both elements do; such cells
          // contribute log 1 = 0
          pair_logratio_[p * cells + c] = (a == 0.0 && b == 0.0) ? 0.0 : 2.0 * std::log(a / b);
        }
      }
      pair_h_[p] = std::sqrt(0.5 * hsq * cm);
      const double eta_t = net_.eta[i], eta_u = net_.eta[j];
      const double x = (eta_t * eta_t - eta_u * eta_u) / 4.0;
      pair_const_[p] = (nu_mass - pi_mass) * cm - 2.0 * x;
    }
  }
}

double SelectionEngine::pair_hellinger(std::size_t i, std::size_t j) const {
  if (i == j) return 0.0;
  if (i > j) std::swap(i, j);
  return pair_h_[flat_pair_index(net_.size(), i, j)];
}

void SelectionEngine::fill_statistics(std::span<const std::int64_t> counts,
                                      std::span<double> statistics) const {
  const std::size_t n = net_.size();
  const std::size_t cells = net_.elements.front().size();
  if (counts.size() != cells)
    throw std::invalid_argument("SelectionEngine: counts length must match the grid");

  // Only occupied cells contribute to the log-likelihood sum.
  std::vector<std::size_t> occupied;
  occupied.reserve(cells);
  for (std::size_t c = 0; c < cells; ++c)
    if (counts[c] != 0) occupied.push_back(c);

  std::size_t p = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++p) {
      double stat = pair_const_[p];
      if (table_) {
        const double* lr = &pair_logratio_[p * cells];
        for (std::size_t c : occupied) stat += static_cast<double>(counts[c]) * lr[c];
      } else {
        const double* st = &sqrt_values_[i * cells];
        const double* su = &sqrt_values_[j * cells];
        for (std::size_t c : occupied) {
          const double a = kXi * su[c] + (1.0 - kXi) * st[c];
          const double b = kXi * st[c] + (1.0 - kXi) * su[c];
          if (a == 0.0 && b == 0.0) continue;
          stat += static_cast<double>(counts[c]) * 2.0 * std::log(a / b);
        }
      }
      statistics[p] = stat;
    }
  }
}

std::size_t SelectionEngine::argmin_dx(std::span<const double> statistics,
                                       std::vector<double>* dx_out,
                                       std::size_t* tie_out) const {
  const std::size_t n = net_.size();
  std::vector<double> dx(n, 0.0);
  std::size_t p = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++p) {
      // statistic > 0 decides t (= element i); otherwise u, including ties
      if (statistics[p] > 0.0)
        dx[j] = std::max(dx[j], pair_h_[p]);
      else
        dx[i] = std::max(dx[i], pair_h_[p]);
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (double v : dx) best = std::min(best, v);
  std::size_t tie_count = 0;
  std::size_t chosen = 0;
  double chosen_eta = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (dx[i] != best) continue;
    ++tie_count;
    if (net_.eta[i] < chosen_eta) {
      chosen_eta = net_.eta[i];
      chosen = i;
    }
  }
  if (dx_out) *dx_out = std::move(dx);
  if (tie_out) *tie_out = tie_count;
  return chosen;
}

std::size_t SelectionEngine::select(const PointSample& sample) const {
  return select_counts(bin_counts(sample, net_.elements.front().fn()));
}

std::size_t SelectionEngine::select_counts(std::span<const std::int64_t> counts) const {
  std::vector<double> statistics(pair_count_);
  fill_statistics(counts, statistics);
  return argmin_dx(statistics, nullptr, nullptr);
}

SelectionTrace SelectionEngine::trace(const PointSample& sample) const {
  return trace_counts(bin_counts(sample, net_.elements.front().fn()));
}

SelectionTrace SelectionEngine::trace_counts(std::span<const std::int64_t> counts) const {
  SelectionTrace t;
  t.n = net_.size();
  t.weight_warning = !weights_ok_;
  t.statistics.resize(pair_count_);
  fill_statistics(counts, t.statistics);
  t.decisions.resize(pair_count_);
  for (std::size_t p = 0; p < pair_count_; ++p)
    t.decisions[p] = t.statistics[p] > 0.0 ? 0 : 1;
  t.selected = argmin_dx(t.statistics, &t.dx, &t.tie_count);
  return t;
}

std::pair<GridIntensity, SelectionTrace> select(const Net& net, const PointSample& sample) {
  SelectionEngine engine(net);
  SelectionTrace trace = engine.trace(sample);
  return {engine.net().elements[trace.selected], std::move(trace)};
}

RiskReport risk_mc(const GridIntensity& truth,
                   const std::function<GridIntensity(const PointSample&)>& procedure,
                   double q, std::size_t reps, Seed seed, unsigned jobs) {
  if (reps < 2) throw std::invalid_argument("risk_mc: need at least 2 replications");
  if (!(q >= 1.0)) throw std::invalid_argument("risk_mc: q must be >= 1");
  std::vector<double> losses(reps);
  parallel_for(reps, jobs, [&](std::size_t rep) {
    const PointSample sample = sample_process(truth, replication_seed(seed, rep));
    const GridIntensity estimate = procedure(sample);
    losses[rep] = std::pow(hellinger(truth, estimate), q);
  });
  const MeanStderr ms = mean_stderr(losses);
  return RiskReport{ms.mean, ms.stderr_, reps, seed, q};
}

std::size_t estimator_select(std::span<const GridIntensity> candidates,
                             std::span<const double> deltas, const PointSample& sample) {
  if (candidates.empty()) throw std::invalid_argument("estimator_select: no candidates");
  if (candidates.size() != deltas.size())
    throw std::invalid_argument("estimator_select: candidates/deltas size mismatch");
  for (double d : deltas)
    if (!(d >= 0.1)) throw std::invalid_argument("estimator_select: weights must be >= 1/10");

  // Identical candidates collapse onto one net element; each original index
  // still contributes its own one-point model.
  Net net;
  net.b_prime = std::exp(-2.0);
  std::vector<std::size_t> element_of(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    std::size_t found = net.elements.size();
    for (std::size_t e = 0; e < net.elements.size(); ++e)
      if (net.elements[e] == candidates[k]) {
        found = e;
        break;
      }
    if (found == net.elements.size()) net.elements.push_back(candidates[k]);
    element_of[k] = found;
    NetModel m;
    m.id = "cand" + std::to_string(k);
    m.eta = std::sqrt(84.0 * deltas[k]);
    m.d_param = 0.5;
    m.delta = deltas[k];
    m.members = {found};
    net.models.push_back(std::move(m));
  }
  net.recompute_eta();

  SelectionEngine engine(std::move(net));
  const std::size_t chosen_element = engine.select(sample);
  // map back: the owning candidate with the smallest weight, lowest index
  std::size_t best = candidates.size();
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (element_of[k] != chosen_element) continue;
    if (best == candidates.size() || deltas[k] < deltas[best]) best = k;
  }
  return best;
}

}  // namespace hpl
