#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hpl/net.hpp"
#include "hpl/process.hpp"
#include "hpl/rng.hpp"

namespace hpl {

/// Full record of one selection run: every pairwise decision, the worst
/// rejected distance D_X(t) per element, and the argmin.
struct SelectionTrace {
  std::size_t n = 0;                  // element count; pairs are (i, j), i < j
  std::vector<double> statistics;     // per pair, test statistic
  std::vector<std::uint8_t> decisions;  // per pair, 1 = second element won
  std::vector<double> dx;             // per element, D_X(t)
  std::size_t selected = 0;
  std::size_t tie_count = 0;
  bool weight_warning = false;

  std::size_t pair_index(std::size_t i, std::size_t j) const;
  std::string pairs_csv() const;     // i,j,statistic,decision
  std::string elements_csv(const Net& net) const;  // i,eta,dx
};

/// Runs all pairwise tests over a net and selects the element whose worst
/// rejected distance is smallest. Pair (i, j) with i < j always plays
/// (t, u) = (element i, element j); ties in the argmin go to the smallest
/// η(t), then the lowest index. The engine precomputes per-pair mixture
/// tables once, so repeated selection over Monte Carlo replications is
/// cheap; build it once per net.
class SelectionEngine {
 public:
  struct Options {
    std::size_t element_cap = 2000;           // O(n²) guard; override explicitly
    std::size_t table_budget_bytes = 256u << 20;
  };

  explicit SelectionEngine(Net net);
  SelectionEngine(Net net, Options options);

  const Net& net() const { return net_; }
  std::size_t size() const { return net_.size(); }
  std::size_t pair_count() const { return pair_count_; }
  bool weights_ok() const { return weights_ok_; }

  std::size_t select(const PointSample& sample) const;
  std::size_t select_counts(std::span<const std::int64_t> counts) const;

  SelectionTrace trace(const PointSample& sample) const;
  SelectionTrace trace_counts(std::span<const std::int64_t> counts) const;

  double pair_hellinger(std::size_t i, std::size_t j) const;

 private:
  void fill_statistics(std::span<const std::int64_t> counts,
                       std::span<double> statistics) const;
  std::size_t argmin_dx(std::span<const double> statistics, std::vector<double>* dx_out,
                        std::size_t* tie_out) const;

  Net net_;
  std::size_t pair_count_ = 0;
  bool weights_ok_ = true;
  std::vector<double> sqrt_values_;   // n × cells, √ of each element
  std::vector<double> pair_h_;        // per pair, H(t, u)
  std::vector<double> pair_const_;    // per pair, (ν_m mass − π_m mass) − 2x
  std::vector<double> pair_logratio_; // per pair × cells when budget allows
  bool table_ = false;
};

/// One-shot selection with a full trace.
std::pair<GridIntensity, SelectionTrace> select(const Net& net, const PointSample& sample);

struct RiskReport {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t reps = 0;
  Seed seed;
  double q = 2.0;
};

/// Monte Carlo estimate of E[H^q(truth, procedure(X))] over seeded
/// replications. Replication r uses replication_seed(seed, r), so the
/// report is invariant to execution order and job count.
RiskReport risk_mc(const GridIntensity& truth,
                   const std::function<GridIntensity(const PointSample&)>& procedure,
                   double q, std::size_t reps, Seed seed, unsigned jobs = 1);

/// Chooses among arbitrary candidate intensities by wrapping each as a
/// one-point model with η_m² = 84·Δ_m and running the pairwise selection.
/// Returns the index into `candidates`. Weights must satisfy Δ_m ≥ 1/10.
std::size_t estimator_select(std::span<const GridIntensity> candidates,
                             std::span<const double> deltas, const PointSample& sample);

}  // namespace hpl
