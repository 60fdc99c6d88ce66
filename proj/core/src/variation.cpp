#include "hpl/variation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hpl/errors.hpp"

namespace hpl {

double p_variation_sum(std::span<const double> f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("p_variation_sum: p must be >= 1");
  const std::size_t n = f.size();
  if (n < 2) return 0.0;
  // best[i]: largest sum of a subsequence ending at i with >= 2 points
  std::vector<double> best(n, 0.0);
  double answer = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    double b = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      const double step = std::pow(std::abs(f[i] - f[j]), p);
      b = std::max(b, step + best[j]);
    }
    best[i] = b;
    answer = std::max(answer, b);
  }
  return answer;
}

double alpha_variation(std::span<const double> f, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha_variation: alpha must be in (0, 1]");
  return std::pow(p_variation_sum(f, 1.0 / alpha), alpha);
}

namespace {

struct SplitState {
  std::span<const double> f;
  double alpha;
  double epsilon;
  double cell_len;  // grid cell length
};

// E(I) = |I| · V_α(f; I)²
double cell_budget(const SplitState& st, std::size_t begin, std::size_t end) {
  const double v = alpha_variation(st.f.subspan(begin, end - begin), st.alpha);
  return static_cast<double>(end - begin) * st.cell_len * v * v;
}

void split(const SplitState& st, std::size_t begin, std::size_t end,
           std::vector<std::uint8_t>& preorder) {
  if (cell_budget(st, begin, end) <= st.epsilon) {
    preorder.push_back(0);
    return;
  }
  if (end - begin < 2)
    throw ResolutionError("adaptive_alpha_partition: grid cell [" + std::to_string(begin) +
                          "] still exceeds the budget but cannot be split");
  preorder.push_back(1);
  const std::size_t mid = begin + (end - begin) / 2;
  split(st, begin, mid, preorder);
  split(st, mid, end, preorder);
}

}  // namespace

DyadicPartition adaptive_alpha_partition(std::span<const double> f, double interval_a,
                                         double interval_length, double alpha,
                                         double epsilon) {
  if (!(epsilon > 0.0) && epsilon != 0.0)
    throw std::invalid_argument("adaptive_alpha_partition: epsilon must be >= 0");
  const std::size_t n = f.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("adaptive_alpha_partition: grid size must be a power of 2");
  SplitState st{f, alpha, epsilon, interval_length / static_cast<double>(n)};
  std::vector<std::uint8_t> preorder;
  split(st, 0, n, preorder);
  return DyadicPartition(interval_a, interval_length, std::move(preorder));
}

AdaptiveSplitConstants adaptive_split_constants(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("adaptive_split_constants: alpha must be in (0, 1]");
  const double r = 1.0 / (2.0 * alpha);
  const double num = 1.0 - std::pow(2.0, -(r + 1.0));
  const double den = 1.0 - std::pow(2.0, -r);
  const double c1 = num / den;
  const double c2 =
      std::sqrt(std::pow(2.0, 1.0 + 2.0 * alpha) * std::pow(num, 1.0 - 2.0 * alpha) / den);
  return {c1, c2};
}

double adaptive_split_epsilon(double alpha, int j, double interval_length, double variation) {
  const double r = 1.0 / (2.0 * alpha);
  const double gamma = (1.0 - std::pow(2.0, -(r + 1.0))) *
                       std::pow(2.0, static_cast<double>(j) * (r + 1.0));
  return 2.0 * interval_length * std::pow(gamma / 2.0, -2.0 * alpha) * variation * variation;
}

std::vector<double> piecewise_mean(std::span<const double> f, const DyadicPartition& partition) {
  const auto ranges = partition.cell_ranges(f.size());
  std::vector<double> means(ranges.size());
  for (std::size_t r = 0; r < ranges.size(); ++r) {
    double sum = 0.0;
    for (std::size_t i = ranges[r].first; i < ranges[r].second; ++i) sum += f[i];
    means[r] = sum / static_cast<double>(ranges[r].second - ranges[r].first);
  }
  return means;
}

double piecewise_mean_error_sq(std::span<const double> f, const DyadicPartition& partition,
                               double cell_measure) {
  const auto ranges = partition.cell_ranges(f.size());
  const auto means = piecewise_mean(f, partition);
  double err = 0.0;
  for (std::size_t r = 0; r < ranges.size(); ++r) {
    for (std::size_t i = ranges[r].first; i < ranges[r].second; ++i) {
      const double d = f[i] - means[r];
      err += d * d;
    }
  }
  return err * cell_measure;
}

}  // namespace hpl
