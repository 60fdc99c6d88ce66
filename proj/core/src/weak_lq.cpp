#include "hpl/weak_lq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hpl/haar.hpp"
#include "hpl/numeric.hpp"

namespace hpl {

WeakLqSubset weak_lq_subset(std::span<const double> beta, int j, int k) {
  if (j < 0 || k < j) throw std::invalid_argument("weak_lq_subset: need 0 <= j <= k");
  const std::size_t pool = std::size_t{1} << k;
  const std::size_t keep = std::size_t{1} << j;
  if (beta.size() < pool)
    throw std::invalid_argument("weak_lq_subset: beta has fewer than 2^k entries");
  std::vector<std::size_t> order(pool);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(beta[a]) > std::abs(beta[b]);
  });
  WeakLqSubset out;
  out.indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep));
  std::sort(out.indices.begin(), out.indices.end());
  out.delta = static_cast<double>(k) +
              log_binomial(static_cast<double>(pool), static_cast<double>(keep));
  return out;
}

double weak_lq_weight(std::span<const double> beta, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("weak_lq_weight: q must be > 0");
  std::vector<double> a(beta.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(beta[i]);
  std::sort(a.begin(), a.end(), std::greater<>());
  double w = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    w = std::max(w, a[i] * std::pow(static_cast<double>(i + 1), 1.0 / q));
  return w;
}

TailBoundCheck weak_lq_tail_bounds(std::span<const double> beta, double q, double p,
                                   std::size_t n) {
  if (!(p > q)) throw std::invalid_argument("weak_lq_tail_bounds: need p > q");
  std::vector<double> a(beta.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::abs(beta[i]);
  std::sort(a.begin(), a.end(), std::greater<>());
  const double w = weak_lq_weight(beta, q);

  TailBoundCheck out{};
  out.tail_p_sum = 0.0;
  for (std::size_t i = n; i < a.size(); ++i) out.tail_p_sum += std::pow(a[i], p);
  out.tail_p_bound = q / (p - q) * std::pow(w, p) *
                     std::pow(static_cast<double>(n) + 0.5, -(p - q) / q);

  out.best_term_sq = 0.0;
  for (std::size_t i = n; i < a.size(); ++i) out.best_term_sq += a[i] * a[i];
  if (q < 2.0) {
    out.best_term_bound = (1.0 / (2.0 / q - 1.0)) * w * w *
                          std::pow(static_cast<double>(n) + 0.5, 1.0 - 2.0 / q);
  } else {
    out.best_term_bound = std::numeric_limits<double>::infinity();
  }
  return out;
}

EnvelopeMin envelope_minimize(double b, double delta, double a) {
  if (!(b > 0.0 && delta > 0.0 && a > 0.0))
    throw std::invalid_argument("envelope_minimize: parameters must be > 0");
  // root of g(x) = B·2^{-δx} - x^a, decreasing from B at 0
  const auto g = [&](double x) { return b * std::exp2(-delta * x) - std::pow(x, a); };
  double lo = 0.0, hi = 1.0;
  while (g(hi) > 0.0) hi *= 2.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  EnvelopeMin out{};
  out.x_star = 0.5 * (lo + hi);
  out.f_star = std::pow(out.x_star, a);
  out.residual = std::abs(g(out.x_star));
  out.v = delta * std::pow(b, 1.0 / a) / a;
  out.small_v = out.v <= 2.0;
  out.c1 = out.f_star / b;
  out.z = out.v > 1.0 ? out.x_star * delta / (a * std::log2(out.v))
                      : std::numeric_limits<double>::quiet_NaN();
  return out;
}

HaarTailReport haar_tail_decay(std::span<const double> values_2d, double p,
                               double cell_measure) {
  if (!(p > 2.0)) throw std::invalid_argument("haar_tail_decay: p must be > 2");
  const double lo = *std::min_element(values_2d.begin(), values_2d.end());
  const double hi = *std::max_element(values_2d.begin(), values_2d.end());
  if (lo == hi) throw std::invalid_argument("haar_tail_decay: constant input is degenerate");

  // scale so the transform gives coefficients in the L2(λ)-orthonormal basis
  std::vector<double> scaled(values_2d.begin(), values_2d.end());
  const double s = std::sqrt(cell_measure);
  for (double& v : scaled) v *= s;
  const HaarCoefficients hc = haar_analyze(scaled, 2);

  HaarTailReport out{};
  std::vector<double> energy(static_cast<std::size_t>(hc.max_level), 0.0);
  out.level_l1.resize(static_cast<std::size_t>(hc.max_level));
  for (int j = 0; j < hc.max_level; ++j) {
    energy[static_cast<std::size_t>(j)] = hc.level_energy(j);
    out.level_l1[static_cast<std::size_t>(j)] = hc.level_l1(j);
  }
  // tails[J + 1] = Σ_{j > J} energy_j for J = -1 .. max_level - 1
  out.level_tails.resize(static_cast<std::size_t>(hc.max_level) + 1, 0.0);
  for (int j = hc.max_level - 1; j >= 0; --j)
    out.level_tails[static_cast<std::size_t>(j)] =
        out.level_tails[static_cast<std::size_t>(j) + 1] + energy[static_cast<std::size_t>(j)];

  std::vector<double> xs, ys;
  for (int j = 0; j < hc.max_level; ++j) {
    const double tail = out.level_tails[static_cast<std::size_t>(j) + 1];
    if (tail > 0.0) {
      xs.push_back(static_cast<double>(j));
      ys.push_back(std::log2(tail));
    }
  }
  out.slope = xs.size() >= 2 ? ls_slope(xs, ys) : -std::numeric_limits<double>::infinity();
  out.weak_l1_weight = weak_lq_weight(hc.coeffs, 1.0);
  return out;
}

}  // namespace hpl
