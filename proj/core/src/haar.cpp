#include "hpl/haar.hpp"

#include <cmath>
#include <stdexcept>

namespace hpl {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

int exact_log2(std::size_t n) {
  int j = 0;
  while ((std::size_t{1} << j) < n) ++j;
  if ((std::size_t{1} << j) != n)
    throw std::invalid_argument("haar: grid size must be a power of 2 per axis");
  return j;
}

}  // namespace

std::size_t HaarCoefficients::level_size(int level) const {
  if (level == -1) return 1;
  return dimension == 1 ? (std::size_t{1} << level) : 3 * (std::size_t{1} << (2 * level));
}

std::size_t HaarCoefficients::level_offset(int level) const {
  if (level == -1) return 0;
  return dimension == 1 ? (std::size_t{1} << level) : (std::size_t{1} << (2 * level));
}

double HaarCoefficients::at(int level, std::size_t k) const {
  if (level < -1 || level >= max_level) throw std::out_of_range("haar: bad level");
  if (k >= level_size(level)) throw std::out_of_range("haar: bad index");
  return coeffs[level_offset(level) + k];
}

double HaarCoefficients::level_energy(int level) const {
  const std::size_t off = level_offset(level);
  const std::size_t n = level_size(level);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) sum += coeffs[off + k] * coeffs[off + k];
  return sum;
}

double HaarCoefficients::level_l1(int level) const {
  const std::size_t off = level_offset(level);
  const std::size_t n = level_size(level);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) sum += std::abs(coeffs[off + k]);
  return sum;
}

HaarCoefficients haar_analyze(std::span<const double> values, int dimension) {
  if (dimension != 1 && dimension != 2)
    throw std::invalid_argument("haar_analyze: dimension must be 1 or 2");
  HaarCoefficients hc;
  hc.dimension = dimension;
  hc.coeffs.assign(values.begin(), values.end());

  if (dimension == 1) {
    const std::size_t n = values.size();
    hc.max_level = exact_log2(n);
    std::vector<double> cur(values.begin(), values.end());
    for (std::size_t len = n; len >= 2; len /= 2) {
      const std::size_t half = len / 2;
      for (std::size_t i = 0; i < half; ++i) {
        const double a = cur[2 * i], b = cur[2 * i + 1];
        hc.coeffs[half + i] = (a - b) * kInvSqrt2;
        cur[i] = (a + b) * kInvSqrt2;
      }
    }
    hc.coeffs[0] = cur[0];
    return hc;
  }

  // 2-D: recursively transform 2x2 blocks; the 4x4 block matrix with entries
  // ±1/2 is orthogonal.
  const std::size_t total = values.size();
  std::size_t side = 1;
  while (side * side < total) side *= 2;
  if (side * side != total)
    throw std::invalid_argument("haar_analyze: 2-D input must be a square power-of-2 grid");
  hc.max_level = exact_log2(side);
  std::vector<double> cur(values.begin(), values.end());
  std::size_t len = side;
  while (len >= 2) {
    const std::size_t half = len / 2;
    const std::size_t block = half * half;  // == 4^level
    std::vector<double> next(block);
    for (std::size_t r = 0; r < half; ++r) {
      for (std::size_t c = 0; c < half; ++c) {
        const double a = cur[(2 * r) * len + 2 * c];
        const double b = cur[(2 * r) * len + 2 * c + 1];
        const double d = cur[(2 * r + 1) * len + 2 * c];
        const double e = cur[(2 * r + 1) * len + 2 * c + 1];
        next[r * half + c] = 0.5 * (a + b + d + e);
        const std::size_t base = block;  // level offset is 4^level
        hc.coeffs[base + 0 * block + r * half + c] = 0.5 * (a - b + d - e);
        hc.coeffs[base + 1 * block + r * half + c] = 0.5 * (a + b - d - e);
        hc.coeffs[base + 2 * block + r * half + c] = 0.5 * (a - b - d + e);
      }
    }
    cur = std::move(next);
    len = half;
  }
  hc.coeffs[0] = cur[0];
  return hc;
}

std::vector<double> haar_synthesize(const HaarCoefficients& hc) {
  if (hc.dimension == 1) {
    const std::size_t n = std::size_t{1} << hc.max_level;
    std::vector<double> cur(n);
    cur[0] = hc.coeffs[0];
    for (std::size_t half = 1; half < n; half *= 2) {
      std::vector<double> next(2 * half);
      for (std::size_t i = 0; i < half; ++i) {
        const double s = cur[i], d = hc.coeffs[half + i];
        next[2 * i] = (s + d) * kInvSqrt2;
        next[2 * i + 1] = (s - d) * kInvSqrt2;
      }
      for (std::size_t i = 0; i < next.size(); ++i) cur[i] = next[i];
    }
    return cur;
  }

  const std::size_t side = std::size_t{1} << hc.max_level;
  std::vector<double> cur(1, hc.coeffs[0]);
  for (std::size_t half = 1; half < side; ) {
    // invariant: cur is the half x half lowpass block
    const std::size_t block = half * half;
    const std::size_t len = 2 * half;
    std::vector<double> next(len * len);
    for (std::size_t r = 0; r < half; ++r) {
      for (std::size_t c = 0; c < half; ++c) {
        const double ll = cur[r * half + c];
        const double lh = hc.coeffs[block + 0 * block + r * half + c];
        const double hl = hc.coeffs[block + 1 * block + r * half + c];
        const double hh = hc.coeffs[block + 2 * block + r * half + c];
        next[(2 * r) * len + 2 * c] = 0.5 * (ll + lh + hl + hh);
        next[(2 * r) * len + 2 * c + 1] = 0.5 * (ll - lh + hl - hh);
        next[(2 * r + 1) * len + 2 * c] = 0.5 * (ll + lh - hl - hh);
        next[(2 * r + 1) * len + 2 * c + 1] = 0.5 * (ll - lh - hl + hh);
      }
    }
    cur = std::move(next);
    half = len;
  }
  return cur;
}

}  // namespace hpl
