#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hpl {

/// Orthonormal Haar coefficients of a sequence of 2^J (1-D) or 4^J (2-D)
/// grid values. Level -1 holds the scaling coefficient; detail level j has
/// 2^j (1-D) or 3·4^j (2-D, three orientations) coefficients. The transform
/// is an orthogonal map on the raw value vector, so Σβ² = Σf².
struct HaarCoefficients {
  int dimension = 1;
  int max_level = 0;  // J
  std::vector<double> coeffs;

  double scaling() const { return coeffs[0]; }
  std::size_t level_size(int level) const;
  std::size_t level_offset(int level) const;
  double at(int level, std::size_t k) const;

  double level_energy(int level) const;  // Σ_k β_{level,k}²
  double level_l1(int level) const;      // Σ_k |β_{level,k}|
};

HaarCoefficients haar_analyze(std::span<const double> values, int dimension);
std::vector<double> haar_synthesize(const HaarCoefficients& hc);

}  // namespace hpl
