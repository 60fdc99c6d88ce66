#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hpl/grid.hpp"
#include "hpl/rng.hpp"

namespace hpl {

/// One realization of a Poisson process: a finite list of points in the
/// domain. Continuous domains store coordinates per axis; discrete domains
/// store the 0-based cell index as the single coordinate.
class PointSample {
 public:
  PointSample(Domain domain, std::vector<double> coords);

  static PointSample empty(const Domain& domain) { return PointSample(domain, {}); }

  const Domain& domain() const { return domain_; }
  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(domain_.dim); }
  std::span<const double> point(std::size_t i) const {
    const auto d = static_cast<std::size_t>(domain_.dim);
    return {coords_.data() + i * d, d};
  }
  std::span<const double> coords() const { return coords_; }

  /// One point per line, coordinates whitespace-separated, generation order.
  std::string to_text() const;
  static PointSample parse(const Domain& domain, std::string_view text);

 private:
  Domain domain_;
  std::vector<double> coords_;
};

/// Draws N ~ Poisson(mass(s)); given N, points are i.i.d. with density
/// s/mass, placed uniformly inside their cell.
PointSample sample_process(const GridIntensity& s, Seed seed);

/// Splits a sample by independent coin flips: each point goes to the first
/// output with probability p. The outputs are independent Poisson processes
/// with mean measures p·μ and (1-p)·μ.
std::pair<PointSample, PointSample> thin(const PointSample& x, double p, Seed seed);

/// Superposition of two samples on the same domain (concatenates points).
PointSample merge(const PointSample& a, const PointSample& b);

/// Σ_i φ(X_i) — the linear empirical functional.
double empirical_functional(const PointSample& x, const GridFunction& phi);

/// Observation model for a discrete domain: one independent Poisson count
/// per cell, with means s_i.
std::vector<std::int64_t> regression_counts(const GridIntensity& s, Seed seed);

/// Per-cell point counts of a sample, on the grid of `ref`.
std::vector<std::int64_t> bin_counts(const PointSample& x, const GridFunction& ref);

/// log of the likelihood ratio dQ_num/dQ_den evaluated at the sample:
/// (den.mass - num.mass) + Σ_i log(num(X_i)/den(X_i)).
/// A point in a cell where both intensities vanish contributes 0. A point
/// where den = 0 < num yields +inf (this takes precedence); num = 0 < den
/// yields -inf. Infinities are in-band values, not errors.
double log_likelihood_ratio(const PointSample& x, const GridIntensity& num,
                            const GridIntensity& den);

}  // namespace hpl
