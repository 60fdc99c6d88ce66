#include "hpl/process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hpl/numeric.hpp"

namespace hpl {

PointSample::PointSample(Domain domain, std::vector<double> coords)
    : domain_(domain), coords_(std::move(coords)) {
  if (coords_.size() % static_cast<std::size_t>(domain_.dim) != 0)
    throw std::invalid_argument("PointSample: coordinate count not a multiple of dim");
}

std::string PointSample::to_text() const {
  std::string out;
  const auto d = static_cast<std::size_t>(domain_.dim);
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      if (a) out += " ";
      if (domain_.kind == DomainKind::DiscreteGrid) {
        // serialize 1-based cell ids for {1..N}
        out += std::to_string(static_cast<std::int64_t>(coords_[i * d + a]) + 1);
      } else {
        out += format_double(coords_[i * d + a]);
      }
    }
    out += "\n";
  }
  return out;
}

PointSample PointSample::parse(const Domain& domain, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<double> coords;
  std::string tok;
  while (in >> tok) {
    double v = parse_double(tok);
    if (domain.kind == DomainKind::DiscreteGrid) v -= 1.0;
    coords.push_back(v);
  }
  return PointSample(domain, std::move(coords));
}

PointSample sample_process(const GridIntensity& s, Seed seed) {
  Rng rng(seed);
  const double mass = s.mass();
  const auto n = static_cast<std::size_t>(rng.poisson(mass));
  const auto dim = static_cast<std::size_t>(s.domain().dim);
  std::vector<double> coords;
  coords.reserve(n * dim);
  if (n == 0) return PointSample(s.domain(), std::move(coords));

  // Cell choice by CDF inversion over cell masses; all cells share the same
  // measure so raw values suffice as weights.
  std::vector<double> cum(s.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    acc += s[i];
    cum[i] = acc;
  }
  const double total = acc;

  const auto per_axis = static_cast<std::size_t>(s.fn().cells_per_axis());
  const double h = s.domain().kind == DomainKind::ContinuousBox
                       ? s.domain().side / static_cast<double>(per_axis)
                       : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform() * total;
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    std::size_t cell = std::min<std::size_t>(
        static_cast<std::size_t>(it - cum.begin()), s.size() - 1);
    if (s.domain().kind == DomainKind::DiscreteGrid) {
      coords.push_back(static_cast<double>(cell));
      continue;
    }
    // uniform position inside the chosen cell, row-major decomposition
    std::size_t rest = cell;
    std::vector<double> axis_idx(dim);
    for (std::size_t a = dim; a-- > 0;) {
      axis_idx[a] = static_cast<double>(rest % per_axis);
      rest /= per_axis;
    }
    for (std::size_t a = 0; a < dim; ++a)
      coords.push_back((axis_idx[a] + rng.uniform()) * h);
  }
  return PointSample(s.domain(), std::move(coords));
}

std::pair<PointSample, PointSample> thin(const PointSample& x, double p, Seed seed) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("thin: p must be in (0, 1]");
  Rng rng(seed);
  const auto dim = static_cast<std::size_t>(x.domain().dim);
  std::vector<double> first, second;
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto pt = x.point(i);
    auto& dst = rng.bernoulli(p) ? first : second;
    dst.insert(dst.end(), pt.begin(), pt.end());
  }
  (void)dim;
  return {PointSample(x.domain(), std::move(first)),
          PointSample(x.domain(), std::move(second))};
}

PointSample merge(const PointSample& a, const PointSample& b) {
  if (a.domain() != b.domain()) throw DomainMismatchError("merge: different domains");
  std::vector<double> coords(a.coords().begin(), a.coords().end());
  coords.insert(coords.end(), b.coords().begin(), b.coords().end());
  return PointSample(a.domain(), std::move(coords));
}

double empirical_functional(const PointSample& x, const GridFunction& phi) {
  if (x.domain() != phi.domain())
    throw DomainMismatchError("empirical_functional: different domains");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += phi[phi.cell_of(x.point(i))];
  return sum;
}

std::vector<std::int64_t> regression_counts(const GridIntensity& s, Seed seed) {
  if (s.domain().kind != DomainKind::DiscreteGrid)
    throw std::invalid_argument("regression_counts: requires a discrete domain");
  Rng rng(seed);
  std::vector<std::int64_t> counts(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) counts[i] = rng.poisson(s[i]);
  return counts;
}

std::vector<std::int64_t> bin_counts(const PointSample& x, const GridFunction& ref) {
  if (x.domain() != ref.domain()) throw DomainMismatchError("bin_counts: different domains");
  std::vector<std::int64_t> counts(ref.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) ++counts[ref.cell_of(x.point(i))];
  return counts;
}

double log_likelihood_ratio(const PointSample& x, const GridIntensity& num,
                            const GridIntensity& den) {
  if (!num.same_grid(den)) throw DomainMismatchError("log_likelihood_ratio: grid mismatch");
  if (x.domain() != num.domain())
    throw DomainMismatchError("log_likelihood_ratio: sample domain mismatch");
  double sum = den.mass() - num.mass();
  bool plus_inf = false, minus_inf = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::size_t cell = num.fn().cell_of(x.point(i));
    const double a = num[cell], b = den[cell];
    if (a == 0.0 && b == 0.0) continue;  // 0/0 -> ratio 1, log 0
    if (b == 0.0) { plus_inf = true; continue; }
    if (a == 0.0) { minus_inf = true; continue; }
    sum += std::log(a / b);
  }
  if (plus_inf) return std::numeric_limits<double>::infinity();
  if (minus_inf) return -std::numeric_limits<double>::infinity();
  return sum;
}

}  // namespace hpl
