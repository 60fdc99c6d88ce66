#include "hpl/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hpl/numeric.hpp"

namespace hpl {

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void check_same_grid(const GridFunction& a, const GridFunction& b, const char* op) {
  if (!a.same_grid(b))
    throw DomainMismatchError(std::string(op) + ": operands on different grids");
}

}  // namespace

Domain Domain::continuous_box(int dim, double side) {
  if (dim < 1) throw std::invalid_argument("Domain: dim must be >= 1");
  if (!(side > 0.0)) throw std::invalid_argument("Domain: side must be > 0");
  Domain d;
  d.kind = DomainKind::ContinuousBox;
  d.dim = dim;
  d.side = side;
  d.cells = 1;
  return d;
}

Domain Domain::discrete_grid(std::int64_t cells, int dim) {
  if (dim < 1) throw std::invalid_argument("Domain: dim must be >= 1");
  if (cells < 1) throw std::invalid_argument("Domain: cells must be >= 1");
  Domain d;
  d.kind = DomainKind::DiscreteGrid;
  d.dim = dim;
  d.side = 0.0;
  d.cells = cells;
  return d;
}

GridFunction::GridFunction(Domain domain, int resolution, std::vector<double> values)
    : domain_(domain), resolution_(resolution), values_(std::move(values)) {
  if (domain_.kind == DomainKind::ContinuousBox) {
    if (resolution_ < 0) throw std::invalid_argument("GridFunction: resolution must be >= 0");
    cells_per_axis_ = std::int64_t{1} << resolution_;
    cell_measure_ = std::pow(domain_.side / static_cast<double>(cells_per_axis_), domain_.dim);
  } else {
    if (resolution_ != 0)
      throw std::invalid_argument("GridFunction: discrete domains have no resolution");
    cells_per_axis_ = domain_.cells;
    cell_measure_ = 1.0;  // counting measure
  }
  const auto expected = static_cast<std::size_t>(ipow(cells_per_axis_, domain_.dim));
  if (values_.size() != expected)
    throw std::invalid_argument("GridFunction: expected " + std::to_string(expected) +
                                " cell values, got " + std::to_string(values_.size()));
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: values must be finite");
}

GridFunction GridFunction::constant(const Domain& domain, int resolution, double value) {
  std::int64_t per_axis = domain.kind == DomainKind::ContinuousBox
                              ? (std::int64_t{1} << resolution)
                              : domain.cells;
  return GridFunction(domain, resolution,
                      std::vector<double>(static_cast<std::size_t>(ipow(per_axis, domain.dim)), value));
}

double GridFunction::integral() const {
  double sum = 0.0;
  for (double v : values_) sum += v;
  return sum * cell_measure_;
}

double GridFunction::inner(const GridFunction& other) const {
  check_same_grid(*this, other, "inner");
  double sum = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) sum += values_[i] * other.values_[i];
  return sum * cell_measure_;
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

GridFunction GridFunction::refined(int finer_resolution) const {
  if (domain_.kind != DomainKind::ContinuousBox)
    throw std::invalid_argument("refined: discrete grids cannot be refined");
  if (finer_resolution < resolution_)
    throw std::invalid_argument("refined: target resolution is coarser");
  if (finer_resolution == resolution_) return *this;
  const int shift = finer_resolution - resolution_;
  const std::int64_t fine_per_axis = std::int64_t{1} << finer_resolution;
  const auto fine_size = static_cast<std::size_t>(ipow(fine_per_axis, domain_.dim));
  std::vector<double> fine(fine_size);
  for (std::size_t i = 0; i < fine_size; ++i) {
    // Decompose the fine index per axis, shift each down, recompose coarse.
    std::size_t rest = i;
    std::size_t coarse = 0;
    for (int a = 0; a < domain_.dim; ++a) {
      const int pos = domain_.dim - 1 - a;  // row-major: last axis varies fastest
      const auto stride = static_cast<std::size_t>(ipow(fine_per_axis, pos));
      const std::size_t axis_idx = rest / stride;
      rest %= stride;
      coarse = coarse * static_cast<std::size_t>(cells_per_axis_) + (axis_idx >> shift);
    }
    fine[i] = values_[coarse];
  }
  return GridFunction(domain_, finer_resolution, std::move(fine));
}

std::size_t GridFunction::cell_of(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != domain_.dim)
    throw std::invalid_argument("cell_of: point dimension mismatch");
  if (domain_.kind == DomainKind::DiscreteGrid) {
    const auto idx = static_cast<std::int64_t>(point[0]);
    if (idx < 0 || idx >= cells_per_axis_)
      throw std::invalid_argument("cell_of: discrete index out of range");
    return static_cast<std::size_t>(idx);
  }
  const double h = domain_.side / static_cast<double>(cells_per_axis_);
  std::size_t flat = 0;
  for (int a = 0; a < domain_.dim; ++a) {
    auto idx = static_cast<std::int64_t>(std::floor(point[a] / h));
    idx = std::clamp<std::int64_t>(idx, 0, cells_per_axis_ - 1);
    flat = flat * static_cast<std::size_t>(cells_per_axis_) + static_cast<std::size_t>(idx);
  }
  return flat;
}

std::vector<double> GridFunction::cell_midpoint(std::size_t i) const {
  std::vector<double> mid(static_cast<std::size_t>(domain_.dim));
  if (domain_.kind == DomainKind::DiscreteGrid) {
    mid[0] = static_cast<double>(i);
    return mid;
  }
  const double h = domain_.side / static_cast<double>(cells_per_axis_);
  std::size_t rest = i;
  for (int a = domain_.dim - 1; a >= 0; --a) {
    const std::size_t axis_idx = rest % static_cast<std::size_t>(cells_per_axis_);
    rest /= static_cast<std::size_t>(cells_per_axis_);
    mid[static_cast<std::size_t>(a)] = (static_cast<double>(axis_idx) + 0.5) * h;
  }
  return mid;
}

std::string GridFunction::to_text() const {
  std::string out;
  if (domain_.kind == DomainKind::ContinuousBox) {
    out = "continuous-box " + std::to_string(domain_.dim) + " " + std::to_string(resolution_) +
          " " + format_double(domain_.side);
  } else {
    out = "discrete-grid " + std::to_string(domain_.dim) + " 0 " + std::to_string(domain_.cells);
  }
  out += "\n";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += (i % 16 == 0) ? "\n" : " ";
    out += format_double(values_[i]);
  }
  out += "\n";
  return out;
}

GridFunction GridFunction::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string kind;
  int dim = 0, resolution = 0;
  std::string extent;
  if (!(in >> kind >> dim >> resolution >> extent))
    throw std::invalid_argument("GridFunction::parse: bad header");
  Domain domain;
  if (kind == "continuous-box") {
    domain = Domain::continuous_box(dim, parse_double(extent));
  } else if (kind == "discrete-grid") {
    domain = Domain::discrete_grid(std::stoll(extent), dim);
  } else {
    throw std::invalid_argument("GridFunction::parse: unknown domain kind '" + kind + "'");
  }
  std::vector<double> values;
  std::string tok;
  while (in >> tok) values.push_back(parse_double(tok));
  return GridFunction(domain, resolution, std::move(values));
}

GridIntensity::GridIntensity(Domain domain, int resolution, std::vector<double> values)
    : fn_(domain, resolution, std::move(values)) {
  for (double v : fn_.values())
    if (v < 0.0) throw std::invalid_argument("GridIntensity: values must be >= 0");
}

GridIntensity::GridIntensity(GridFunction fn) : fn_(std::move(fn)) {
  for (double v : fn_.values())
    if (v < 0.0) throw std::invalid_argument("GridIntensity: values must be >= 0");
}

GridIntensity GridIntensity::constant(const Domain& domain, int resolution, double value) {
  return GridIntensity(GridFunction::constant(domain, resolution, value));
}

GridFunction GridIntensity::sqrt_fn() const {
  std::vector<double> v(fn_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sqrt(fn_[i]);
  return GridFunction(domain(), resolution(), std::move(v));
}

GridIntensity GridIntensity::refined(int finer_resolution) const {
  return GridIntensity(fn_.refined(finer_resolution));
}

GridIntensity GridIntensity::parse(std::string_view text) {
  return GridIntensity(GridFunction::parse(text));
}

GridIntensity clip_to_intensity(const GridFunction& fn) {
  std::vector<double> v(fn.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::max(0.0, fn[i]);
  return GridIntensity(fn.domain(), fn.resolution(), std::move(v));
}

MeasureWithAtoms::MeasureWithAtoms(GridIntensity ac, std::vector<Atom> atom_list)
    : absolutely_continuous(std::move(ac)), atoms(std::move(atom_list)) {
  for (const auto& a : atoms) {
    if (!(a.weight > 0.0)) throw std::invalid_argument("MeasureWithAtoms: atom weights must be > 0");
    if (static_cast<int>(a.location.size()) != absolutely_continuous.domain().dim)
      throw std::invalid_argument("MeasureWithAtoms: atom dimension mismatch");
  }
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size(); ++j)
      if (atoms[i].location == atoms[j].location)
        throw std::invalid_argument("MeasureWithAtoms: atom locations must be distinct");
}

double MeasureWithAtoms::atom_mass() const {
  double sum = 0.0;
  for (const auto& a : atoms) sum += a.weight;
  return sum;
}

double hellinger_sq(const GridIntensity& a, const GridIntensity& b) {
  check_same_grid(a.fn(), b.fn(), "hellinger_sq");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::sqrt(a[i]) - std::sqrt(b[i]);
    sum += d * d;
  }
  return 0.5 * sum * a.cell_measure();
}

double hellinger(const GridIntensity& a, const GridIntensity& b) {
  return std::sqrt(hellinger_sq(a, b));
}

double hellinger_sq_with_atoms(const MeasureWithAtoms& m, const GridIntensity& t) {
  return hellinger_sq(m.absolutely_continuous, t) + 0.5 * m.atom_mass();
}

double affinity(const GridIntensity& a, const GridIntensity& b) {
  return std::exp(-hellinger_sq(a, b));
}

double l2_dist_sqrt(const GridIntensity& a, const GridIntensity& b) {
  check_same_grid(a.fn(), b.fn(), "l2_dist_sqrt");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::sqrt(a[i]) - std::sqrt(b[i]);
    sum += d * d;
  }
  return std::sqrt(sum * a.cell_measure());
}

double l2_dist_sq(const GridFunction& f, const GridFunction& g) {
  check_same_grid(f, g, "l2_dist_sq");
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = f[i] - g[i];
    sum += d * d;
  }
  return sum * f.cell_measure();
}

GridIntensity rescale_to_unit(const GridIntensity& t) {
  const Domain& d = t.domain();
  if (d.kind != DomainKind::ContinuousBox || d.dim != 1)
    throw std::invalid_argument("rescale_to_unit: requires a 1-D continuous domain");
  const double scale = d.side;
  std::vector<double> v(t.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = scale * t[i];
  return GridIntensity(Domain::continuous_box(1, 1.0), t.resolution(), std::move(v));
}

std::pair<GridIntensity, GridIntensity> common_refine(const GridIntensity& a,
                                                      const GridIntensity& b) {
  if (a.domain() != b.domain())
    throw DomainMismatchError("common_refine: different domains");
  const int r = std::max(a.resolution(), b.resolution());
  return {a.refined(r), b.refined(r)};
}

}  // namespace hpl
