#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hpl/errors.hpp"

namespace hpl {

enum class DomainKind { ContinuousBox, DiscreteGrid };

/// Either [0, L]^k with Lebesgue reference measure or {1..N} with the
/// counting measure.
struct Domain {
  DomainKind kind = DomainKind::ContinuousBox;
  int dim = 1;
  double side = 1.0;          // continuous: side length per axis
  std::int64_t cells = 1;     // discrete: cell count per axis

  static Domain continuous_box(int dim, double side = 1.0);
  static Domain discrete_grid(std::int64_t cells, int dim = 1);
  bool operator==(const Domain&) const = default;
};

/// A real-valued function that is piecewise constant on a dyadic grid over
/// its domain. This is the canonical representation throughout: integrals
/// against the reference measure are exact finite sums.
class GridFunction {
 public:
  GridFunction(Domain domain, int resolution, std::vector<double> values);

  static GridFunction constant(const Domain& domain, int resolution, double value);

  const Domain& domain() const { return domain_; }
  int resolution() const { return resolution_; }
  std::int64_t cells_per_axis() const { return cells_per_axis_; }
  std::size_t size() const { return values_.size(); }
  double cell_measure() const { return cell_measure_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  double integral() const;                       // ∫ f dλ
  double inner(const GridFunction& other) const; // <f, g> in L2(λ)
  double norm2_sq() const { return inner(*this); }
  double max_abs() const;

  /// Copies onto a finer grid (continuous domains only); values are
  /// replicated, so every integral is unchanged.
  GridFunction refined(int finer_resolution) const;

  /// Flat index of the cell containing the point (row-major across axes).
  std::size_t cell_of(std::span<const double> point) const;

  /// Coordinates of the midpoint of cell i.
  std::vector<double> cell_midpoint(std::size_t i) const;

  bool same_grid(const GridFunction& other) const {
    return domain_ == other.domain_ && resolution_ == other.resolution_;
  }
  bool operator==(const GridFunction&) const = default;

  std::string to_text() const;
  static GridFunction parse(std::string_view text);

 private:
  Domain domain_;
  int resolution_;
  std::int64_t cells_per_axis_;
  double cell_measure_;
  std::vector<double> values_;
};

/// A nonnegative GridFunction: the intensity of a Poisson mean measure with
/// respect to the domain's reference measure. Immutable after construction.
class GridIntensity {
 public:
  GridIntensity(Domain domain, int resolution, std::vector<double> values);
  explicit GridIntensity(GridFunction fn);

  static GridIntensity constant(const Domain& domain, int resolution, double value);

  const GridFunction& fn() const { return fn_; }
  const Domain& domain() const { return fn_.domain(); }
  int resolution() const { return fn_.resolution(); }
  std::size_t size() const { return fn_.size(); }
  double cell_measure() const { return fn_.cell_measure(); }
  double operator[](std::size_t i) const { return fn_[i]; }
  std::span<const double> values() const { return fn_.values(); }
  double mass() const { return fn_.integral(); }

  /// Cellwise square root, i.e. the representation used on the √ scale.
  GridFunction sqrt_fn() const;

  GridIntensity refined(int finer_resolution) const;
  bool same_grid(const GridIntensity& other) const { return fn_.same_grid(other.fn_); }
  bool operator==(const GridIntensity&) const = default;

  std::string to_text() const { return fn_.to_text(); }
  static GridIntensity parse(std::string_view text);

 private:
  GridFunction fn_;
};

/// Clips a signed grid function at zero and interprets it as an intensity.
GridIntensity clip_to_intensity(const GridFunction& fn);

struct Atom {
  std::vector<double> location;
  double weight = 0.0;
};

/// μ = s·λ + Σ w_i δ_{x_i}. Atom locations are treated as λ-null by fiat;
/// they carry the part of the measure that is orthogonal to λ.
struct MeasureWithAtoms {
  GridIntensity absolutely_continuous;
  std::vector<Atom> atoms;

  MeasureWithAtoms(GridIntensity ac, std::vector<Atom> atoms);
  double atom_mass() const;
};

// --- The Hellinger-type metric on finite measures -------------------------

/// H²(a, b) = ½ Σ_cells m(cell) (√a − √b)². Requires identical grids; refine
/// to a common grid first.
double hellinger_sq(const GridIntensity& a, const GridIntensity& b);
double hellinger(const GridIntensity& a, const GridIntensity& b);

/// H²(μ, t·λ) when μ has an atomic part: the atoms contribute half their mass.
double hellinger_sq_with_atoms(const MeasureWithAtoms& m, const GridIntensity& t);

/// Hellinger affinity exp(−H²) between the process laws.
double affinity(const GridIntensity& a, const GridIntensity& b);

/// ‖√a − √b‖₂, so that H² equals (value)²/2 exactly.
double l2_dist_sqrt(const GridIntensity& a, const GridIntensity& b);

/// ‖f − g‖₂² in L2(λ).
double l2_dist_sq(const GridFunction& f, const GridFunction& g);

/// Maps t on [0, T] to t_T(x) = T·t(Tx) on [0, 1]; H distances are preserved.
GridIntensity rescale_to_unit(const GridIntensity& t);

/// Both operands refined to their maximum resolution (continuous domains).
std::pair<GridIntensity, GridIntensity> common_refine(const GridIntensity& a,
                                                      const GridIntensity& b);

}  // namespace hpl
