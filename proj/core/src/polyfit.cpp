#include "hpl/polyfit.hpp"

#include <cmath>
#include <stdexcept>

namespace hpl {

namespace {

// Discrete orthonormal polynomials of degree <= r on m equispaced points,
// w.r.t. the inner product (1/m)Σ. Gram-Schmidt on {1, x, x²} with x the
// centered point index; r <= 2 keeps this numerically trivial.
std::vector<std::vector<double>> discrete_poly_basis(std::size_t m, int r) {
  std::vector<std::vector<double>> mono(static_cast<std::size_t>(r) + 1,
                                        std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const double x = (static_cast<double>(i) + 0.5) / static_cast<double>(m) - 0.5;
    double pw = 1.0;
    for (int d = 0; d <= r; ++d) {
      mono[static_cast<std::size_t>(d)][i] = pw;
      pw *= x;
    }
  }
  const auto dot = [m](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += a[i] * b[i];
    return s / static_cast<double>(m);
  };
  std::vector<std::vector<double>> basis;
  for (auto& v : mono) {
    std::vector<double> w = v;
    for (const auto& b : basis) {
      const double c = dot(w, b);
      for (std::size_t i = 0; i < m; ++i) w[i] -= c * b[i];
    }
    const double norm = std::sqrt(dot(w, w));
    if (norm > 0.0)
      for (double& x : w) x /= norm;
    basis.push_back(std::move(w));
  }
  return basis;
}

}  // namespace

PiecewisePolyResult piecewise_poly_approx(const GridFunction& f,
                                          std::span<const std::size_t> cells_per_axis,
                                          int degree) {
  const int k = f.domain().dim;
  if (f.domain().kind != DomainKind::ContinuousBox || k > 2)
    throw std::invalid_argument("piecewise_poly_approx: continuous domain with k <= 2");
  if (degree < 0 || degree > 2)
    throw std::invalid_argument("piecewise_poly_approx: degree must be in [0, 2]");
  if (static_cast<int>(cells_per_axis.size()) != k)
    throw std::invalid_argument("piecewise_poly_approx: one cell count per axis");
  const auto grid = static_cast<std::size_t>(f.cells_per_axis());
  for (std::size_t nj : cells_per_axis)
    if (nj == 0 || grid % nj != 0)
      throw std::invalid_argument("piecewise_poly_approx: cell counts must divide the grid");

  PiecewisePolyResult out;
  out.approx.assign(f.size(), 0.0);
  std::size_t dim = 1;
  for (std::size_t nj : cells_per_axis) dim *= nj;
  dim *= static_cast<std::size_t>(std::pow(degree + 1, k));
  out.dimension = dim;

  if (k == 1) {
    const std::size_t nx = cells_per_axis[0];
    const std::size_t m = grid / nx;
    const auto basis = discrete_poly_basis(m, degree);
    for (std::size_t cell = 0; cell < nx; ++cell) {
      const std::size_t off = cell * m;
      for (const auto& b : basis) {
        double c = 0.0;
        for (std::size_t i = 0; i < m; ++i) c += f[off + i] * b[i];
        c /= static_cast<double>(m);
        for (std::size_t i = 0; i < m; ++i) out.approx[off + i] += c * b[i];
      }
    }
  } else {
    const std::size_t nx = cells_per_axis[0], ny = cells_per_axis[1];
    const std::size_t mx = grid / nx, my = grid / ny;
    const auto bx = discrete_poly_basis(mx, degree);
    const auto by = discrete_poly_basis(my, degree);
    for (std::size_t cx = 0; cx < nx; ++cx) {
      for (std::size_t cy = 0; cy < ny; ++cy) {
        for (const auto& px : bx) {
          for (const auto& py : by) {
            double c = 0.0;
            for (std::size_t i = 0; i < mx; ++i)
              for (std::size_t j = 0; j < my; ++j)
                c += f[(cx * mx + i) * grid + cy * my + j] * px[i] * py[j];
            c /= static_cast<double>(mx * my);
            for (std::size_t i = 0; i < mx; ++i)
              for (std::size_t j = 0; j < my; ++j)
                out.approx[(cx * mx + i) * grid + cy * my + j] += c * px[i] * py[j];
          }
        }
      }
    }
  }

  double err = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = f[i] - out.approx[i];
    err += d * d;
  }
  out.error_l2_sq = err * f.cell_measure();
  return out;
}

}  // namespace hpl
