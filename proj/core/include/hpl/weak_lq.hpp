#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hpl {

struct WeakLqSubset {
  std::vector<std::size_t> indices;  // 0-based positions of the kept coefficients
  double delta;                      // Δ_m = k + log C(2^k, 2^j)
};

/// The 2^j largest coefficients (by modulus, ties to the lower index) among
/// the first 2^k entries of beta, with the subset weight.
WeakLqSubset weak_lq_subset(std::span<const double> beta, int j, int k);

/// |β|_{q,w} = inf{y : a_n ≤ y n^{-1/q}} = max_n a_n n^{1/q}, where a is the
/// nonincreasing rearrangement of |β|.
double weak_lq_weight(std::span<const double> beta, double q);

struct TailBoundCheck {
  double tail_p_sum;    // Σ_{i>n} a_i^p
  double tail_p_bound;  // q/(p-q)·w^p·(n+1/2)^{-(p-q)/q}
  double best_term_sq;  // Σ of β² off the n largest
  double best_term_bound;  // (2/q-1)^{-1}·w²·(n+1/2)^{1-2/q}
  bool ok() const {
    return tail_p_sum <= tail_p_bound * (1.0 + 1e-12) &&
           best_term_sq <= best_term_bound * (1.0 + 1e-12);
  }
};

/// Checks the rearrangement tail bound at exponent p > q and the best
/// n-term approximation bound (requires q < 2 for the latter).
TailBoundCheck weak_lq_tail_bounds(std::span<const double> beta, double q, double p,
                                   std::size_t n);

/// Minimizes f(x) = B·2^{-δx} ∨ x^a over x > 0 by bisection on the
/// crossing point B·2^{-δx} = x^a. With V = δB^{1/a}/a:
///   V ≤ 2: f* = c1·B with c1 ∈ [2^{-a}, 1)
///   V > 2: x* = z·a·log2(V)/δ with z ∈ (0.469, 1)
struct EnvelopeMin {
  double x_star;
  double f_star;
  double residual;  // |B·2^{-δx*} - x*^a|
  double v;
  bool small_v;  // V ≤ 2
  double c1;     // defined when small_v
  double z;      // defined when !small_v
};
EnvelopeMin envelope_minimize(double b, double delta, double a);

struct HaarTailReport {
  std::vector<double> level_tails;  // tails[J+1] = Σ_{j>J} Σ_k β², J from -1
  std::vector<double> level_l1;     // per detail level, Σ_k |β|
  double slope;                     // LS slope of log2(tail_J) vs J; -inf if < 2 positive tails
  double weak_l1_weight;
};

/// Expands a 2-D grid function in the orthonormal Haar basis of L2(λ)
/// (values are scaled by √cell_measure first) and reports how the
/// level-tail energies decay, plus the weak-ℓ1 weight of the coefficients.
HaarTailReport haar_tail_decay(std::span<const double> values_2d, double p,
                               double cell_measure);

}  // namespace hpl
