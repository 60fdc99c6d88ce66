#include <doctest.h>

#include <cmath>

#include "hpl/estimators.hpp"
#include "hpl/lower_bounds.hpp"
#include "hpl/numeric.hpp"
#include "hpl/variation.hpp"

using namespace hpl;

namespace {
const Domain kUnit = Domain::continuous_box(1, 1.0);
}

TEST_CASE("perturbation family basics (D = 1, flat bump)") {
  std::vector<double> g(16, 1.0);
  const AssouadFamily fam(1, GridFunction(kUnit, 4, g));
  CHECK(fam.a() == doctest::Approx(1.0));
  const auto s0 = fam.member(0);
  const auto s1 = fam.member(1);
  CHECK(s0[0] == doctest::Approx(0.5));
  CHECK(s1[0] == doctest::Approx(1.5));
}

TEST_CASE("member L2 distances equal the Hamming identity exactly") {
  // g supported on [0, 1/4): triangular-ish grid values in [0, 1]
  std::vector<double> g(64, 0.0);
  for (std::size_t i = 0; i < 16; ++i)
    g[i] = static_cast<double>(std::min(i + 1, 16 - i)) / 8.0 * 0.9;
  const AssouadFamily fam(4, GridFunction(kUnit, 6, g));
  Rng rng(Seed{90, 0});
  for (int rep = 0; rep < 50; ++rep) {
    const std::uint64_t d1 = rng.next_u64() & 15u;
    const std::uint64_t d2 = rng.next_u64() & 15u;
    const double hamming = static_cast<double>(__builtin_popcountll(d1 ^ d2));
    const double dist = l2_dist_sq(fam.member(d1).fn(), fam.member(d2).fn());
    CHECK(dist == doctest::Approx(hamming / fam.a()).epsilon(1e-9));
    // Hellinger between neighbors: c·Δ with c in [1/8, 1/7]
    const double hsq = hellinger_sq(fam.member(d1), fam.member(d2));
    if (hamming == 1.0)
      CHECK(hsq == doctest::Approx(fam.per_coordinate_hsq()).epsilon(1e-9));
  }
  CHECK(fam.per_coordinate_hsq() >= 1.0 / 8.0 - 1e-12);
  CHECK(fam.per_coordinate_hsq() <= 1.0 / 7.0 + 1e-12);
}

TEST_CASE("flat family: sup-norm control and exact identities") {
  const std::size_t d = 4;
  const double l = 6.0;
  const auto fam = build_flat_family(d, l, 12);
  const double theta = 2.0 * l / 3.0;
  CHECK(fam.a() == doctest::Approx(1.0 / theta).epsilon(1e-12));
  for (std::uint64_t bits : {std::uint64_t{0}, std::uint64_t{5}, std::uint64_t{15}}) {
    const auto s = fam.member(bits);
    CHECK(s.fn().max_abs() <= l + 1e-9);
  }
  // ‖s_δ − s_δ'‖₂² = θ·Δ
  CHECK(l2_dist_sq(fam.member(0).fn(), fam.member(3).fn()) ==
        doctest::Approx(2.0 * theta).epsilon(1e-9));
  CHECK(fam.per_coordinate_hsq() >= 1.0 / 8.0 - 1e-12);
  CHECK(fam.per_coordinate_hsq() <= 1.0 / 7.0 + 1e-12);
  CHECK_THROWS_AS(build_flat_family(4, 5.0, 12), std::invalid_argument);
}

TEST_CASE("neighbor average dominates e^{-2/7}") {
  for (const std::size_t d : {std::size_t{1}, std::size_t{2}, std::size_t{4}}) {
    const auto fam = build_flat_family(d, 1.5 * static_cast<double>(d) + 1.0, 12);
    CHECK(assouad_average(fam) >= std::exp(-2.0 / 7.0) - 1e-12);
    const auto tri = build_triangular_family(d, 12);
    CHECK(assouad_average(tri) >= std::exp(-2.0 / 7.0) - 1e-12);
  }
}

TEST_CASE("triangular family: exact bump energy, value range, variation") {
  for (const std::size_t d : {std::size_t{1}, std::size_t{2}, std::size_t{4}}) {
    const auto fam = build_triangular_family(d, 12);
    const double dd = static_cast<double>(d);
    CHECK(fam.a() == doctest::Approx(1.0 / (12.0 * dd * dd * dd)).epsilon(1e-9));
    const auto s = fam.member(d >= 2 ? 2 : 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s[i] >= 9.0 * dd * dd * dd - 1e-6);
      CHECK(s[i] <= 15.0 * dd * dd * dd + 1e-6);
    }
    // α-variation certificate of √s_δ via the exact DP
    for (const double alpha : {0.5, 1.0}) {
      const auto root = s.sqrt_fn();
      const std::vector<double> vals(root.values().begin(), root.values().end());
      const double v = alpha_variation(vals, alpha);
      CHECK(v <= std::pow(dd, (1.0 + 2.0 * alpha) / 2.0) + 1e-9);
    }
    // Lipschitz envelope |√s(x) − √s(y)| ≤ √D[1 ∧ D|x−y|] on grid midpoints
    const auto root = s.sqrt_fn();
    const double h = 1.0 / static_cast<double>(root.size());
    for (std::size_t i = 0; i < root.size(); i += 37) {
      for (std::size_t j = i; j < root.size(); j += 101) {
        const double gap = std::abs(root[i] - root[j]);
        const double dist = static_cast<double>(j - i) * h + h;  // cell-width slack
        CHECK(gap <= std::sqrt(dd) * std::min(1.0, dd * dist) + 1e-9);
      }
    }
  }
  CHECK_THROWS_AS(build_triangular_family(4, 7), ResolutionError);
}

TEST_CASE("assouad bound values") {
  const auto fam = build_flat_family(4, 6.0, 12);
  // (Dθ/16)·avg with θ = 1/a = 2L/3; must dominate the closed form
  const double bound = assouad_lower_bound(fam);
  CHECK(bound >= flat_family_bound(4, 6.0) - 1e-12);
  CHECK(flat_family_bound(4, 6.0) == doctest::Approx(std::exp(-2.0 / 7.0)).epsilon(1e-12));

  // D = 1 reduces to a two-member family
  const auto two = build_flat_family(1, 2.0, 10);
  CHECK(assouad_average(two) == doctest::Approx(std::exp(-2.0 * two.per_coordinate_hsq())));
}

TEST_CASE("two-point bound") {
  const auto one = GridIntensity::constant(kUnit, 4, 1.0);
  const auto four = GridIntensity::constant(kUnit, 4, 4.0);
  CHECK(two_point_bound(one, one) == 0.0);
  CHECK(two_point_bound(one, four) ==
        doctest::Approx(9.0 / 16.0 * std::exp(-1.0)).epsilon(1e-12));

  // mass-scaled pair with 2H² = 1 at every scale
  for (const double l : {0.25, 1.0, 4.0}) {
    const Domain dom = Domain::continuous_box(1, l);
    const auto s0 = GridIntensity::constant(dom, 4, 1.0);
    const double root = 1.0 + 1.0 / std::sqrt(l);
    const auto s1 = GridIntensity::constant(dom, 4, root * root);
    CHECK(hellinger_sq(s0, s1) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("no estimator beats the bound (MC sanity)") {
  // maximum-likelihood oracle on a two-member family still pays the price
  const auto fam = build_flat_family(1, 2.0, 8);
  const auto s0 = fam.member(0);
  const auto s1 = fam.member(1);
  const auto mle = [&](const PointSample& x) {
    const double lr = log_likelihood_ratio(x, s0, s1);
    return lr >= 0.0 ? s0 : s1;
  };
  const auto rep = estimator_vs_bound(fam, mle, 4000, Seed{91, 0});
  CHECK(rep.pass);
  CHECK(rep.max_risk_l2 >= rep.bound - 3.0 * rep.stderr_at_max);

  // degenerate family: bound 0, trivially passed
  std::vector<double> g(16, 0.0);
  g[0] = 1e-9;  // a > 0 but members nearly equal
  const AssouadFamily tiny(1, GridFunction(kUnit, 4, g));
  const auto rep2 = estimator_vs_bound(
      tiny, [&](const PointSample&) { return tiny.member(0); }, 50, Seed{92, 0});
  CHECK(rep2.pass);
}

TEST_CASE("histogram risk exceeds the flat-family bound") {
  const auto fam = build_flat_family(4, 6.0, 8);
  const CellRanges quarters{{0, 64}, {64, 128}, {128, 192}, {192, 256}};
  const auto hist = [&](const PointSample& x) {
    return histogram_estimator(x, quarters).estimate;
  };
  const auto rep = estimator_vs_bound(fam, hist, 400, Seed{93, 0});
  CHECK(rep.max_risk_l2 >= 0.9 * rep.bound);
}
