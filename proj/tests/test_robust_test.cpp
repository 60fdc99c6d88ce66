#include <doctest.h>

#include <cmath>

#include "hpl/numeric.hpp"
#include "hpl/robust_test.hpp"

using namespace hpl;

namespace {
const Domain kUnit = Domain::continuous_box(1, 1.0);
}

TEST_CASE("make_test mixtures") {
  const auto one = GridIntensity::constant(kUnit, 2, 1.0);
  const auto four = GridIntensity::constant(kUnit, 2, 4.0);

  const auto same = make_test(one, one, 0.25, 0.0);
  CHECK(same.pi_mixture == one);
  CHECK(same.nu_mixture == one);

  const auto spec = make_test(one, four, 0.25, 0.0);
  CHECK(spec.pi_mixture[0] == doctest::Approx(1.5625).epsilon(1e-12));
  CHECK(spec.nu_mixture[0] == doctest::Approx(3.0625).epsilon(1e-12));

  // cellwise mixing identity on the √ scale
  for (std::size_t c = 0; c < spec.pi_mixture.size(); ++c) {
    const double want = 0.25 * std::sqrt(four[c]) + 0.75 * std::sqrt(one[c]);
    CHECK(std::sqrt(spec.pi_mixture[c]) == doctest::Approx(want).epsilon(1e-12));
  }

  // density ratio capped by ((1-ξ)/ξ)² = 9
  for (std::size_t c = 0; c < spec.pi_mixture.size(); ++c)
    CHECK(spec.pi_mixture[c] / spec.nu_mixture[c] <= 9.0 + 1e-12);

  CHECK_THROWS_AS(make_test(one, four, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_test(one, four, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("mixture masses only grow") {
  Rng rng(Seed{30, 0});
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> a(8), b(8);
    for (std::size_t i = 0; i < 8; ++i) {
      a[i] = 4.0 * rng.uniform();
      b[i] = 4.0 * rng.uniform();
    }
    const GridIntensity pa(kUnit, 3, a), pb(kUnit, 3, b);
    const auto spec = make_test(pa, pb, 0.25, 0.0);
    CHECK(spec.pi_mixture.mass() + spec.nu_mixture.mass() >=
          pa.mass() + pb.mass() - 1e-12);
  }
  const auto one = GridIntensity::constant(kUnit, 0, 1.0);
  const auto eq = make_test(one, one, 0.25, 0.0);
  CHECK(eq.pi_mixture.mass() + eq.nu_mixture.mass() ==
        doctest::Approx(2.0 * one.mass()).epsilon(1e-12));
}

TEST_CASE("run_test decision rule and tie handling") {
  const auto one = GridIntensity::constant(kUnit, 1, 1.0);
  const auto spec = make_test(one, one, 0.25, 0.0);
  const auto out = run_test(spec, PointSample::empty(kUnit));
  CHECK(out.statistic == 0.0);
  CHECK(out.decision == TestDecision::NuCenter);  // tie rule

  const auto four = GridIntensity::constant(kUnit, 1, 4.0);
  const auto spec2 = make_test(one, four, 0.25, 0.0);
  const auto out2 = run_test(spec2, PointSample::empty(kUnit));
  CHECK(out2.statistic ==
        doctest::Approx(spec2.nu_mixture.mass() - spec2.pi_mixture.mass()).epsilon(1e-12));
}

TEST_CASE("antisymmetry under center swap and threshold negation") {
  GridIntensity t(kUnit, 2, {1.0, 3.0, 0.5, 2.0});
  GridIntensity u(kUnit, 2, {2.0, 1.0, 4.0, 0.0});
  const auto fwd = make_test(t, u, 0.25, 0.7);
  const auto rev = make_test(u, t, 0.25, -0.7);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto x = sample_process(t, Seed{s, 3});
    const auto a = run_test(fwd, x);
    const auto b = run_test(rev, x);
    CHECK(a.statistic == doctest::Approx(-b.statistic).epsilon(1e-12));
    // the decided CENTER flips: fwd's π_c is rev's ν_c
    const bool fwd_picked_t = a.decision == TestDecision::PiCenter;
    const bool rev_picked_t = b.decision == TestDecision::NuCenter;
    CHECK(fwd_picked_t == rev_picked_t);
  }
}

TEST_CASE("ball error bounds") {
  const auto one = GridIntensity::constant(kUnit, 0, 1.0);
  auto shifted = [&](double hsq) {
    // constant with mass m so that H²(1, m) = hsq: √m = 1 + √(2hsq)
    const double root = 1.0 + std::sqrt(2.0 * hsq);
    return GridIntensity::constant(kUnit, 0, root * root);
  };
  const auto spec = make_test(one, shifted(1.0), 0.25, 0.0);
  CHECK(hellinger_sq(spec.pi_center, spec.nu_center) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ball_error_bound(spec, BallCase::NearNu) ==
        doctest::Approx(std::exp(-0.25)).epsilon(1e-12));
  CHECK(ball_error_bound(spec, BallCase::NearPi) ==
        doctest::Approx(std::exp(-0.25)).epsilon(1e-12));

  const auto degenerate = make_test(one, one, 0.25, 0.7);
  CHECK(ball_error_bound(degenerate, BallCase::NearNu) == doctest::Approx(std::exp(-0.7)));
  CHECK(ball_error_bound(degenerate, BallCase::NearPi) == doctest::Approx(std::exp(0.7)));

  // monotone decreasing in H² (near-nuC side)
  double prev = 1.0;
  for (double hsq : {0.25, 0.5, 1.0, 2.0}) {
    const double b = ball_error_bound(make_test(one, shifted(hsq), 0.25, 0.0), BallCase::NearNu);
    CHECK(b < prev);
    prev = b;
  }
}

TEST_CASE("empirical error stays under the ball bound") {
  const auto one = GridIntensity::constant(kUnit, 0, 4.0);
  const auto other = GridIntensity::constant(kUnit, 0, 9.0);  // H² = ½(2−3)² = 0.5
  const auto spec = make_test(one, other, 0.25, 0.0);
  const std::size_t reps = 5000;
  std::vector<double> errs(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const auto x = sample_process(other, replication_seed(Seed{31, 0}, r));  // truth = ν_c
    errs[r] = run_test(spec, x).decision == TestDecision::PiCenter ? 1.0 : 0.0;
  }
  const auto ms = mean_stderr(errs);
  CHECK(ms.mean <= ball_error_bound(spec, BallCase::NearNu) + 3.0 * ms.stderr_);
}

TEST_CASE("robustness tail bound for arbitrary truth") {
  const auto pi_c = GridIntensity::constant(kUnit, 0, 1.0);
  const auto nu_c = GridIntensity::constant(kUnit, 0, 4.0);
  const auto spec = make_test(pi_c, nu_c, 0.25, 0.3);
  const double hsq = hellinger_sq(pi_c, nu_c);

  CHECK(mixture_tail_bound(spec, nu_c, TailSide::DecidePi) ==
        doctest::Approx(std::exp(-0.3 - 0.5 * hsq)).epsilon(1e-12));
  CHECK(mixture_tail_bound(spec, pi_c, TailSide::DecideNu) ==
        doctest::Approx(std::exp(0.3 - 0.5 * hsq)).epsilon(1e-12));

  // Monte Carlo: truth off both centers
  const auto mu = GridIntensity::constant(kUnit, 0, 3.2);
  const std::size_t reps = 5000;
  std::vector<double> hi(reps), lo(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const auto x = sample_process(mu, replication_seed(Seed{32, 0}, r));
    const auto out = run_test(spec, x);
    hi[r] = out.statistic >= 0.0 ? 1.0 : 0.0;
    lo[r] = out.statistic <= 0.0 ? 1.0 : 0.0;
  }
  const auto mhi = mean_stderr(hi);
  const auto mlo = mean_stderr(lo);
  CHECK(mhi.mean <= mixture_tail_bound(spec, mu, TailSide::DecidePi) + 3.0 * mhi.stderr_);
  CHECK(mlo.mean <= mixture_tail_bound(spec, mu, TailSide::DecideNu) + 3.0 * mlo.stderr_);
}

TEST_CASE("net pair test wiring") {
  const auto t = GridIntensity::constant(kUnit, 0, 1.0);
  const auto u = GridIntensity::constant(kUnit, 0, 4.0);
  CHECK(net_pair_test(t, u, 1.0, 1.0).threshold_x == 0.0);
  CHECK(net_pair_test(t, u, 2.0, 0.0).threshold_x == doctest::Approx(1.0));
  CHECK(net_pair_test(t, u, 2.0, 2.0).xi == 0.25);
  CHECK_THROWS_AS(net_pair_test(t, t, 1.0, 1.0), std::invalid_argument);

  // with equal radii the error under truth = t is at most e^{-H²/4}
  const auto big_t = GridIntensity::constant(kUnit, 0, 64.0);
  const auto big_u = GridIntensity::constant(kUnit, 0, 256.0);  // H² = 32
  const auto spec = net_pair_test(big_t, big_u, 1.0, 1.0);
  const std::size_t reps = 2000;
  std::vector<double> errs(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const auto x = sample_process(big_t, replication_seed(Seed{33, 0}, r));
    errs[r] = run_test(spec, x).decision == TestDecision::NuCenter ? 1.0 : 0.0;
  }
  const auto ms = mean_stderr(errs);
  const double hsq = hellinger_sq(big_t, big_u);
  CHECK(ms.mean <= std::exp(-hsq / 4.0) + 3.0 * ms.stderr_);
}

TEST_CASE("weighted quadratic inequality on random triples") {
  // ∫ g f^{-1} f'² dλ ≤ K‖f − f'‖₂² + 2⟨g, f'⟩ − ⟨g, f⟩ when g/f ≤ K
  Rng rng(Seed{34, 0});
  const double k_cap = 3.0;
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> f(16), g(16), fp(16);
    for (std::size_t i = 0; i < 16; ++i) {
      f[i] = 0.2 + 2.0 * rng.uniform();
      g[i] = f[i] * k_cap * rng.uniform();
      fp[i] = 3.0 * rng.uniform();
    }
    const GridFunction ff(kUnit, 4, f), gf(kUnit, 4, g), fpf(kUnit, 4, fp);
    double lhs = 0.0;
    for (std::size_t i = 0; i < 16; ++i) lhs += g[i] / f[i] * fp[i] * fp[i];
    lhs *= ff.cell_measure();
    const double rhs =
        k_cap * l2_dist_sq(ff, fpf) + 2.0 * gf.inner(fpf) - gf.inner(ff);
    CHECK(lhs <= rhs + 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("sqrt likelihood ratio expectation bound") {
  // E_μ[√(dQ_π/dQ_ν)] ≤ exp[2K H²(μ,ν) − 2H²(π,μ) + H²(π,ν)], ‖dπ/dν‖∞ ≤ K²
  Rng rng(Seed{35, 0});
  for (int scenario = 0; scenario < 3; ++scenario) {
    std::vector<double> nu(4), pi(4), mu(4);
    for (std::size_t i = 0; i < 4; ++i) {
      nu[i] = 0.3 + 1.2 * rng.uniform();
      pi[i] = nu[i] * (0.5 + 1.2 * rng.uniform());
      mu[i] = 0.3 + 1.2 * rng.uniform();
    }
    const GridIntensity nu_i(kUnit, 2, nu), pi_i(kUnit, 2, pi), mu_i(kUnit, 2, mu);
    double k_sq = 0.0;
    for (std::size_t i = 0; i < 4; ++i) k_sq = std::max(k_sq, pi[i] / nu[i]);
    const double k = std::sqrt(k_sq);
    const double bound = std::exp(2.0 * k * hellinger_sq(mu_i, nu_i) -
                                  2.0 * hellinger_sq(pi_i, mu_i) + hellinger_sq(pi_i, nu_i));
    const std::size_t reps = 4000;
    std::vector<double> vals(reps);
    for (std::size_t r = 0; r < reps; ++r) {
      const auto x = sample_process(mu_i, replication_seed(Seed{36, static_cast<std::uint64_t>(scenario)}, r));
      vals[r] = std::exp(0.5 * log_likelihood_ratio(x, pi_i, nu_i));
    }
    const auto ms = mean_stderr(vals);
    CHECK(ms.mean <= bound + 3.0 * ms.stderr_);
  }
}
