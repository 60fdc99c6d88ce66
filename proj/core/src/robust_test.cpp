#include "hpl/robust_test.hpp"

#include <cmath>

namespace hpl {

TestSpec make_test(const GridIntensity& pi_center, const GridIntensity& nu_center,
                   double xi, double x) {
  if (!(xi > 0.0 && xi < 0.5)) throw std::invalid_argument("make_test: xi must be in (0, 1/2)");
  if (!pi_center.same_grid(nu_center))
    throw DomainMismatchError("make_test: centers on different grids");
  const std::size_t n = pi_center.size();
  std::vector<double> pi_mix(n), nu_mix(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double st = std::sqrt(pi_center[i]);
    const double su = std::sqrt(nu_center[i]);
    const double a = xi * su + (1.0 - xi) * st;
    const double b = xi * st + (1.0 - xi) * su;
    pi_mix[i] = a * a;
    nu_mix[i] = b * b;
  }
  return TestSpec{
      pi_center,
      nu_center,
      GridIntensity(pi_center.domain(), pi_center.resolution(), std::move(pi_mix)),
      GridIntensity(nu_center.domain(), nu_center.resolution(), std::move(nu_mix)),
      xi,
      x,
  };
}

TestOutcome run_test(const TestSpec& spec, const PointSample& sample) {
  const double stat =
      log_likelihood_ratio(sample, spec.pi_mixture, spec.nu_mixture) - 2.0 * spec.threshold_x;
  return TestOutcome{stat > 0.0 ? TestDecision::PiCenter : TestDecision::NuCenter, stat};
}

double ball_error_bound(const TestSpec& spec, BallCase ball) {
  const double hsq = hellinger_sq(spec.pi_center, spec.nu_center);
  const double s = 1.0 - 2.0 * spec.xi;
  const double exponent = (ball == BallCase::NearNu ? -spec.threshold_x : spec.threshold_x) -
                          s * s * hsq;
  return std::exp(exponent);
}

double mixture_tail_bound(const TestSpec& spec, const GridIntensity& mu, TailSide side) {
  const double hsq_centers = hellinger_sq(spec.pi_center, spec.nu_center);
  const double s = 1.0 - 2.0 * spec.xi;
  double exponent;
  if (side == TailSide::DecidePi) {
    const double hsq_mu = hellinger_sq(mu, spec.nu_center);
    exponent = -spec.threshold_x + s * ((2.0 / spec.xi) * hsq_mu - hsq_centers);
  } else {
    const double hsq_mu = hellinger_sq(mu, spec.pi_center);
    exponent = spec.threshold_x + s * ((2.0 / spec.xi) * hsq_mu - hsq_centers);
  }
  return std::exp(exponent);
}

TestSpec net_pair_test(const GridIntensity& t, const GridIntensity& u,
                       double eta_t, double eta_u) {
  if (t == u) throw std::invalid_argument("net_pair_test: points must be distinct");
  const double x = (eta_t * eta_t - eta_u * eta_u) / 4.0;
  return make_test(t, u, 0.25, x);
}

}  // namespace hpl
