#include "tglab/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tglab {

namespace {

struct Shot {
  cplx end;
  double peak;
};

Shot integrate(const FlowProfile& profile, double alpha, cplx c, int steps) {
  if (!(c.imag() > 0.0)) throw std::invalid_argument("shooting requires c_i > 0");
  if (steps < 100) throw std::invalid_argument("shooting requires at least 100 steps");
  if (!(alpha > 0.0)) throw std::invalid_argument("wavenumber alpha must be positive");

  const double a2 = alpha * alpha;
  auto coeff = [&](double z) {
    const cplx shift = profile.u(z) - c;
    return a2 + profile.d2u(z) / shift - profile.gbeta(z) / (shift * shift);
  };

  const double z1 = profile.z1();
  const double h = (profile.z2() - z1) / steps;
  cplx w = 0.0;
  cplx dw = 1.0;
  double peak = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double z = z1 + k * h;
    const cplx q0 = coeff(z);
    const cplx qm = coeff(z + 0.5 * h);
    const cplx q1 = coeff(z + h);

    const cplx k1w = dw;
    const cplx k1d = q0 * w;
    const cplx k2w = dw + 0.5 * h * k1d;
    const cplx k2d = qm * (w + 0.5 * h * k1w);
    const cplx k3w = dw + 0.5 * h * k2d;
    const cplx k3d = qm * (w + 0.5 * h * k2w);
    const cplx k4w = dw + h * k3d;
    const cplx k4d = q1 * (w + h * k3w);

    w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    dw += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    peak = std::max(peak, std::abs(w));
  }
  return {w, peak};
}

double velocity_range(const FlowProfile& profile) {
  constexpr int samples = 2000;
  double lo = profile.u(profile.z1());
  double hi = lo;
  for (int k = 1; k <= samples; ++k) {
    const double u = profile.u(profile.z1() + (profile.z2() - profile.z1()) * k / samples);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  return hi > lo ? hi - lo : 1.0;
}

}  // namespace

cplx shoot(const FlowProfile& profile, double alpha, cplx c, int steps) {
  const Shot s = integrate(profile, alpha, c, steps);
  return s.peak > 0.0 ? s.end / s.peak : s.end;
}

cplx shoot_endpoint(const FlowProfile& profile, double alpha, cplx c, int steps) {
  return integrate(profile, alpha, c, steps).end;
}

ShootingResult find_eigenvalue(const FlowProfile& profile, double alpha, cplx guess, const OracleConfig& cfg) {
  ShootingResult result;
  result.c = guess;
  if (!(guess.imag() > 0.0)) {
    result.mismatch = std::numeric_limits<double>::infinity();
    return result;
  }
  const double range = velocity_range(profile);
  const double floor = 1e-8 * range;

  Shot s0 = integrate(profile, alpha, guess, cfg.steps);
  result.mismatch = std::abs(s0.end) / s0.peak;
  if (result.mismatch < cfg.tolerance) {
    result.converged = true;
    return result;
  }

  cplx c0 = guess;
  cplx c1 = guess + cplx(1e-4, 1e-4) * std::max(range, std::abs(guess));
  if (c1.imag() <= floor) c1.imag(guess.imag() * 0.5 + floor);
  Shot s1 = integrate(profile, alpha, c1, cfg.steps);

  for (int it = 1; it <= cfg.max_iterations; ++it) {
    result.iterations = it;
    const cplx df = s1.end - s0.end;
    if (df == cplx{}) break;
    cplx step = -s1.end * (c1 - c0) / df;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    int halvings = 0;
    while ((c1 + step).imag() <= floor && halvings < 60) {
      step *= 0.5;
      ++halvings;
    }
    if ((c1 + step).imag() <= floor) break;

    c0 = c1;
    s0 = s1;
    c1 += step;
    s1 = integrate(profile, alpha, c1, cfg.steps);
    result.c = c1;
    result.mismatch = std::abs(s1.end) / s1.peak;
    if (result.mismatch < cfg.tolerance) {
      result.converged = true;
      break;
    }
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(c1))) break;
  }
  return result;
}

bool cross_validate(const ModalSolution& mode, const FlowProfile& profile, double tol, const OracleConfig& cfg) {
  const ShootingResult r = find_eigenvalue(profile, mode.alpha, mode.c, cfg);
  return r.converged && std::abs(r.c - mode.c) < tol;
}

}  // namespace tglab
