#include "tglab/identities.hpp"

#include <cmath>
#include <stdexcept>

namespace tglab {

namespace {

void check_inputs(const ModalSolution& mode, const SpectralGrid& grid) {
  if (!(mode.c.imag() > 0.0)) throw std::invalid_argument("integral identities require c_i > 0");
  if (mode.w.size() != grid.size()) throw std::invalid_argument("eigenfunction length does not match grid");
}

double normalized(double raw, double scale) { return scale > 0.0 ? std::abs(raw) / scale : std::abs(raw); }

struct TermPair {
  IdentityTerms value;
  IdentityTerms magnitude;
};

TermPair evaluate_terms(const ModalSolution& mode, const FlowProfile& profile, const SpectralGrid& grid) {
  check_inputs(mode, grid);
  const int m = grid.size();
  const double a2 = mode.alpha * mode.alpha;
  const double cr = mode.c.real();
  const double ci = mode.c.imag();

  const Eigen::VectorXcd dw = grid.differentiate(mode.w, 1);
  const Eigen::VectorXcd d2w = grid.differentiate(mode.w, 2);

  Eigen::VectorXd grad(m), shear(m), buoy(m), shear_i(m), buoy_i(m), curv(m), shear_sq(m), cross(m), buoy_sq(m),
      full(m);
  for (int k = 0; k < m; ++k) {
    const double z = grid.nodes()[k];
    const double u = profile.u(z);
    const double d2u = profile.d2u(z);
    const double gb = profile.gbeta(z);
    const double rel = u - cr;
    const double q = rel * rel + ci * ci;
    const double w2 = std::norm(mode.w[k]);
    const double dw2 = std::norm(dw[k]);
    const double d2w2 = std::norm(d2w[k]);

    grad[k] = dw2 + a2 * w2;
    shear[k] = d2u * rel / q * w2;
    buoy[k] = gb * (rel * rel - ci * ci) / (q * q) * w2;
    shear_i[k] = d2u / q * w2;
    buoy_i[k] = gb * rel / (q * q) * w2;
    curv[k] = d2w2 + a2 * dw2;
    shear_sq[k] = d2u * d2u / q * w2;
    cross[k] = gb * d2u * rel / (q * q) * w2;
    buoy_sq[k] = gb * gb / (q * q) * w2;
    full[k] = d2w2 + 2.0 * a2 * dw2 + a2 * a2 * w2;
  }

  auto integrate_all = [&](auto&& op) {
    IdentityTerms t;
    t.grad_energy = grid.integrate(op(grad));
    t.shear = grid.integrate(op(shear));
    t.buoyancy = grid.integrate(op(buoy));
    t.shear_imag = grid.integrate(op(shear_i));
    t.buoyancy_imag = grid.integrate(op(buoy_i));
    t.curvature_energy = grid.integrate(op(curv));
    t.shear_sq = grid.integrate(op(shear_sq));
    t.cross = grid.integrate(op(cross));
    t.buoyancy_sq = grid.integrate(op(buoy_sq));
    t.full_energy = grid.integrate(op(full));
    return t;
  };
  return {integrate_all([](const Eigen::VectorXd& v) -> Eigen::VectorXd { return v; }),
          integrate_all([](const Eigen::VectorXd& v) -> Eigen::VectorXd { return v.cwiseAbs(); })};
}

void fill_energy(IdentityReport& r, const IdentityTerms& t, const IdentityTerms& m) {
  r.raw_energy_real = t.grad_energy + t.shear - t.buoyancy;
  r.scale_energy_real = m.grad_energy + m.shear + m.buoyancy;
  r.energy_real = normalized(r.raw_energy_real, r.scale_energy_real);

  r.raw_energy_imag = t.shear_imag - 2.0 * t.buoyancy_imag;
  r.scale_energy_imag = m.shear_imag + 2.0 * m.buoyancy_imag;
  r.energy_imag = normalized(r.raw_energy_imag, r.scale_energy_imag);
}

void fill_curvature(IdentityReport& r, const IdentityTerms& t, const IdentityTerms& m, double alpha) {
  const double a2 = alpha * alpha;
  r.raw_curvature_real =
      t.curvature_energy - a2 * t.shear - t.shear_sq + a2 * t.buoyancy + 2.0 * t.cross - t.buoyancy_sq;
  r.scale_curvature_real =
      m.curvature_energy + a2 * m.shear + m.shear_sq + a2 * m.buoyancy + 2.0 * m.cross + m.buoyancy_sq;
  r.curvature_real = normalized(r.raw_curvature_real, r.scale_curvature_real);

  r.raw_curvature_sum = t.full_energy - t.shear_sq + 2.0 * t.cross - t.buoyancy_sq;
  r.scale_curvature_sum = m.full_energy + m.shear_sq + 2.0 * m.cross + m.buoyancy_sq;
  r.curvature_sum = normalized(r.raw_curvature_sum, r.scale_curvature_sum);

  const double alt_cross = r.raw_curvature_real - 2.0 * t.cross + 2.0 * t.buoyancy_imag;
  r.alt_cross_residual = normalized(alt_cross, r.scale_curvature_real);
  const double alt_sign = r.raw_curvature_real + 2.0 * t.buoyancy_sq;
  r.alt_sign_residual = normalized(alt_sign, r.scale_curvature_real);
}

}  // namespace

IdentityTerms identity_terms(const ModalSolution& mode, const FlowProfile& profile, const SpectralGrid& grid) {
  return evaluate_terms(mode, profile, grid).value;
}

IdentityReport energy_identities(const ModalSolution& mode, const FlowProfile& profile, const SpectralGrid& grid,
                                 double tol) {
  IdentityReport r;
  const TermPair terms = evaluate_terms(mode, profile, grid);
  r.terms = terms.value;
  r.tolerance = tol;
  fill_energy(r, terms.value, terms.magnitude);
  r.passed = r.energy_real < tol && r.energy_imag < tol;
  return r;
}

IdentityReport curvature_identities(const ModalSolution& mode, const FlowProfile& profile, const SpectralGrid& grid,
                                    double tol) {
  IdentityReport r;
  const TermPair terms = evaluate_terms(mode, profile, grid);
  r.terms = terms.value;
  r.tolerance = tol;
  fill_curvature(r, terms.value, terms.magnitude, mode.alpha);
  r.passed = r.curvature_real < tol && r.curvature_sum < tol;
  return r;
}

IdentityReport identity_report(const ModalSolution& mode, const FlowProfile& profile, const SpectralGrid& grid,
                               double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("identity tolerance must be positive");
  IdentityReport r;
  const TermPair terms = evaluate_terms(mode, profile, grid);
  r.terms = terms.value;
  r.tolerance = tol;
  fill_energy(r, terms.value, terms.magnitude);
  fill_curvature(r, terms.value, terms.magnitude, mode.alpha);
  const double a2 = mode.alpha * mode.alpha;
  r.consistency_gap =
      normalized(r.raw_curvature_sum - r.raw_curvature_real - a2 * r.raw_energy_real, r.scale_curvature_sum);
  r.passed = r.energy_real < tol && r.energy_imag < tol && r.curvature_real < tol && r.curvature_sum < tol;
  return r;
}

}  // namespace tglab
