#pragma once

#include "tglab/eigensolver.hpp"

namespace tglab {

/// Quadrature values of every integral appearing in the identities, with
/// Q = (U − c_r)² + c_i² and W = |w|².
struct IdentityTerms {
  double grad_energy = 0.0;     // ∫ |Dw|² + α²|w|²
  double shear = 0.0;           // ∫ U''(U − c_r)/Q W
  double buoyancy = 0.0;        // ∫ gβ((U − c_r)² − c_i²)/Q² W
  double shear_imag = 0.0;      // ∫ U''/Q W
  double buoyancy_imag = 0.0;   // ∫ gβ(U − c_r)/Q² W
  double curvature_energy = 0.0;  // ∫ |D²w|² + α²|Dw|²
  double shear_sq = 0.0;        // ∫ (U'')²/Q W
  double cross = 0.0;           // ∫ gβ U''(U − c_r)/Q² W
  double buoyancy_sq = 0.0;     // ∫ (gβ)²/Q² W
  double full_energy = 0.0;     // ∫ |D²w|² + 2α²|Dw|² + α⁴|w|²
};

/// Normalized residuals of the four integral relations every unstable mode
/// must satisfy. Each residual is |raw| divided by the sum, over that
/// relation's integral terms, of the integral of the absolute integrand.
/// Terms that vanish by symmetry therefore do not shrink the scale.
///
///  energy_real      real part after multiplying by w* and integrating
///  energy_imag      imaginary part of the same, with c_i cancelled
///  curvature_real   real part after multiplying by D²w*
///  curvature_sum    curvature_real + α² · energy_real
///
/// `alt_cross_residual` and `alt_sign_residual` evaluate two misprinted
/// variants of curvature_real (cross term without U'', and +(gβ)² instead
/// of −(gβ)²). They are diagnostics only and never affect `passed`.
struct IdentityReport {
  double energy_real = 0.0;
  double energy_imag = 0.0;
  double curvature_real = 0.0;
  double curvature_sum = 0.0;

  double raw_energy_real = 0.0;
  double raw_energy_imag = 0.0;
  double raw_curvature_real = 0.0;
  double raw_curvature_sum = 0.0;

  double scale_energy_real = 0.0;
  double scale_energy_imag = 0.0;
  double scale_curvature_real = 0.0;
  double scale_curvature_sum = 0.0;

  double consistency_gap = 0.0;
  double alt_cross_residual = 0.0;
  double alt_sign_residual = 0.0;

  double tolerance = 0.0;
  bool passed = false;
  IdentityTerms terms;
};

inline constexpr double default_identity_tol = 1e-6;
inline constexpr double strict_identity_tol = 1e-8;

IdentityTerms identity_terms(const ModalSolution& mode, const FlowProfile& profile, const SpectralGrid& grid);

/// Fills the energy_* fields only. Requires c_i > 0.
IdentityReport energy_identities(const ModalSolution& mode, const FlowProfile& profile, const SpectralGrid& grid,
                                 double tol = default_identity_tol);

/// Fills the curvature_* fields and the misprint diagnostics. Requires c_i > 0.
IdentityReport curvature_identities(const ModalSolution& mode, const FlowProfile& profile, const SpectralGrid& grid,
                                    double tol = default_identity_tol);

/// Both checks, consistency gap and the pass flag.
IdentityReport identity_report(const ModalSolution& mode, const FlowProfile& profile, const SpectralGrid& grid,
                               double tol = default_identity_tol);

}  // namespace tglab
