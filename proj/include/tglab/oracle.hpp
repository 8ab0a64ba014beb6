#pragma once

#include "tglab/eigensolver.hpp"

namespace tglab {

// Independent shooting solver for the Taylor–Goldstein eigenproblem. It
// shares nothing with the spectral path beyond the profile closures.

struct OracleConfig {
  int steps = 4096;
  double tolerance = 1e-10;  // on the normalized end mismatch
  int max_iterations = 100;
};

struct ShootingResult {
  cplx c;
  double mismatch = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Integrates w'' = α²w + U''/(U − c) w − gβ/(U − c)² w from z1 with
/// (w, w') = (0, 1) by fixed-step RK4; returns w(z2) / max|w|.
/// Requires c_i > 0 and steps ≥ 100.
/// w(z2)/max|w| for the trajectory started at w(z1) = 0, w'(z1) = 1.
cplx shoot(const FlowProfile& profile, double alpha, cplx c, int steps = 4096);

/// Unnormalized w(z2) of the same trajectory.
cplx shoot_endpoint(const FlowProfile& profile, double alpha, cplx c, int steps = 4096);

/// Complex secant iteration on w(z2; c), kept inside the upper half-plane.
/// Never throws on non-convergence; check `converged`.
ShootingResult find_eigenvalue(const FlowProfile& profile, double alpha, cplx guess, const OracleConfig& cfg = {});

/// Seeds the shooting solver at mode.c and compares.
bool cross_validate(const ModalSolution& mode, const FlowProfile& profile, double tol, const OracleConfig& cfg = {});

}  // namespace tglab
