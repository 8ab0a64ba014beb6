#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "tglab/grid.hpp"
#include "tglab/profiles.hpp"

namespace tglab {

using cplx = std::complex<double>;

/// Raised when the dense generalized eigensolver fails or the pencil is singular.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficients of the quadratic pencil a0 + c a1 + c^2 a2 obtained by
/// clearing the (U − c)^2 denominator of the Taylor–Goldstein operator.
/// Rows 0 and n carry the wall conditions: a0 has a unit diagonal there and
/// a1, a2 are zero, so w = 0 at the walls for every c.
struct QepMatrices {
  Eigen::MatrixXd a0;
  Eigen::MatrixXd a1;
  Eigen::MatrixXd a2;
  double alpha = 0.0;

  Eigen::Index size() const { return a0.rows(); }
  Eigen::MatrixXcd evaluate(cplx c) const;
  Eigen::MatrixXcd derivative(cplx c) const;
};

QepMatrices assemble_qep(const FlowProfile& profile, const SpectralGrid& grid, double alpha);

struct Eigenpair {
  cplx c;
  Eigen::VectorXcd w;
};

/// All finite eigenpairs of the first companion pencil
/// [[0, I], [-a0, -a1]] y = c [[I, 0], [0, a2]] y. Eigenvectors are taken
/// from the upper block and normalized (see normalize_mode). Infinite and
/// indeterminate eigenvalues are dropped.
std::vector<Eigenpair> solve_spectrum(const QepMatrices& q);

/// Scales w to max|w| = 1 with its largest-modulus entry real positive.
/// The zero vector is returned unchanged.
Eigen::VectorXcd normalize_mode(const Eigen::VectorXcd& w);

/// Newton iteration on T(c) w = 0 with the largest entry of w pinned.
/// Returns the refined pair; on a singular bordered system the input is
/// returned unchanged.
Eigenpair refine_eigenpair(const QepMatrices& q, const Eigenpair& seed, int max_iterations = 6);

struct ModalSolution {
  double alpha = 0.0;
  cplx c;
  Eigen::VectorXcd w;
  Eigen::VectorXd nodes;
  int n = 0;
  double residual = 0.0;
  double drift = 0.0;
  bool converged = false;

  double c_r() const { return c.real(); }
  double c_i() const { return c.imag(); }
};

/// Max-norm over interior nodes of the Taylor–Goldstein residual
/// (D² − α²)w − U''/(U − c) w + gβ/(U − c)² w with w scaled to max|w| = 1.
/// Requires c_i > 0.
double mode_residual(const FlowProfile& profile, const SpectralGrid& grid, double alpha, cplx c,
                     const Eigen::VectorXcd& w);

/// Spurious-mode rejection thresholds. Negative values select the defaults,
/// which scale with the velocity range where the quantity is dimensional.
struct FilterConfig {
  double c_i_min = -1.0;       // default 1e-6 * (u_max - u_min)
  double residual_tol = 1e-7;
  double drift_tol = 1e-7;     // relative to (u_max - u_min)
  bool refine = true;
};

/// Every candidate with c_i above the cut, each annotated with residual,
/// drift against a 3n/2 re-solve and the resulting `converged` flag.
std::vector<ModalSolution> assess_modes(const FlowProfile& profile, const SpectralGrid& grid, double alpha,
                                        const std::vector<Eigenpair>& raw, const FilterConfig& cfg = {});

/// Candidates from assess_modes that passed every test, sorted by
/// decreasing c_i. Semicircle containment is never consulted.
std::vector<ModalSolution> filter_modes(const FlowProfile& profile, const SpectralGrid& grid, double alpha,
                                        const std::vector<Eigenpair>& raw, const FilterConfig& cfg = {});

/// Resolution, grid clustering and filter settings for a full solve.
struct SolverConfig {
  int n = 128;
  bool cluster = true;          // interior-clustered grid (see GridMap)
  double cluster_width = -1.0;  // default (z2 − z1)/10
  double cluster_center = std::numeric_limits<double>::quiet_NaN();  // default midpoint
  FilterConfig filter;
};

/// The grid a solve with `cfg` runs on.
SpectralGrid solver_grid(const FlowProfile& profile, const SolverConfig& cfg);

/// assemble + solve + filter on solver_grid(profile, cfg).
std::vector<ModalSolution> unstable_modes(const FlowProfile& profile, double alpha, const SolverConfig& cfg = {});

}  // namespace tglab
