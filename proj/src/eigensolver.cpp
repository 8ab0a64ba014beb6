#include "tglab/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>
#include <lapacke.h>

namespace tglab {

namespace {

void apply_wall_rows(QepMatrices& q) {
  const Eigen::Index last = q.size() - 1;
  for (Eigen::Index row : {Eigen::Index{0}, last}) {
    q.a0.row(row).setZero();
    q.a1.row(row).setZero();
    q.a2.row(row).setZero();
    q.a0(row, row) = 1.0;
  }
}

Eigen::Index largest_entry(const Eigen::VectorXcd& w) {
  Eigen::Index k = 0;
  w.cwiseAbs().maxCoeff(&k);
  return k;
}

double reference_range(const ProfileExtrema& e) {
  const double range = e.velocity_range();
  return range > 0.0 ? range : 1.0;
}

}  // namespace

Eigen::MatrixXcd QepMatrices::evaluate(cplx c) const {
  return a0.cast<cplx>() + c * a1.cast<cplx>() + (c * c) * a2.cast<cplx>();
}

Eigen::MatrixXcd QepMatrices::derivative(cplx c) const { return a1.cast<cplx>() + (2.0 * c) * a2.cast<cplx>(); }

QepMatrices assemble_qep(const FlowProfile& profile, const SpectralGrid& grid, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("wavenumber alpha must be positive and finite");
  }
  const int m = grid.size();
  Eigen::VectorXd u(m), d2u(m), gb(m);
  for (int k = 0; k < m; ++k) {
    const double z = grid.nodes()[k];
    u[k] = profile.u(z);
    d2u[k] = profile.d2u(z);
    gb[k] = profile.gbeta(z);
  }

  const Eigen::MatrixXd lap = grid.d2() - alpha * alpha * Eigen::MatrixXd::Identity(m, m);

  QepMatrices q;
  q.alpha = alpha;
  q.a2 = lap;
  q.a1 = -2.0 * u.asDiagonal() * lap;
  q.a1.diagonal() += d2u;
  q.a0 = u.cwiseProduct(u).asDiagonal() * lap;
  q.a0.diagonal() += gb - d2u.cwiseProduct(u);
  apply_wall_rows(q);
  return q;
}

Eigen::VectorXcd normalize_mode(const Eigen::VectorXcd& w) {
  if (w.size() == 0) return w;
  const Eigen::Index k = largest_entry(w);
  if (w[k] == cplx{}) return w;
  Eigen::VectorXcd out = w / w[k];
  out[k] = 1.0;
  return out;
}

std::vector<Eigenpair> solve_spectrum(const QepMatrices& q) {
  const Eigen::Index m = q.size();
  const Eigen::Index big = 2 * m;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(big, big);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(big, big);
  a.topRightCorner(m, m).setIdentity();
  a.bottomLeftCorner(m, m) = -q.a0;
  a.bottomRightCorner(m, m) = -q.a1;
  b.topLeftCorner(m, m).setIdentity();
  b.bottomRightCorner(m, m) = q.a2;

  const double a_norm = a.cwiseAbs().maxCoeff();
  const double b_norm = b.cwiseAbs().maxCoeff();

  Eigen::VectorXd alphar(big), alphai(big), beta(big);
  Eigen::MatrixXd vr(big, big);
  double dummy = 0.0;
  const lapack_int info =
      LAPACKE_dggev(LAPACK_COL_MAJOR, 'N', 'V', static_cast<lapack_int>(big), a.data(), static_cast<lapack_int>(big),
                    b.data(), static_cast<lapack_int>(big), alphar.data(), alphai.data(), beta.data(), &dummy, 1,
                    vr.data(), static_cast<lapack_int>(big));
  if (info != 0) {
    throw NumericalError("generalized eigensolver (dggev) failed with info = " + std::to_string(info));
  }

  constexpr double tiny = 1e3 * std::numeric_limits<double>::epsilon();
  std::vector<Eigenpair> pairs;
  pairs.reserve(static_cast<std::size_t>(big));
  const Eigen::Index last = m - 1;
  for (Eigen::Index j = 0; j < big; ++j) {
    const cplx num{alphar[j], alphai[j]};
    if (std::abs(beta[j]) <= tiny * b_norm && std::abs(num) <= tiny * a_norm) {
      throw NumericalError("singular pencil: indeterminate eigenvalue 0/0 at index " + std::to_string(j));
    }
    Eigen::VectorXcd w(m);
    if (alphai[j] > 0.0 && j + 1 < big) {
      w.real() = vr.col(j).head(m);
      w.imag() = vr.col(j + 1).head(m);
    } else if (alphai[j] < 0.0 && j > 0) {
      w.real() = vr.col(j - 1).head(m);
      w.imag() = -vr.col(j).head(m);
    } else {
      w.real() = vr.col(j).head(m);
      w.imag().setZero();
    }
    if (beta[j] == 0.0) continue;
    const cplx c = num / beta[j];
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || std::abs(c) > 1e10) continue;
    w[0] = 0.0;
    w[last] = 0.0;
    pairs.push_back({c, normalize_mode(w)});
  }
  return pairs;
}

Eigenpair refine_eigenpair(const QepMatrices& q, const Eigenpair& seed, int max_iterations) {
  const Eigen::Index m = q.size();
  Eigenpair cur{seed.c, normalize_mode(seed.w)};
  const Eigen::Index pin = largest_entry(cur.w);
  if (cur.w[pin] == cplx{}) return seed;

  Eigen::MatrixXcd bordered = Eigen::MatrixXcd::Zero(m + 1, m + 1);
  Eigen::VectorXcd rhs(m + 1);
  for (int it = 0; it < max_iterations; ++it) {
    const Eigen::MatrixXcd t = q.evaluate(cur.c);
    bordered.topLeftCorner(m, m) = t;
    bordered.topRightCorner(m, 1) = q.derivative(cur.c) * cur.w;
    bordered.bottomRows(1).setZero();
    bordered(m, pin) = 1.0;
    rhs.head(m) = -(t * cur.w);
    rhs[m] = 0.0;

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(bordered);
    const Eigen::VectorXcd step = lu.solve(rhs);
    if (!step.allFinite()) return seed;
    cur.w += step.head(m);
    cur.c += step[m];
    if (std::abs(step[m]) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(cur.c))) break;
  }
  cur.w[0] = 0.0;
  cur.w[m - 1] = 0.0;
  cur.w = normalize_mode(cur.w);
  return cur;
}

double mode_residual(const FlowProfile& profile, const SpectralGrid& grid, double alpha, cplx c,
                     const Eigen::VectorXcd& w) {
  if (!(c.imag() > 0.0)) throw std::invalid_argument("mode_residual requires c_i > 0");
  if (w.size() != grid.size()) throw std::invalid_argument("eigenfunction length does not match grid");
  const double peak = w.cwiseAbs().maxCoeff();
  if (peak == 0.0) return 0.0;
  const Eigen::VectorXcd v = w / peak;
  const Eigen::VectorXcd d2v = grid.differentiate(v, 2);

  double worst = 0.0;
  for (int k = 1; k < grid.n(); ++k) {
    const double z = grid.nodes()[k];
    const cplx shift = profile.u(z) - c;
    const cplx r = d2v[k] - alpha * alpha * v[k] - profile.d2u(z) / shift * v[k] +
                   profile.gbeta(z) / (shift * shift) * v[k];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

std::vector<ModalSolution> assess_modes(const FlowProfile& profile, const SpectralGrid& grid, double alpha,
                                        const std::vector<Eigenpair>& raw, const FilterConfig& cfg) {
  const ProfileExtrema extrema = profile_extrema(profile, grid);
  const double range = reference_range(extrema);
  const double c_i_min = cfg.c_i_min >= 0.0 ? cfg.c_i_min : 1e-6 * range;

  std::vector<Eigenpair> candidates;
  for (const auto& pair : raw) {
    if (pair.c.imag() > c_i_min) candidates.push_back(pair);
  }
  if (candidates.empty()) return {};

  const QepMatrices q = assemble_qep(profile, grid, alpha);
  const SpectralGrid fine(grid.n() * 3 / 2, grid.z1(), grid.z2(), grid.map());
  const QepMatrices q_fine = assemble_qep(profile, fine, alpha);
  const std::vector<Eigenpair> fine_raw = solve_spectrum(q_fine);

  std::vector<ModalSolution> out;
  for (const auto& cand : candidates) {
    const Eigenpair pair = cfg.refine ? refine_eigenpair(q, cand) : cand;
    if (!(pair.c.imag() > c_i_min)) continue;

    ModalSolution mode;
    mode.alpha = alpha;
    mode.c = pair.c;
    mode.w = pair.w;
    mode.nodes = grid.nodes();
    mode.n = grid.n();
    mode.residual = mode_residual(profile, grid, alpha, pair.c, pair.w);

    mode.drift = std::numeric_limits<double>::infinity();
    const Eigenpair* nearest = nullptr;
    for (const auto& f : fine_raw) {
      if (!nearest || std::abs(f.c - pair.c) < std::abs(nearest->c - pair.c)) nearest = &f;
    }
    if (nearest) {
      const Eigenpair matched = cfg.refine ? refine_eigenpair(q_fine, *nearest) : *nearest;
      mode.drift = std::abs(matched.c - pair.c);
    }
    mode.converged = mode.residual < cfg.residual_tol && mode.drift < cfg.drift_tol * range;
    out.push_back(std::move(mode));
  }
  std::ranges::sort(out, [](const ModalSolution& x, const ModalSolution& y) { return x.c_i() > y.c_i(); });
  return out;
}

std::vector<ModalSolution> filter_modes(const FlowProfile& profile, const SpectralGrid& grid, double alpha,
                                        const std::vector<Eigenpair>& raw, const FilterConfig& cfg) {
  const double range = reference_range(profile_extrema(profile, grid));
  std::vector<ModalSolution> kept;
  for (auto& mode : assess_modes(profile, grid, alpha, raw, cfg)) {
    if (!mode.converged) continue;
    // Distinct raw candidates can refine onto the same eigenvalue.
    const bool duplicate = std::ranges::any_of(
        kept, [&](const ModalSolution& k) { return std::abs(k.c - mode.c) < cfg.drift_tol * range; });
    if (!duplicate) kept.push_back(std::move(mode));
  }
  return kept;
}

SpectralGrid solver_grid(const FlowProfile& profile, const SolverConfig& cfg) {
  GridMap map = GridMap::none();
  if (cfg.cluster) {
    map = GridMap::centered(profile.z1(), profile.z2());
    if (cfg.cluster_width > 0.0) map.width = cfg.cluster_width;
    if (std::isfinite(cfg.cluster_center)) map.center = cfg.cluster_center;
  }
  return SpectralGrid(cfg.n, profile.z1(), profile.z2(), map);
}

std::vector<ModalSolution> unstable_modes(const FlowProfile& profile, double alpha, const SolverConfig& cfg) {
  const SpectralGrid grid = solver_grid(profile, cfg);
  return filter_modes(profile, grid, alpha, solve_spectrum(assemble_qep(profile, grid, alpha)), cfg.filter);
}

}  // namespace tglab
