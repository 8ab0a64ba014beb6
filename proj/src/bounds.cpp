#include "tglab/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "tglab/records.hpp"

namespace tglab {

double semicircle_slack(const ModalSolution& mode, const ProfileExtrema& extrema) {
  const double radius = 0.5 * (extrema.u_max - extrema.u_min);
  const double mid = 0.5 * (extrema.u_max + extrema.u_min);
  const double dr = mode.c.real() - mid;
  return radius * radius - dr * dr - mode.c.imag() * mode.c.imag();
}

bool inside_semicircle(double slack, const ProfileExtrema& extrema) {
  const double range = extrema.velocity_range();
  return slack >= -1e-10 * range * range;
}

double growth_bound_rhs(const ProfileExtrema& extrema, double alpha, double c_i) {
  return extrema.d2u_sq_max * c_i / alpha + extrema.gbeta_d2u_abs_max / alpha;
}

BoundReport growth_bound_check(const ModalSolution& mode, const ProfileExtrema& extrema, const BoundConfig& cfg) {
  const double ci = mode.c.imag();
  if (!(ci > 0.0)) throw std::invalid_argument("growth bound check requires c_i > 0");
  if (!(mode.alpha > 0.0)) throw std::invalid_argument("growth bound check requires alpha > 0");

  BoundReport r;
  r.semicircle_slack = semicircle_slack(mode, extrema);
  r.inside_semicircle = inside_semicircle(r.semicircle_slack, extrema);
  r.alpha_ci = mode.alpha * ci;
  r.lhs = r.alpha_ci * r.alpha_ci * r.alpha_ci;
  r.rhs = growth_bound_rhs(extrema, mode.alpha, ci);
  r.slack = r.rhs - r.lhs;
  r.first_order_scale = extrema.gbeta_d2u_abs_max / (ci * ci * ci);
  r.second_order_scale = extrema.gbeta_max * extrema.gbeta_max / (ci * ci * ci * ci);
  r.small_gbeta_ok = r.second_order_scale <= cfg.negligible_ratio * r.first_order_scale;
  r.bound_holds = r.slack >= -1e-9 * r.rhs;
  return r;
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 2) throw std::invalid_argument("linspace needs at least two points");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out[k] = lo + (hi - lo) * k / (count - 1);
  out.back() = hi;
  return out;
}

namespace {

SweepRow sweep_row(const FlowProfile& profile, double alpha, const SweepConfig& cfg) {
  SweepRow row;
  row.alpha = alpha;
  const SpectralGrid grid = solver_grid(profile, cfg.solver);
  const ProfileExtrema extrema = profile_extrema(profile, grid);
  const auto modes = filter_modes(profile, grid, alpha, solve_spectrum(assemble_qep(profile, grid, alpha)),
                                  cfg.solver.filter);

  row.n_unstable = static_cast<int>(modes.size());
  row.rhs_cuberoot = std::cbrt(growth_bound_rhs(extrema, alpha, 0.0));
  row.min_bound_slack = std::numeric_limits<double>::infinity();
  row.min_semicircle_slack = std::numeric_limits<double>::infinity();
  const ModalSolution* top = nullptr;
  for (const auto& mode : modes) {
    if (!top || mode.c_i() > top->c_i()) top = &mode;
    const IdentityReport ids = identity_report(mode, profile, grid, cfg.identity_tol);
    const BoundReport bound = growth_bound_check(mode, extrema, cfg.bound);
    row.identities_ok = row.identities_ok && ids.passed;
    row.semicircle_ok = row.semicircle_ok && bound.inside_semicircle;
    const double range = extrema.velocity_range();
    row.min_semicircle_slack =
        std::min(row.min_semicircle_slack, range > 0.0 ? bound.semicircle_slack / (range * range) : bound.semicircle_slack);
    row.small_gbeta_ok = row.small_gbeta_ok && bound.small_gbeta_ok;
    if (bound.small_gbeta_ok) {
      row.bound_ok = row.bound_ok && bound.bound_holds;
      row.min_bound_slack = std::min(row.min_bound_slack, bound.rhs > 0.0 ? bound.slack / bound.rhs : bound.slack);
    }
  }
  if (top) {
    row.max_ci = top->c_i();
    row.alpha_ci = alpha * top->c_i();
    row.rhs_cuberoot = std::cbrt(growth_bound_rhs(extrema, alpha, top->c_i()));
  }
  if (!std::isfinite(row.min_bound_slack)) row.min_bound_slack = 0.0;
  if (!std::isfinite(row.min_semicircle_slack)) row.min_semicircle_slack = 0.0;
  return row;
}

}  // namespace

SweepResult decay_sweep(const FlowProfile& profile, const std::vector<double>& alphas, const SweepConfig& cfg) {
  if (alphas.size() < 3) throw std::invalid_argument("a sweep needs at least three wavenumbers");
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    if (!(alphas[k] > 0.0) || !std::isfinite(alphas[k])) throw std::invalid_argument("sweep wavenumbers must be positive");
    if (k > 0 && !(alphas[k] > alphas[k - 1])) throw std::invalid_argument("sweep wavenumbers must be strictly increasing");
  }

  SweepResult result;
  result.rows.resize(alphas.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < alphas.size(); k = next++) {
      try {
        result.rows[k] = sweep_row(profile, alphas[k], cfg);
      } catch (const std::exception& e) {
        SweepRow failed;
        failed.alpha = alphas[k];
        failed.error = e.what();
        failed.semicircle_ok = failed.identities_ok = failed.bound_ok = false;
        result.rows[k] = std::move(failed);
      }
    }
  };

  unsigned threads = cfg.threads > 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(alphas.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return result;
}

std::string sweep_to_csv(const SweepResult& result) {
  std::string out = "alpha,n_unstable,max_ci,alpha_ci,rhs322_cuberoot,semicircle_ok,identities_ok\n";
  for (const auto& row : result.rows) {
    out += format_double(row.alpha);
    out += ',';
    if (row.error) {
      out += "-1,nan,nan,nan,false,false\n";
      continue;
    }
    out += std::to_string(row.n_unstable) + ',' + format_double(row.max_ci) + ',' + format_double(row.alpha_ci) +
           ',' + format_double(row.rhs_cuberoot) + ',' + (row.semicircle_ok ? "true" : "false") + ',' +
           (row.identities_ok ? "true" : "false") + '\n';
  }
  return out;
}

}  // namespace tglab
