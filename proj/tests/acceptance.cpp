// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "tglab/bounds.hpp"
#include "tglab/identities.hpp"
#include "tglab/oracle.hpp"

using namespace tglab;

namespace {

constexpr double identity_tol = 1e-6;
constexpr double identity_target = 1e-8;
constexpr double consistency_tol = 1e-12;
constexpr double semicircle_tol = 1e-10;  // × range²
constexpr double bound_tol = 1e-9;        // × rhs
constexpr double envelope_tol = 1e-9;
constexpr double cutoff_alpha = 1.2;
constexpr double oracle_tol = 1e-6;
constexpr double drift_tol = 1e-7;  // × range
constexpr double runtime_budget_s = 300.0;

constexpr double scales[] = {0.0, 1e-4};
constexpr double designated_alphas[] = {0.3, 0.5, 0.8};

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

FlowProfile tanh_profile(double scale) {
  return make_profile(ProfileKind::tanh_shear, {{"z1", -5.0}, {"z2", 5.0}, {"gbeta_scale", scale}});
}

struct Case {
  double scale;
  double alpha;
  std::vector<ModalSolution> modes;
};

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const SolverConfig solver;  // n = 128, clustered grid, default filter

  std::vector<Case> cases;
  for (double s : scales) {
    for (double a : designated_alphas) cases.push_back({s, a, unstable_modes(tanh_profile(s), a, solver)});
  }

  {
    bool ok = true;
    double worst = 0.0;
    int count = 0;
    for (const auto& c : cases) {
      const auto p = tanh_profile(c.scale);
      const SpectralGrid g = solver_grid(p, solver);
      if (c.modes.empty()) ok = false;
      for (const auto& m : c.modes) {
        const auto r = identity_report(m, p, g, identity_tol);
        worst = std::max({worst, r.energy_real, r.energy_imag, r.curvature_real, r.curvature_sum});
        ok = ok && r.passed;
        ++count;
      }
    }
    report(1, ok,
           "identity residuals over " + std::to_string(count) + " modes in 6 cases, max " + sci(worst) + " < " +
               sci(identity_tol) + (worst < identity_target ? " (below target " : " (target missed: ") +
               sci(identity_target) + ")");
  }

  {
    std::mt19937 rng(20250101);
    const auto p = tanh_profile(0.05);
    const SpectralGrid g = solver_grid(p, solver);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      ModalSolution m;
      m.alpha = testing::uniform(rng, 0.05, 3.0);
      m.c = {testing::uniform(rng, -1.0, 1.0), testing::uniform(rng, 1e-3, 1.0)};
      m.w = testing::random_complex(rng, g.size());
      m.nodes = g.nodes();
      m.n = g.n();
      worst = std::max(worst, identity_report(m, p, g).consistency_gap);
    }
    report(2, worst < consistency_tol,
           "consistency gap over 100 random inputs, max " + sci(worst) + " < " + sci(consistency_tol));
  }

  std::vector<SweepResult> sweeps;
  std::vector<ProfileExtrema> extrema;
  const auto alphas = linspace(0.05, 2.0, 40);
  for (double s : scales) {
    SweepConfig cfg;
    cfg.solver = solver;
    sweeps.push_back(decay_sweep(tanh_profile(s), alphas, cfg));
    extrema.push_back(profile_extrema(tanh_profile(s), solver_grid(tanh_profile(s), solver)));
  }

  {
    std::ifstream src(TGLAB_SOURCE_DIR "/src/eigensolver.cpp");
    std::stringstream text;
    text << src.rdbuf();
    const bool filter_blind = src.good() && text.str().find("semicircle") == std::string::npos &&
                              text.str().find("bounds.hpp") == std::string::npos;
    bool ok = filter_blind;
    double worst = INFINITY;
    int modes = 0;
    for (const auto& sweep : sweeps) {
      for (const auto& row : sweep.rows) {
        if (row.error) ok = false;
        if (row.n_unstable == 0) continue;
        modes += row.n_unstable;
        worst = std::min(worst, row.min_semicircle_slack);
        ok = ok && row.semicircle_ok && row.min_semicircle_slack >= -semicircle_tol;
      }
    }
    report(3, ok,
           "semicircle over " + std::to_string(modes) + " modes in 2 x 40-step sweeps, min slack/range^2 " +
               sci(worst) + " >= " + sci(-semicircle_tol) + "; filter source free of semicircle logic: " +
               (filter_blind ? "yes" : "no"));
  }

  {
    bool ok = true;
    double worst = INFINITY;
    int checked = 0;
    bool reduction_exact = true;
    for (std::size_t k = 0; k < sweeps.size(); ++k) {
      for (const auto& row : sweeps[k].rows) {
        if (row.n_unstable == 0) continue;
        if (row.small_gbeta_ok) {
          ++checked;
          worst = std::min(worst, row.min_bound_slack);
          ok = ok && row.bound_ok && row.min_bound_slack >= -bound_tol;
        }
        if (scales[k] == 0.0) {
          const double homogeneous = extrema[k].d2u_sq_max * row.max_ci / row.alpha;
          reduction_exact = reduction_exact && extrema[k].gbeta_d2u_abs_max == 0.0 &&
                            row.rhs_cuberoot == std::cbrt(homogeneous);
        }
      }
    }
    report(4, ok && reduction_exact && checked > 0,
           "growth bound on " + std::to_string(checked) + " weak-buoyancy rows, min slack/rhs " + sci(worst) +
               " >= " + sci(-bound_tol) + "; zero-buoyancy rhs equals curvature term exactly: " +
               (reduction_exact ? "yes" : "no"));
  }

  {
    bool ok = true;
    double peak = 0.0, peak_alpha = 0.0, margin = INFINITY;
    for (const auto& row : sweeps[0].rows) {
      if (row.alpha >= cutoff_alpha && row.alpha_ci != 0.0) ok = false;
      if (row.alpha_ci > 0.0) {
        ok = ok && row.alpha_ci <= row.rhs_cuberoot + envelope_tol;
        margin = std::min(margin, row.rhs_cuberoot - row.alpha_ci);
      }
      if (row.alpha_ci > peak) {
        peak = row.alpha_ci;
        peak_alpha = row.alpha;
      }
    }
    report(5, ok,
           "alpha*c_i is 0 for alpha >= " + sci(cutoff_alpha) + ", peak " + sci(peak) + " at alpha " +
               sci(peak_alpha) + ", min envelope margin " + sci(margin));
  }

  {
    bool ok = true;
    double worst = 0.0;
    for (const auto& c : cases) {
      if (c.modes.empty()) {
        ok = false;
        continue;
      }
      const auto r = find_eigenvalue(tanh_profile(c.scale), c.alpha, cplx{0.0, 0.1});
      const double gap = std::abs(r.c - c.modes.front().c);
      worst = std::max(worst, gap);
      ok = ok && r.converged && gap < oracle_tol;
    }
    const auto couette = make_profile(ProfileKind::couette, {{"z1", -1.0}, {"z2", 1.0}});
    bool couette_empty = true;
    for (double a : {0.5, 1.0, 2.0}) {
      for (cplx seed : {cplx{0.0, 0.5}, cplx{0.3, 0.1}, cplx{-0.5, 1.0}}) {
        couette_empty = couette_empty && !find_eigenvalue(couette, a, seed).converged;
      }
    }
    report(6, ok && couette_empty,
           "spectral vs shooting on 6 cases, max |dc| " + sci(worst) + " < " + sci(oracle_tol) +
               "; shooting finds no couette eigenvalue: " + (couette_empty ? "yes" : "no"));
  }

  {
    const auto couette = make_profile(ProfileKind::couette, {{"z1", -1.0}, {"z2", 1.0}});
    const auto quadratic = make_custom_profile(0.5, 1.5, [](double z) { return z * z; },
                                               [](double) { return 2.0; }, [](double) { return 0.0; }, 0.0);
    int found = 0;
    const double null_alphas[] = {0.1, 0.5, 1.0, 2.0, 5.0};
    for (double a : null_alphas) found += static_cast<int>(unstable_modes(couette, a, solver).size());
    for (double a : null_alphas) found += static_cast<int>(unstable_modes(quadratic, a, solver).size());
    report(7, found == 0,
           "couette and U=z^2 on [0.5,1.5] at 5 wavenumbers each: " + std::to_string(found) + " unstable modes");
  }

  {
    bool ok = true;
    double worst = 0.0;
    SolverConfig fine = solver;
    fine.n = 192;
    for (const auto& c : cases) {
      const auto p = tanh_profile(c.scale);
      const auto refined = unstable_modes(p, c.alpha, fine);
      const double range = profile_extrema(p, solver_grid(p, solver)).velocity_range();
      if (refined.size() != c.modes.size() || c.modes.empty()) {
        ok = false;
        continue;
      }
      for (std::size_t k = 0; k < c.modes.size(); ++k) {
        const double drift = std::abs(refined[k].c - c.modes[k].c) / range;
        worst = std::max(worst, drift);
        ok = ok && drift < drift_tol;
      }
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(8, ok && elapsed < runtime_budget_s,
           "n=128 vs n=192 drift/range max " + sci(worst) + " < " + sci(drift_tol) + "; acceptance runtime " +
               sci(elapsed) + " s < " + sci(runtime_budget_s) + " s");
  }

  std::printf("%s: %d of 8 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
