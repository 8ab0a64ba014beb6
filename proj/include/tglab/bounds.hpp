#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tglab/eigensolver.hpp"
#include "tglab/identities.hpp"

namespace tglab {

/// Distance inside the semicircle centred at the mean of the velocity range
/// with radius half the range: ((u_max−u_min)/2)² − (c_r − mid)² − c_i².
/// Non-negative means inside.
double semicircle_slack(const ModalSolution& mode, const ProfileExtrema& extrema);

/// slack ≥ −1e-10 · (u_max − u_min)².
bool inside_semicircle(double slack, const ProfileExtrema& extrema);

struct BoundConfig {
  /// Largest admissible ratio of the second-order buoyancy scale
  /// [gβ]²_max / c_i⁴ to the first-order scale [gβ|U''|]_max / c_i³.
  double negligible_ratio = 0.01;
};

/// Growth-rate bound α³c_i³ ≤ [(U'')²]_max c_i/α + [gβ|U''|]_max/α for one mode.
struct BoundReport {
  double semicircle_slack = 0.0;
  bool inside_semicircle = false;
  double lhs = 0.0;        // α³ c_i³
  double rhs = 0.0;
  double slack = 0.0;      // rhs − lhs
  double alpha_ci = 0.0;
  double first_order_scale = 0.0;
  double second_order_scale = 0.0;
  bool small_gbeta_ok = false;
  /// slack ≥ −1e-9 · rhs. Only meaningful when small_gbeta_ok.
  bool bound_holds = false;
};

BoundReport growth_bound_check(const ModalSolution& mode, const ProfileExtrema& extrema, const BoundConfig& cfg = {});

/// Right-hand side of the bound for a given growth factor c_i at wavenumber α.
double growth_bound_rhs(const ProfileExtrema& extrema, double alpha, double c_i);

struct SweepRow {
  double alpha = 0.0;
  int n_unstable = 0;
  double max_ci = 0.0;
  double alpha_ci = 0.0;
  double rhs_cuberoot = 0.0;
  bool semicircle_ok = true;
  bool identities_ok = true;
  bool bound_ok = true;          // every small-gβ mode satisfied the bound
  bool small_gbeta_ok = true;    // every mode was in the small-gβ regime
  double min_bound_slack = 0.0;  // smallest slack / rhs over checked modes
  double min_semicircle_slack = 0.0;  // smallest semicircle slack / range² over modes
  std::optional<std::string> error;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

struct SweepConfig {
  SolverConfig solver;
  BoundConfig bound;
  double identity_tol = default_identity_tol;
  unsigned threads = 0;  // 0 = hardware concurrency
};

/// For every α: solve, filter, check identities, semicircle and the growth
/// bound. Requires at least three positive, strictly increasing wavenumbers.
/// Per-row solver failures are recorded in `error` and the sweep continues.
SweepResult decay_sweep(const FlowProfile& profile, const std::vector<double>& alphas, const SweepConfig& cfg = {});

/// `count` evenly spaced values from `lo` to `hi` inclusive.
std::vector<double> linspace(double lo, double hi, int count);

/// CSV with header alpha,n_unstable,max_ci,alpha_ci,rhs322_cuberoot,semicircle_ok,identities_ok.
std::string sweep_to_csv(const SweepResult& result);

}  // namespace tglab
