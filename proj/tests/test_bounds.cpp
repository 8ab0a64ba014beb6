#include <doctest.h>

#include "tglab/bounds.hpp"

using namespace tglab;

namespace {

FlowProfile tanh_profile(double scale = 0.0) {
  return make_profile(ProfileKind::tanh_shear, {{"z1", -5.0}, {"z2", 5.0}, {"gbeta_scale", scale}});
}

ModalSolution mode_at(double alpha, cplx c) {
  ModalSolution m;
  m.alpha = alpha;
  m.c = c;
  return m;
}

ProfileExtrema unit_range() {
  ProfileExtrema e;
  e.u_min = -1.0;
  e.u_max = 3.0;
  return e;
}

double sech2(double z) {
  const double s = 1.0 / std::cosh(z);
  return s * s;
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("semicircle slack on the rim and inside") {
  const auto e = unit_range();
  const double mid = 1.0, half = 2.0;
  CHECK(semicircle_slack(mode_at(1.0, {mid, half}), e) == 0.0);
  CHECK(semicircle_slack(mode_at(1.0, {mid, half / 2.0}), e) == doctest::Approx(0.75 * half * half));
  CHECK(inside_semicircle(semicircle_slack(mode_at(1.0, {mid, half}), e), e));
  CHECK(inside_semicircle(-1e-10 * 16.0, e));
  CHECK_FALSE(inside_semicircle(-2e-10 * 16.0, e));
  CHECK(semicircle_slack(mode_at(1.0, {3.5, 0.1}), e) < 0.0);
}

TEST_CASE("bound without curvature or buoyancy leaves no room for growth") {
  const auto e = unit_range();
  const auto r = growth_bound_check(mode_at(0.7, {0.5, 0.2}), e);
  CHECK(r.rhs == 0.0);
  CHECK(r.lhs > 0.0);
  CHECK_FALSE(r.bound_holds);
  CHECK(r.small_gbeta_ok);
}

TEST_CASE("homogeneous reduction keeps only the curvature term") {
  ProfileExtrema e = unit_range();
  e.d2u_sq_max = 16.0 / 27.0;
  for (double alpha : {0.1, 0.7, 3.0}) {
    for (double ci : {0.01, 0.4}) {
      const auto r = growth_bound_check(mode_at(alpha, {0.0, ci}), e);
      CHECK(r.rhs == e.d2u_sq_max * ci / alpha);
      CHECK(r.alpha_ci == alpha * ci);
      CHECK(r.lhs == r.alpha_ci * r.alpha_ci * r.alpha_ci);
      CHECK(r.slack == r.rhs - r.lhs);
    }
  }
}

TEST_CASE("weakly stratified tanh mode satisfies the bound") {
  const auto p = tanh_profile(1e-4);
  SolverConfig cfg;
  const auto modes = unstable_modes(p, 0.5, cfg);
  REQUIRE(modes.size() == 1);
  const auto e = profile_extrema(p, solver_grid(p, cfg));
  const auto r = growth_bound_check(modes[0], e);
  CHECK(r.small_gbeta_ok);
  CHECK(r.slack >= 0.0);
  CHECK(r.bound_holds);
  CHECK(r.inside_semicircle);
  CHECK(r.semicircle_slack >= 0.0);
}

TEST_CASE("strong stratification leaves the first-order regime") {
  const auto p = tanh_profile(0.05);
  SolverConfig cfg;
  const auto modes = unstable_modes(p, 0.5, cfg);
  REQUIRE_FALSE(modes.empty());
  const auto r = growth_bound_check(modes[0], profile_extrema(p, solver_grid(p, cfg)));
  CHECK_FALSE(r.small_gbeta_ok);
  CHECK(r.second_order_scale > 0.01 * r.first_order_scale);
  CHECK(growth_bound_check(modes[0], profile_extrema(p, solver_grid(p, cfg)), BoundConfig{1e3}).small_gbeta_ok);
}

TEST_CASE("bound check rejects neutral modes") {
  CHECK_THROWS_AS(growth_bound_check(mode_at(0.5, {0.1, 0.0}), unit_range()), std::invalid_argument);
  CHECK_THROWS_AS(growth_bound_check(mode_at(0.5, {0.1, -0.3}), unit_range()), std::invalid_argument);
}

TEST_CASE("bound envelope decays with wavenumber") {
  ProfileExtrema e = unit_range();
  e.d2u_sq_max = 0.6;
  e.gbeta_d2u_abs_max = 1e-4;
  const double ci_cap = 0.5 * e.velocity_range();
  double previous = INFINITY;
  for (double alpha : linspace(0.05, 20.0, 50)) {
    const double envelope = std::cbrt(growth_bound_rhs(e, alpha, ci_cap));
    CHECK(envelope < previous);
    previous = envelope;
  }
  CHECK(previous < 0.5);
}

TEST_CASE("linspace includes both ends") {
  const auto v = linspace(0.05, 2.0, 40);
  REQUIRE(v.size() == 40);
  CHECK(v.front() == 0.05);
  CHECK(v.back() == 2.0);
  CHECK(v[1] - v[0] == doctest::Approx(1.95 / 39.0));
  CHECK_THROWS_AS(linspace(0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("couette sweep is stable everywhere") {
  const auto p = make_profile(ProfileKind::couette, {{"z1", -1.0}, {"z2", 1.0}});
  SweepConfig cfg;
  cfg.solver.n = 48;
  const auto result = decay_sweep(p, {0.5, 1.0, 2.0, 4.0}, cfg);
  REQUIRE(result.rows.size() == 4);
  for (const auto& row : result.rows) {
    CHECK_FALSE(row.error);
    CHECK(row.n_unstable == 0);
    CHECK(row.max_ci == 0.0);
    CHECK(row.alpha_ci == 0.0);
    CHECK(row.rhs_cuberoot == 0.0);
    CHECK(row.semicircle_ok);
    CHECK(row.identities_ok);
  }
}

TEST_CASE("tanh sweep cuts off and stays under the envelope") {
  const auto p = tanh_profile();
  const auto result = decay_sweep(p, {0.2, 0.5, 0.8, 1.2, 2.0});
  REQUIRE(result.rows.size() == 5);
  for (const auto& row : result.rows) {
    CAPTURE(row.alpha);
    CHECK_FALSE(row.error);
    CHECK(row.max_ci >= 0.0);
    CHECK(row.alpha_ci <= row.rhs_cuberoot + 1e-9);
    CHECK(row.semicircle_ok);
    CHECK(row.identities_ok);
    CHECK(row.bound_ok);
    if (row.alpha >= 1.2) {
      CHECK(row.n_unstable == 0);
      CHECK(row.alpha_ci == 0.0);
    } else {
      CHECK(row.n_unstable == 1);
      CHECK(row.alpha_ci == row.alpha * row.max_ci);
    }
  }
}

TEST_CASE("sweep output is independent of the thread count") {
  const auto p = tanh_profile(1e-4);
  SweepConfig serial;
  serial.solver.n = 64;
  serial.threads = 1;
  SweepConfig parallel = serial;
  parallel.threads = 3;
  const std::vector<double> alphas{0.4, 0.6, 0.9, 1.5};
  const std::string a = sweep_to_csv(decay_sweep(p, alphas, serial));
  const std::string b = sweep_to_csv(decay_sweep(p, alphas, parallel));
  CHECK(a == b);
  CHECK(a.starts_with("alpha,n_unstable,max_ci,alpha_ci,rhs322_cuberoot,semicircle_ok,identities_ok\n"));
  CHECK(std::count(a.begin(), a.end(), '\n') == 5);
}

TEST_CASE("failing rows are recorded and the sweep continues") {
  const auto p = make_custom_profile(
      -1.0, 1.0, [](double) { return std::nan(""); }, [](double) { return 0.0; }, [](double) { return 0.0; }, 0.0);
  SweepConfig cfg;
  cfg.solver.n = 16;
  const auto result = decay_sweep(p, {0.5, 1.0, 1.5}, cfg);
  REQUIRE(result.rows.size() == 3);
  for (const auto& row : result.rows) CHECK(row.error.has_value());
  const std::string csv = sweep_to_csv(result);
  CHECK(csv.find("0.5,-1,nan,nan,nan,false,false\n") != std::string::npos);
}

TEST_CASE("sweep preconditions") {
  const auto p = tanh_profile();
  CHECK_THROWS_AS(decay_sweep(p, {0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(decay_sweep(p, {0.5, 0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(decay_sweep(p, {1.0, 0.5, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(decay_sweep(p, {0.0, 0.5, 1.0}), std::invalid_argument);
}

TEST_CASE("velocity rescaling rescales the spectrum") {
  // U -> sU with gβ -> s²gβ maps c -> sc.
  const double s = 2.5;
  const double g0 = 1e-3;
  const auto base = make_custom_profile(
      -5.0, 5.0, [](double z) { return std::tanh(z); },
      [](double z) { return -2.0 * std::tanh(z) * sech2(z); }, [](double z) { return sech2(z); }, g0);
  const auto scaled = make_custom_profile(
      -5.0, 5.0, [s](double z) { return s * std::tanh(z); },
      [s](double z) { return -2.0 * s * std::tanh(z) * sech2(z); }, [](double z) { return sech2(z); }, s * s * g0);
  for (double alpha : {0.4, 0.7}) {
    const auto a = unstable_modes(base, alpha);
    const auto b = unstable_modes(scaled, alpha);
    REQUIRE(a.size() == 1);
    REQUIRE(b.size() == 1);
    CHECK(std::abs(b[0].c - s * a[0].c) < 1e-8 * std::abs(s * a[0].c));
  }
}

}  // TEST_SUITE
