#include <doctest.h>

#include <numbers>

#include "support.hpp"
#include "tglab/identities.hpp"

using namespace tglab;

namespace {

FlowProfile tanh_profile(double scale = 0.0) {
  return make_profile(ProfileKind::tanh_shear, {{"z1", -5.0}, {"z2", 5.0}, {"gbeta_scale", scale}});
}

struct Solved {
  FlowProfile profile;
  SpectralGrid grid;
  ModalSolution mode;
};

Solved solved(double alpha, double scale, int n = 128) {
  const auto p = tanh_profile(scale);
  SolverConfig cfg;
  cfg.n = n;
  const auto modes = unstable_modes(p, alpha, cfg);
  REQUIRE(modes.size() == 1);
  return {p, solver_grid(p, cfg), modes[0]};
}

ModalSolution synthetic(const SpectralGrid& g, double alpha, cplx c, const Eigen::VectorXcd& w) {
  ModalSolution m;
  m.alpha = alpha;
  m.c = c;
  m.w = w;
  m.nodes = g.nodes();
  m.n = g.n();
  return m;
}

}  // namespace

TEST_SUITE("identities") {

TEST_CASE("imaginary energy relation vanishes identically for couette") {
  const auto p = make_profile(ProfileKind::couette, {{"z1", -1.0}, {"z2", 1.0}});
  const SpectralGrid g(64, -1.0, 1.0);
  const Eigen::VectorXcd w = (std::numbers::pi * (g.nodes().array() + 1.0) / 2.0).sin().cast<cplx>();
  const auto r = identity_report(synthetic(g, 0.9, cplx{0.0, 1.0}, w), p, g);
  CHECK(r.raw_energy_imag == 0.0);
  CHECK(r.terms.shear_imag == 0.0);
  CHECK(r.terms.buoyancy_imag == 0.0);
  CHECK(r.energy_real > 0.5);
}

TEST_CASE("converged modes satisfy all four relations") {
  for (double scale : {0.0, 1e-4}) {
    for (double alpha : {0.3, 0.5, 0.8}) {
      CAPTURE(scale);
      CAPTURE(alpha);
      const auto s = solved(alpha, scale);
      const auto r = identity_report(s.mode, s.profile, s.grid, strict_identity_tol);
      CHECK(r.passed);
      CHECK(r.energy_real < 1e-8);
      CHECK(r.energy_imag < 1e-8);
      CHECK(r.curvature_real < 1e-8);
      CHECK(r.curvature_sum < 1e-8);
      CHECK(r.scale_energy_real > 0.0);
      CHECK(r.scale_energy_imag > 0.0);
      CHECK(r.scale_curvature_real > 0.0);
      CHECK(r.scale_curvature_sum > 0.0);
    }
  }
}

TEST_CASE("partial checks fill their own fields") {
  const auto s = solved(0.5, 1e-4);
  const auto e = energy_identities(s.mode, s.profile, s.grid);
  CHECK(e.passed);
  CHECK(e.curvature_real == 0.0);
  CHECK(e.scale_curvature_sum == 0.0);
  const auto c = curvature_identities(s.mode, s.profile, s.grid);
  CHECK(c.passed);
  CHECK(c.energy_real == 0.0);
  CHECK(c.curvature_real < 1e-7);
  CHECK(c.curvature_sum < 1e-7);
}

TEST_CASE("buoyancy terms vanish without stratification") {
  const auto s = solved(0.5, 0.0);
  const auto r = identity_report(s.mode, s.profile, s.grid);
  CHECK(r.terms.buoyancy == 0.0);
  CHECK(r.terms.buoyancy_imag == 0.0);
  CHECK(r.terms.cross == 0.0);
  CHECK(r.terms.buoyancy_sq == 0.0);
  CHECK(r.terms.full_energy > 0.0);
  CHECK(r.terms.shear_sq > 0.0);
}

TEST_CASE("misprinted curvature variants are rejected by computed modes") {
  const auto s = solved(0.5, 1e-4);
  const auto r = identity_report(s.mode, s.profile, s.grid);
  CHECK(r.curvature_real < 1e-10);
  CHECK(r.alt_cross_residual > 1e3 * r.curvature_real);
  CHECK(r.alt_sign_residual > 1e3 * r.curvature_real);
}

TEST_CASE("corrupted eigenfunction fails the check") {
  const auto s = solved(0.5, 1e-4);
  ModalSolution bad = s.mode;
  bad.w[s.grid.n() / 3] += 1e-2;
  const auto r = identity_report(bad, s.profile, s.grid);
  CHECK_FALSE(r.passed);
}

TEST_CASE("consistency gap is roundoff for arbitrary inputs") {
  std::mt19937 rng(314159);
  const auto p = tanh_profile(0.05);
  const SpectralGrid g(96, -5.0, 5.0, GridMap::centered(-5.0, 5.0));
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = testing::uniform(rng, 0.05, 3.0);
    const cplx c{testing::uniform(rng, -1.0, 1.0), testing::uniform(rng, 0.01, 1.0)};
    const auto m = synthetic(g, alpha, c, testing::random_mode_shape(rng, g.size()));
    CHECK(identity_report(m, p, g).consistency_gap < 1e-12);
  }
}

TEST_CASE("residuals are invariant under rescaling the eigenfunction") {
  const auto s = solved(0.3, 1e-4);
  const auto base = identity_report(s.mode, s.profile, s.grid);
  std::mt19937 rng(99);
  const Eigen::VectorXcd junk = testing::random_mode_shape(rng, s.grid.size());
  const auto junk_base = identity_report(synthetic(s.grid, 0.3, s.mode.c, junk), s.profile, s.grid);
  for (cplx factor : {cplx{3.0, -4.0}, cplx{1e-3, 0.0}, cplx{0.0, 250.0}}) {
    ModalSolution m = s.mode;
    m.w *= factor;
    const auto r = identity_report(m, s.profile, s.grid);
    CHECK(std::abs(r.energy_real - base.energy_real) < 1e-13);
    CHECK(std::abs(r.energy_imag - base.energy_imag) < 1e-13);
    CHECK(std::abs(r.curvature_real - base.curvature_real) < 1e-13);
    CHECK(std::abs(r.curvature_sum - base.curvature_sum) < 1e-13);

    const auto j = identity_report(synthetic(s.grid, 0.3, s.mode.c, junk * factor), s.profile, s.grid);
    CHECK(j.energy_real == doctest::Approx(junk_base.energy_real).epsilon(1e-12));
    CHECK(j.energy_imag == doctest::Approx(junk_base.energy_imag).epsilon(1e-12));
  }
}

TEST_CASE("random non-eigenfunctions are detected") {
  std::mt19937 rng(2718);
  const auto p = tanh_profile(1e-3);
  const SpectralGrid g(64, -5.0, 5.0, GridMap::centered(-5.0, 5.0));
  const auto fixed = identity_report(synthetic(g, 0.5, cplx{0.1, 0.2}, testing::random_mode_shape(rng, g.size())), p, g);
  CHECK(fixed.energy_real > 0.1);

  int detected = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double alpha = testing::uniform(rng, 0.1, 2.0);
    const cplx c{testing::uniform(rng, -0.9, 0.9), testing::uniform(rng, 0.01, 0.9)};
    const auto r = identity_report(synthetic(g, alpha, c, testing::random_mode_shape(rng, g.size())), p, g);
    if (r.energy_real > 0.01 || r.energy_imag > 0.01) ++detected;
  }
  CHECK(detected >= 99);
}

TEST_CASE("refining the grid does not degrade the residuals") {
  const auto coarse = solved(0.5, 1e-4, 128);
  const auto fine = solved(0.5, 1e-4, 192);
  const auto a = identity_report(coarse.mode, coarse.profile, coarse.grid);
  const auto b = identity_report(fine.mode, fine.profile, fine.grid);
  const double floor = 1e-13;
  CHECK(b.energy_real <= 10.0 * std::max(a.energy_real, floor));
  CHECK(b.energy_imag <= 10.0 * std::max(a.energy_imag, floor));
  CHECK(b.curvature_real <= 10.0 * std::max(a.curvature_real, floor));
  CHECK(b.curvature_sum <= 10.0 * std::max(a.curvature_sum, floor));
}

TEST_CASE("invalid inputs") {
  const auto p = tanh_profile();
  const SpectralGrid g(32, -5.0, 5.0);
  const Eigen::VectorXcd w = Eigen::VectorXcd::Ones(g.size());
  CHECK_THROWS_AS(identity_report(synthetic(g, 0.5, cplx{0.1, 0.0}, w), p, g), std::invalid_argument);
  CHECK_THROWS_AS(energy_identities(synthetic(g, 0.5, cplx{0.1, -0.1}, w), p, g), std::invalid_argument);
  CHECK_THROWS_AS(curvature_identities(synthetic(g, 0.5, cplx{0.1, 0.0}, w), p, g), std::invalid_argument);
  CHECK_THROWS_AS(identity_report(synthetic(g, 0.5, cplx{0.1, 0.1}, w), p, g, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(identity_report(synthetic(g, 0.5, cplx{0.1, 0.1}, Eigen::VectorXcd::Ones(5)), p, g),
                  std::invalid_argument);
}

}  // TEST_SUITE
