#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "tglab/eigensolver.hpp"

namespace tglab::testing {

inline Eigen::VectorXcd random_complex(std::mt19937& rng, Eigen::Index size) {
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(size);
  for (auto& x : v) x = {normal(rng), normal(rng)};
  return v;
}

inline Eigen::VectorXcd random_mode_shape(std::mt19937& rng, Eigen::Index size) {
  Eigen::VectorXcd v = random_complex(rng, size);
  v[0] = 0.0;
  v[size - 1] = 0.0;
  return v;
}

inline double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Trefethen's cheb(): nodes x_k = cos(kπ/n) and first-derivative matrix on [-1, 1].
inline void cheb(int n, Eigen::VectorXd& x, Eigen::MatrixXd& d) {
  x.resize(n + 1);
  for (int k = 0; k <= n; ++k) x[k] = std::cos(std::numbers::pi * k / n);
  Eigen::VectorXd c = Eigen::VectorXd::Ones(n + 1);
  c[0] = c[n] = 2.0;
  for (int k = 1; k <= n; k += 2) c[k] = -c[k];
  d.resize(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) d(i, j) = i == j ? 0.0 : (c[i] / c[j]) / (x[i] - x[j]);
  }
  for (int i = 0; i <= n; ++i) d(i, i) = -d.row(i).sum();
}

// (U−c)²(D²−α²)v − U''(U−c)v + gβ v at every node, from a given second-derivative matrix.
inline Eigen::VectorXcd tg_form(const FlowProfile& p, const Eigen::VectorXd& z, const Eigen::MatrixXd& d2,
                                double alpha, cplx c, const Eigen::VectorXcd& v) {
  const Eigen::VectorXcd lv = d2.cast<cplx>() * v - alpha * alpha * v;
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const cplx s = p.u(z[k]) - c;
    out[k] = s * s * lv[k] - p.d2u(z[k]) * s * v[k] + p.gbeta(z[k]) * v[k];
  }
  return out;
}

}  // namespace tglab::testing
