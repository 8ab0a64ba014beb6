#include "tglab/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tglab {

namespace {

constexpr double pi = std::numbers::pi;

// x_i - x_j for the Chebyshev extreme points, via the product formula to
// avoid cancellation between nearby cosines.
double node_difference(int i, int j, int n) {
  return 2.0 * std::sin((i + j) * pi / (2.0 * n)) * std::sin((j - i) * pi / (2.0 * n));
}

}  // namespace

SpectralGrid::SpectralGrid(int n, double z1, double z2, GridMap map) : n_(n), z1_(z1), z2_(z2), map_(map) {
  if (n < 2) {
    throw std::invalid_argument("grid resolution n must be at least 2, got " + std::to_string(n));
  }
  if (!(z1 < z2)) {
    throw std::invalid_argument("grid domain requires z1 < z2");
  }
  if (!map.affine() && !(map.center > z1 && map.center < z2)) {
    throw std::invalid_argument("grid map center must lie strictly inside (z1, z2)");
  }
  const int m = n + 1;
  const double half = 0.5 * (z2 - z1);

  // Reference nodes on [-1, 1]; the sine form is exactly antisymmetric.
  Eigen::VectorXd x(m);
  for (int k = 0; k < m; ++k) x[k] = std::sin(pi * (n - 2.0 * k) / (2.0 * n));

  // dz/dx and d2z/dx2 at each node; constant for the affine map.
  nodes_.resize(m);
  Eigen::VectorXd jac = Eigen::VectorXd::Constant(m, half);
  Eigen::VectorXd jac2 = Eigen::VectorXd::Zero(m);
  if (map.affine()) {
    for (int k = 0; k < m; ++k) nodes_[k] = z1 + (1.0 + x[k]) * half;
  } else {
    // Angle φ(x) = a x + b x² hits the wall angles at x = ±1; b = 0 when
    // the center is the midpoint.
    const double up = std::atan((z2 - map.center) / map.width);
    const double down = std::atan((map.center - z1) / map.width);
    if (!(up + down > 2.0 * std::abs(up - down))) {
      throw std::invalid_argument("grid map center too far off the midpoint for a monotone map");
    }
    for (int k = 0; k < m; ++k) {
      const double theta = 0.5 * (up + down) + 0.5 * (up - down) * x[k];
      const double dtheta = 0.5 * (up - down);
      const double phi = theta * x[k];
      const double dphi = theta + dtheta * x[k];
      const double d2phi = 2.0 * dtheta;
      const double t = std::tan(phi);
      const double sec2 = 1.0 + t * t;
      nodes_[k] = map.center + map.width * t;
      jac[k] = map.width * sec2 * dphi;
      jac2[k] = map.width * (2.0 * t * sec2 * dphi * dphi + sec2 * d2phi);
    }
  }
  nodes_[0] = z2;
  nodes_[n] = z1;

  // First derivative from barycentric weights, diagonal by negative row sum.
  Eigen::VectorXd bw(m);
  for (int k = 0; k < m; ++k) bw[k] = ((k % 2 == 0) ? 1.0 : -1.0) * ((k == 0 || k == n) ? 0.5 : 1.0);

  Eigen::MatrixXd ref1 = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    double row = 0.0;
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      ref1(i, j) = (bw[j] / bw[i]) / node_difference(i, j, n);
      row += ref1(i, j);
    }
    ref1(i, i) = -row;
  }

  // Second derivative: D2_ij = 2 D1_ij (D1_ii - 1/(x_i - x_j)) off the diagonal.
  Eigen::MatrixXd ref2 = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    double row = 0.0;
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      ref2(i, j) = 2.0 * ref1(i, j) * (ref1(i, i) - 1.0 / node_difference(i, j, n));
      row += ref2(i, j);
    }
    ref2(i, i) = -row;
  }

  // Chain rule: d/dz = (1/z') d/dx, d2/dz2 = (1/z'^2) d2/dx2 - (z''/z'^3) d/dx.
  const Eigen::VectorXd inv = jac.cwiseInverse();
  d1_ = inv.asDiagonal() * ref1;
  d2_ = inv.cwiseProduct(inv).asDiagonal() * ref2;
  d2_ -= (jac2.cwiseProduct(inv.cwiseProduct(inv).cwiseProduct(inv))).asDiagonal() * ref1;

  // Clenshaw–Curtis weights on [-1, 1], then scaled.
  weights_ = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd interior = Eigen::VectorXd::Ones(n - 1);
  if (n % 2 == 0) {
    const double end = 1.0 / (static_cast<double>(n) * n - 1.0);
    weights_[0] = weights_[n] = end;
    for (int k = 1; k < n / 2; ++k) {
      for (int i = 1; i < n; ++i) interior[i - 1] -= 2.0 * std::cos(2.0 * k * i * pi / n) / (4.0 * k * k - 1.0);
    }
    for (int i = 1; i < n; ++i) interior[i - 1] -= std::cos(n * i * pi / n) * end;
  } else {
    const double end = 1.0 / (static_cast<double>(n) * n);
    weights_[0] = weights_[n] = end;
    for (int k = 1; k <= (n - 1) / 2; ++k) {
      for (int i = 1; i < n; ++i) interior[i - 1] -= 2.0 * std::cos(2.0 * k * i * pi / n) / (4.0 * k * k - 1.0);
    }
  }
  for (int i = 1; i < n; ++i) weights_[i] = 2.0 * interior[i - 1] / n;
  weights_ = weights_.cwiseProduct(jac);
}

void SpectralGrid::check_length(Eigen::Index len) const {
  if (len != size()) {
    throw std::invalid_argument("vector length " + std::to_string(len) + " does not match grid size " +
                                std::to_string(size()));
  }
}

Eigen::VectorXcd SpectralGrid::differentiate(const Eigen::VectorXcd& v, int order) const {
  check_length(v.size());
  if (order != 1 && order != 2) throw std::invalid_argument("derivative order must be 1 or 2");
  const Eigen::MatrixXd& d = order == 1 ? d1_ : d2_;
  Eigen::VectorXcd out(v.size());
  out.real() = d * v.real();
  out.imag() = d * v.imag();
  return out;
}

Eigen::VectorXd SpectralGrid::differentiate(const Eigen::VectorXd& v, int order) const {
  check_length(v.size());
  switch (order) {
    case 1: return d1_ * v;
    case 2: return d2_ * v;
    default: throw std::invalid_argument("derivative order must be 1 or 2");
  }
}

std::complex<double> SpectralGrid::integrate(const Eigen::VectorXcd& v) const {
  check_length(v.size());
  return {weights_.dot(v.real()), weights_.dot(v.imag())};
}

double SpectralGrid::integrate(const Eigen::VectorXd& v) const {
  check_length(v.size());
  return weights_.dot(v);
}

}  // namespace tglab
