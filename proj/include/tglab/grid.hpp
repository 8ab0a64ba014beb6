#pragma once

#include <complex>

#include <Eigen/Core>

namespace tglab {

/// Optional interior clustering z = center + width·tan(θx), θ chosen so that
/// x = ±1 lands on the walls. Concentrates nodes within ~width of `center`,
/// where critical layers of shear-layer modes live. width ≤ 0 means affine.
struct GridMap {
  double center = 0.0;
  double width = 0.0;

  bool affine() const { return !(width > 0.0); }
  static GridMap none() { return {}; }
  /// Clustering at the domain midpoint with width (z2 − z1)/10.
  static GridMap centered(double z1, double z2) { return {0.5 * (z1 + z2), 0.1 * (z2 - z1)}; }
};

/// Chebyshev–Gauss–Lobatto collocation on [z1, z2].
///
/// With the affine map node k sits at z1 + (1 + cos(kπ/n))(z2 − z1)/2, so
/// nodes run from z2 (k = 0) down to z1 (k = n). `d1` and `d2` act on nodal
/// values; `d2` is assembled from its own closed form instead of squaring
/// `d1`. Weights are Clenshaw–Curtis (times the map Jacobian when mapped).
class SpectralGrid {
 public:
  SpectralGrid(int n, double z1, double z2, GridMap map = {});

  int n() const { return n_; }
  int size() const { return n_ + 1; }
  double z1() const { return z1_; }
  double z2() const { return z2_; }
  double length() const { return z2_ - z1_; }
  const GridMap& map() const { return map_; }

  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::MatrixXd& d1() const { return d1_; }
  const Eigen::MatrixXd& d2() const { return d2_; }
  const Eigen::VectorXd& weights() const { return weights_; }

  Eigen::VectorXcd differentiate(const Eigen::VectorXcd& v, int order) const;
  Eigen::VectorXd differentiate(const Eigen::VectorXd& v, int order) const;

  std::complex<double> integrate(const Eigen::VectorXcd& v) const;
  double integrate(const Eigen::VectorXd& v) const;

 private:
  void check_length(Eigen::Index len) const;

  int n_;
  double z1_;
  double z2_;
  GridMap map_;
  Eigen::VectorXd nodes_;
  Eigen::MatrixXd d1_;
  Eigen::MatrixXd d2_;
  Eigen::VectorXd weights_;
};

inline SpectralGrid build_grid(int n, double z1, double z2, GridMap map = {}) {
  return SpectralGrid(n, z1, z2, map);
}

}  // namespace tglab
