#include "tglab/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include "tglab/grid.hpp"

namespace tglab {

namespace {

double sech2(double z) {
  const double c = std::cosh(z);
  return 1.0 / (c * c);
}

double require(const ParamMap& params, const std::string& key, ProfileKind kind) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw std::invalid_argument("profile '" + std::string(to_string(kind)) + "' requires parameter '" + key + "'");
  }
  if (!std::isfinite(it->second)) {
    throw std::invalid_argument("profile parameter '" + key + "' must be finite");
  }
  return it->second;
}

double optional(const ParamMap& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  if (!std::isfinite(it->second)) throw std::invalid_argument("profile parameter '" + key + "' must be finite");
  return it->second;
}

void reject_unknown(const ParamMap& params, const CatalogEntry& entry) {
  for (const auto& [key, value] : params) {
    const bool known = std::ranges::find(entry.required, key) != entry.required.end() ||
                       std::ranges::find(entry.optional, key) != entry.optional.end();
    if (!known) {
      throw std::invalid_argument("unknown parameter '" + key + "' for profile '" +
                                  std::string(to_string(entry.kind)) + "'");
    }
  }
}

// Owns a GSL natural cubic spline.
class CubicSpline {
 public:
  CubicSpline(const std::vector<double>& x, const std::vector<double>& y)
      : spline_(gsl_spline_alloc(gsl_interp_cspline, x.size()), gsl_spline_free), lo_(x.front()), hi_(x.back()) {
    gsl_set_error_handler_off();
    if (gsl_spline_init(spline_.get(), x.data(), y.data(), x.size()) != GSL_SUCCESS) {
      throw std::invalid_argument("cubic spline construction failed");
    }
  }
  // No accelerator: evaluation stays reentrant for concurrent sweeps.
  double operator()(double z) const { return gsl_spline_eval(spline_.get(), std::clamp(z, lo_, hi_), nullptr); }

 private:
  std::unique_ptr<gsl_spline, void (*)(gsl_spline*)> spline_;
  double lo_;
  double hi_;
};

// Barycentric evaluation of the Chebyshev interpolant through `values` on
// the extreme points of `grid`.
double barycentric(const SpectralGrid& grid, const Eigen::VectorXd& values, double z) {
  const auto& nodes = grid.nodes();
  const int n = grid.n();
  double num = 0.0;
  double den = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double diff = z - nodes[k];
    if (diff == 0.0) return values[k];
    const double w = ((k % 2 == 0) ? 1.0 : -1.0) * ((k == 0 || k == n) ? 0.5 : 1.0) / diff;
    num += w * values[k];
    den += w;
  }
  return num / den;
}

}  // namespace

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::couette: return "couette";
    case ProfileKind::tanh_shear: return "tanh_shear";
    case ProfileKind::sinusoidal: return "sinusoidal";
    case ProfileKind::garcia: return "garcia";
    case ProfileKind::custom_sampled: return "custom_sampled";
  }
  return "unknown";
}

ProfileKind parse_profile_kind(std::string_view name) {
  for (auto kind : {ProfileKind::couette, ProfileKind::tanh_shear, ProfileKind::sinusoidal, ProfileKind::garcia,
                    ProfileKind::custom_sampled}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown profile kind '" + std::string(name) + "'");
}

FlowProfile::FlowProfile(ProfileKind kind, double z1, double z2, ScalarFn u, ScalarFn d2u, ScalarFn gbeta_shape,
                         double gbeta_scale, ParamMap params)
    : kind_(kind),
      z1_(z1),
      z2_(z2),
      u_(std::move(u)),
      d2u_(std::move(d2u)),
      gbeta_shape_(std::move(gbeta_shape)),
      gbeta_scale_(gbeta_scale),
      params_(std::move(params)) {
  if (!std::isfinite(z1) || !std::isfinite(z2) || !(z1 < z2)) {
    throw std::invalid_argument("profile domain requires finite z1 < z2");
  }
  if (!(gbeta_scale >= 0.0) || !std::isfinite(gbeta_scale)) {
    throw std::invalid_argument("gbeta_scale must be finite and non-negative");
  }
  if (!u_ || !d2u_ || !gbeta_shape_) throw std::invalid_argument("profile functions must be callable");
  params_["gbeta_scale"] = gbeta_scale;

  constexpr int probes = 256;
  for (int k = 0; k <= probes; ++k) {
    const double z = z1 + (z2 - z1) * k / probes;
    if (gbeta_shape_(z) < 0.0) throw std::invalid_argument("buoyancy gbeta(z) must be non-negative");
  }
}

ProfileSample FlowProfile::eval(double z) const {
  if (!(z >= z1_ && z <= z2_)) {
    throw std::domain_error("z = " + std::to_string(z) + " outside profile domain [" + std::to_string(z1_) + ", " +
                            std::to_string(z2_) + "]");
  }
  return {u_(z), d2u_(z), gbeta(z)};
}

FlowProfile FlowProfile::with_gbeta_scale(double scale) const {
  return FlowProfile(kind_, z1_, z2_, u_, d2u_, gbeta_shape_, scale, params_);
}

const std::vector<CatalogEntry>& profile_catalog() {
  static const std::vector<CatalogEntry> catalog = {
      {ProfileKind::couette, "U = z", "gbeta = gbeta_scale", {"z1", "z2"}, {"gbeta_scale"}, -1.0, 1.0},
      {ProfileKind::tanh_shear,
       "U = tanh(z)",
       "gbeta = gbeta_scale * sech^2(z)",
       {"z1", "z2"},
       {"gbeta_scale"},
       -5.0,
       5.0},
      {ProfileKind::sinusoidal,
       "U = sin(z)",
       "gbeta = gbeta_scale",
       {"z1", "z2"},
       {"gbeta_scale"},
       -std::numbers::pi,
       std::numbers::pi},
      {ProfileKind::garcia,
       "U = tanh(z - z0)",
       "gbeta = gbeta_scale * sech^2(z - z0)",
       {"z1", "z2"},
       {"gbeta_scale", "z0"},
       -5.0,
       5.0},
  };
  return catalog;
}

FlowProfile make_profile(ProfileKind kind, const ParamMap& params) {
  const auto& catalog = profile_catalog();
  auto entry = std::ranges::find(catalog, kind, &CatalogEntry::kind);
  if (entry == catalog.end()) {
    throw std::invalid_argument("profile kind '" + std::string(to_string(kind)) +
                                "' is not a built-in; load it from a sample file");
  }
  reject_unknown(params, *entry);
  const double z1 = require(params, "z1", kind);
  const double z2 = require(params, "z2", kind);
  const double scale = optional(params, "gbeta_scale", 0.0);
  if (scale < 0.0) throw std::invalid_argument("gbeta_scale must be non-negative");

  switch (kind) {
    case ProfileKind::couette:
      return FlowProfile(
          kind, z1, z2, [](double z) { return z; }, [](double) { return 0.0; }, [](double) { return 1.0; }, scale,
          params);
    case ProfileKind::tanh_shear:
      return FlowProfile(
          kind, z1, z2, [](double z) { return std::tanh(z); },
          [](double z) { return -2.0 * std::tanh(z) * sech2(z); }, [](double z) { return sech2(z); }, scale, params);
    case ProfileKind::sinusoidal:
      return FlowProfile(
          kind, z1, z2, [](double z) { return std::sin(z); }, [](double z) { return -std::sin(z); },
          [](double) { return 1.0; }, scale, params);
    case ProfileKind::garcia: {
      const double z0 = optional(params, "z0", 0.0);
      if (z0 <= z1 || z0 >= z2) throw std::invalid_argument("garcia inflection point z0 must lie inside (z1, z2)");
      return FlowProfile(
          kind, z1, z2, [z0](double z) { return std::tanh(z - z0); },
          [z0](double z) { return -2.0 * std::tanh(z - z0) * sech2(z - z0); },
          [z0](double z) { return sech2(z - z0); }, scale, params);
    }
    case ProfileKind::custom_sampled: break;
  }
  throw std::invalid_argument("unsupported profile kind");
}

FlowProfile make_profile(std::string_view kind, const ParamMap& params) {
  return make_profile(parse_profile_kind(kind), params);
}

FlowProfile make_custom_profile(double z1, double z2, ScalarFn u, ScalarFn d2u, ScalarFn gbeta, double gbeta_scale) {
  return FlowProfile(ProfileKind::custom_sampled, z1, z2, std::move(u), std::move(d2u), std::move(gbeta), gbeta_scale,
                     {{"z1", z1}, {"z2", z2}});
}

FlowProfile parse_sampled_profile(std::string_view text, double gbeta_scale) {
  std::vector<double> z;
  std::vector<double> u;
  std::vector<double> gb;
  std::optional<std::size_t> columns;

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<double> row;
    double value = 0.0;
    while (fields >> value) row.push_back(value);
    if (!fields.eof()) throw std::invalid_argument("sample line " + std::to_string(line_no) + " is not numeric");
    if (row.empty()) continue;
    if (row.size() != 2 && row.size() != 3) {
      throw std::invalid_argument("sample line " + std::to_string(line_no) + " must have 2 or 3 columns");
    }
    if (columns && *columns != row.size()) {
      throw std::invalid_argument("sample line " + std::to_string(line_no) + " changes the column count");
    }
    columns = row.size();
    if (!z.empty() && !(row[0] > z.back())) {
      throw std::invalid_argument("sample z values must be strictly increasing");
    }
    z.push_back(row[0]);
    u.push_back(row[1]);
    if (row.size() == 3) {
      if (row[2] < 0.0) throw std::invalid_argument("sampled gbeta must be non-negative");
      gb.push_back(row[2]);
    }
  }
  if (z.size() < 4) throw std::invalid_argument("a sampled profile needs at least 4 rows");

  const double z1 = z.front();
  const double z2 = z.back();
  auto u_spline = std::make_shared<const CubicSpline>(z, u);

  // U'' from the Chebyshev interpolant of the spline.
  const int cheb_n = static_cast<int>(std::clamp<std::size_t>(2 * z.size(), 32, 256));
  auto cheb = std::make_shared<const SpectralGrid>(cheb_n, z1, z2);
  Eigen::VectorXd u_nodes(cheb->size());
  for (int k = 0; k < cheb->size(); ++k) u_nodes[k] = (*u_spline)(cheb->nodes()[k]);
  auto d2u_nodes = std::make_shared<const Eigen::VectorXd>(cheb->differentiate(u_nodes, 2));

  ScalarFn gbeta_fn = [](double) { return 0.0; };
  if (!gb.empty()) {
    auto gb_spline = std::make_shared<const CubicSpline>(z, gb);
    gbeta_fn = [gb_spline](double x) { return std::max(0.0, (*gb_spline)(x)); };
  }

  return FlowProfile(
      ProfileKind::custom_sampled, z1, z2, [u_spline](double x) { return (*u_spline)(x); },
      [cheb, d2u_nodes](double x) { return barycentric(*cheb, *d2u_nodes, x); }, std::move(gbeta_fn), gbeta_scale,
      {{"z1", z1}, {"z2", z2}});
}

FlowProfile load_sampled_profile(const std::filesystem::path& path, double gbeta_scale) {
  std::ifstream file(path);
  if (!file) throw std::invalid_argument("cannot open profile sample file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_sampled_profile(buffer.str(), gbeta_scale);
}

ProfileExtrema profile_extrema(const FlowProfile& profile, const SpectralGrid& grid) {
  constexpr double rel = 1e-12;
  const double span = profile.z2() - profile.z1();
  if (std::abs(grid.z1() - profile.z1()) > rel * span || std::abs(grid.z2() - profile.z2()) > rel * span) {
    throw std::invalid_argument("grid domain does not match profile domain");
  }

  ProfileExtrema e;
  e.u_min = std::numeric_limits<double>::infinity();
  e.u_max = -std::numeric_limits<double>::infinity();
  auto visit = [&](double z) {
    const double u = profile.u(z);
    const double d2u = profile.d2u(z);
    const double gb = profile.gbeta(z);
    e.u_min = std::min(e.u_min, u);
    e.u_max = std::max(e.u_max, u);
    e.d2u_sq_max = std::max(e.d2u_sq_max, d2u * d2u);
    e.gbeta_d2u_abs_max = std::max(e.gbeta_d2u_abs_max, gb * std::abs(d2u));
    e.gbeta_max = std::max(e.gbeta_max, gb);
  };

  const int samples = 4 * grid.size();
  for (int k = 0; k <= samples; ++k) {
    visit(k == samples ? profile.z2() : profile.z1() + span * k / samples);
  }
  for (double z : grid.nodes()) visit(z);
  return e;
}

}  // namespace tglab
