#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tglab {

class SpectralGrid;

enum class ProfileKind { couette, tanh_shear, sinusoidal, garcia, custom_sampled };

std::string_view to_string(ProfileKind kind);
ProfileKind parse_profile_kind(std::string_view name);

using ParamMap = std::map<std::string, double>;
using ScalarFn = std::function<double(double)>;

/// Pointwise basic state: velocity, its curvature and the (scaled) buoyancy gβ.
struct ProfileSample {
  double u = 0.0;
  double d2u = 0.0;
  double gbeta = 0.0;
};

/// Basic state of the stratified shear flow on [z1, z2].
///
/// The curvature U'' is carried as its own function rather than derived from
/// U, and g and β are fused into a single non-negative shape gβ(z) multiplied
/// by `gbeta_scale`. Instances are immutable; copies share the closures.
class FlowProfile {
 public:
  FlowProfile(ProfileKind kind, double z1, double z2, ScalarFn u, ScalarFn d2u,
              ScalarFn gbeta_shape, double gbeta_scale, ParamMap params = {});

  ProfileKind kind() const { return kind_; }
  double z1() const { return z1_; }
  double z2() const { return z2_; }
  double gbeta_scale() const { return gbeta_scale_; }
  const ParamMap& params() const { return params_; }

  /// Checked evaluation; throws std::domain_error outside [z1, z2].
  ProfileSample eval(double z) const;

  // Unchecked accessors for inner loops.
  double u(double z) const { return u_(z); }
  double d2u(double z) const { return d2u_(z); }
  double gbeta(double z) const { return gbeta_scale_ * gbeta_shape_(z); }

  /// Same flow with a different buoyancy multiplier.
  FlowProfile with_gbeta_scale(double scale) const;

 private:
  ProfileKind kind_;
  double z1_;
  double z2_;
  ScalarFn u_;
  ScalarFn d2u_;
  ScalarFn gbeta_shape_;
  double gbeta_scale_;
  ParamMap params_;
};

/// Built-in profiles. Every kind requires `z1` and `z2`; `gbeta_scale`
/// defaults to 0. `garcia` additionally accepts the inflection point `z0`
/// (default 0). Unknown keys are rejected.
FlowProfile make_profile(ProfileKind kind, const ParamMap& params);
FlowProfile make_profile(std::string_view kind, const ParamMap& params);

/// Profile from user closures. `gbeta` is the unscaled shape.
FlowProfile make_custom_profile(double z1, double z2, ScalarFn u, ScalarFn d2u,
                                ScalarFn gbeta, double gbeta_scale = 1.0);

/// Loads a sampled profile from plain text. Each non-comment line holds
/// `z U` or `z U gbeta`. U and gβ are interpolated with natural cubic
/// splines; U'' comes from a Chebyshev interpolant of the spline, so its
/// accuracy is limited by the sampling density.
FlowProfile load_sampled_profile(const std::filesystem::path& path, double gbeta_scale = 1.0);
FlowProfile parse_sampled_profile(std::string_view text, double gbeta_scale = 1.0);

struct CatalogEntry {
  ProfileKind kind;
  std::string velocity;
  std::string buoyancy;
  std::vector<std::string> required;
  std::vector<std::string> optional;
  double default_z1;
  double default_z2;
};

/// The four analytic built-ins, in a fixed order.
const std::vector<CatalogEntry>& profile_catalog();

struct ProfileExtrema {
  double u_min = 0.0;
  double u_max = 0.0;
  double d2u_sq_max = 0.0;          // [(U'')^2]_max
  double gbeta_d2u_abs_max = 0.0;   // [gβ|U''|]_max
  double gbeta_max = 0.0;           // [gβ]_max, used by the small-buoyancy predicate

  double velocity_range() const { return u_max - u_min; }
};

/// Extrema by uniform dense sampling (4x the grid node count plus the grid
/// nodes themselves). Sampling based, not exact.
ProfileExtrema profile_extrema(const FlowProfile& profile, const SpectralGrid& grid);

}  // namespace tglab
