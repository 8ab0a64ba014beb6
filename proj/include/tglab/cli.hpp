#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tglab/profiles.hpp"

namespace tglab::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;  // numerical failure or failed verification
inline constexpr int exit_usage = 2;    // bad flags, config or input schema

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Everything a subcommand can be configured with. Populated from an
/// optional JSON config file, then overridden by command-line flags.
struct RunConfig {
  std::string profile = "tanh_shear";
  std::optional<double> z1;
  std::optional<double> z2;
  std::optional<double> z0;
  double gbeta_scale = 0.0;
  std::string profile_file;

  std::optional<double> alpha;
  double alpha_min = 0.05;
  double alpha_max = 2.0;
  int alpha_steps = 40;

  int n = 128;
  bool cluster = true;
  double cluster_width = -1.0;

  double residual_tol = 1e-7;
  double identity_tol = 1e-6;
  double drift_tol = 1e-7;
  double oracle_tol = 1e-6;
  double negligible_ratio = 0.01;

  std::string guess;
  int oracle_steps = 4096;
  int max_iterations = 100;

  std::string modes_file;
  std::string output;
  std::string format;
  unsigned threads = 0;
  bool all_candidates = false;
  bool json_catalog = false;

  /// Throws ConfigError on non-positive tolerances, bad ranges or n < 4.
  void validate() const;
  FlowProfile make_flow_profile() const;
};

/// Applies keys of a JSON config object onto `cfg`. Unknown keys are errors.
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tglab::cli
