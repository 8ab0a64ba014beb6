#include "tglab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "tglab/bounds.hpp"
#include "tglab/records.hpp"

namespace tglab::cli {

namespace {

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(cfg.output);
  if (!file) throw ConfigError("cannot open output file '" + cfg.output + "'");
  file << text;
}

std::string resolved_format(const RunConfig& cfg, const char* fallback) {
  const std::string fmt = cfg.format.empty() ? fallback : cfg.format;
  if (fmt != "csv" && fmt != "json") throw ConfigError("output format must be csv or json");
  return fmt;
}

SolverConfig solver_config(const RunConfig& cfg, int n) {
  SolverConfig s;
  s.n = n;
  s.cluster = cfg.cluster;
  s.cluster_width = cfg.cluster_width;
  s.filter.residual_tol = cfg.residual_tol;
  s.filter.drift_tol = cfg.drift_tol;
  return s;
}

json grid_to_json(const SpectralGrid& grid) {
  return json{{"n", grid.n()},
              {"cluster", !grid.map().affine()},
              {"cluster_center", grid.map().center},
              {"cluster_width", grid.map().width}};
}

// ---- subcommands -----------------------------------------------------------

int cmd_profiles(const RunConfig& cfg, std::ostream& out) {
  const auto& catalog = profile_catalog();
  if (cfg.json_catalog) {
    json arr = json::array();
    for (const auto& e : catalog) {
      arr.push_back({{"kind", std::string(to_string(e.kind))},
                     {"velocity", e.velocity},
                     {"buoyancy", e.buoyancy},
                     {"required", e.required},
                     {"optional", e.optional},
                     {"default_z1", e.default_z1},
                     {"default_z2", e.default_z2}});
    }
    emit(cfg, arr.dump(2) + "\n", out);
    return exit_ok;
  }
  std::ostringstream table;
  table << std::left << std::setw(12) << "kind" << std::setw(20) << "velocity" << std::setw(38) << "buoyancy"
        << std::setw(12) << "required" << std::setw(18) << "optional"
        << "default domain\n";
  for (const auto& e : catalog) {
    std::ostringstream domain;
    domain << '[' << format_double(e.default_z1) << ", " << format_double(e.default_z2) << ']';
    table << std::left << std::setw(12) << to_string(e.kind) << std::setw(20) << e.velocity << std::setw(38)
          << e.buoyancy << std::setw(12) << join(e.required, ",") << std::setw(18) << join(e.optional, ",")
          << domain.str() << '\n';
  }
  emit(cfg, table.str(), out);
  return exit_ok;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.alpha) throw ConfigError("solve needs --alpha");
  const FlowProfile profile = cfg.make_flow_profile();
  const SolverConfig solver = solver_config(cfg, cfg.n);
  const SpectralGrid grid = solver_grid(profile, solver);
  const auto raw = solve_spectrum(assemble_qep(profile, grid, *cfg.alpha));
  const auto modes = cfg.all_candidates ? assess_modes(profile, grid, *cfg.alpha, raw, solver.filter)
                                        : filter_modes(profile, grid, *cfg.alpha, raw, solver.filter);

  if (resolved_format(cfg, "json") == "csv") {
    std::string csv = "alpha,c_re,c_im,residual,drift,converged\n";
    for (const auto& m : modes) {
      csv += format_double(m.alpha) + ',' + format_double(m.c_r()) + ',' + format_double(m.c_i()) + ',' +
             format_double(m.residual) + ',' + format_double(m.drift) + ',' + (m.converged ? "true" : "false") + '\n';
    }
    emit(cfg, csv, out);
    return exit_ok;
  }
  json doc{{"profile", profile_to_json(profile)}, {"grid", grid_to_json(grid)}, {"alpha", *cfg.alpha}};
  doc["modes"] = json::array();
  for (const auto& m : modes) doc["modes"].push_back(to_json(m));
  emit(cfg, doc.dump(2) + "\n", out);
  return exit_ok;
}

int cmd_verify(RunConfig cfg, const std::set<std::string>& provided, std::ostream& out, std::ostream& err) {
  if (cfg.modes_file.empty()) throw ConfigError("verify needs --modes FILE");
  std::ifstream in(cfg.modes_file);
  if (!in) throw ConfigError("cannot open mode file '" + cfg.modes_file + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("mode file is not valid JSON: ") + e.what());
  }

  json records;
  if (doc.is_array()) {
    records = doc;
  } else if (doc.is_object() && doc.contains("modes")) {
    records = doc["modes"];
    // The file's own profile and grid apply unless overridden.
    if (doc.contains("profile") && !provided.contains("profile") && !provided.contains("profile_file")) {
      const json& p = doc["profile"];
      if (!p.contains("kind") || !p["kind"].is_string()) throw SchemaError("profile.kind must be a string");
      cfg.profile = p["kind"].get<std::string>();
      const json params = p.value("params", json::object());
      auto param = [&](const char* key, const char* name) {
        if (params.contains(key) && !provided.contains(name)) {
          if (!params[key].is_number()) throw SchemaError(std::string("profile param ") + key + " must be a number");
          return std::optional<double>(params[key].get<double>());
        }
        return std::optional<double>();
      };
      if (auto v = param("z1", "z1")) cfg.z1 = v;
      if (auto v = param("z2", "z2")) cfg.z2 = v;
      if (auto v = param("z0", "z0")) cfg.z0 = v;
      if (auto v = param("gbeta_scale", "gbeta_scale")) cfg.gbeta_scale = *v;
    }
    if (doc.contains("grid") && doc["grid"].is_object() && !provided.contains("cluster") &&
        !provided.contains("cluster_width")) {
      const json& g = doc["grid"];
      cfg.cluster = g.value("cluster", cfg.cluster);
      cfg.cluster_width = g.value("cluster_width", cfg.cluster_width);
    }
  } else if (doc.is_object()) {
    records = json::array({doc});
  } else {
    throw SchemaError("mode file must hold a mode record, an array of records or {\"modes\": [...]}");
  }
  if (!records.is_array()) throw SchemaError("'modes' must be an array");
  cfg.validate();

  const FlowProfile profile = cfg.make_flow_profile();
  BoundConfig bound_cfg;
  bound_cfg.negligible_ratio = cfg.negligible_ratio;

  bool all_passed = true;
  json results = json::array();
  for (const auto& record : records) {
    const ModalSolution mode = mode_from_json(record);
    if (!(mode.c.imag() > 0.0)) throw SchemaError("mode records must have c_im > 0");
    if (!(mode.alpha > 0.0)) throw SchemaError("mode records must have alpha > 0");
    const SpectralGrid grid = solver_grid(profile, solver_config(cfg, mode.n));
    const double node_err = (grid.nodes() - mode.nodes).cwiseAbs().maxCoeff();
    if (!(node_err <= 1e-10 * grid.length())) {
      throw SchemaError("mode nodes do not match the profile grid at n = " + std::to_string(mode.n));
    }
    const ProfileExtrema extrema = profile_extrema(profile, grid);
    const IdentityReport ids = identity_report(mode, profile, grid, cfg.identity_tol);
    const BoundReport bound = growth_bound_check(mode, extrema, bound_cfg);

    std::string bound_status = "skipped";
    if (bound.small_gbeta_ok) {
      bound_status = bound.bound_holds ? "passed" : "failed";
    } else {
      err << "warning: mode c = " << format_double(mode.c_r()) << (mode.c_i() >= 0 ? "+" : "")
          << format_double(mode.c_i()) << "i is outside the small-buoyancy regime; growth bound skipped\n";
    }
    OracleConfig oc;
    oc.steps = cfg.oracle_steps;
    oc.max_iterations = cfg.max_iterations;
    const ShootingResult shot = find_eigenvalue(profile, mode.alpha, mode.c, oc);
    const bool passed = ids.passed && bound.inside_semicircle && bound_status != "failed";
    all_passed = all_passed && passed;
    results.push_back({{"alpha", mode.alpha},
                       {"c_re", mode.c_r()},
                       {"c_im", mode.c_i()},
                       {"identities", to_json(ids)},
                       {"bounds", to_json(bound)},
                       {"bound_check", bound_status},
                       {"oracle", {{"result", to_json(shot)},
                                   {"agrees", shot.converged && std::abs(shot.c - mode.c) < cfg.oracle_tol}}},
                       {"passed", passed}});
  }

  json report{{"profile", profile_to_json(profile)}, {"results", std::move(results)}, {"passed", all_passed}};
  emit(cfg, report.dump(2) + "\n", out);
  return all_passed ? exit_ok : exit_failure;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.alpha_steps < 3) throw ConfigError("sweep needs --alpha-steps >= 3");
  if (!(cfg.alpha_min > 0.0) || !(cfg.alpha_max > cfg.alpha_min)) {
    throw ConfigError("sweep needs 0 < alpha-min < alpha-max");
  }
  const FlowProfile profile = cfg.make_flow_profile();
  SweepConfig sweep;
  sweep.solver = solver_config(cfg, cfg.n);
  sweep.identity_tol = cfg.identity_tol;
  sweep.bound.negligible_ratio = cfg.negligible_ratio;
  sweep.threads = cfg.threads;
  const SweepResult result = decay_sweep(profile, linspace(cfg.alpha_min, cfg.alpha_max, cfg.alpha_steps), sweep);

  if (resolved_format(cfg, "csv") == "csv") {
    emit(cfg, sweep_to_csv(result), out);
  } else {
    json rows = json::array();
    for (const auto& r : result.rows) {
      json row{{"alpha", r.alpha},
               {"n_unstable", r.n_unstable},
               {"max_ci", r.max_ci},
               {"alpha_ci", r.alpha_ci},
               {"rhs322_cuberoot", r.rhs_cuberoot},
               {"semicircle_ok", r.semicircle_ok},
               {"identities_ok", r.identities_ok},
               {"bound_ok", r.bound_ok},
               {"small_gbeta_ok", r.small_gbeta_ok},
               {"min_bound_slack", r.min_bound_slack},
               {"min_semicircle_slack", r.min_semicircle_slack}};
      if (r.error) row["error"] = *r.error;
      rows.push_back(std::move(row));
    }
    emit(cfg, json{{"profile", profile_to_json(profile)}, {"rows", std::move(rows)}}.dump(2) + "\n", out);
  }

  std::size_t failures = 0;
  const SweepRow* peak = nullptr;
  for (const auto& r : result.rows) {
    if (r.error) {
      ++failures;
      err << "alpha = " << format_double(r.alpha) << ": " << *r.error << '\n';
      continue;
    }
    if (!peak || r.alpha_ci > peak->alpha_ci) peak = &r;
  }
  if (peak) {
    err << "max alpha_ci = " << format_double(peak->alpha_ci) << " at alpha = " << format_double(peak->alpha) << '\n';
  }
  return failures == result.rows.size() ? exit_failure : exit_ok;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.alpha) throw ConfigError("oracle needs --alpha");
  if (cfg.guess.empty()) throw ConfigError("oracle needs --guess a+bi");
  cplx guess;
  try {
    guess = parse_complex(cfg.guess);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!(guess.imag() > 0.0)) throw ConfigError("oracle guess must have a positive imaginary part");
  const FlowProfile profile = cfg.make_flow_profile();
  OracleConfig oc;
  oc.steps = cfg.oracle_steps;
  oc.max_iterations = cfg.max_iterations;
  const ShootingResult r = find_eigenvalue(profile, *cfg.alpha, guess, oc);
  json doc{{"profile", profile_to_json(profile)},
           {"alpha", *cfg.alpha},
           {"guess_re", guess.real()},
           {"guess_im", guess.imag()},
           {"steps", oc.steps},
           {"result", to_json(r)}};
  emit(cfg, doc.dump(2) + "\n", out);
  return exit_ok;
}

// ---- option wiring ---------------------------------------------------------

struct Bindings {
  std::vector<std::pair<std::string, CLI::Option*>> options;
  void add(const std::string& key, CLI::Option* opt) { options.emplace_back(key, opt); }
};

void add_profile_options(CLI::App* sub, RunConfig& cfg, Bindings& b) {
  b.add("profile", sub->add_option("--profile", cfg.profile, "Built-in profile kind (see `tglab profiles`)"));
  b.add("profile_file", sub->add_option("--profile-file", cfg.profile_file, "Sampled profile: columns z U [gbeta]"));
  b.add("z1", sub->add_option("--z1", cfg.z1, "Lower wall"));
  b.add("z2", sub->add_option("--z2", cfg.z2, "Upper wall"));
  b.add("z0", sub->add_option("--z0", cfg.z0, "Inflection point (garcia)"));
  b.add("gbeta_scale", sub->add_option("--gbeta-scale", cfg.gbeta_scale, "Buoyancy multiplier"));
}

void add_grid_options(CLI::App* sub, RunConfig& cfg, Bindings& b) {
  b.add("n", sub->add_option("--n", cfg.n, "Chebyshev resolution (intervals)"));
  b.add("cluster", sub->add_flag("--cluster,!--no-cluster", cfg.cluster, "Cluster nodes at the domain centre"));
  b.add("cluster_width", sub->add_option("--cluster-width", cfg.cluster_width, "Clustering width (default L/10)"));
  b.add("residual_tol", sub->add_option("--residual-tol", cfg.residual_tol, "Direct residual tolerance"));
  b.add("drift_tol", sub->add_option("--drift-tol", cfg.drift_tol, "Resolution drift tolerance (x velocity range)"));
}

void add_output_options(CLI::App* sub, RunConfig& cfg, Bindings& b) {
  b.add("output", sub->add_option("-o,--output", cfg.output, "Output path (default stdout)"));
  b.add("format", sub->add_option("--format", cfg.format, "csv or json"));
}

std::optional<std::string> find_config_path(const std::vector<std::string>& args) {
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) return args[k + 1];
    if (args[k].starts_with("--config=")) return args[k].substr(9);
  }
  return std::nullopt;
}

}  // namespace

void RunConfig::validate() const {
  if (n < 4) throw ConfigError("n must be at least 4");
  for (double tol : {residual_tol, identity_tol, drift_tol, oracle_tol, negligible_ratio}) {
    if (!(tol > 0.0)) throw ConfigError("tolerances must be positive");
  }
  if (alpha && !(*alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (gbeta_scale < 0.0) throw ConfigError("gbeta_scale must be non-negative");
  if (oracle_steps < 100) throw ConfigError("oracle steps must be at least 100");
  if (max_iterations < 1) throw ConfigError("max iterations must be at least 1");
}

FlowProfile RunConfig::make_flow_profile() const {
  try {
    if (!profile_file.empty()) return load_sampled_profile(profile_file, gbeta_scale);
    const ProfileKind kind = parse_profile_kind(profile);
    const auto& catalog = profile_catalog();
    auto entry = std::ranges::find(catalog, kind, &CatalogEntry::kind);
    if (entry == catalog.end()) throw ConfigError("profile '" + profile + "' needs --profile-file");
    ParamMap params{{"z1", z1.value_or(entry->default_z1)},
                    {"z2", z2.value_or(entry->default_z2)},
                    {"gbeta_scale", gbeta_scale}};
    if (z0) params["z0"] = *z0;
    return make_profile(kind, params);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
  try {
    for (const auto& [key, v] : doc.items()) {
      if (key == "profile") cfg.profile = v.get<std::string>();
      else if (key == "profile_file") cfg.profile_file = v.get<std::string>();
      else if (key == "z1") cfg.z1 = v.get<double>();
      else if (key == "z2") cfg.z2 = v.get<double>();
      else if (key == "z0") cfg.z0 = v.get<double>();
      else if (key == "gbeta_scale") cfg.gbeta_scale = v.get<double>();
      else if (key == "alpha") cfg.alpha = v.get<double>();
      else if (key == "alpha_min") cfg.alpha_min = v.get<double>();
      else if (key == "alpha_max") cfg.alpha_max = v.get<double>();
      else if (key == "alpha_steps") cfg.alpha_steps = v.get<int>();
      else if (key == "n") cfg.n = v.get<int>();
      else if (key == "cluster") cfg.cluster = v.get<bool>();
      else if (key == "cluster_width") cfg.cluster_width = v.get<double>();
      else if (key == "residual_tol") cfg.residual_tol = v.get<double>();
      else if (key == "identity_tol") cfg.identity_tol = v.get<double>();
      else if (key == "drift_tol") cfg.drift_tol = v.get<double>();
      else if (key == "oracle_tol") cfg.oracle_tol = v.get<double>();
      else if (key == "negligible_ratio") cfg.negligible_ratio = v.get<double>();
      else if (key == "guess") cfg.guess = v.get<std::string>();
      else if (key == "oracle_steps") cfg.oracle_steps = v.get<int>();
      else if (key == "max_iterations") cfg.max_iterations = v.get<int>();
      else if (key == "modes") cfg.modes_file = v.get<std::string>();
      else if (key == "output") cfg.output = v.get<std::string>();
      else if (key == "format") cfg.format = v.get<std::string>();
      else if (key == "threads") cfg.threads = v.get<unsigned>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const json::type_error& e) {
    throw ConfigError(std::string("config value has the wrong type: ") + e.what());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::set<std::string> provided;

  CLI::App app{"tglab: inviscid stratified shear-flow stability laboratory", "tglab"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override its values");

  Bindings b;
  auto* profiles = app.add_subcommand("profiles", "List built-in basic-state profiles");
  profiles->add_flag("--json", cfg.json_catalog, "Machine-readable catalog");
  add_output_options(profiles, cfg, b);

  auto* solve = app.add_subcommand("solve", "Unstable modes at one wavenumber");
  add_profile_options(solve, cfg, b);
  add_grid_options(solve, cfg, b);
  add_output_options(solve, cfg, b);
  b.add("alpha", solve->add_option("--alpha", cfg.alpha, "Wavenumber"));
  solve->add_flag("--all-candidates", cfg.all_candidates, "Also list unconverged candidates");

  auto* verify = app.add_subcommand("verify", "Check identities, semicircle and growth bound for saved modes");
  add_profile_options(verify, cfg, b);
  add_grid_options(verify, cfg, b);
  add_output_options(verify, cfg, b);
  b.add("modes", verify->add_option("--modes", cfg.modes_file, "Mode file written by `solve`"));
  b.add("identity_tol", verify->add_option("--identity-tol", cfg.identity_tol, "Normalized identity tolerance"));
  b.add("negligible_ratio",
        verify->add_option("--negligible-ratio", cfg.negligible_ratio, "Small-buoyancy predicate ratio"));
  b.add("oracle_tol", verify->add_option("--oracle-tol", cfg.oracle_tol, "Shooting cross-check tolerance on |c|"));

  auto* sweep = app.add_subcommand("sweep", "Growth rate against wavenumber");
  add_profile_options(sweep, cfg, b);
  add_grid_options(sweep, cfg, b);
  add_output_options(sweep, cfg, b);
  b.add("alpha_min", sweep->add_option("--alpha-min", cfg.alpha_min, "First wavenumber"));
  b.add("alpha_max", sweep->add_option("--alpha-max", cfg.alpha_max, "Last wavenumber"));
  b.add("alpha_steps", sweep->add_option("--alpha-steps", cfg.alpha_steps, "Number of wavenumbers"));
  b.add("identity_tol", sweep->add_option("--identity-tol", cfg.identity_tol, "Normalized identity tolerance"));
  b.add("negligible_ratio",
        sweep->add_option("--negligible-ratio", cfg.negligible_ratio, "Small-buoyancy predicate ratio"));
  b.add("threads", sweep->add_option("--threads", cfg.threads, "Worker threads (default: all processors)"));

  auto* oracle = app.add_subcommand("oracle", "Shooting-method eigenvalue from a guess");
  add_profile_options(oracle, cfg, b);
  add_output_options(oracle, cfg, b);
  b.add("alpha", oracle->add_option("--alpha", cfg.alpha, "Wavenumber"));
  b.add("guess", oracle->add_option("--guess", cfg.guess, "Initial c as a+bi"));
  b.add("oracle_steps", oracle->add_option("--steps", cfg.oracle_steps, "RK4 steps"));
  b.add("max_iterations", oracle->add_option("--max-iter", cfg.max_iterations, "Secant iteration cap"));

  try {
    if (auto path = find_config_path(args)) apply_config_file(cfg, *path);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) {
        out << app.help();
        return exit_ok;
      }
      err << "error: " << e.what() << "\n" << "run `tglab --help` for usage\n";
      return exit_usage;
    }
    for (const auto& [key, opt] : b.options) {
      if (opt->count() > 0) provided.insert(key);
    }
    cfg.validate();

    if (profiles->parsed()) return cmd_profiles(cfg, out);
    if (solve->parsed()) return cmd_solve(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, provided, out, err);
    if (sweep->parsed()) return cmd_sweep(cfg, out, err);
    if (oracle->parsed()) return cmd_oracle(cfg, out);
    return exit_usage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_failure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return exit_failure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run(args, out, err);
}

}  // namespace tglab::cli
