#include "tglab/records.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace tglab {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("double formatting failed");
  return std::string(buf.data(), end);
}

namespace {

double parse_real(std::string_view text, std::string_view whole) {
  if (text.empty()) throw std::invalid_argument("malformed complex literal '" + std::string(whole) + "'");
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw std::invalid_argument("malformed complex literal '" + std::string(whole) + "'");
  }
  return value;
}

double parse_imag(std::string_view text, std::string_view whole) {
  if (text == "" || text == "+") return 1.0;
  if (text == "-") return -1.0;
  return parse_real(text, whole);
}

}  // namespace

cplx parse_complex(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty complex literal");
  if (text.back() != 'i') return {parse_real(text, text), 0.0};

  const std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last sign that is neither leading nor part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_imag(body, text)};
  return {parse_real(body.substr(0, split), text), parse_imag(body.substr(split), text)};
}

json to_json(const ModalSolution& mode) {
  json nodes = json::array();
  json w_re = json::array();
  json w_im = json::array();
  for (Eigen::Index k = 0; k < mode.w.size(); ++k) {
    nodes.push_back(k < mode.nodes.size() ? mode.nodes[k] : std::nan(""));
    w_re.push_back(mode.w[k].real());
    w_im.push_back(mode.w[k].imag());
  }
  return json{{"alpha", mode.alpha},
              {"c_re", mode.c.real()},
              {"c_im", mode.c.imag()},
              {"residual", mode.residual},
              {"n", mode.n},
              {"nodes", std::move(nodes)},
              {"w_re", std::move(w_re)},
              {"w_im", std::move(w_im)},
              {"drift", mode.drift},
              {"converged", mode.converged}};
}

ModalSolution mode_from_json(const json& record) {
  if (!record.is_object()) throw SchemaError("mode record must be a JSON object");
  auto number = [&](const char* key) {
    if (!record.contains(key) || !record[key].is_number()) {
      throw SchemaError(std::string("mode record field '") + key + "' must be a number");
    }
    return record[key].get<double>();
  };
  auto array = [&](const char* key) {
    if (!record.contains(key) || !record[key].is_array()) {
      throw SchemaError(std::string("mode record field '") + key + "' must be an array");
    }
    std::vector<double> out;
    for (const auto& v : record[key]) {
      if (!v.is_number()) throw SchemaError(std::string("mode record field '") + key + "' must hold numbers");
      out.push_back(v.get<double>());
    }
    return out;
  };

  ModalSolution mode;
  mode.alpha = number("alpha");
  mode.c = {number("c_re"), number("c_im")};
  mode.residual = number("residual");
  if (!record.contains("n") || !record["n"].is_number_integer()) throw SchemaError("mode record field 'n' must be an integer");
  mode.n = record["n"].get<int>();
  const auto nodes = array("nodes");
  const auto w_re = array("w_re");
  const auto w_im = array("w_im");
  const auto expected = static_cast<std::size_t>(mode.n) + 1;
  if (mode.n < 2 || nodes.size() != expected || w_re.size() != expected || w_im.size() != expected) {
    throw SchemaError("mode record arrays must all have n + 1 entries");
  }
  mode.nodes = Eigen::Map<const Eigen::VectorXd>(nodes.data(), static_cast<Eigen::Index>(expected));
  mode.w.resize(static_cast<Eigen::Index>(expected));
  for (std::size_t k = 0; k < expected; ++k) mode.w[static_cast<Eigen::Index>(k)] = {w_re[k], w_im[k]};
  if (record.contains("drift") && record["drift"].is_number()) mode.drift = record["drift"].get<double>();
  mode.converged = record.value("converged", true);
  return mode;
}

json to_json(const IdentityReport& r) {
  const auto& t = r.terms;
  return json{
      {"energy_real", r.energy_real},
      {"energy_imag", r.energy_imag},
      {"curvature_real", r.curvature_real},
      {"curvature_sum", r.curvature_sum},
      {"raw", {{"energy_real", r.raw_energy_real},
               {"energy_imag", r.raw_energy_imag},
               {"curvature_real", r.raw_curvature_real},
               {"curvature_sum", r.raw_curvature_sum}}},
      {"scale", {{"energy_real", r.scale_energy_real},
                 {"energy_imag", r.scale_energy_imag},
                 {"curvature_real", r.scale_curvature_real},
                 {"curvature_sum", r.scale_curvature_sum}}},
      {"consistency_gap", r.consistency_gap},
      {"alt_cross_residual", r.alt_cross_residual},
      {"alt_sign_residual", r.alt_sign_residual},
      {"terms", {{"grad_energy", t.grad_energy},
                 {"shear", t.shear},
                 {"buoyancy", t.buoyancy},
                 {"shear_imag", t.shear_imag},
                 {"buoyancy_imag", t.buoyancy_imag},
                 {"curvature_energy", t.curvature_energy},
                 {"shear_sq", t.shear_sq},
                 {"cross", t.cross},
                 {"buoyancy_sq", t.buoyancy_sq},
                 {"full_energy", t.full_energy}}},
      {"tolerance", r.tolerance},
      {"passed", r.passed}};
}

json to_json(const BoundReport& r) {
  return json{{"semicircle_slack", r.semicircle_slack},
              {"inside_semicircle", r.inside_semicircle},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"slack", r.slack},
              {"alpha_ci", r.alpha_ci},
              {"first_order_scale", r.first_order_scale},
              {"second_order_scale", r.second_order_scale},
              {"small_gbeta_ok", r.small_gbeta_ok},
              {"bound_holds", r.bound_holds}};
}

json to_json(const ShootingResult& r) {
  return json{{"c_re", r.c.real()},
              {"c_im", r.c.imag()},
              {"mismatch", std::isfinite(r.mismatch) ? json(r.mismatch) : json(nullptr)},
              {"iterations", r.iterations},
              {"converged", r.converged}};
}

json to_json(const ProfileExtrema& e) {
  return json{{"u_min", e.u_min},
              {"u_max", e.u_max},
              {"d2u_sq_max", e.d2u_sq_max},
              {"gbeta_d2u_abs_max", e.gbeta_d2u_abs_max},
              {"gbeta_max", e.gbeta_max}};
}

json profile_to_json(const FlowProfile& profile) {
  json params = json::object();
  for (const auto& [key, value] : profile.params()) params[key] = value;
  return json{{"kind", std::string(to_string(profile.kind()))}, {"params", std::move(params)}};
}

}  // namespace tglab
