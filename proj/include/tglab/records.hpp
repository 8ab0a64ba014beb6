#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tglab/bounds.hpp"
#include "tglab/identities.hpp"
#include "tglab/oracle.hpp"

namespace tglab {

using json = nlohmann::json;

/// A record that does not match the documented schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

/// Parses a complex literal "a+bi" (also "a-bi", "bi", "a"), no spaces.
cplx parse_complex(std::string_view text);

/// {alpha, c_re, c_im, residual, n, nodes[], w_re[], w_im[], drift, converged}
json to_json(const ModalSolution& mode);
ModalSolution mode_from_json(const json& record);

json to_json(const IdentityReport& report);
json to_json(const BoundReport& report);
json to_json(const ShootingResult& result);
json to_json(const ProfileExtrema& extrema);
json profile_to_json(const FlowProfile& profile);

}  // namespace tglab
