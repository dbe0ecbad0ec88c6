#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace ionspin {

// Resolved run configuration. Frequencies are stored as given (kHz) and times in ms;
// conversion to rad/ms happens at dispatch.
struct RunConfig {
  std::string experiment;
  std::uint64_t seed = 1;
  std::string output = "run";
  int threads = 0;          // 0: OpenMP default
  std::uint64_t shots = 0;  // 0: exact expectation values
  nlohmann::json trap;      // null when absent
  nlohmann::json beam;
  nlohmann::json couplings;
  nlohmann::json params;    // experiment-specific block, defaults filled

  bool operator==(const RunConfig& o) const;
};

const std::vector<std::string>& experiment_names();

// Validates against the experiment's schema and fills defaults. Errors are
// validation_error naming the offending key path.
RunConfig parse_config(const std::string& text);
RunConfig parse_config(const nlohmann::json& doc);
// Full document, including the units declaration; parse_config(serialize_config(c)) == c.
nlohmann::json serialize_config(const RunConfig& c);

}  // namespace ionspin
