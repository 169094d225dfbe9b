#pragma once

// Named verification scenarios. Each scenario evaluates a fixed list of
// claims and records computed and expected values side by side; a failing or
// throwing claim is recorded in the report, never propagated.

#include <cstdint>
#include <string>
#include <vector>

#include "latkit/json_io.hpp"

namespace latkit {

struct Claim {
  std::string id;
  std::string anchor;
  Json computed;
  Json expected;
  /// "literature", "trivial" or "derived"
  std::string provenance;
  bool pass = false;
};

struct ScenarioReport {
  std::string scenario;
  std::vector<Claim> claims;
  std::vector<std::string> notes;
  double elapsed_ms = 0;
  std::string version;
  /// Some claim stopped on a search or enumeration limit.
  bool resource_limited = false;

  bool pass() const;
  Json to_json(bool with_timing = true) const;
};

struct ScenarioOptions {
  std::uint64_t group_limit = 10'000'000;
  std::uint64_t fqm_limit = 65'536;
};

const std::vector<std::string>& scenario_names();

/// Throws InputError for an unknown name.
ScenarioReport run_scenario(const std::string& name, const ScenarioOptions& opts = {});

}  // namespace latkit
