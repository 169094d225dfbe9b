// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "latkit/errors.hpp"
#include "latkit/json_io.hpp"
#include "latkit/scenarios.hpp"
#include "properties.hpp"

using namespace latkit;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Check {
  bool ok = true;
  std::vector<std::string> why;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      why.push_back(what);
    }
  }
};

Json cli_json(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return code == 0 ? Json::parse(out.str()) : Json();
}

// The scenario passes, every listed claim is present and passing, and the
// wall-clock time stays within `budget_s`.
Check scenario_check(const std::string& name, const std::vector<std::string>& claims, double budget_s) {
  Check c;
  const auto t0 = Clock::now();
  const ScenarioReport r = run_scenario(name);
  const double elapsed = seconds_since(t0);
  c.require(r.pass(), name + " report does not pass");
  c.require(!r.resource_limited, name + " hit a resource limit");
  for (const auto& id : claims) {
    bool found = false;
    for (const auto& cl : r.claims)
      if (cl.id == id) {
        found = true;
        c.require(cl.pass, id + " fails: computed " + cl.computed.dump() + ", expected " + cl.expected.dump());
      }
    c.require(found, "claim " + id + " missing");
  }
  c.require(elapsed <= budget_s, name + " took " + std::to_string(elapsed) + " s");
  const ScenarioReport again = run_scenario(name);
  c.require(again.to_json(false).dump() == r.to_json(false).dump(), name + " is not deterministic");
  return c;
}

Check criterion_hodge() {
  Check c;
  int code = 0;
  auto t0 = Clock::now();
  const Json a = cli_json({"hodge", "3", "3", "--json"}, code);
  c.require(code == 0 && a == Json::parse(R"({"hodge":[0,5,5,0],"rank":10})"), "hodge 3 3: " + a.dump());
  const Json b = cli_json({"hodge", "4", "3"}, code);
  c.require(code == 0 && b["rank"] == 23 && b["signature"] == Json::parse("[21,2]") &&
                b["primitive_signature"] == Json::parse("[20,2]"),
            "hodge 4 3: " + b.dump());
  const Json k = cli_json({"hodge", "2", "4"}, code);
  c.require(code == 0 && k["rank"] == 22 && k["signature"] == Json::parse("[3,19]"), "hodge 2 4: " + k.dump());
  c.require(seconds_since(t0) < 1.0, "hodge commands took over 1 s");
  return c;
}

Check criterion_properties() {
  Check c;
  const auto t0 = Clock::now();
  const std::pair<props::PropertyResult, std::size_t> results[] = {
      {props::snf_round_trip(200), 200},
      {props::anti_isometry(20), 20},
      {props::glue_round_trip(50), 50},
      {props::basis_change_invariance(5), 25},
      {props::orbit_stabilizer_recount(), 10},
  };
  for (const auto& [r, min] : results) {
    c.require(r.instances >= min, r.name + ": only " + std::to_string(r.instances) + " instances");
    for (const auto& f : r.failures) c.require(false, r.name + ": " + f);
  }
  c.require(seconds_since(t0) <= 600.0, "property run exceeded 10 min");
  return c;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Check()>> criteria[] = {
      {"hodge numbers, ranks and signatures from the CLI", criterion_hodge},
      {"genus3 lattice skeleton",
       [] {
         return scenario_check("genus3",
                               {"disc-m", "eta0-perp-e7", "index-eta0-plus-p", "aut-e7-order", "e7-image-order",
                                "e7-target-order", "e7-sequence", "integral-subgroup", "extensions-fixing-subgroup"},
                               120.0);
       }},
      {"genus4 hyperbolic glue",
       [] {
         return scenario_check("genus4", {"aut-u", "disc-u3", "q-u3-values", "sign-selection", "glue-round-trip"}, 5.0);
       }},
      {"stabilizer of (3,-1,...,-1) in I_{1,6}",
       [] { return scenario_check("cubic-surface-weyl", {"aut-e6-order", "stabilizer-order"}, 60.0); }},
      {"no sign change acts as -id on residues",
       [] { return scenario_check("minus-id-residues", {"sign-patterns", "eigenvalues", "obstruction"}, 5.0); }},
      {"refinement orbits under Sp_{2g}(F_2)",
       [] { return scenario_check("components-odd-odd", {"orbits-g1", "orbits-g2", "orbits-g3"}, 10.0); }},
      {"randomized property suites", criterion_properties},
  };
  bool all = true;
  int index = 1;
  for (const auto& [label, fn] : criteria) {
    Check c;
    try {
      c = fn();
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    all = all && c.ok;
    std::cout << "criterion " << index++ << ": " << (c.ok ? "PASS" : "FAIL") << "  " << label << '\n';
    for (const auto& w : c.why) std::cout << "    " << w << '\n';
    std::cout.flush();
  }
  return all ? 0 : 1;
}
