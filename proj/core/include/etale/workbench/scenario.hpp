#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "etale/germ_system.hpp"
#include "etale/section.hpp"

namespace etale::workbench {

using Json = nlohmann::ordered_json;

/// Bounds and requests shared by the commands. CLI flags override these.
struct Analysis {
  std::size_t bound = 2;          // word length for regime B label sets
  std::size_t depth = 2;          // cylinder depth for the pure-infiniteness search
  std::size_t len = 2;            // word length for its slices
  std::size_t minimal_depth = 3;  // cylinder depth for minimality
  double tol = 1e-9;
  std::string pure_infiniteness_in = "X";
  std::vector<std::string> orbit_points;  // empty: command defaults
  std::vector<std::array<std::string, 2>> products;
  std::vector<std::array<std::string, 2>> ess_equal;
};

struct NamedSection {
  std::string name;
  std::string text;
  Section value;
};

/// A loaded scenario. `canonical` is the serialised form: fixed key order,
/// defaults filled in, maps in canonical rule form.
struct Scenario {
  std::string name;
  Json canonical;
  GermSystem system;
  std::vector<NamedSection> sections;
  Analysis analysis;

  /// Throws ScenarioError for an unknown name.
  const Section& section(const std::string& name) const;
};

/// Parses and validates a scenario. Errors are ScenarioErrors (AxiomViolation
/// for failed axioms) prefixed with `origin` and the offending field path,
/// or the line and column for JSON syntax errors.
Scenario load_text(std::string_view text, const std::string& origin = "<input>");
Scenario load_json(const Json& j, const std::string& origin = "<input>");
Scenario load_file(const std::filesystem::path& path);

/// Canonical JSON text; load_text(serialize(s)) serialises identically.
std::string serialize(const Scenario& s);

/// Point syntax checked against the scenario's space.
Point parse_point(const Space& space, const std::string& text);

}  // namespace etale::workbench
