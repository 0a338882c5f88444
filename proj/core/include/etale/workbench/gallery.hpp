#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "etale/workbench/report.hpp"

namespace etale::workbench {

/// dbl, cuntz2, z2_point, i2, pair2, pair3, pair4, then the seeded
/// regressions random-1 .. random-3.
std::vector<std::string> gallery_names();

/// Scenario JSON of a built-in scenario. Throws UsageError for unknown names.
Json gallery_scenario(const std::string& name);

/// A regime A scenario: the closure of two random partial injections of a
/// finite space with `points` points, plus sections on its first labels.
Json random_scenario(std::uint64_t seed, std::size_t points);

struct FixtureCheck {
  bool matches = false;
  bool written = false;
  std::string output;  // the freshly rendered report
  std::string diff;    // first differing line, when not matching
};

/// Runs every command on the scenario and compares the JSON rendering with
/// <dir>/<name>.json. With `regen`, writes the fixture instead.
FixtureCheck check_fixture(const std::string& name, const std::filesystem::path& dir, bool regen = false);

}  // namespace etale::workbench
