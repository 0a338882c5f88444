#pragma once

#include <string>

#include "etale/workbench/scenario.hpp"

namespace etale::workbench {

const char* version();

/// The outcome of one command on one scenario.
struct Report {
  std::string scenario;
  std::string command;
  Json bounds;
  Json results;
};

/// {"tool", "version", "scenario", "command", "bounds", "results"}.
Json to_json(const Report& r);
/// Pretty JSON or an indented text rendering of the same tree.
std::string render(const Report& r, bool as_json);
std::string render_text(const Json& j);

/// Runs validate, report, eval, singular or orbit. Throws UsageError for
/// other commands, AxiomViolation for invalid witness data, and
/// InvariantViolation when independent routes disagree.
Report run(const std::string& command, const Scenario& s);

/// Every scenario command, results keyed by command name.
Report run_all(const Scenario& s);

/// Decimal rendering used for the only inexact quantities (norms).
std::string format_norm(double v);

}  // namespace etale::workbench
