// etale-lab: command-line front end for the workbench.
//
// Exit codes: 0 success, 1 invalid scenario or usage, 2 internal invariant
// violation (including gallery fixture drift and selftest failures),
// 3 bound exceeded.

#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "etale/error.hpp"
#include "etale/workbench/gallery.hpp"
#include "etale/workbench/selftest.hpp"

namespace wb = etale::workbench;

namespace {

struct Options {
  std::string command;
  std::string target;
  std::optional<std::size_t> bound, depth, len;
  std::optional<double> tol;
  std::uint64_t seed = 20240601;
  std::size_t cases = 50;
  bool json = false;
  bool text = false;
  bool regen = false;
  bool exp = false;
  std::string fixtures = ETALE_FIXTURE_DIR;
};

void apply_overrides(const Options& o, wb::Scenario& s) {
  if (o.bound) s.analysis.bound = *o.bound;
  if (o.depth) s.analysis.depth = *o.depth;
  if (o.len) s.analysis.len = *o.len;
  if (o.tol) s.analysis.tol = *o.tol;
  if (s.analysis.bound == 0) throw etale::UsageError("--bound must be at least 1");
  if (!(s.analysis.tol > 0)) throw etale::UsageError("--tol must be positive");
}

int gallery(const Options& o) {
  if (o.exp) {
    if (o.target.empty()) throw etale::UsageError("--export needs a gallery name");
    std::cout << wb::serialize(wb::load_json(wb::gallery_scenario(o.target), "gallery:" + o.target));
    return 0;
  }
  if (!o.target.empty() && !o.regen) {
    const auto check = wb::check_fixture(o.target, o.fixtures);
    if (o.json) {
      std::cout << check.output;
    } else {
      std::cout << wb::render_text(wb::Json::parse(check.output));
    }
    if (!check.matches) {
      std::cerr << "fixture mismatch: " << check.diff << "\n";
      return 2;
    }
    std::cerr << "matches fixture " << o.target << ".json\n";
    return 0;
  }
  const auto names = o.target.empty() ? wb::gallery_names() : std::vector<std::string>{o.target};
  int status = 0;
  for (const auto& name : names) {
    const auto check = wb::check_fixture(name, o.fixtures, o.regen);
    if (check.written) {
      std::cout << name << ": fixture written\n";
    } else if (check.matches) {
      std::cout << name << ": ok\n";
    } else {
      std::cout << name << ": MISMATCH " << check.diff << "\n";
      status = 2;
    }
  }
  return status;
}

int selftest(const Options& o) {
  const auto results = wb::selftest(o.seed, o.cases);
  wb::Report r{"gallery", "selftest", wb::Json{{"seed", o.seed}, {"cases", o.cases}}, wb::to_json(results)};
  std::cout << wb::render(r, o.json);
  for (const auto& s : results)
    if (!s.ok()) {
      std::cerr << "selftest " << s.name << " failed: " << s.first_failure << "\n";
      return 2;
    }
  return 0;
}

int dispatch(const Options& o) {
  if (o.command == "gallery") return gallery(o);
  if (o.command == "selftest") return selftest(o);
  if (o.target.empty()) throw etale::UsageError(o.command + " needs a scenario file");
  wb::Scenario s = wb::load_file(o.target);
  apply_overrides(o, s);
  std::cout << wb::render(wb::run(o.command, s), o.json);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"etale-lab: exact experiments with étale groupoids of inverse semigroup actions"};
  Options o;
  app.add_option("command", o.command, "validate | report | eval | singular | orbit | gallery | selftest")
      ->required()
      ->check(CLI::IsMember({"validate", "report", "eval", "singular", "orbit", "gallery", "selftest"}));
  app.add_option("target", o.target, "scenario file, or a gallery name");
  app.add_option("--bound", o.bound, "word length bound for generated labels");
  app.add_option("--depth", o.depth, "cylinder depth for the pure-infiniteness search");
  app.add_option("--len", o.len, "word length for pure-infiniteness slices");
  app.add_option("--tol", o.tol, "relative tolerance for operator norms");
  app.add_option("--seed", o.seed, "selftest seed");
  app.add_option("--cases", o.cases, "selftest cases per suite and system");
  auto* json = app.add_flag("--json", o.json, "JSON output");
  app.add_flag("--text", o.text, "text output (default)")->excludes(json);
  app.add_flag("--regen", o.regen, "gallery: rewrite fixtures instead of comparing");
  app.add_flag("--export", o.exp, "gallery: print the scenario file of a built-in scenario");
  app.add_option("--fixtures", o.fixtures, "gallery fixture directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    return dispatch(o);
  } catch (const etale::AxiomViolation& e) {
    std::cerr << "invalid scenario: axiom " << e.axiom() << " fails: " << e.where() << "\n";
    return 1;
  } catch (const etale::ScenarioError& e) {
    std::cerr << "invalid scenario: " << e.what() << "\n";
    return 1;
  } catch (const etale::UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 1;
  } catch (const etale::InvariantViolation& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return 2;
  } catch (const etale::BoundExceeded& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
