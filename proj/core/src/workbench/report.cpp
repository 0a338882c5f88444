#include "etale/workbench/report.hpp"

#include <cstdio>

#include "etale/error.hpp"
#include "etale/freeness.hpp"
#include "etale/orbit.hpp"

#ifndef ETALE_VERSION
#define ETALE_VERSION "0.0.0"
#endif

namespace etale::workbench {

const char* version() { return ETALE_VERSION; }

std::string format_norm(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

namespace {

Json verdict_json(const GermSystem& gs, const Verdict& v) {
  Json j{{"status", v.to_string()}};
  if (v.label) j["label"] = gs.name(*v.label);
  if (v.point) j["point"] = v.point->to_string();
  return j;
}

Json bounds_json(const Analysis& a) {
  return Json{{"bound", a.bound}, {"depth", a.depth},      {"len", a.len},
              {"minimal_depth", a.minimal_depth}, {"tol", a.tol}};
}

std::vector<Point> orbit_points_for(const Scenario& s) {
  const Space& space = s.system.space();
  std::vector<Point> out;
  for (const auto& p : s.analysis.orbit_points) out.push_back(parse_point(space, p));
  if (!out.empty()) return out;
  if (space.is_finite()) {
    for (std::size_t i = 0; i < std::min<std::size_t>(space.size(), 8); ++i) out.push_back(Point::index(i));
  } else {
    const char a = space.alphabet()[0], b = space.alphabet()[1];
    out = {Point::periodic("", {a}), Point::periodic({a}, {b}), Point::periodic("", {b})};
  }
  return out;
}

Json validate(const Scenario& s) {
  const GermSystem& gs = s.system;
  const std::size_t bound = s.analysis.bound;
  const auto failures = validate_system(gs, bound, true);
  if (!failures.empty()) {
    const auto& f = failures.front();
    if (gs.regime() == Regime::C) throw AxiomViolation(f.axiom, f.where(gs));
    throw InvariantViolation("constructed system fails its own axiom " + f.describe(gs));
  }
  Json j{{"regime", to_string(gs.regime())}, {"space", gs.space().to_string()}};
  if (gs.has_finite_labels()) {
    j["labels"] = gs.label_count();
    j["idempotents"] = gs.semigroup()->idempotents().size();
  } else {
    Json letters = Json::array();
    for (Label t : gs.letters()) letters.push_back(gs.name(t));
    j["letters"] = letters;
    j["labels_up_to_bound"] = gs.labels(bound).size();
  }
  j["sections"] = s.sections.size();
  j["status"] = "valid";
  return j;
}

Json freeness(const Scenario& s) {
  const GermSystem& gs = s.system;
  const Analysis& a = s.analysis;
  const FreenessReport fr = freeness_report(gs, a.bound);
  const Region danger = dangerous_set(gs, a.bound);
  Json j{{"hausdorff", fr.hausdorff},
         {"dangerous_set", danger.describe()},
         {"dangerous_set_meagre", danger.is_meagre()},
         {"effective", verdict_json(gs, fr.effective)},
         {"topologically_free", verdict_json(gs, fr.topologically_free)},
         {"as_topologically_free", verdict_json(gs, fr.as_topologically_free)},
         {"topologically_principal", verdict_json(gs, fr.topologically_principal)}};
  Json fixes = Json::array();
  for (const auto& f : fr.fixes)
    if (!f.fix.is_empty())
      fixes.push_back(Json{{"label", gs.name(f.label)}, {"fix", f.fix.describe()}, {"underline_fix", f.underline_fix.describe()}});
  j["fix_sets"] = fixes;
  j["minimal"] = verdict_json(gs, is_minimal(gs, a.minimal_depth));
  if (gs.space().is_finite() && gs.has_finite_labels()) j["arrows"] = enumerate_arrows(gs).size();

  const Region u = Region::parse(gs.space(), a.pure_infiniteness_in);
  const auto pi = pure_infiniteness_witness(gs, u, a.depth, a.len);
  Json pj{{"in", u.describe()}};
  if (const auto* w = std::get_if<PureInfinitenessWitness>(&pi)) {
    pj["found"] = true;
    pj["v"] = w->v.describe();
    Json slices = Json::array();
    for (const auto& sl : w->slices) slices.push_back(Json{{"label", gs.name(sl.label)}, {"set", sl.set.describe()}});
    pj["slices"] = slices;
  } else {
    const auto& nf = std::get<NotFoundUpTo>(pi);
    pj["found"] = false;
    pj["not_found_up_to"] = Json{{"depth", nf.depth}, {"len", nf.len}};
  }
  j["pure_infiniteness"] = pj;
  return j;
}

void check_normal_form_routes(const SectionAlgebra& alg, const std::string& name, const Section& f) {
  if (alg.to_string(alg.normal_form(f)) != alg.to_string(alg.normal_form_by_atoms(f)))
    throw InvariantViolation("normal-form routes disagree on " + name);
}

Json eval(const Scenario& s) {
  const SectionAlgebra alg(s.system);
  Json sections = Json::array();
  for (const auto& ns : s.sections) {
    check_normal_form_routes(alg, ns.name, ns.value);
    const NormalForm nf = alg.normal_form(ns.value);
    sections.push_back(Json{{"name", ns.name},
                            {"value", alg.to_string(ns.value)},
                            {"normal_form", alg.to_string(nf)},
                            {"is_zero", nf.is_zero()},
                            {"expectation", alg.expectation(ns.value).to_string()},
                            {"adjoint", alg.to_string(alg.normal_form(alg.star(ns.value)))}});
  }
  Json products = Json::array();
  for (const auto& [l, r] : s.analysis.products) {
    const Section p = alg.mul(s.section(l), s.section(r));
    check_normal_form_routes(alg, l + "·" + r, p);
    products.push_back(Json{{"left", l}, {"right", r}, {"normal_form", alg.to_string(alg.normal_form(p))}});
  }
  return Json{{"sections", sections}, {"products", products}};
}

Json singular(const Scenario& s) {
  const SectionAlgebra alg(s.system);
  Json sections = Json::array();
  for (const auto& ns : s.sections) {
    const bool support_route = alg.is_singular(ns.value);
    const bool expectation_route = alg.el_kernel_member(ns.value);
    if (support_route != expectation_route)
      throw InvariantViolation("singularity routes disagree on " + ns.name);
    sections.push_back(Json{{"name", ns.name},
                            {"is_zero", alg.is_zero(ns.value)},
                            {"singular_by_support", support_route},
                            {"singular_by_expectation", expectation_route}});
  }
  Json pairs = Json::array();
  for (const auto& [l, r] : s.analysis.ess_equal)
    pairs.push_back(Json{{"left", l}, {"right", r}, {"ess_equal", alg.ess_equal(s.section(l), s.section(r))}});
  return Json{{"sections", sections}, {"ess_equal", pairs}};
}

Json orbit(const Scenario& s) {
  const GermSystem& gs = s.system;
  const SectionAlgebra alg(gs);
  const Analysis& a = s.analysis;
  const auto points = orbit_points_for(s);
  Json pts = Json::array();
  for (const auto& p : points) pts.push_back(p.to_string());
  Json sections = Json::array();
  for (const auto& ns : s.sections) {
    const auto kernel = in_orbit_kernel(alg, ns.value);
    Json kj{{"in_kernel", kernel.in_kernel}};
    if (kernel.witness) kj["witness"] = kernel.witness->to_string();
    const NormProbe probe = reduced_norm_probe(alg, ns.value, {}, a.bound, a.tol);
    Json at = Json::array();
    for (const auto& x : points) {
      const OrbitMatrix m = lambda_matrix(alg, ns.value, x, a.bound);
      Json basis = Json::array();
      for (const auto& arrow : m.basis.arrows) basis.push_back(to_string(gs, arrow));
      const OrbitPoints orbit = orbit_points(gs, x, a.bound);
      Json orbit_j = Json::array();
      for (const auto& y : orbit.points) orbit_j.push_back(y.to_string());
      at.push_back(Json{{"point", x.to_string()},
                        {"basis", basis},
                        {"truncated", m.truncated},
                        {"lambda", m.matrix.to_string()},
                        {"lambda_norm", format_norm(operator_norm(m.matrix, a.tol))},
                        {"orbit", orbit_j},
                        {"pi", orbit_matrix(alg, ns.value, orbit).to_string()}});
    }
    sections.push_back(Json{{"name", ns.name},
                            {"orbit_kernel", kj},
                            {"reduced_norm", Json{{"value", format_norm(probe.value)},
                                                  {"status", probe.exact ? "exact" : "lower_bound"},
                                                  {"points", probe.points.size()}}},
                            {"at", at}});
  }
  return Json{{"points", pts}, {"sections", sections}};
}

void render_into(std::string& out, const Json& j, int indent);

std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

bool is_flat_array(const Json& v) {
  return v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
}

std::string flat_array(const Json& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + scalar_text(v[i]);
  return out + "]";
}

void render_into(std::string& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_primitive()) {
        out += pad + k + ": " + scalar_text(v) + "\n";
      } else if (is_flat_array(v)) {
        out += pad + k + ": " + flat_array(v) + "\n";
      } else {
        out += pad + k + ":\n";
        render_into(out, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_primitive()) {
        out += pad + "- " + scalar_text(v) + "\n";
      } else if (is_flat_array(v)) {
        out += pad + "- " + flat_array(v) + "\n";
      } else {
        out += pad + "-\n";
        render_into(out, v, indent + 2);
      }
    }
  } else {
    out += pad + scalar_text(j) + "\n";
  }
}

}  // namespace

Json to_json(const Report& r) {
  return Json{{"tool", "etale-lab"},  {"version", version()}, {"scenario", r.scenario},
              {"command", r.command}, {"bounds", r.bounds},   {"results", r.results}};
}

std::string render_text(const Json& j) {
  std::string out;
  render_into(out, j, 0);
  return out;
}

std::string render(const Report& r, bool as_json) {
  const Json j = to_json(r);
  return as_json ? j.dump(2) + "\n" : render_text(j);
}

Report run(const std::string& command, const Scenario& s) {
  Report r{s.name, command, bounds_json(s.analysis), {}};
  if (command == "validate") r.results = validate(s);
  else if (command == "report") r.results = freeness(s);
  else if (command == "eval") r.results = eval(s);
  else if (command == "singular") r.results = singular(s);
  else if (command == "orbit") r.results = orbit(s);
  else throw UsageError("unknown scenario command '" + command + "'");
  return r;
}

Report run_all(const Scenario& s) {
  Report r{s.name, "gallery", bounds_json(s.analysis), Json::object()};
  for (const char* c : {"validate", "report", "eval", "singular", "orbit"}) r.results[c] = run(c, s).results;
  return r;
}

}  // namespace etale::workbench
