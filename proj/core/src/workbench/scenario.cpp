#include "etale/workbench/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "etale/error.hpp"

namespace etale::workbench {

namespace {

struct Ctx {
  std::string origin;

  [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
    throw ScenarioError(origin + ": " + (path.empty() ? "/" : path) + ": " + msg);
  }

  // Runs f, relocating library errors to `path`.
  template <class F>
  auto at(const std::string& path, F&& f) const {
    try {
      return f();
    } catch (const AxiomViolation& e) {
      throw AxiomViolation(e.axiom(), e.where() + " (" + origin + ": " + path + ")");
    } catch (const ScenarioError& e) {
      fail(path, e.what());
    } catch (const UsageError& e) {
      fail(path, e.what());
    }
  }

  void keys(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) const {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& [k, v] : j.items())
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
        fail(path + "/" + k, "unknown key");
  }

  const Json& need(const Json& j, const std::string& path, const char* key) const {
    const auto it = j.find(key);
    if (it == j.end()) fail(path + "/" + key, "missing");
    return *it;
  }

  std::string str(const Json& j, const std::string& path) const {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
  }

  std::size_t count(const Json& j, const std::string& path) const {
    if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a nonnegative integer");
    return j.get<std::size_t>();
  }

  const Json& array(const Json& j, const std::string& path) const {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
  }

  std::vector<std::string> strings(const Json& j, const std::string& path) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(str(j[i], path + "/" + std::to_string(i)));
    return out;
  }
};

std::string index_path(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

Space load_space(const Ctx& c, const Json& j, Json& out) {
  const std::string path = "/space";
  c.keys(j, path, {"kind", "alphabet", "points"});
  const std::string kind = c.str(c.need(j, path, "kind"), path + "/kind");
  if (kind == "cantor") {
    if (j.contains("points")) c.fail(path + "/points", "not used by a Cantor space");
    const std::string alphabet = c.str(c.need(j, path, "alphabet"), path + "/alphabet");
    out = Json{{"kind", "cantor"}, {"alphabet", alphabet}};
    return c.at(path + "/alphabet", [&] { return Space::cantor(alphabet); });
  }
  if (kind == "finite") {
    if (j.contains("alphabet")) c.fail(path + "/alphabet", "not used by a finite space");
    const std::size_t n = c.count(c.need(j, path, "points"), path + "/points");
    if (n == 0) c.fail(path + "/points", "a finite space needs at least one point");
    out = Json{{"kind", "finite"}, {"points", n}};
    return Space::finite(n);
  }
  c.fail(path + "/kind", "expected \"cantor\" or \"finite\"");
}

PartialMap load_map(const Ctx& c, const Space& space, const Json& j, const std::string& path, Json& out) {
  const auto rules = c.strings(j, path);
  PartialMap m = c.at(path, [&] { return PartialMap::parse(space, rules); });
  out = m.to_rules();
  return m;
}

InverseSemigroup load_semigroup(const Ctx& c, const Json& j, Json& out) {
  const std::string path = "/semigroup";
  c.keys(j, path, {"elements", "unit", "table", "star"});
  const auto names = c.strings(c.need(j, path, "elements"), path + "/elements");
  if (names.empty()) c.fail(path + "/elements", "no elements");
  auto lookup = [&](const std::string& name, const std::string& where) -> std::size_t {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) c.fail(where, "unknown element '" + name + "'");
    return static_cast<std::size_t>(it - names.begin());
  };
  for (std::size_t i = 0; i < names.size(); ++i)
    if (std::find(names.begin(), names.begin() + static_cast<long>(i), names[i]) != names.begin() + static_cast<long>(i))
      c.fail(index_path(path + "/elements", i), "duplicate element '" + names[i] + "'");
  const std::size_t unit = lookup(c.str(c.need(j, path, "unit"), path + "/unit"), path + "/unit");
  const Json& rows = c.array(c.need(j, path, "table"), path + "/table");
  if (rows.size() != names.size()) c.fail(path + "/table", "expected " + std::to_string(names.size()) + " rows");
  std::vector<std::vector<std::size_t>> table;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto row = c.strings(rows[r], index_path(path + "/table", r));
    if (row.size() != names.size())
      c.fail(index_path(path + "/table", r), "expected " + std::to_string(names.size()) + " entries");
    auto& out_row = table.emplace_back();
    for (std::size_t k = 0; k < row.size(); ++k)
      out_row.push_back(lookup(row[k], index_path(index_path(path + "/table", r), k)));
  }
  std::vector<std::size_t> star;
  if (j.contains("star")) {
    const auto s = c.strings(j["star"], path + "/star");
    if (s.size() != names.size()) c.fail(path + "/star", "expected " + std::to_string(names.size()) + " entries");
    for (std::size_t k = 0; k < s.size(); ++k) star.push_back(lookup(s[k], index_path(path + "/star", k)));
  }
  InverseSemigroup sg = c.at(path, [&] { return InverseSemigroup::validate(names, unit, table, star); });
  Json canon_table = Json::array();
  for (std::size_t r = 0; r < sg.size(); ++r) {
    Json row = Json::array();
    for (std::size_t k = 0; k < sg.size(); ++k) row.push_back(sg.name(sg.mul(r, k)));
    canon_table.push_back(std::move(row));
  }
  Json canon_star = Json::array();
  for (std::size_t k = 0; k < sg.size(); ++k) canon_star.push_back(sg.name(sg.star(k)));
  out = Json{{"elements", names}, {"unit", names[unit]}, {"table", canon_table}, {"star", canon_star}};
  return sg;
}

std::vector<PartialMap> load_maps(const Ctx& c, const Space& space, const InverseSemigroup& sg, const Json& j,
                                  Json& out) {
  const std::string path = "/maps";
  if (!j.is_object()) c.fail(path, "expected an object keyed by element");
  for (const auto& [k, v] : j.items())
    if (std::find(sg.names().begin(), sg.names().end(), k) == sg.names().end()) c.fail(path + "/" + k, "unknown element");
  std::vector<PartialMap> maps;
  out = Json::object();
  for (const auto& name : sg.names()) {
    if (!j.contains(name)) c.fail(path + "/" + name, "missing");
    Json rules;
    maps.push_back(load_map(c, space, j[name], path + "/" + name, rules));
    out[name] = std::move(rules);
  }
  return maps;
}

struct Generators {
  std::vector<std::string> names;
  std::vector<PartialMap> maps;
};

Generators load_generators(const Ctx& c, const Space& space, const Json& j, Json& out) {
  const std::string path = "/generators";
  Generators g;
  out = Json::array();
  for (std::size_t i = 0; i < c.array(j, path).size(); ++i) {
    const std::string p = index_path(path, i);
    c.keys(j[i], p, {"name", "map"});
    const std::string name = c.str(c.need(j[i], p, "name"), p + "/name");
    if (name.empty() || name.find_first_of(" .*()") != std::string::npos)
      c.fail(p + "/name", "generator names must be nonempty and avoid spaces, '.', '*' and parentheses");
    if (std::find(g.names.begin(), g.names.end(), name) != g.names.end()) c.fail(p + "/name", "duplicate generator");
    Json rules;
    g.maps.push_back(load_map(c, space, c.need(j[i], p, "map"), p + "/map", rules));
    g.names.push_back(name);
    out.push_back(Json{{"name", name}, {"map", std::move(rules)}});
  }
  if (g.names.empty()) c.fail(path, "no generators");
  return g;
}

std::map<std::pair<Label, Label>, Region> load_witnesses(const Ctx& c, const Space& space, const InverseSemigroup& sg,
                                                         const Json& j, Json& out) {
  const std::string path = "/witnesses";
  std::map<std::pair<Label, Label>, Region> w;
  out = Json::array();
  for (std::size_t i = 0; i < c.array(j, path).size(); ++i) {
    const std::string p = index_path(path, i);
    c.keys(j[i], p, {"labels", "set"});
    const auto labels = c.strings(c.need(j[i], p, "labels"), p + "/labels");
    if (labels.size() != 2) c.fail(p + "/labels", "expected two element names");
    const Label t = c.at(p + "/labels/0", [&] { return sg.index_of(labels[0]); });
    const Label u = c.at(p + "/labels/1", [&] { return sg.index_of(labels[1]); });
    if (t == u) c.fail(p + "/labels", "D_{t,t} is fixed to dom h_t");
    const std::string text = c.str(c.need(j[i], p, "set"), p + "/set");
    Region r = c.at(p + "/set", [&] { return Region::parse(space, text); });
    if (w.count({t, u}) || w.count({u, t})) c.fail(p + "/labels", "pair listed twice");
    w.emplace(std::pair{t, u}, std::move(r));
    out.push_back(Json{{"labels", labels}, {"set", text}});
  }
  return w;
}

std::vector<std::array<std::string, 2>> load_pairs(const Ctx& c, const Json& j, const std::string& path,
                                                   const std::vector<NamedSection>& sections) {
  std::vector<std::array<std::string, 2>> out;
  for (std::size_t i = 0; i < c.array(j, path).size(); ++i) {
    const auto p = c.strings(j[i], index_path(path, i));
    if (p.size() != 2) c.fail(index_path(path, i), "expected two section names");
    for (std::size_t k = 0; k < 2; ++k)
      if (std::none_of(sections.begin(), sections.end(), [&](const NamedSection& s) { return s.name == p[k]; }))
        c.fail(index_path(index_path(path, i), k), "unknown section '" + p[k] + "'");
    out.push_back({p[0], p[1]});
  }
  return out;
}

Analysis load_analysis(const Ctx& c, const Space& space, const Json& j, const std::vector<NamedSection>& sections,
                       Json& out) {
  const std::string path = "/analysis";
  Analysis a;
  c.keys(j, path, {"bound", "depth", "len", "minimal_depth", "tol", "pure_infiniteness_in", "orbit_points", "products",
                   "ess_equal"});
  if (j.contains("bound")) a.bound = c.count(j["bound"], path + "/bound");
  if (j.contains("depth")) a.depth = c.count(j["depth"], path + "/depth");
  if (j.contains("len")) a.len = c.count(j["len"], path + "/len");
  if (j.contains("minimal_depth")) a.minimal_depth = c.count(j["minimal_depth"], path + "/minimal_depth");
  if (a.bound == 0) c.fail(path + "/bound", "must be at least 1");
  if (j.contains("tol")) {
    if (!j["tol"].is_number() || !(j["tol"].get<double>() > 0)) c.fail(path + "/tol", "expected a positive number");
    a.tol = j["tol"].get<double>();
  }
  if (j.contains("pure_infiniteness_in")) {
    a.pure_infiniteness_in = c.str(j["pure_infiniteness_in"], path + "/pure_infiniteness_in");
    c.at(path + "/pure_infiniteness_in", [&] { return Region::parse(space, a.pure_infiniteness_in); });
  }
  if (j.contains("orbit_points")) {
    a.orbit_points = c.strings(j["orbit_points"], path + "/orbit_points");
    for (std::size_t i = 0; i < a.orbit_points.size(); ++i)
      c.at(index_path(path + "/orbit_points", i), [&] { return parse_point(space, a.orbit_points[i]); });
  }
  if (j.contains("products")) a.products = load_pairs(c, j["products"], path + "/products", sections);
  if (j.contains("ess_equal")) a.ess_equal = load_pairs(c, j["ess_equal"], path + "/ess_equal", sections);
  out = Json{{"bound", a.bound},
             {"depth", a.depth},
             {"len", a.len},
             {"minimal_depth", a.minimal_depth},
             {"tol", a.tol},
             {"pure_infiniteness_in", a.pure_infiniteness_in},
             {"orbit_points", a.orbit_points},
             {"products", a.products},
             {"ess_equal", a.ess_equal}};
  return a;
}

}  // namespace

const Section& Scenario::section(const std::string& n) const {
  for (const auto& s : sections)
    if (s.name == n) return s.value;
  throw ScenarioError("unknown section '" + n + "'");
}

Point parse_point(const Space& space, const std::string& text) {
  Point p = Point::parse(text);
  if (space.is_finite()) {
    if (!p.is_index() || p.index() >= space.size())
      throw ScenarioError("point '" + text + "' is not in " + space.to_string());
  } else {
    if (p.is_index()) throw ScenarioError("point '" + text + "' is not a Cantor point u(v)");
    for (char ch : p.prefix() + p.period())
      if (space.symbol(ch) < 0) throw ScenarioError("point '" + text + "' uses a symbol outside the alphabet");
  }
  return p;
}

Scenario load_json(const Json& j, const std::string& origin) {
  const Ctx c{origin};
  c.keys(j, "", {"name", "description", "space", "regime", "semigroup", "maps", "witnesses", "generators", "cap",
                 "sections", "analysis"});
  Json canon = Json::object();
  const std::string name = c.str(c.need(j, "", "name"), "/name");
  canon["name"] = name;
  if (j.contains("description")) canon["description"] = c.str(j["description"], "/description");

  Json space_out;
  const Space space = load_space(c, c.need(j, "", "space"), space_out);
  canon["space"] = space_out;
  const std::string regime = c.str(c.need(j, "", "regime"), "/regime");
  canon["regime"] = regime;

  auto only = [&](std::initializer_list<const char*> used) {
    for (const char* k : {"semigroup", "maps", "witnesses", "generators", "cap"})
      if (j.contains(k) && std::none_of(used.begin(), used.end(), [&](const char* u) { return std::string(u) == k; }))
        c.fail(std::string("/") + k, "not used by regime " + regime);
  };

  std::optional<GermSystem> gs;
  if (regime == "action" || regime == "witness") {
    if (regime == "action") only({"semigroup", "maps"});
    else only({"semigroup", "maps", "witnesses"});
    Json sg_out, maps_out;
    InverseSemigroup sg = load_semigroup(c, c.need(j, "", "semigroup"), sg_out);
    auto maps = load_maps(c, space, sg, c.need(j, "", "maps"), maps_out);
    canon["semigroup"] = sg_out;
    canon["maps"] = maps_out;
    if (regime == "action") {
      gs = c.at("/maps", [&] { return GermSystem::from_action(std::move(sg), std::move(maps)); });
    } else {
      Json w_out;
      const auto w = load_witnesses(c, space, sg, j.contains("witnesses") ? j["witnesses"] : Json::array(), w_out);
      canon["witnesses"] = w_out;
      gs = c.at("/witnesses", [&] { return GermSystem::with_witnesses(std::move(sg), std::move(maps), w); });
    }
  } else if (regime == "closure" || regime == "pseudogroup") {
    if (regime == "closure") only({"generators", "cap"});
    else only({"generators"});
    Json gen_out;
    Generators g = load_generators(c, space, c.need(j, "", "generators"), gen_out);
    canon["generators"] = gen_out;
    if (regime == "closure") {
      const std::size_t cap = j.contains("cap") ? c.count(j["cap"], "/cap") : 1000;
      canon["cap"] = cap;
      gs = c.at("/generators",
                [&] { return GermSystem::from_closure(generate_closure(g.maps, g.names, cap)); });
    } else {
      if (space.is_finite()) c.fail("/space", "regime pseudogroup needs a Cantor space");
      gs = c.at("/generators", [&] { return GermSystem::pseudogroup(std::move(g.maps), std::move(g.names)); });
    }
  } else {
    c.fail("/regime", "expected \"action\", \"closure\", \"pseudogroup\" or \"witness\"");
  }

  const SectionAlgebra alg(*gs);
  std::vector<NamedSection> sections;
  Json sections_out = Json::array();
  if (j.contains("sections")) {
    const Json& arr = c.array(j["sections"], "/sections");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = index_path("/sections", i);
      c.keys(arr[i], p, {"name", "value"});
      const std::string sname = c.str(c.need(arr[i], p, "name"), p + "/name");
      if (std::any_of(sections.begin(), sections.end(), [&](const NamedSection& s) { return s.name == sname; }))
        c.fail(p + "/name", "duplicate section");
      const std::string text = c.str(c.need(arr[i], p, "value"), p + "/value");
      Section value = c.at(p + "/value", [&] { return alg.parse(text); });
      sections.push_back({sname, text, std::move(value)});
      sections_out.push_back(Json{{"name", sname}, {"value", text}});
    }
  }
  canon["sections"] = sections_out;

  Json analysis_out;
  const Analysis analysis =
      load_analysis(c, space, j.contains("analysis") ? j["analysis"] : Json::object(), sections, analysis_out);
  canon["analysis"] = analysis_out;

  return Scenario{name, std::move(canon), std::move(*gs), std::move(sections), analysis};
}

Scenario load_text(std::string_view text, const std::string& origin) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string what = e.what();
    // drop nlohmann's "[json.exception...] parse error at line L, column C: "
    const auto column = what.find("column ");
    const auto colon = what.find(": ", column == std::string::npos ? 0 : column);
    if (colon != std::string::npos) what = what.substr(colon + 2);
    throw ScenarioError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
  }
  return load_json(j, origin);
}

Scenario load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path.string() + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_text(buf.str(), path.string());
}

std::string serialize(const Scenario& s) { return s.canonical.dump(2) + "\n"; }

}  // namespace etale::workbench
