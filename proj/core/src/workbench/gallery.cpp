#include "etale/workbench/gallery.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "etale/error.hpp"
#include "etale/random.hpp"

namespace etale::workbench {

namespace {

Json section(const std::string& name, const std::string& value) { return Json{{"name", name}, {"value", value}}; }

Json pairs(std::initializer_list<std::array<const char*, 2>> ps) {
  Json out = Json::array();
  for (const auto& [l, r] : ps) out.push_back(Json::array({l, r}));
  return out;
}

Json dbl() {
  return Json::parse(R"json({
    "name": "dbl",
    "description": "two copies of every point of {0,1}^ω, glued everywhere except at (0)",
    "space": {"kind": "cantor", "alphabet": "01"},
    "regime": "witness",
    "semigroup": {"elements": ["1", "g"], "unit": "1", "table": [["1", "g"], ["g", "1"]]},
    "maps": {"1": ["id"], "g": ["id"]},
    "witnesses": [{"labels": ["g", "1"], "set": "0*1"}],
    "sections": [
      {"name": "delta_g", "value": "(g)"},
      {"name": "delta_1", "value": "(1)"},
      {"name": "f", "value": "(g) - (1)"}
    ],
    "analysis": {
      "orbit_points": ["(0)", "0(1)"],
      "products": [["f", "f"], ["delta_g", "delta_g"]],
      "ess_equal": [["delta_g", "delta_1"]]
    }
  })json");
}

Json cuntz2() {
  return Json::parse(R"json({
    "name": "cuntz2",
    "description": "the pseudogroup of the two prefix maps x ↦ 0x and x ↦ 1x",
    "space": {"kind": "cantor", "alphabet": "01"},
    "regime": "pseudogroup",
    "generators": [{"name": "v0", "map": ["ε -> 0"]}, {"name": "v1", "map": ["ε -> 1"]}],
    "sections": [
      {"name": "s0", "value": "(v0)"},
      {"name": "one", "value": "(1)"},
      {"name": "projections", "value": "(v0.v0*) + (v1.v1*)"},
      {"name": "flip", "value": "(v0.v1*) + (v1.v0*)"}
    ],
    "analysis": {
      "products": [["flip", "flip"], ["s0", "s0"]],
      "ess_equal": [["projections", "one"]]
    }
  })json");
}

Json z2_point() {
  return Json::parse(R"json({
    "name": "z2_point",
    "description": "the group of order two acting trivially on one point",
    "space": {"kind": "finite", "points": 1},
    "regime": "action",
    "semigroup": {"elements": ["1", "g"], "unit": "1", "table": [["1", "g"], ["g", "1"]]},
    "maps": {"1": ["0 -> 0"], "g": ["0 -> 0"]},
    "sections": [
      {"name": "delta_1", "value": "(1)"},
      {"name": "delta_g", "value": "(g)"},
      {"name": "f", "value": "(1) - (g)"}
    ],
    "analysis": {"products": [["f", "f"]], "ess_equal": [["delta_g", "delta_1"]]}
  })json");
}

// The symmetric inverse monoid on two points with its full multiplication table.
Json i2() {
  const std::vector<std::string> names{"1", "s", "e0", "e1", "a", "b", "0"};
  const std::vector<std::vector<long>> images{{0, 1}, {1, 0}, {0, -1}, {-1, 1}, {1, -1}, {-1, 0}, {-1, -1}};
  auto index_of = [&](const std::vector<long>& img) {
    for (std::size_t k = 0; k < images.size(); ++k)
      if (images[k] == img) return k;
    throw InvariantViolation("I_2 table is not closed");
  };
  Json table = Json::array(), maps = Json::object();
  for (std::size_t t = 0; t < names.size(); ++t) {
    Json row = Json::array();
    for (std::size_t u = 0; u < names.size(); ++u) {
      std::vector<long> img(2, -1);
      for (std::size_t x = 0; x < 2; ++x)
        if (images[u][x] >= 0) img[x] = images[t][static_cast<std::size_t>(images[u][x])];
      row.push_back(names[index_of(img)]);
    }
    table.push_back(row);
    Json rules = Json::array();
    for (std::size_t x = 0; x < 2; ++x)
      if (images[t][x] >= 0) rules.push_back(std::to_string(x) + " -> " + std::to_string(images[t][x]));
    maps[names[t]] = rules;
  }
  return Json{{"name", "i2"},
              {"description", "the symmetric inverse monoid on two points, given by its table"},
              {"space", {{"kind", "finite"}, {"points", 2}}},
              {"regime", "action"},
              {"semigroup", Json{{"elements", names}, {"unit", "1"}, {"table", table}}},
              {"maps", maps},
              {"sections", Json::array({section("swap", "(s)"), section("corner", "(a) + (b)"), section("f", "(s) - (1)")})},
              {"analysis", {{"products", pairs({{"swap", "swap"}, {"corner", "corner"}})}, {"ess_equal", pairs({{"swap", "f"}})}}}};
}

Json pair(std::size_t n) {
  auto rules = [&](auto image) {
    Json r = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
      const long y = image(i);
      if (y >= 0) r.push_back(std::to_string(i) + " -> " + std::to_string(y));
    }
    return r;
  };
  const Json transposition = rules([](std::size_t i) { return i < 2 ? static_cast<long>(1 - i) : static_cast<long>(i); });
  const Json cycle = rules([n](std::size_t i) { return static_cast<long>((i + 1) % n); });
  const Json corner = rules([](std::size_t i) { return i == 0 ? -1L : static_cast<long>(i); });
  return Json{{"name", "pair" + std::to_string(n)},
              {"description", "the symmetric inverse monoid on " + std::to_string(n) +
                                  " points, generated by a transposition, a cycle and a partial identity"},
              {"space", {{"kind", "finite"}, {"points", n}}},
              {"regime", "closure"},
              {"generators", Json::array({Json{{"name", "s"}, {"map", transposition}}, Json{{"name", "c"}, {"map", cycle}},
                                          Json{{"name", "p"}, {"map", corner}}})},
              {"sections", Json::array({section("swap", "(s)"), section("corner", "(p)"), section("f", "(s) - (1)")})},
              {"analysis", {{"products", pairs({{"swap", "swap"}, {"f", "corner"}})}, {"ess_equal", pairs({{"swap", "f"}})}}}};
}

}  // namespace

std::vector<std::string> gallery_names() {
  return {"dbl", "cuntz2", "z2_point", "i2", "pair2", "pair3", "pair4", "random-1", "random-2", "random-3"};
}

Json random_scenario(std::uint64_t seed, std::size_t points) {
  random::Rng rng(seed);
  const Space space = Space::finite(points);
  Json gens = Json::array();
  for (const char* name : {"a", "b"})
    gens.push_back(Json{{"name", name}, {"map", random::finite_map(rng, space).to_rules()}});
  Json j{{"name", "random-" + std::to_string(seed)},
         {"description", "closure of two random partial injections, seed " + std::to_string(seed)},
         {"space", {{"kind", "finite"}, {"points", points}}},
         {"regime", "closure"},
         {"generators", gens}};
  // Sections use whatever labels the closure produced.
  const Scenario bare = load_json(j, "random-" + std::to_string(seed));
  const GermSystem& gs = bare.system;
  Json sections = Json::array();
  sections.push_back(section("one", "(1)"));
  if (gs.label_count() > 1) {
    const std::string t = gs.name(1);
    sections.push_back(section("t", "(" + t + ")"));
    sections.push_back(section("f", "(" + t + ") - (1)"));
  }
  if (gs.label_count() > 2) sections.push_back(section("u", "1/2 * (" + gs.name(2) + ")"));
  j["sections"] = sections;
  Json products = Json::array();
  if (gs.label_count() > 2) products.push_back(Json::array({"t", "u"}));
  j["analysis"] = Json{{"products", products}};
  return j;
}

Json gallery_scenario(const std::string& name) {
  if (name == "dbl") return dbl();
  if (name == "cuntz2") return cuntz2();
  if (name == "z2_point") return z2_point();
  if (name == "i2") return i2();
  if (name == "pair2") return pair(2);
  if (name == "pair3") return pair(3);
  if (name == "pair4") return pair(4);
  if (name.rfind("random-", 0) == 0) {
    const std::string digits = name.substr(7);
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos && digits.size() < 10) {
      const auto seed = std::stoull(digits);
      return random_scenario(seed, 3 + seed % 2);
    }
  }
  throw UsageError("unknown gallery scenario '" + name + "'");
}

FixtureCheck check_fixture(const std::string& name, const std::filesystem::path& dir, bool regen) {
  const Scenario s = load_json(gallery_scenario(name), "gallery:" + name);
  FixtureCheck out;
  out.output = render(run_all(s), true);
  const auto path = dir / (name + ".json");
  if (regen) {
    std::filesystem::create_directories(dir);
    std::ofstream(path, std::ios::binary) << out.output;
    out.matches = out.written = true;
    return out;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    out.diff = "no fixture at " + path.string();
    return out;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string expected = buf.str();
  out.matches = expected == out.output;
  if (!out.matches) {
    std::istringstream a(expected), b(out.output);
    std::string la, lb;
    for (std::size_t line = 1;; ++line) {
      const bool ga = static_cast<bool>(std::getline(a, la));
      const bool gb = static_cast<bool>(std::getline(b, lb));
      if (!ga && !gb) break;
      if (!ga || !gb || la != lb) {
        out.diff = path.string() + ":" + std::to_string(line) + ": expected '" + (ga ? la : "<eof>") + "', got '" +
                   (gb ? lb : "<eof>") + "'";
        break;
      }
    }
  }
  return out;
}

}  // namespace etale::workbench
