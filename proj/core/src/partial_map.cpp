#include "etale/partial_map.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "etale/error.hpp"

namespace etale {

namespace {

constexpr std::string_view kEpsilon = "\xCE\xB5";

bool is_prefix(std::string_view p, std::string_view w) {
  return p.size() <= w.size() && w.compare(0, p.size(), p) == 0;
}

std::string trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return std::string(s);
}

std::string word_text(const std::string& w) { return w.empty() ? std::string(kEpsilon) : w; }

// Sorted words are pairwise incomparable iff adjacent ones are.
void require_incomparable(std::vector<std::string> words, const char* what) {
  std::sort(words.begin(), words.end());
  for (std::size_t i = 1; i < words.size(); ++i)
    if (is_prefix(words[i - 1], words[i]))
      throw UsageError(std::string("prefix exchange: overlapping ") + what + " cylinders [" +
                       words[i - 1] + "] and [" + words[i] + "]");
}

Region union_of_cylinders(const Space& space, const std::vector<std::string>& words) {
  std::vector<std::pair<std::string, detail::State>> entries;
  entries.reserve(words.size());
  for (const auto& w : words) entries.emplace_back(space.encode(w), 0);
  return Region::from_dfa(space, detail::prefixed_union(entries, detail::full_dfa(space.arity())));
}

long parse_index(const std::string& s, const Space& space) {
  long i = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), i);
  if (ec != std::errc() || ptr != s.data() + s.size() || i < 0 ||
      static_cast<std::size_t>(i) >= space.size())
    throw ScenarioError("bad point '" + s + "' for " + space.to_string());
  return i;
}

}  // namespace

PartialMap PartialMap::identity(const Space& space) {
  if (space.is_finite()) {
    std::vector<long> img(space.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = static_cast<long>(i);
    return finite(space, std::move(img));
  }
  return prefix_exchange(space, {Rule{"", ""}});
}

PartialMap PartialMap::empty(const Space& space) {
  if (space.is_finite()) return finite(space, std::vector<long>(space.size(), -1));
  return prefix_exchange(space, {});
}

PartialMap PartialMap::identity_on(const Region& u) {
  if (u.space().is_finite()) {
    std::vector<long> img(u.space().size(), -1);
    for (std::size_t i = 0; i < img.size(); ++i)
      if (u.bits()->test(i)) img[i] = static_cast<long>(i);
    return finite(u.space(), std::move(img));
  }
  const auto cyl = u.cylinders();
  if (!cyl) throw UsageError("restriction to non-clopen set " + u.describe());
  std::vector<Rule> rules;
  for (const auto& w : *cyl) rules.push_back({w, w});
  return prefix_exchange(u.space(), std::move(rules));
}

PartialMap PartialMap::finite(const Space& space, std::vector<long> image) {
  if (!space.is_finite() || image.size() != space.size())
    throw UsageError("finite partial map does not match " + space.to_string());
  std::vector<bool> hit(image.size(), false);
  for (long v : image) {
    if (v < 0) continue;
    if (static_cast<std::size_t>(v) >= image.size()) throw UsageError("image point outside space");
    if (hit[v]) throw UsageError("partial map is not injective at " + std::to_string(v));
    hit[v] = true;
  }
  PartialMap m(space);
  m.image_ = std::move(image);
  return m;
}

PartialMap PartialMap::prefix_exchange(const Space& space, std::vector<Rule> rules) {
  if (!space.is_cantor()) throw UsageError("prefix exchanges need a Cantor space");
  for (const auto& r : rules) {
    (void)space.encode(r.from);
    (void)space.encode(r.to);
  }
  PartialMap m(space);
  m.rules_ = std::move(rules);
  std::vector<std::string> froms, tos;
  for (const auto& r : m.rules_) {
    froms.push_back(r.from);
    tos.push_back(r.to);
  }
  require_incomparable(froms, "domain");
  require_incomparable(tos, "range");
  m.canonicalize();
  return m;
}

void PartialMap::canonicalize() {
  if (space_.is_finite()) return;
  std::map<std::string, std::string> by_from;
  for (auto& r : rules_) by_from.emplace(r.from, r.to);
  const std::string& sigma = space_.alphabet();
  bool merged = true;
  while (merged) {
    merged = false;
    for (const auto& [from, to] : by_from) {
      if (from.empty() || to.empty() || from.back() != to.back()) continue;
      const std::string pf = from.substr(0, from.size() - 1);
      const std::string pt = to.substr(0, to.size() - 1);
      bool complete = true;
      for (char s : sigma) {
        const auto it = by_from.find(pf + s);
        if (it == by_from.end() || it->second != pt + s) {
          complete = false;
          break;
        }
      }
      if (!complete) continue;
      for (char s : sigma) by_from.erase(pf + s);
      by_from.emplace(pf, pt);
      merged = true;
      break;
    }
  }
  rules_.clear();
  for (auto& [from, to] : by_from) rules_.push_back({from, to});
}

PartialMap PartialMap::parse(const Space& space, const std::vector<std::string>& lines) {
  if (space.is_finite()) {
    std::vector<long> img(space.size(), -1);
    auto set = [&](long a, long b) {
      if (img[a] >= 0 && img[a] != b)
        throw ScenarioError("point " + std::to_string(a) + " mapped twice");
      img[a] = b;
    };
    for (const auto& raw : lines) {
      const std::string line = trim(raw);
      if (line == "id") {
        for (std::size_t i = 0; i < img.size(); ++i) set(static_cast<long>(i), static_cast<long>(i));
      } else if (line.rfind("id on", 0) == 0) {
        const Region u = Region::parse(space, line.substr(5));
        for (std::size_t i = 0; i < img.size(); ++i)
          if (u.bits()->test(i)) set(static_cast<long>(i), static_cast<long>(i));
      } else {
        const auto arrow = line.find("->");
        if (arrow == std::string::npos) throw ScenarioError("rule '" + line + "' needs '->'");
        set(parse_index(trim(line.substr(0, arrow)), space), parse_index(trim(line.substr(arrow + 2)), space));
      }
    }
    try {
      return finite(space, std::move(img));
    } catch (const UsageError& e) {
      throw ScenarioError(e.what());
    }
  }
  std::vector<Rule> rules;
  for (const auto& raw : lines) {
    const std::string line = trim(raw);
    if (line == "id") {
      rules.push_back({"", ""});
    } else if (line.rfind("id on", 0) == 0) {
      const Region u = Region::parse(space, line.substr(5));
      const auto cyl = u.cylinders();
      if (!cyl) throw ScenarioError("'" + line + "': set is not clopen");
      for (const auto& w : *cyl) rules.push_back({w, w});
    } else {
      const auto arrow = line.find("->");
      if (arrow == std::string::npos) throw ScenarioError("rule '" + line + "' needs '->'");
      auto word = [](std::string w) { return w == kEpsilon ? std::string() : w; };
      rules.push_back({word(trim(line.substr(0, arrow))), word(trim(line.substr(arrow + 2)))});
    }
  }
  try {
    return prefix_exchange(space, std::move(rules));
  } catch (const UsageError& e) {
    throw ScenarioError(e.what());
  }
}

Region PartialMap::domain() const {
  if (space_.is_finite()) {
    boost::dynamic_bitset<> b(space_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) b[i] = image_[i] >= 0;
    return Region::from_bits(space_, std::move(b));
  }
  std::vector<std::string> words;
  for (const auto& r : rules_) words.push_back(r.from);
  return union_of_cylinders(space_, words);
}

Region PartialMap::range() const {
  if (space_.is_finite()) {
    boost::dynamic_bitset<> b(space_.size());
    for (long v : image_)
      if (v >= 0) b.set(static_cast<std::size_t>(v));
    return Region::from_bits(space_, std::move(b));
  }
  std::vector<std::string> words;
  for (const auto& r : rules_) words.push_back(r.to);
  return union_of_cylinders(space_, words);
}

bool PartialMap::is_identity() const { return *this == identity(space_); }

bool PartialMap::is_empty() const {
  if (space_.is_finite())
    return std::all_of(image_.begin(), image_.end(), [](long v) { return v < 0; });
  return rules_.empty();
}

bool PartialMap::defined_at(const Point& x) const {
  if (space_.is_finite()) return x.is_index() && x.index() < image_.size() && image_[x.index()] >= 0;
  for (const auto& r : rules_)
    if (x.head(r.from.size()) == r.from) return true;
  return false;
}

Point PartialMap::apply(const Point& x) const {
  if (space_.is_finite()) {
    if (!defined_at(x)) throw UsageError("point " + x.to_string() + " outside the domain of " + to_string());
    return Point::index(static_cast<std::size_t>(image_[x.index()]));
  }
  if (x.is_index()) throw UsageError("index point on Cantor space");
  for (const auto& r : rules_)
    if (x.head(r.from.size()) == r.from) return x.drop(r.from.size()).prepend(r.to);
  throw UsageError("point " + x.to_string() + " outside the domain of " + to_string());
}

std::vector<std::string> PartialMap::to_rules() const {
  std::vector<std::string> out;
  if (space_.is_finite()) {
    for (std::size_t i = 0; i < image_.size(); ++i)
      if (image_[i] >= 0) out.push_back(std::to_string(i) + " -> " + std::to_string(image_[i]));
    return out;
  }
  for (const auto& r : rules_) out.push_back(word_text(r.from) + " -> " + word_text(r.to));
  return out;
}

std::string PartialMap::to_string() const {
  std::string out = "{";
  const auto rules = to_rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (i) out += ", ";
    out += rules[i];
  }
  return out + "}";
}

Rule reduced_rule(Rule r) {
  while (!r.from.empty() && !r.to.empty() && r.from.back() == r.to.back()) {
    r.from.pop_back();
    r.to.pop_back();
  }
  return r;
}

PartialMap compose(const PartialMap& f, const PartialMap& g) {
  require_same_space(f.space(), g.space(), "compose");
  const Space& space = f.space();
  if (space.is_finite()) {
    std::vector<long> img(space.size(), -1);
    for (std::size_t i = 0; i < img.size(); ++i) {
      const long mid = g.image()[i];
      if (mid >= 0) img[i] = f.image()[static_cast<std::size_t>(mid)];
    }
    return PartialMap::finite(space, std::move(img));
  }
  std::vector<Rule> rules;
  for (const auto& [a, b] : g.rules())
    for (const auto& [c, d] : f.rules()) {
      if (is_prefix(c, b)) rules.push_back({a, d + b.substr(c.size())});
      else if (is_prefix(b, c)) rules.push_back({a + c.substr(b.size()), d});
    }
  return PartialMap::prefix_exchange(space, std::move(rules));
}

PartialMap invert(const PartialMap& f) {
  const Space& space = f.space();
  if (space.is_finite()) {
    std::vector<long> img(space.size(), -1);
    for (std::size_t i = 0; i < img.size(); ++i)
      if (f.image()[i] >= 0) img[static_cast<std::size_t>(f.image()[i])] = static_cast<long>(i);
    return PartialMap::finite(space, std::move(img));
  }
  std::vector<Rule> rules;
  for (const auto& r : f.rules()) rules.push_back({r.to, r.from});
  return PartialMap::prefix_exchange(space, std::move(rules));
}

PartialMap restrict(const PartialMap& f, const Region& u) {
  require_same_space(f.space(), u.space(), "restrict");
  return compose(f, PartialMap::identity_on(u));
}

Region preimage(const PartialMap& f, const Region& u) {
  require_same_space(f.space(), u.space(), "preimage");
  const Space& space = f.space();
  if (space.is_finite()) {
    boost::dynamic_bitset<> b(space.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
      const long v = f.image()[i];
      b[i] = v >= 0 && u.bits()->test(static_cast<std::size_t>(v));
    }
    return Region::from_bits(space, std::move(b));
  }
  const detail::Dfa& target = *u.dfa();
  std::vector<std::pair<std::string, detail::State>> entries;
  for (const auto& r : f.rules())
    entries.emplace_back(space.encode(r.from), target.run(0, space.encode(r.to)));
  return Region::from_dfa(space, detail::prefixed_union(entries, target));
}

Region image(const PartialMap& f, const Region& u) { return preimage(invert(f), u); }

Region FixRegion::to_region() const {
  Region r = clopen_part;
  for (const auto& x : isolated_points) r = r | Region::singleton(r.space(), x);
  return r;
}

FixRegion fix_region(const PartialMap& f) {
  const Space& space = f.space();
  if (space.is_finite()) {
    boost::dynamic_bitset<> b(space.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = f.image()[i] == static_cast<long>(i);
    return {Region::from_bits(space, std::move(b)), {}};
  }
  std::vector<std::string> clopen;
  std::vector<Point> points;
  for (const auto& [a, b] : f.rules()) {
    if (a == b) clopen.push_back(a);
    else if (is_prefix(a, b)) points.push_back(Point::periodic(a, b.substr(a.size())));
    else if (is_prefix(b, a)) points.push_back(Point::periodic(b, a.substr(b.size())));
  }
  std::sort(points.begin(), points.end());
  return {union_of_cylinders(space, clopen), std::move(points)};
}

namespace {

// For each cylinder [p] on which both maps are prefix replacements
// p·w ↦ β·w and p·w ↦ δ·w, calls visit(p, β, δ).
template <class Visit>
void common_cells(const PartialMap& f, const PartialMap& g, Visit visit) {
  for (const auto& [a, b] : f.rules())
    for (const auto& [c, d] : g.rules()) {
      if (is_prefix(a, c)) visit(c, b + c.substr(a.size()), d);
      else if (is_prefix(c, a)) visit(a, b, d + a.substr(c.size()));
    }
}

}  // namespace

Region local_agreement(const PartialMap& f, const PartialMap& g) {
  require_same_space(f.space(), g.space(), "local_agreement");
  const Space& space = f.space();
  if (space.is_finite()) {
    boost::dynamic_bitset<> bits(space.size());
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = f.image()[i] >= 0 && f.image()[i] == g.image()[i];
    return Region::from_bits(space, std::move(bits));
  }
  std::vector<std::string> cells;
  common_cells(f, g, [&](const std::string& p, const std::string& beta, const std::string& delta) {
    if (beta == delta) cells.push_back(p);
  });
  return union_of_cylinders(space, cells);
}

Region pointwise_agreement(const PartialMap& f, const PartialMap& g) {
  Region out = local_agreement(f, g);
  if (f.space().is_finite()) return out;
  common_cells(f, g, [&](const std::string& p, const std::string& beta, const std::string& delta) {
    // β·w = δ·w has the single solution w = c^ω when one word extends the other by c
    if (beta != delta && is_prefix(beta, delta))
      out = out | Region::singleton(f.space(), Point::periodic(p, delta.substr(beta.size())));
    else if (beta != delta && is_prefix(delta, beta))
      out = out | Region::singleton(f.space(), Point::periodic(p, beta.substr(delta.size())));
  });
  return out;
}

}  // namespace etale
