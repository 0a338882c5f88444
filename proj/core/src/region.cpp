#include "etale/region.hpp"

#include <algorithm>
#include <charconv>

#include "etale/error.hpp"
#include "etale/regex.hpp"

namespace etale {

using detail::BoolOp;
using detail::Dfa;

namespace {

constexpr std::string_view kEmptyGlyph = "\xE2\x88\x85";  // ∅

std::string trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return std::string(s);
}

std::string join_points(const std::vector<Point>& pts) {
  std::string out = "{";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ", ";
    out += pts[i].to_string();
  }
  return out + "}";
}

std::string join_cylinders(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += " \xE2\x88\xAA ";  // ∪
    out += "[" + words[i] + "]";
  }
  return out;
}

}  // namespace

Region Region::empty(const Space& space) {
  Region r(space);
  if (space.is_finite()) r.bits_.resize(space.size());
  else r.dfa_ = detail::empty_dfa(space.arity());
  return r;
}

Region Region::full(const Space& space) {
  Region r(space);
  if (space.is_finite()) {
    r.bits_.resize(space.size());
    r.bits_.set();
  } else {
    r.dfa_ = detail::full_dfa(space.arity());
  }
  return r;
}

Region Region::cylinder(const Space& space, std::string_view word) {
  if (space.is_finite()) throw UsageError("cylinders exist only on Cantor space");
  Region r(space);
  r.dfa_ = detail::cylinder_dfa(space.arity(), space.encode(word));
  return r;
}

Region Region::singleton(const Space& space, const Point& x) {
  Region r(space);
  if (space.is_finite()) {
    if (!x.is_index() || x.index() >= space.size())
      throw UsageError("point " + x.to_string() + " not in " + space.to_string());
    r.bits_.resize(space.size());
    r.bits_.set(x.index());
  } else {
    if (x.is_index()) throw UsageError("index point on Cantor space");
    r.dfa_ = detail::lasso_dfa(space.arity(), r.to_lasso(x));
  }
  return r;
}

Region Region::subset(const Space& space, const std::vector<std::size_t>& points) {
  if (!space.is_finite()) throw UsageError("subset() needs a finite space");
  Region r(space);
  r.bits_.resize(space.size());
  for (std::size_t i : points) {
    if (i >= space.size()) throw UsageError("point " + std::to_string(i) + " not in " + space.to_string());
    r.bits_.set(i);
  }
  return r;
}

Region Region::from_bits(const Space& space, boost::dynamic_bitset<> bits) {
  if (!space.is_finite() || bits.size() != space.size()) throw UsageError("bitset does not match space");
  Region r(space);
  r.bits_ = std::move(bits);
  return r;
}

Region Region::from_dfa(const Space& space, Dfa dfa) {
  if (space.is_finite() || dfa.arity != space.arity()) throw UsageError("automaton does not match space");
  Region r(space);
  r.dfa_ = detail::canonicalize(std::move(dfa));
  return r;
}

Region Region::parse(const Space& space, std::string_view text) {
  const std::string t = trim(text);
  if (t == kEmptyGlyph) return empty(space);
  if (t == "X" && space.symbol('X') < 0) return full(space);
  if (space.is_finite()) {
    if (t.size() < 2 || t.front() != '{' || t.back() != '}')
      throw ScenarioError("finite subset '" + t + "' must look like {0,2}");
    std::vector<std::size_t> pts;
    std::string_view body(t);
    body = body.substr(1, body.size() - 2);
    while (!body.empty()) {
      const auto comma = body.find(',');
      const std::string item = trim(body.substr(0, comma));
      if (!item.empty()) {
        std::size_t i = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), i);
        if (ec != std::errc() || ptr != item.data() + item.size())
          throw ScenarioError("bad point '" + item + "' in subset " + t);
        if (i >= space.size()) throw ScenarioError("point " + item + " outside " + space.to_string());
        pts.push_back(i);
      }
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    return subset(space, pts);
  }
  Region r(space);
  r.dfa_ = compile_open_regex(space, t);
  return r;
}

detail::Lasso Region::to_lasso(const Point& x) const {
  if (x.is_index()) throw UsageError("index point used on Cantor space");
  return {space_.encode(x.prefix()), space_.encode(x.period())};
}

Point Region::from_lasso(const detail::Lasso& l) const {
  return Point::periodic(space_.decode(l.prefix), space_.decode(l.period));
}

bool Region::is_empty() const {
  if (space_.is_finite()) return bits_.none();
  return dfa_ == detail::empty_dfa(space_.arity());
}

bool Region::is_full() const {
  if (space_.is_finite()) return bits_.all();
  return dfa_ == detail::full_dfa(space_.arity());
}

bool Region::contains(const Point& x) const {
  if (space_.is_finite()) {
    if (!x.is_index() || x.index() >= space_.size())
      throw UsageError("point " + x.to_string() + " not in " + space_.to_string());
    return bits_.test(x.index());
  }
  return detail::accepts(dfa_, to_lasso(x));
}

namespace {
Region combine(const Region& a, const Region& b, BoolOp op, std::string_view what) {
  require_same_space(a.space(), b.space(), what);
  if (a.space().is_finite()) {
    const auto& x = *a.bits();
    const auto& y = *b.bits();
    switch (op) {
      case BoolOp::Union: return Region::from_bits(a.space(), x | y);
      case BoolOp::Intersect: return Region::from_bits(a.space(), x & y);
      case BoolOp::Minus: return Region::from_bits(a.space(), x - y);
      case BoolOp::Xor: return Region::from_bits(a.space(), x ^ y);
    }
  }
  return Region::from_dfa(a.space(), detail::combine(*a.dfa(), *b.dfa(), op));
}
}  // namespace

Region Region::operator|(const Region& o) const { return combine(*this, o, BoolOp::Union, "union"); }
Region Region::operator&(const Region& o) const {
  return combine(*this, o, BoolOp::Intersect, "intersection");
}
Region Region::operator-(const Region& o) const { return combine(*this, o, BoolOp::Minus, "difference"); }
Region Region::operator^(const Region& o) const {
  return combine(*this, o, BoolOp::Xor, "symmetric difference");
}

Region Region::complement() const {
  if (space_.is_finite()) return from_bits(space_, ~bits_);
  Region r(space_);
  r.dfa_ = detail::complement(dfa_);
  return r;
}

Region Region::closure() const {
  if (space_.is_finite()) return *this;
  Region r(space_);
  r.dfa_ = detail::closure(dfa_);
  return r;
}

Region Region::interior() const {
  if (space_.is_finite()) return *this;
  Region r(space_);
  r.dfa_ = detail::interior(dfa_);
  return r;
}

bool Region::has_empty_interior() const {
  if (space_.is_finite()) return bits_.none();
  const auto univ = detail::universal_states(dfa_);
  return std::none_of(univ.begin(), univ.end(), [](bool b) { return b; });
}

bool Region::is_nowhere_dense() const {
  if (space_.is_finite()) return bits_.none();
  return detail::is_empty(detail::interior(detail::closure(dfa_)));
}

bool Region::is_meagre() const {
  if (space_.is_finite()) return bits_.none();
  return !detail::has_accepting_bottom_scc(dfa_);
}

bool Region::is_open() const { return space_.is_finite() || interior() == *this; }
bool Region::is_closed() const { return space_.is_finite() || closure() == *this; }
bool Region::is_clopen() const { return is_open() && is_closed(); }

bool Region::subset_of(const Region& o) const { return (*this - o).is_empty(); }
bool Region::intersects(const Region& o) const { return !(*this & o).is_empty(); }

std::optional<Point> Region::sample() const {
  if (space_.is_finite()) {
    const auto i = bits_.find_first();
    if (i == boost::dynamic_bitset<>::npos) return std::nullopt;
    return Point::index(i);
  }
  const auto l = detail::sample(dfa_);
  if (!l) return std::nullopt;
  return from_lasso(*l);
}

std::optional<std::vector<std::string>> Region::cylinders() const {
  if (space_.is_finite()) return std::nullopt;
  auto words = detail::clopen_cover(dfa_);
  if (!words) return std::nullopt;
  for (auto& w : *words) w = space_.decode(w);
  return words;
}

std::optional<std::vector<Point>> Region::points(std::size_t limit) const {
  std::vector<Point> out;
  if (space_.is_finite()) {
    for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i))
      out.push_back(Point::index(i));
    return out;
  }
  const auto lassos = detail::finite_points(dfa_, limit);
  if (!lassos) return std::nullopt;
  for (const auto& l : *lassos) out.push_back(from_lasso(l));
  std::sort(out.begin(), out.end());
  return out;
}

std::string Region::describe() const {
  if (is_empty()) return std::string(kEmptyGlyph);
  if (is_full()) return "X";
  if (space_.is_finite()) {
    std::string out = "{";
    bool first = true;
    for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i)) {
      if (!first) out += ",";
      out += std::to_string(i);
      first = false;
    }
    return out + "}";
  }
  if (auto words = cylinders()) return join_cylinders(*words);
  if (auto pts = points()) return join_points(*pts);
  // regular-open core plus finitely many corrections
  const Region core = closure().interior();
  if (const auto words = core.cylinders()) {
    const auto extra = (*this - core).points();
    const auto missing = (core - *this).points();
    if (extra && missing) {
      std::string out = core.is_full() ? "X" : join_cylinders(*words);
      if (words->size() > 1 && !core.is_full()) out = "(" + out + ")";
      if (!missing->empty()) out += " \xE2\x88\x96 " + join_points(*missing);  // ∖
      if (!extra->empty()) out += " \xE2\x88\xAA " + join_points(*extra);
      return out;
    }
  }
  return "regular set <" + std::to_string(dfa_.size()) + " states, e.g. " +
         sample()->to_string() + ">";
}

bool operator==(const Region& a, const Region& b) {
  if (!(a.space_ == b.space_)) return false;
  return a.space_.is_finite() ? a.bits_ == b.bits_ : a.dfa_ == b.dfa_;
}

bool operator<(const Region& a, const Region& b) {
  if (a.space_.is_finite() != b.space_.is_finite()) return a.space_.is_finite();
  return a.space_.is_finite() ? a.bits_ < b.bits_ : a.dfa_ < b.dfa_;
}

OpenSet OpenSet::from_region(Region r) {
  if (!r.is_open()) throw UsageError("region " + r.describe() + " is not open");
  return OpenSet(std::move(r));
}

std::vector<Atom> atoms(const Region& universe, const std::vector<Region>& sets) {
  std::vector<Atom> cells;
  if (universe.is_empty()) return cells;
  cells.push_back({universe, {}, *universe.sample()});
  for (const Region& s : sets) {
    require_same_space(universe.space(), s.space(), "atoms");
    std::vector<Atom> refined;
    refined.reserve(cells.size() * 2);
    for (Atom& cell : cells) {
      Region in = cell.set & s;
      if (in.is_empty()) {
        cell.inside.push_back(false);
        refined.push_back(std::move(cell));
        continue;
      }
      Region out = cell.set - s;
      if (out.is_empty()) {
        cell.inside.push_back(true);
        refined.push_back(std::move(cell));
        continue;
      }
      Atom a{std::move(in), cell.inside, Point::index(0)};
      a.inside.push_back(true);
      a.sample = *a.set.sample();
      Atom b{std::move(out), std::move(cell.inside), Point::index(0)};
      b.inside.push_back(false);
      b.sample = *b.set.sample();
      refined.push_back(std::move(a));
      refined.push_back(std::move(b));
    }
    cells = std::move(refined);
  }
  return cells;
}

std::vector<Atom> atoms(const Space& space, const std::vector<Region>& sets) {
  return atoms(Region::full(space), sets);
}

}  // namespace etale
