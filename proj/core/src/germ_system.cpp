#include "etale/germ_system.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>

#include "etale/error.hpp"

namespace etale {

namespace {
constexpr Label kNone = static_cast<Label>(-1);

std::pair<Label, Label> ordered(Label t, Label u) { return t < u ? std::pair{t, u} : std::pair{u, t}; }

std::pair<std::string, std::string> germ_key(const std::string& a, const std::string& b) {
  Rule r = reduced_rule({a, b});
  return {std::move(r.from), std::move(r.to)};
}

std::vector<Point> finite_points(const Space& space) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < space.size(); ++i) out.push_back(Point::index(i));
  return out;
}
}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::A: return "A";
    case Regime::B: return "B";
    case Regime::C: return "C";
  }
  return "?";
}

struct GermSystem::State {
  explicit State(const Space& sp, Regime r) : space(sp), regime(r) {}

  Space space;
  Regime regime;
  std::optional<InverseSemigroup> sg;
  mutable std::recursive_mutex mu;

  std::deque<PartialMap> maps;
  std::deque<std::string> names;
  std::deque<Region> domains;
  std::map<std::string, Label> by_map;
  std::map<std::string, Label> by_name;

  // regime B
  std::vector<Label> letters;
  std::vector<std::string> letter_names;
  // labels having a rule with the given germ key, in increasing order
  std::map<std::pair<std::string, std::string>, std::vector<Label>> germ_owners;
  std::map<std::pair<Label, Label>, Label> mul_cache;

  // regime C
  std::map<std::pair<Label, Label>, Region> witnesses;

  std::map<std::pair<Label, Label>, Region> d_cache;
  // finite A/C: classes[x][t] = canonical label of [t, x], or kNone
  std::vector<std::vector<Label>> classes;

  Label add(PartialMap m, std::string name) {
    const Label id = maps.size();
    by_map.emplace(m.to_string(), id);
    by_name.emplace(name, id);
    domains.push_back(m.domain());
    if (regime == Regime::B)
      for (const auto& r : m.rules()) germ_owners[germ_key(r.from, r.to)].push_back(id);
    maps.push_back(std::move(m));
    names.push_back(std::move(name));
    return id;
  }

  Label intern(const PartialMap& m, const std::string& name) {
    std::lock_guard lock(mu);
    const auto it = by_map.find(m.to_string());
    if (it != by_map.end()) return it->second;
    return add(m, by_name.count(name) ? name + "'" + std::to_string(maps.size()) : name);
  }

  Region compute_d(Label t, Label u) {
    if (t == u) return domains[t];
    switch (regime) {
      case Regime::A: {
        Region out = Region::empty(space);
        for (Label v : sg->meet_witnesses(t, u)) out = out | domains[v];
        return out;
      }
      case Regime::B:
        return local_agreement(maps[t], maps[u]);
      case Regime::C: {
        const auto it = witnesses.find(ordered(t, u));
        return it == witnesses.end() ? Region::empty(space) : it->second;
      }
    }
    return Region::empty(space);
  }

  const Region& d(Label t, Label u) {
    std::lock_guard lock(mu);
    const auto key = ordered(t, u);
    auto it = d_cache.find(key);
    if (it == d_cache.end()) it = d_cache.emplace(key, compute_d(key.first, key.second)).first;
    return it->second;
  }

  void build_classes() {
    if (!space.is_finite()) return;
    const std::size_t n = maps.size();
    classes.assign(space.size(), std::vector<Label>(n, kNone));
    for (std::size_t x = 0; x < space.size(); ++x) {
      const Point p = Point::index(x);
      for (Label t = 0; t < n; ++t) {
        if (!domains[t].contains(p)) continue;
        for (Label l = 0; l <= t; ++l)
          if (d(l, t).contains(p)) {
            classes[x][t] = l;
            break;
          }
      }
    }
  }
};

namespace {

void check_action(const InverseSemigroup& s, const std::vector<PartialMap>& maps) {
  if (maps.size() != s.size()) throw AxiomViolation("action", "one map per semigroup element expected");
  const Space& space = maps.front().space();
  for (const auto& m : maps) require_same_space(space, m.space(), "germ system");
  if (!maps[s.unit()].is_identity())
    throw AxiomViolation("unit", "h_" + s.name(s.unit()) + " is not the identity");
  for (std::size_t t = 0; t < s.size(); ++t) {
    if (maps[s.star(t)] != invert(maps[t]))
      throw AxiomViolation("action", "h_" + s.name(s.star(t)) + " is not the inverse of h_" + s.name(t));
    for (std::size_t u = 0; u < s.size(); ++u)
      if (maps[s.mul(t, u)] != compose(maps[t], maps[u]))
        throw AxiomViolation("action", "h_" + s.name(s.mul(t, u)) + " ≠ h_" + s.name(t) + " ∘ h_" + s.name(u));
  }
}

std::shared_ptr<GermSystem::State> finite_state(Regime r, InverseSemigroup s, std::vector<PartialMap> maps) {
  if (maps.empty()) throw AxiomViolation("action", "no labels");
  if (s.unit() != 0) throw AxiomViolation("unit", "the unit must be the first element");
  check_action(s, maps);
  auto st = std::make_shared<GermSystem::State>(maps.front().space(), r);
  for (std::size_t t = 0; t < maps.size(); ++t) st->add(std::move(maps[t]), s.name(t));
  st->sg.emplace(std::move(s));
  return st;
}

}  // namespace

GermSystem GermSystem::from_action(InverseSemigroup s, std::vector<PartialMap> maps) {
  auto st = finite_state(Regime::A, std::move(s), std::move(maps));
  st->build_classes();
  return GermSystem(std::move(st));
}

GermSystem GermSystem::from_closure(ActedSemigroup acted) {
  return from_action(std::move(acted.semigroup), std::move(acted.maps));
}

GermSystem GermSystem::pseudogroup(std::vector<PartialMap> gens, std::vector<std::string> names) {
  if (gens.empty()) throw ScenarioError("a pseudogroup needs at least one generator");
  if (names.size() != gens.size()) throw UsageError("one name per generator expected");
  const Space& space = gens.front().space();
  if (!space.is_cantor()) throw ScenarioError("regime B needs a Cantor space");
  auto st = std::make_shared<State>(space, Regime::B);
  st->add(PartialMap::identity(space), "1");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    require_same_space(space, gens[i].space(), "pseudogroup");
    if (names[i].empty() || names[i] == "1" || names[i].find_first_of(".* ") != std::string::npos)
      throw ScenarioError("bad generator name '" + names[i] + "'");
    st->letter_names.push_back(names[i]);
  }
  for (std::size_t i = 0; i < gens.size(); ++i) st->letters.push_back(st->intern(gens[i], names[i]));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    st->letters.push_back(st->intern(invert(gens[i]), names[i] + "*"));
    st->letter_names.push_back(names[i] + "*");
  }
  return GermSystem(std::move(st));
}

GermSystem GermSystem::with_witnesses(InverseSemigroup s, std::vector<PartialMap> maps,
                                      const std::map<std::pair<Label, Label>, Region>& witnesses) {
  auto st = finite_state(Regime::C, std::move(s), std::move(maps));
  for (const auto& [pair, set] : witnesses) {
    const auto [t, u] = pair;
    if (t >= st->maps.size() || u >= st->maps.size()) throw ScenarioError("witness for an unknown label");
    require_same_space(st->space, set.space(), "witness");
    if (!set.is_open())
      throw AxiomViolation("openness", "D_{" + st->names[t] + "," + st->names[u] + "} is not open");
    if (t == u) {
      if (set != st->domains[t])
        throw AxiomViolation("diagonal", "D_{" + st->names[t] + "," + st->names[t] + "} ≠ dom h_" + st->names[t]);
      continue;
    }
    const auto key = ordered(t, u);
    const auto it = st->witnesses.find(key);
    if (it != st->witnesses.end() && it->second != set)
      throw AxiomViolation("symmetry", "D_{" + st->names[t] + "," + st->names[u] + "} declared twice differently");
    st->witnesses.emplace(key, set);
  }
  GermSystem gs(st);
  const auto failures = validate_system(gs, 0, true);
  if (!failures.empty()) throw AxiomViolation(failures.front().axiom, failures.front().where(gs));
  st->build_classes();
  return gs;
}

const Space& GermSystem::space() const { return s_->space; }
Regime GermSystem::regime() const { return s_->regime; }

std::size_t GermSystem::label_count() const {
  std::lock_guard lock(s_->mu);
  return s_->maps.size();
}

std::vector<Label> GermSystem::labels(std::size_t bound) const {
  std::vector<Label> out;
  if (has_finite_labels()) {
    for (Label t = 0; t < s_->maps.size(); ++t) out.push_back(t);
    return out;
  }
  std::set<Label> seen{0};
  std::vector<Label> frontier{0};
  out.push_back(0);
  for (std::size_t len = 1; len <= bound && !frontier.empty(); ++len) {
    std::vector<Label> next;
    for (Label w : frontier)
      for (std::size_t l = 0; l < s_->letters.size(); ++l) {
        const Label p = mul(w, s_->letters[l]);
        if (seen.insert(p).second) {
          next.push_back(p);
          out.push_back(p);
        }
      }
    frontier = std::move(next);
  }
  return out;
}

std::vector<Label> GermSystem::letters() const { return s_->letters; }

const std::string& GermSystem::name(Label t) const {
  std::lock_guard lock(s_->mu);
  return s_->names.at(t);
}

Label GermSystem::parse_label(const std::string& text) const {
  {
    std::lock_guard lock(s_->mu);
    const auto it = s_->by_name.find(text);
    if (it != s_->by_name.end()) return it->second;
  }
  if (regime() != Regime::B) throw ScenarioError("unknown label '" + text + "'");
  Label out = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t dot = std::min(text.find('.', start), text.size());
    const std::string token = text.substr(start, dot - start);
    const auto it = std::find(s_->letter_names.begin(), s_->letter_names.end(), token);
    if (token != "1") {
      if (it == s_->letter_names.end()) throw ScenarioError("unknown label '" + text + "'");
      out = mul(out, s_->letters[it - s_->letter_names.begin()]);
    }
    start = dot + 1;
  }
  return out;
}

const PartialMap& GermSystem::h(Label t) const {
  std::lock_guard lock(s_->mu);
  return s_->maps.at(t);
}

const Region& GermSystem::domain(Label t) const {
  std::lock_guard lock(s_->mu);
  return s_->domains.at(t);
}

Label GermSystem::mul(Label t, Label u) const {
  if (s_->sg) return s_->sg->mul(t, u);
  if (t == 0) return u;
  if (u == 0) return t;
  std::lock_guard lock(s_->mu);
  const auto it = s_->mul_cache.find({t, u});
  if (it != s_->mul_cache.end()) return it->second;
  const Label p = s_->intern(compose(s_->maps[t], s_->maps[u]), s_->names[t] + kWordJoiner + s_->names[u]);
  s_->mul_cache.emplace(std::pair{t, u}, p);
  return p;
}

Label GermSystem::star(Label t) const {
  if (s_->sg) return s_->sg->star(t);
  std::lock_guard lock(s_->mu);
  std::string nm;
  // the inverse of a word is the reversed word of inverted letters
  const std::string& w = s_->names[t];
  std::size_t end = w.size();
  while (true) {
    const std::size_t dot = w.rfind(kWordJoiner, end == 0 ? 0 : end - 1);
    const std::size_t begin = dot == std::string::npos ? 0 : dot + 1;
    std::string token = w.substr(begin, end - begin);
    token = token == "1" ? token : token.back() == '*' ? token.substr(0, token.size() - 1) : token + "*";
    nm += (nm.empty() ? "" : std::string(1, kWordJoiner)) + token;
    if (dot == std::string::npos) break;
    end = dot;
  }
  return s_->intern(invert(s_->maps[t]), nm);
}

Label GermSystem::intern(const PartialMap& m) const {
  if (has_finite_labels()) {
    std::lock_guard lock(s_->mu);
    const auto it = s_->by_map.find(m.to_string());
    if (it == s_->by_map.end()) throw UsageError("map " + m.to_string() + " is not a label");
    return it->second;
  }
  return s_->intern(m, "h" + std::to_string(label_count()));
}

const Region& GermSystem::D(Label t, Label u) const { return s_->d(t, u); }

bool GermSystem::germ_eq(Label t, Label u, const Point& x) const { return D(t, u).contains(x); }

Label GermSystem::canonical(Label t, const Point& x) const {
  if (!domain(t).contains(x))
    throw UsageError("point " + x.to_string() + " outside the domain of " + name(t));
  if (!s_->classes.empty()) return s_->classes[x.index()][t];
  if (regime() == Regime::B) {
    std::lock_guard lock(s_->mu);
    // rules containing x with equal keys agree on a cylinder around x
    for (const auto& r : s_->maps[t].rules()) {
      if (x.head(r.from.size()) != r.from) continue;
      const auto key = germ_key(r.from, r.to);
      for (Label l : s_->germ_owners.at(key))
        for (const auto& q : s_->maps[l].rules())
          if (x.head(q.from.size()) == q.from && germ_key(q.from, q.to) == key) return l;
    }
  }
  for (Label l = 0; l < t; ++l)
    if (germ_eq(l, t, x)) return l;
  return t;
}

const InverseSemigroup* GermSystem::semigroup() const { return s_->sg ? &*s_->sg : nullptr; }

Arrow make_arrow(const GermSystem& gs, Label t, const Point& x) { return Arrow{gs.canonical(t, x), x}; }

Point range(const GermSystem& gs, const Arrow& a) { return gs.h(a.label).apply(a.source); }

Arrow arrow_mul(const GermSystem& gs, const Arrow& a1, const Arrow& a2) {
  if (range(gs, a2) != a1.source)
    throw UsageError("arrows " + to_string(gs, a1) + " and " + to_string(gs, a2) + " are not composable");
  return make_arrow(gs, gs.mul(a1.label, a2.label), a2.source);
}

Arrow arrow_inv(const GermSystem& gs, const Arrow& a) {
  return make_arrow(gs, gs.star(a.label), range(gs, a));
}

std::string to_string(const GermSystem& gs, const Arrow& a) {
  return "[" + gs.name(a.label) + ", " + a.source.to_string() + "]";
}

std::vector<Arrow> enumerate_arrows(const GermSystem& gs) {
  if (!gs.space().is_finite() || !gs.has_finite_labels())
    throw UsageError("arrow enumeration needs a finite space and a finite label set");
  std::vector<Arrow> out;
  for (const Point& x : finite_points(gs.space()))
    for (Label t : gs.labels(0))
      if (gs.domain(t).contains(x) && gs.canonical(t, x) == t) out.push_back({t, x});
  return out;
}

std::string AxiomFailure::where(const GermSystem& gs) const {
  std::string out = "labels ";
  for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? ", " : "") + gs.name(labels[i]);
  if (witness) out += "; witness point " + witness->to_string();
  return out;
}

std::string AxiomFailure::describe(const GermSystem& gs) const { return axiom + " at " + where(gs); }

namespace {

class AxiomChecker {
 public:
  AxiomChecker(const GermSystem& gs, std::size_t bound, bool stop)
      : gs_(gs), labels_(gs.labels(bound)), stop_(stop) {}

  std::vector<AxiomFailure> run() {
    if (!gs_.h(0).is_identity()) fail("unit", {0}, std::nullopt);
    if (gs_.space().is_finite()) run_pointwise();
    else run_regions();
    return std::move(failures_);
  }

 private:
  bool done() const { return stop_ && !failures_.empty(); }

  void fail(const char* axiom, std::vector<Label> labels, std::optional<Point> witness) {
    failures_.push_back({axiom, std::move(labels), std::move(witness)});
  }

  // `bad` must be empty; otherwise report with a sample point.
  bool expect_empty(const Region& bad, const char* axiom, std::vector<Label> labels) {
    if (bad.is_empty()) return true;
    fail(axiom, std::move(labels), bad.sample());
    return false;
  }

  void run_regions() {
    const auto& L = labels_;
    for (Label t : L) {
      if (done()) return;
      if (gs_.h(gs_.star(t)) != invert(gs_.h(t))) fail("action", {t, gs_.star(t)}, std::nullopt);
      if (gs_.D(t, t) != gs_.domain(t)) expect_empty(gs_.D(t, t) ^ gs_.domain(t), "diagonal", {t});
      for (Label u : L) {
        if (done()) return;
        if (gs_.h(gs_.mul(t, u)) != compose(gs_.h(t), gs_.h(u))) fail("action", {t, u}, std::nullopt);
        const Region& d = gs_.D(t, u);
        expect_empty(d ^ gs_.D(u, t), "symmetry", {t, u});
        if (!expect_empty(d - (gs_.domain(t) & gs_.domain(u)), "domain", {t, u})) continue;
        expect_empty(d - pointwise_agreement(gs_.h(t), gs_.h(u)), "agreement", {t, u});
        expect_empty(image(gs_.h(t), d) - gs_.D(gs_.star(t), gs_.star(u)), "star-compatibility", {t, u});
        if (d.is_empty()) continue;
        for (Label w : L) {
          if (done()) return;
          expect_empty((d & gs_.D(u, w)) - gs_.D(t, w), "transitivity", {t, u, w});
          const Label tw = gs_.mul(t, w), uw = gs_.mul(u, w);
          expect_empty((preimage(gs_.h(w), d) & gs_.domain(tw) & gs_.domain(uw)) - gs_.D(tw, uw),
                       "right-multiplicativity", {t, u, w});
          const Label wt = gs_.mul(w, t), wu = gs_.mul(w, u);
          expect_empty((d & preimage(gs_.h(t), gs_.domain(w))) - gs_.D(wt, wu), "left-multiplicativity",
                       {t, u, w});
        }
      }
    }
  }

  // Finite spaces: work with the relations R_x(t,u) ⟺ x ∈ D_{t,u}.
  void run_pointwise() {
    const auto& L = labels_;
    const std::size_t n = gs_.label_count();
    const std::size_t m = gs_.space().size();
    for (Label t : L)
      for (Label u : L) {
        if (gs_.h(gs_.mul(t, u)) != compose(gs_.h(t), gs_.h(u))) fail("action", {t, u}, std::nullopt);
        if (done()) return;
      }
    for (Label t : L)
      if (gs_.h(gs_.star(t)) != invert(gs_.h(t))) fail("action", {t, gs_.star(t)}, std::nullopt);
    if (done()) return;
    std::vector<std::vector<boost::dynamic_bitset<>>> rel(m, std::vector<boost::dynamic_bitset<>>(n, boost::dynamic_bitset<>(n)));
    for (Label t : L)
      for (Label u : L) {
        const auto& bits = *gs_.D(t, u).bits();
        for (std::size_t x = 0; x < m; ++x) rel[x][t][u] = bits[x];
      }
    const auto& pmaps = [&](Label t) -> const std::vector<long>& { return gs_.h(t).image(); };
    for (std::size_t x = 0; x < m; ++x) {
      const Point px = Point::index(x);
      for (Label t : L) {
        const bool in_dom = pmaps(t)[x] >= 0;
        if (rel[x][t][t] != in_dom) fail("diagonal", {t}, px);
        for (Label u : L) {
          if (done()) return;
          if (!rel[x][t][u]) continue;
          if (!rel[x][u][t]) fail("symmetry", {t, u}, px);
          if (!in_dom || pmaps(u)[x] < 0) {
            fail("domain", {t, u}, px);
            continue;
          }
          const std::size_t y = static_cast<std::size_t>(pmaps(t)[x]);
          if (pmaps(u)[x] != pmaps(t)[x]) fail("agreement", {t, u}, px);
          if (!rel[y][gs_.star(t)][gs_.star(u)]) fail("star-compatibility", {t, u}, px);
          if (!rel[x][u].is_subset_of(rel[x][t])) {
            for (Label w : L)
              if (rel[x][u][w] && !rel[x][t][w]) {
                fail("transitivity", {t, u, w}, px);
                break;
              }
          }
          for (Label w : L) {
            if (pmaps(w)[y] >= 0 && !rel[x][gs_.mul(w, t)][gs_.mul(w, u)])
              fail("left-multiplicativity", {t, u, w}, px);
            if (done()) return;
          }
        }
      }
    }
    // right multiplicativity: x ∈ dom h_w and h_w(x) ∈ D_{t,u} ⇒ x ∈ D_{tw,uw}
    for (Label w : L)
      for (std::size_t x = 0; x < m; ++x) {
        if (pmaps(w)[x] < 0) continue;
        const std::size_t y = static_cast<std::size_t>(pmaps(w)[x]);
        for (Label t : L)
          for (Label u : L) {
            if (!rel[y][t][u]) continue;
            const Label tw = gs_.mul(t, w), uw = gs_.mul(u, w);
            if (pmaps(tw)[x] >= 0 && pmaps(uw)[x] >= 0 && !gs_.D(tw, uw).bits()->test(x))
              fail("right-multiplicativity", {t, u, w}, Point::index(x));
            if (done()) return;
          }
      }
  }

  const GermSystem& gs_;
  std::vector<Label> labels_;
  bool stop_;
  std::vector<AxiomFailure> failures_;
};

}  // namespace

std::vector<AxiomFailure> validate_system(const GermSystem& gs, std::size_t bound, bool stop_at_first) {
  return AxiomChecker(gs, bound, stop_at_first).run();
}

bool is_hausdorff(const GermSystem& gs, std::size_t bound) {
  const auto L = gs.labels(bound);
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = i + 1; j < L.size(); ++j) {
      // D is closed in the clopen set dom ∩ dom iff its relative complement is open
      const Region common = gs.domain(L[i]) & gs.domain(L[j]);
      if (!(common - gs.D(L[i], L[j])).is_open()) return false;
    }
  return true;
}

Region dangerous_set(const GermSystem& gs, std::size_t bound) {
  const auto L = gs.labels(bound);
  Region out = Region::empty(gs.space());
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = i + 1; j < L.size(); ++j) {
      const Region& d = gs.D(L[i], L[j]);
      out = out | ((d.closure() & gs.domain(L[i]) & gs.domain(L[j])) - d);
    }
  return out;
}

std::vector<IsotropyClass> isotropy_at(const GermSystem& gs, const Point& x, std::size_t bound) {
  std::vector<IsotropyClass> out;
  std::set<Label> seen;
  for (Label t : gs.labels(bound)) {
    if (!gs.domain(t).contains(x) || gs.h(t).apply(x) != x) continue;
    const Label c = gs.canonical(t, x);
    if (seen.insert(c).second) out.push_back({Arrow{c, x}, gs.germ_eq(c, 0, x)});
  }
  std::stable_partition(out.begin(), out.end(), [](const IsotropyClass& c) { return c.trivial; });
  return out;
}

}  // namespace etale
