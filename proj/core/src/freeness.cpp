#include "etale/freeness.hpp"

#include <algorithm>
#include <functional>

namespace etale {

std::string Verdict::to_string() const {
  switch (status) {
    case Status::True: return "true";
    case Status::False: return "false";
    case Status::VerifiedUpTo: return "verified up to " + std::to_string(bound);
  }
  return "?";
}

FixSets fix_sets(const GermSystem& gs, Label t) {
  const Region& d = gs.D(t, gs.unit());
  Region fix = fix_region(gs.h(t)).to_region() - d;
  Region under = fix - d.closure();
  return {t, std::move(fix), std::move(under)};
}

namespace {

Verdict holds_verdict(const GermSystem& gs, std::size_t bound) {
  return gs.has_finite_labels() ? Verdict::yes() : Verdict::up_to(bound);
}

std::vector<Label> moving_labels(const GermSystem& gs) {
  if (gs.has_finite_labels()) return gs.labels(0);
  auto out = gs.letters();
  out.insert(out.begin(), gs.unit());
  return out;
}

}  // namespace

FreenessReport freeness_report(const GermSystem& gs, std::size_t bound) {
  if (bound == 0) throw UsageError("freeness bound must be at least 1");
  FreenessReport r;
  r.bound = bound;
  r.hausdorff = is_hausdorff(gs, bound);
  const Verdict ok = holds_verdict(gs, bound);
  r.effective = r.topologically_free = r.as_topologically_free = r.topologically_principal = ok;

  Region all_fix = Region::empty(gs.space());
  for (Label t : gs.labels(bound)) {
    FixSets f = fix_sets(gs, t);
    const Region clopen = fix_region(gs.h(t)).clopen_part;
    if (r.effective.holds()) {
      const Region bad = clopen - gs.D(t, gs.unit());
      if (!bad.is_empty()) r.effective = Verdict::no(t, bad.sample());
    }
    if (r.topologically_free.holds() && !f.fix.has_empty_interior())
      r.topologically_free = Verdict::no(t, f.fix.interior().sample());
    if (r.as_topologically_free.holds() && !f.underline_fix.is_nowhere_dense())
      r.as_topologically_free = Verdict::no(t, f.underline_fix.closure().interior().sample());
    all_fix = all_fix | f.fix;
    r.fixes.push_back(std::move(f));
  }
  const Region inner = all_fix.interior();
  if (!inner.is_empty()) {
    const Point x = *inner.sample();
    std::optional<Label> witness;
    for (const auto& f : r.fixes)
      if (f.fix.contains(x)) {
        witness = f.label;
        break;
      }
    r.topologically_principal = Verdict::no(witness, x);
  }
  const auto broken = implication_failures(r);
  if (!broken.empty()) throw InvariantViolation("freeness report inconsistent: " + broken.front());
  return r;
}

std::vector<std::string> implication_failures(const FreenessReport& r) {
  std::vector<std::string> out;
  const bool eff = r.effective.holds(), fr = r.topologically_free.holds(),
             as = r.as_topologically_free.holds(), pr = r.topologically_principal.holds();
  if (eff && !fr) out.push_back("effective implies topologically free");
  if (pr && !as) out.push_back("principal implies AS topologically free");
  if (as && !fr) out.push_back("AS topologically free implies topologically free");
  if (fr != as) out.push_back("topologically free iff AS topologically free");
  if (r.hausdorff && eff != fr) out.push_back("Hausdorff: effective iff topologically free");
  return out;
}

bool invariant(const GermSystem& gs, const Region& u) {
  for (Label t : moving_labels(gs))
    if (!image(gs.h(t), u & gs.domain(t)).subset_of(u)) return false;
  return true;
}

Region saturate(const GermSystem& gs, const Region& u, std::size_t iter_cap) {
  const auto labels = moving_labels(gs);
  Region cur = u;
  for (std::size_t it = 0; it < iter_cap; ++it) {
    Region next = cur;
    for (Label t : labels) next = next | image(gs.h(t), cur & gs.domain(t));
    if (next == cur) return cur;
    cur = std::move(next);
  }
  throw Unstable("saturation did not stabilise within " + std::to_string(iter_cap) + " iterations");
}

Verdict is_minimal(const GermSystem& gs, std::size_t depth, std::size_t iter_cap) {
  const Space& space = gs.space();
  if (space.is_finite()) {
    for (std::size_t i = 0; i < space.size(); ++i) {
      const Point x = Point::index(i);
      if (!saturate(gs, Region::singleton(space, x), iter_cap).is_full()) return Verdict::no(std::nullopt, x);
    }
    return Verdict::yes();
  }
  std::vector<std::string> level{""};
  for (std::size_t d = 0; d <= depth; ++d) {
    std::vector<std::string> next;
    for (const auto& w : level) {
      const Region c = Region::cylinder(space, w);
      if (!saturate(gs, c, iter_cap).is_full()) return Verdict::no(std::nullopt, c.sample());
      for (char s : space.alphabet()) next.push_back(w + s);
    }
    level = std::move(next);
  }
  return Verdict::up_to(depth);
}

namespace {

// Candidate sets V in deterministic order.
std::vector<Region> candidate_sets(const Region& u, std::size_t depth) {
  const Space& space = u.space();
  std::vector<Region> out;
  if (space.is_finite()) {
    const std::size_t n = space.size();
    if (n > 16) throw UsageError("pure-infiniteness search limited to 16 points");
    std::vector<std::pair<std::size_t, unsigned>> subsets;
    for (unsigned mask = 1; mask < (1u << n); ++mask)
      subsets.emplace_back(static_cast<std::size_t>(__builtin_popcount(mask)), mask);
    std::sort(subsets.begin(), subsets.end());
    for (const auto& [size, mask] : subsets) {
      boost::dynamic_bitset<> bits(n);
      for (std::size_t i = 0; i < n; ++i) bits[i] = (mask >> i) & 1u;
      Region v = Region::from_bits(space, std::move(bits));
      if (v.subset_of(u)) out.push_back(std::move(v));
    }
    return out;
  }
  std::vector<std::string> level{""};
  for (std::size_t d = 0; d <= depth; ++d) {
    std::vector<std::string> next;
    for (const auto& w : level) {
      Region c = Region::cylinder(space, w);
      if (c.subset_of(u)) out.push_back(std::move(c));
      for (char s : space.alphabet()) next.push_back(w + s);
    }
    level = std::move(next);
  }
  return out;
}

}  // namespace

std::variant<PureInfinitenessWitness, NotFoundUpTo> pure_infiniteness_witness(
    const GermSystem& gs, const Region& u, std::size_t depth, std::size_t len, std::size_t max_tuple) {
  if (u.is_empty() || !u.is_open()) throw UsageError("pure-infiniteness search needs a nonempty open set");
  const auto labels = gs.labels(len);
  for (const Region& v : candidate_sets(u, depth)) {
    struct Candidate {
      Label t;
      Region source;
      Region range;
    };
    std::vector<Candidate> cands;
    for (Label t : labels) {
      Region src = gs.domain(t) & v;
      if (src.is_empty()) continue;
      Region rng = image(gs.h(t), src);
      if (!rng.subset_of(v)) continue;
      // slices with the same source and range are interchangeable here
      const bool seen = std::any_of(cands.begin(), cands.end(), [&](const Candidate& c) {
        return c.source == src && c.range == rng;
      });
      if (seen) continue;
      cands.push_back({t, std::move(src), std::move(rng)});
    }
    std::vector<std::size_t> pick;
    std::optional<PureInfinitenessWitness> found;
    // Tuples in increasing size, then lexicographic in candidate order.
    std::function<bool(std::size_t, std::size_t, const Region&, const Region&)> extend =
        [&](std::size_t start, std::size_t size, const Region& sources, const Region& ranges) {
          if (pick.size() == size) {
            if (sources != v) return false;
            const Region cl = ranges.closure();
            if (!cl.subset_of(v) || cl == v) return false;
            PureInfinitenessWitness w{v, {}};
            for (std::size_t i : pick) w.slices.push_back({cands[i].t, cands[i].source});
            found = std::move(w);
            return true;
          }
          for (std::size_t i = start; i < cands.size(); ++i) {
            if (ranges.intersects(cands[i].range)) continue;
            pick.push_back(i);
            if (extend(i + 1, size, sources | cands[i].source, ranges | cands[i].range)) return true;
            pick.pop_back();
          }
          return false;
        };
    const Region none = Region::empty(gs.space());
    for (std::size_t size = 1; size <= max_tuple; ++size)
      if (extend(0, size, none, none)) return *found;
  }
  return NotFoundUpTo{depth, len};
}

}  // namespace etale
