#include "etale/section.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "etale/error.hpp"

namespace etale {

namespace {

struct CellKey {
  Label rep;
  Scalar coeff;
  friend bool operator<(const CellKey& a, const CellKey& b) {
    if (a.rep != b.rep) return a.rep < b.rep;
    return a.coeff < b.coeff;
  }
};

// Collects pointwise cell data and merges bases sharing (rep, coeff).
class CellCollector {
 public:
  void add(Region base, Label rep, const Scalar& coeff) {
    if (coeff.is_zero() || base.is_empty()) return;
    auto [it, fresh] = cells_.try_emplace(CellKey{rep, coeff}, base);
    if (!fresh) it->second = it->second | base;
  }
  NormalForm finish() {
    NormalForm nf;
    for (auto& [key, base] : cells_) nf.cells.push_back({std::move(base), key.rep, key.coeff});
    return nf;
  }

 private:
  std::map<CellKey, Region> cells_;
};

// Groups the indices `active` into classes of the relation `same`, and adds
// one cell per class with nonzero coefficient sum.
template <class Same>
void add_classes(CellCollector& out, const Region& base, const std::vector<std::size_t>& active,
                 const std::vector<Label>& labels, const std::vector<Scalar>& coeffs, Same same) {
  std::vector<bool> used(active.size(), false);
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (used[i]) continue;
    Label rep = labels[active[i]];
    Scalar sum = coeffs[active[i]];
    for (std::size_t j = i + 1; j < active.size(); ++j)
      if (!used[j] && same(active[i], active[j])) {
        used[j] = true;
        rep = std::min(rep, labels[active[j]]);
        sum += coeffs[active[j]];
      }
    out.add(base, rep, sum);
  }
}

std::string trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

PointFunction PointFunction::sum(const Space& space, const std::vector<Piece>& parts) {
  std::vector<Piece> acc;
  for (const Piece& p : parts) {
    require_same_space(space, p.set.space(), "point function");
    if (p.value.is_zero() || p.set.is_empty()) continue;
    std::vector<Piece> next;
    Region rest = p.set;
    for (Piece& q : acc) {
      Region both = q.set & p.set;
      if (both.is_empty()) {
        next.push_back(std::move(q));
        continue;
      }
      Region only = q.set - p.set;
      if (!only.is_empty()) next.push_back({std::move(only), q.value});
      next.push_back({both, q.value + p.value});
      rest = rest - both;
    }
    if (!rest.is_empty()) next.push_back({std::move(rest), p.value});
    acc = std::move(next);
  }
  std::map<Scalar, Region> merged;
  for (auto& q : acc) {
    if (q.value.is_zero()) continue;
    auto [it, fresh] = merged.try_emplace(q.value, q.set);
    if (!fresh) it->second = it->second | q.set;
  }
  PointFunction f(space);
  for (auto& [v, s] : merged) f.pieces_.push_back({std::move(s), v});
  return f;
}

Scalar PointFunction::value(const Point& x) const {
  for (const auto& p : pieces_)
    if (p.set.contains(x)) return p.value;
  return 0;
}

Region PointFunction::support() const {
  Region out = Region::empty(space_);
  for (const auto& p : pieces_) out = out | p.set;
  return out;
}

std::string PointFunction::to_string() const {
  if (pieces_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (i) out += "; ";
    out += pieces_[i].value.to_string() + " on " + pieces_[i].set.describe();
  }
  return out;
}

Section SectionAlgebra::delta(Label t) const { return slice(t, gs_.domain(t)); }

Section SectionAlgebra::slice(Label t, const Region& u, const Scalar& c) const {
  if (!u.is_clopen()) throw UsageError("slice set " + u.describe() + " is not clopen");
  if (!u.subset_of(gs_.domain(t))) throw UsageError("slice set " + u.describe() + " leaves dom h_" + gs_.name(t));
  Section f;
  if (!u.is_empty() && !c.is_zero()) f.terms.push_back({t, u, c});
  return f;
}

Section SectionAlgebra::add(const Section& f, const Section& g) const {
  Section out = f;
  out.terms.insert(out.terms.end(), g.terms.begin(), g.terms.end());
  return out;
}

Section SectionAlgebra::sub(const Section& f, const Section& g) const { return add(f, scale(-1, g)); }

Section SectionAlgebra::scale(const Scalar& c, const Section& f) const {
  Section out;
  if (c.is_zero()) return out;
  for (const Term& t : f.terms) out.terms.push_back({t.label, t.set, c * t.coeff});
  return out;
}

Section SectionAlgebra::mul(const Section& f, const Section& g) const {
  // merge identical slices so products do not grow needlessly
  std::vector<Term> out;
  for (const Term& a : f.terms)
    for (const Term& b : g.terms) {
      Region set = b.set & preimage(gs_.h(b.label), a.set);
      if (set.is_empty()) continue;
      const Label tu = gs_.mul(a.label, b.label);
      Scalar c = a.coeff * b.coeff;
      auto same = std::find_if(out.begin(), out.end(), [&](const Term& t) { return t.label == tu && t.set == set; });
      if (same != out.end()) same->coeff += c;
      else out.push_back({tu, std::move(set), std::move(c)});
    }
  Section s;
  for (auto& t : out)
    if (!t.coeff.is_zero()) s.terms.push_back(std::move(t));
  return s;
}

Section SectionAlgebra::star(const Section& f) const {
  Section out;
  for (const Term& t : f.terms) out.terms.push_back({gs_.star(t.label), image(gs_.h(t.label), t.set), t.coeff.conj()});
  return out;
}

NormalForm SectionAlgebra::normal_form(const Section& f) const {
  const Space& space = gs_.space();
  std::vector<Label> labels;
  std::vector<Scalar> coeffs;
  for (const Term& t : f.terms) {
    labels.push_back(t.label);
    coeffs.push_back(t.coeff);
  }
  CellCollector out;
  if (space.is_finite()) {
    for (std::size_t x = 0; x < space.size(); ++x) {
      const Point p = Point::index(x);
      std::vector<std::size_t> active;
      for (std::size_t i = 0; i < f.terms.size(); ++i)
        if (f.terms[i].set.contains(p)) active.push_back(i);
      add_classes(out, Region::singleton(space, p), active, labels, coeffs, [&](std::size_t i, std::size_t j) {
        return gs_.canonical(labels[i], p) == gs_.canonical(labels[j], p);
      });
    }
    return out.finish();
  }
  if (gs_.regime() != Regime::B) return normal_form_by_atoms(f);

  // Regime B: split each term along the rules of its map; pieces with equal
  // reduced rules have equal germs, so cells are atoms of each rule group.
  struct Piece {
    Region set;
    std::size_t term;
  };
  std::map<std::pair<std::string, std::string>, std::vector<Piece>> groups;
  for (std::size_t i = 0; i < f.terms.size(); ++i)
    for (const Rule& r : gs_.h(labels[i]).rules()) {
      Region p = f.terms[i].set & Region::cylinder(space, r.from);
      if (p.is_empty()) continue;
      Rule key = reduced_rule(r);
      groups[{key.from, key.to}].push_back({std::move(p), i});
    }
  for (const auto& [key, pieces] : groups) {
    std::vector<Region> sets;
    Region universe = Region::empty(space);
    for (const auto& p : pieces) {
      sets.push_back(p.set);
      universe = universe | p.set;
    }
    for (const Atom& a : atoms(universe, sets)) {
      std::vector<std::size_t> active;
      for (std::size_t k = 0; k < pieces.size(); ++k)
        if (a.inside[k]) active.push_back(pieces[k].term);
      add_classes(out, a.set, active, labels, coeffs, [](std::size_t, std::size_t) { return true; });
    }
  }
  return out.finish();
}

NormalForm SectionAlgebra::normal_form_by_atoms(const Section& f) const {
  const std::size_t n = f.terms.size();
  std::vector<Label> labels;
  std::vector<Scalar> coeffs;
  std::vector<Region> sets;
  Region universe = Region::empty(gs_.space());
  for (const Term& t : f.terms) {
    labels.push_back(t.label);
    coeffs.push_back(t.coeff);
    sets.push_back(t.set);
    universe = universe | t.set;
  }
  std::map<std::pair<Label, Label>, std::size_t> pair_index;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Label a = std::min(labels[i], labels[j]), b = std::max(labels[i], labels[j]);
      if (a == b || pair_index.count({a, b})) continue;
      pair_index.emplace(std::pair{a, b}, sets.size());
      sets.push_back(gs_.D(a, b));
    }
  CellCollector out;
  for (const Atom& atom : atoms(universe, sets)) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < n; ++i)
      if (atom.inside[i]) active.push_back(i);
    add_classes(out, atom.set, active, labels, coeffs, [&](std::size_t i, std::size_t j) {
      const Label a = std::min(labels[i], labels[j]), b = std::max(labels[i], labels[j]);
      return a == b || atom.inside[pair_index.at({a, b})];
    });
  }
  return out.finish();
}

Scalar SectionAlgebra::j_eval(const Section& f, const Arrow& a) const {
  Scalar sum;
  for (const Term& t : f.terms)
    if (t.set.contains(a.source) && gs_.germ_eq(t.label, a.label, a.source)) sum += t.coeff;
  return sum;
}

PointFunction SectionAlgebra::expectation(const Section& f) const {
  std::vector<PointFunction::Piece> parts;
  for (const Term& t : f.terms) parts.push_back({t.set & gs_.D(t.label, gs_.unit()), t.coeff});
  return PointFunction::sum(gs_.space(), parts);
}

bool SectionAlgebra::is_singular(const Section& f) const {
  for (const Cell& c : normal_form(f).cells)
    if (!c.base.has_empty_interior()) return false;
  return true;
}

bool SectionAlgebra::el_kernel_member(const Section& f) const {
  return expectation(mul(star(f), f)).support().is_meagre();
}

Section SectionAlgebra::parse(std::string_view text) const {
  Section out;
  std::size_t i = 0;
  bool negate = false;
  const std::string s(text);
  auto fail = [&](const std::string& why) {
    throw ScenarioError("section '" + s + "' at offset " + std::to_string(i) + ": " + why);
  };
  while (true) {
    const std::size_t open = s.find('(', i);
    if (open == std::string::npos) fail("expected '('");
    std::string coeff_text = trim(std::string_view(s).substr(i, open - i));
    if (!coeff_text.empty() && coeff_text.back() == '*') coeff_text = trim(coeff_text.substr(0, coeff_text.size() - 1));
    Scalar c = coeff_text.empty() ? Scalar(1) : coeff_text == "-" ? Scalar(-1) : Scalar::parse(coeff_text);
    if (negate) c = -c;
    int depth = 0;
    std::size_t close = open;
    for (; close < s.size(); ++close) {
      if (s[close] == '(') ++depth;
      else if (s[close] == ')' && --depth == 0) break;
    }
    if (close >= s.size()) fail("unbalanced parentheses");
    const std::string inner = s.substr(open + 1, close - open - 1);
    const std::size_t comma = inner.find(',');
    i = open + 1;
    const Label t = gs_.parse_label(trim(comma == std::string::npos ? inner : inner.substr(0, comma)));
    if (comma == std::string::npos) {
      out = add(out, scale(c, delta(t)));
    } else {
      const Region u = Region::parse(gs_.space(), trim(inner.substr(comma + 1)));
      try {
        out = add(out, slice(t, u, c));
      } catch (const UsageError& e) {
        fail(e.what());
      }
    }
    i = close + 1;
    while (i < s.size() && s[i] == ' ') ++i;
    if (i == s.size()) return out;
    if (s[i] != '+' && s[i] != '-') fail("expected '+' or '-'");
    negate = s[i] == '-';
    ++i;
  }
}

std::string SectionAlgebra::to_string(const Section& f) const {
  if (f.terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    const Term& t = f.terms[i];
    if (i) out += " + ";
    out += t.coeff.to_string() + " * (" + gs_.name(t.label) + ", " + t.set.describe() + ")";
  }
  return out;
}

std::string SectionAlgebra::to_string(const NormalForm& nf) const {
  if (nf.cells.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < nf.cells.size(); ++i) {
    const Cell& c = nf.cells[i];
    if (i) out += " + ";
    out += c.coeff.to_string() + " * [" + gs_.name(c.rep) + " over " + c.base.describe() + "]";
  }
  return out;
}

}  // namespace etale
