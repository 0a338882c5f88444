#include "etale/inverse_semigroup.hpp"

#include <deque>
#include <map>

namespace etale {

namespace {

std::string triple(const std::vector<std::string>& n, std::size_t a, std::size_t b, std::size_t c) {
  return "(" + n[a] + ", " + n[b] + ", " + n[c] + ")";
}

}  // namespace

InverseSemigroup InverseSemigroup::validate(std::vector<std::string> names, Elem unit,
                                            std::vector<std::vector<Elem>> table,
                                            std::vector<Elem> star) {
  const std::size_t n = names.size();
  if (n == 0) throw AxiomViolation("table", "no elements");
  {
    std::map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < n; ++i)
      if (!seen.emplace(names[i], i).second) throw AxiomViolation("table", "duplicate name " + names[i]);
  }
  if (unit >= n) throw AxiomViolation("unit", "unit index out of range");
  if (table.size() != n) throw AxiomViolation("table", "expected " + std::to_string(n) + " rows");
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) throw AxiomViolation("table", "row " + names[i] + " has the wrong length");
    for (Elem v : table[i])
      if (v >= n) throw AxiomViolation("table", "product in row " + names[i] + " out of range");
  }
  for (std::size_t t = 0; t < n; ++t)
    if (table[unit][t] != t || table[t][unit] != t)
      throw AxiomViolation("unit", names[unit] + " is not a unit for " + names[t]);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Elem ab = table[a][b];
      for (std::size_t c = 0; c < n; ++c)
        if (table[ab][c] != table[a][table[b][c]])
          throw AxiomViolation("associativity", triple(names, a, b, c));
    }

  InverseSemigroup s;
  for (std::size_t e = 0; e < n; ++e)
    if (table[e][e] == e) s.idempotents_.push_back(e);
  for (Elem e : s.idempotents_)
    for (Elem f : s.idempotents_)
      if (table[e][f] != table[f][e])
        throw AxiomViolation("idempotents-commute", names[e] + ", " + names[f]);

  std::vector<Elem> solved(n);
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<Elem> cands;
    for (std::size_t s = 0; s < n; ++s)
      if (table[table[t][s]][t] == t && table[table[s][t]][s] == s) cands.push_back(s);
    if (cands.size() != 1) {
      std::string where = names[t] + " has " + std::to_string(cands.size()) + " pseudo-inverses";
      if (cands.size() > 1) where += " (" + names[cands[0]] + ", " + names[cands[1]] + ")";
      throw AxiomViolation("pseudo-inverse", where);
    }
    solved[t] = cands[0];
  }
  if (!star.empty()) {
    if (star.size() != n) throw AxiomViolation("star", "expected " + std::to_string(n) + " entries");
    for (std::size_t t = 0; t < n; ++t)
      if (star[t] != solved[t])
        throw AxiomViolation("star", names[t] + "* is " + names[solved[t]] + ", table says " +
                                         (star[t] < n ? names[star[t]] : std::string("?")));
  }

  s.names_ = std::move(names);
  s.unit_ = unit;
  s.table_ = std::move(table);
  s.star_ = std::move(solved);
  s.below_.assign(n, boost::dynamic_bitset<>(n));
  for (std::size_t t = 0; t < n; ++t) {
    const Elem tt = s.table_[s.star_[t]][t];
    for (std::size_t u = 0; u < n; ++u)
      if (s.table_[u][tt] == t) s.below_[u].set(t);
  }
  return s;
}

InverseSemigroup::Elem InverseSemigroup::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw UsageError("unknown semigroup element '" + name + "'");
}

std::vector<InverseSemigroup::Elem> InverseSemigroup::meet_witnesses(Elem t, Elem u) const {
  const auto both = below_[t] & below_[u];
  std::vector<Elem> out;
  for (auto v = both.find_first(); v != boost::dynamic_bitset<>::npos; v = both.find_next(v)) out.push_back(v);
  return out;
}

ActedSemigroup generate_closure(const std::vector<PartialMap>& gens,
                                const std::vector<std::string>& gen_names, std::size_t cap) {
  if (gens.empty()) throw UsageError("generate_closure needs at least one generator");
  if (gen_names.size() != gens.size()) throw UsageError("one name per generator expected");
  const Space& space = gens.front().space();
  std::vector<PartialMap> letters;
  std::vector<std::string> letter_names;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    require_same_space(space, gens[i].space(), "generate_closure");
    letters.push_back(gens[i]);
    letter_names.push_back(gen_names[i]);
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    letters.push_back(invert(gens[i]));
    letter_names.push_back(gen_names[i] + "*");
  }

  std::vector<PartialMap> maps{PartialMap::identity(space)};
  std::vector<std::string> names{"1"};
  std::map<std::string, std::size_t> index{{maps[0].to_string(), 0}};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t w = queue.front();
    queue.pop_front();
    for (std::size_t l = 0; l < letters.size(); ++l) {
      PartialMap m = compose(maps[w], letters[l]);
      const std::string key = m.to_string();
      if (index.count(key)) continue;
      if (maps.size() >= cap) throw CapExceeded(maps.size(), queue.size() + 1);
      index.emplace(key, maps.size());
      names.push_back(w == 0 ? letter_names[l] : names[w] + kWordJoiner + letter_names[l]);
      queue.push_back(maps.size());
      maps.push_back(std::move(m));
    }
  }

  const std::size_t n = maps.size();
  std::vector<std::vector<InverseSemigroup::Elem>> table(n, std::vector<InverseSemigroup::Elem>(n));
  std::vector<InverseSemigroup::Elem> star(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t u = 0; u < n; ++u) table[t][u] = index.at(compose(maps[t], maps[u]).to_string());
    star[t] = index.at(invert(maps[t]).to_string());
  }
  return {InverseSemigroup::validate(std::move(names), 0, std::move(table), std::move(star)), std::move(maps)};
}

}  // namespace etale
