#include <algorithm>
#include <set>

#include "doctest.h"
#include "etale/inverse_semigroup.hpp"
#include "etale/random.hpp"

using etale::AxiomViolation;
using etale::InverseSemigroup;
using etale::PartialMap;
using etale::Space;
using Elem = InverseSemigroup::Elem;

namespace {

const Space kTwo = Space::finite(2);

// All partial injections of {0,1}: image vectors with -1 for "undefined".
std::vector<std::vector<long>> all_injections_of_two() {
  std::vector<std::vector<long>> out;
  for (long a = -1; a < 2; ++a)
    for (long b = -1; b < 2; ++b)
      if (a < 0 || a != b) out.push_back({a, b});
  return out;
}

// Brute-force Cayley table of I_2 built from raw vectors, unit placed first.
InverseSemigroup i2_from_table() {
  auto maps = all_injections_of_two();
  std::stable_partition(maps.begin(), maps.end(), [](const auto& m) { return m == std::vector<long>{0, 1}; });
  const std::size_t n = maps.size();
  std::vector<std::string> names;
  for (const auto& m : maps) names.push_back(std::to_string(m[0]) + "," + std::to_string(m[1]));
  std::vector<std::vector<Elem>> table(n, std::vector<Elem>(n));
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t u = 0; u < n; ++u) {
      std::vector<long> tu(2, -1);
      for (int x = 0; x < 2; ++x)
        if (maps[u][x] >= 0) tu[x] = maps[t][maps[u][x]];
      table[t][u] = std::find(maps.begin(), maps.end(), tu) - maps.begin();
    }
  return InverseSemigroup::validate(names, 0, table);
}

std::set<std::string> map_set(const std::vector<PartialMap>& maps) {
  std::set<std::string> out;
  for (const auto& m : maps) out.insert(m.to_string());
  return out;
}

}  // namespace

TEST_CASE("validation of explicit tables") {
  const InverseSemigroup i2 = i2_from_table();
  CHECK(i2.size() == 7);
  CHECK(i2.idempotents().size() == 4);

  const auto z2 = InverseSemigroup::validate({"1", "g"}, 0, {{0, 1}, {1, 0}});
  CHECK(z2.star(1) == 1);
  CHECK(z2.idempotents() == std::vector<Elem>{0});

  // Left-zero band {e,f} with a unit: ef = e, fe = f.
  try {
    InverseSemigroup::validate({"1", "e", "f"}, 0, {{0, 1, 2}, {1, 1, 1}, {2, 2, 2}});
    FAIL("expected a violation");
  } catch (const AxiomViolation& v) {
    CHECK(v.axiom() == "idempotents-commute");
    CHECK(v.where() == "e, f");
  }
  CHECK_THROWS_AS(InverseSemigroup::validate({"1", "g"}, 0, {{0, 1}, {1, 0}}, {0, 0}), AxiomViolation);
  try {
    InverseSemigroup::validate({"1", "a", "b"}, 0, {{0, 1, 2}, {1, 2, 2}, {2, 1, 2}});
    FAIL("expected a violation");
  } catch (const AxiomViolation& v) {
    CHECK(v.axiom() == "associativity");
  }
  // a² = z with z absorbing: a a x a = z for every x, so a has no pseudo-inverse.
  try {
    InverseSemigroup::validate({"1", "z", "a"}, 0, {{0, 1, 2}, {1, 1, 1}, {2, 1, 1}});
    FAIL("expected a violation");
  } catch (const AxiomViolation& v) {
    CHECK(v.axiom() == "pseudo-inverse");
  }
  CHECK_THROWS_AS(InverseSemigroup::validate({"1", "g"}, 1, {{0, 1}, {1, 0}}), AxiomViolation);
}

TEST_CASE("generated closures") {
  const PartialMap swap = PartialMap::finite(kTwo, {1, 0});
  const PartialMap keep0 = PartialMap::finite(kTwo, {0, -1});

  const auto z2 = etale::generate_closure({swap}, {"s"}, 10);
  CHECK(z2.semigroup.size() == 2);
  CHECK(z2.semigroup.names() == std::vector<std::string>{"1", "s"});

  // The swap and one rank-one idempotent generate all of I_2.
  const auto i2 = etale::generate_closure({swap, keep0}, {"s", "p"}, 100);
  CHECK(i2.semigroup.size() == 7);
  std::set<std::string> expected;
  for (const auto& m : all_injections_of_two()) expected.insert(PartialMap::finite(kTwo, m).to_string());
  CHECK(map_set(i2.maps) == expected);

  // Rank-one maps never produce the swap: identity, four singletons, empty.
  std::vector<PartialMap> singletons;
  std::vector<std::string> names;
  for (long a = 0; a < 2; ++a)
    for (long b = 0; b < 2; ++b) {
      std::vector<long> img(2, -1);
      img[a] = b;
      singletons.push_back(PartialMap::finite(kTwo, img));
      names.push_back("e" + std::to_string(a) + std::to_string(b));
    }
  CHECK(etale::generate_closure(singletons, names, 100).semigroup.size() == 6);

  const Space bin = Space::cantor("01");
  try {
    etale::generate_closure({PartialMap::parse(bin, {"ε -> 0"})}, {"v"}, 50);
    FAIL("expected CapExceeded");
  } catch (const etale::CapExceeded& e) {
    CHECK(e.count() == 50);
    CHECK(e.frontier() > 0);
  }
  const auto cuntz_corner = etale::generate_closure({PartialMap::parse(bin, {"0 -> 1", "1 -> 0"})}, {"x"}, 10);
  CHECK(cuntz_corner.semigroup.size() == 2);
}

TEST_CASE("meet witnesses in I_2") {
  const PartialMap swap = PartialMap::finite(kTwo, {1, 0});
  const PartialMap keep0 = PartialMap::finite(kTwo, {0, -1});
  const auto acted = etale::generate_closure({swap, keep0}, {"s", "p"}, 100);
  const auto& s = acted.semigroup;
  auto find = [&](const PartialMap& m) {
    return std::find(acted.maps.begin(), acted.maps.end(), m) - acted.maps.begin();
  };
  const Elem id = 0;
  const Elem sw = find(swap);
  const Elem p = find(keep0);
  const Elem zero = find(PartialMap::empty(kTwo));
  CHECK(s.meet_witnesses(sw, id) == std::vector<Elem>{zero});
  auto m = s.meet_witnesses(id, p);
  std::sort(m.begin(), m.end());
  std::vector<Elem> want{p, zero};
  std::sort(want.begin(), want.end());
  CHECK(m == want);
  for (Elem t = 0; t < s.size(); ++t) {
    const auto down = s.meet_witnesses(t, t);
    CHECK(std::count(down.begin(), down.end(), t) == 1);
  }
}

TEST_CASE("random closures satisfy the inverse semigroup laws") {
  etale::random::Rng rng(3);
  const Space three = Space::finite(3);
  const Space bin = Space::cantor("01");
  for (int round = 0; round < 40; ++round) {
    const Space& space = round % 2 ? three : bin;
    std::vector<PartialMap> gens;
    std::vector<std::string> names;
    const int k = 1 + round % 3;
    for (int i = 0; i < k; ++i) {
      // Permutations of prefix codes of equal depth keep closures finite.
      PartialMap g = space.is_finite() ? etale::random::finite_map(rng, space) : [&] {
        std::vector<std::string> words{"00", "01", "10", "11"};
        std::shuffle(words.begin(), words.end(), rng);
        std::vector<etale::Rule> rules;
        for (std::size_t j = 0; j < 4; ++j)
          if (rng() % 4) rules.push_back({std::string(1, "01"[j / 2]) + "01"[j % 2], words[j]});
        return PartialMap::prefix_exchange(bin, rules);
      }();
      gens.push_back(g);
      names.push_back("g" + std::to_string(i));
    }
    const auto acted = etale::generate_closure(gens, names, 20000);
    const auto& s = acted.semigroup;
    const std::size_t n = s.size();
    for (Elem t = 0; t < n; ++t) {
      CHECK(acted.maps[s.star(t)] == etale::invert(acted.maps[t]));
      for (Elem u = 0; u < n; ++u) {
        CHECK(s.star(s.mul(t, u)) == s.mul(s.star(u), s.star(t)));
        bool via_idempotent = false;
        for (Elem e : s.idempotents()) via_idempotent |= s.mul(u, e) == t;
        CHECK(s.leq(t, u) == via_idempotent);
        // Oracle: t ≤ u iff h_t is a restriction of h_u.
        CHECK(s.leq(t, u) == (etale::restrict(acted.maps[u], acted.maps[t].domain()) == acted.maps[t]));
        const auto m = s.meet_witnesses(t, u);
        CHECK(m == s.meet_witnesses(u, t));
        for (Elem v : m)
          for (Elem w = 0; w < n; ++w)
            if (s.leq(w, v)) CHECK(std::find(m.begin(), m.end(), w) != m.end());
      }
    }
    for (Elem e : s.idempotents())
      for (Elem f : s.idempotents()) CHECK(s.is_idempotent(s.mul(e, f)));
  }
}
