#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "etale/germ_system.hpp"
#include "etale/random.hpp"
#include "systems.hpp"

using etale::Arrow;
using etale::GermSystem;
using etale::Label;
using etale::PartialMap;
using etale::Point;
using etale::Region;
using etale::Space;

namespace {

Point pt(const char* s) { return Point::parse(s); }

// Oracle for regime A: [t,x] = [u,x] iff some v restricting both h_t and
// h_u is defined at x. Restriction is checked on the maps themselves.
bool witness_search(const GermSystem& gs, Label t, Label u, const Point& x) {
  for (Label v = 0; v < gs.label_count(); ++v) {
    const Region dv = gs.domain(v);
    if (!dv.contains(x)) continue;
    if (etale::restrict(gs.h(t), dv) == gs.h(v) && etale::restrict(gs.h(u), dv) == gs.h(v)) return true;
  }
  return false;
}

// Brute-force arrow count: merge (t,x) pairs with a union-find over witness search.
std::size_t brute_force_arrow_count(const GermSystem& gs) {
  std::vector<std::pair<Label, Point>> germs;
  for (std::size_t x = 0; x < gs.space().size(); ++x)
    for (Label t = 0; t < gs.label_count(); ++t)
      if (gs.domain(t).contains(Point::index(x))) germs.emplace_back(t, Point::index(x));
  std::vector<std::size_t> parent(germs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < germs.size(); ++i)
    for (std::size_t j = i + 1; j < germs.size(); ++j)
      if (germs[i].second == germs[j].second && witness_search(gs, germs[i].first, germs[j].first, germs[i].second))
        parent[find(i)] = find(j);
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < germs.size(); ++i) roots.insert(find(i));
  return roots.size();
}

std::vector<Point> sample_points(etale::random::Rng& rng, const Space& space, int n) {
  std::vector<Point> out;
  if (space.is_finite()) {
    for (std::size_t i = 0; i < space.size(); ++i) out.push_back(Point::index(i));
    return out;
  }
  for (int i = 0; i < n; ++i) out.push_back(etale::random::point(rng, space));
  out.push_back(pt("(0)"));
  out.push_back(pt("(1)"));
  return out;
}

}  // namespace

TEST_CASE("validation of witness systems") {
  const GermSystem dbl = systems::dbl();
  CHECK(dbl.regime() == etale::Regime::C);
  CHECK(etale::validate_system(dbl).empty());

  const Space& X = systems::binary();
  const PartialMap swap0 = PartialMap::parse(X, {"00 -> 01", "01 -> 00", "1 -> 1"});
  try {
    GermSystem::with_witnesses(systems::z2(), {PartialMap::identity(X), swap0}, {{{1, 0}, Region::parse(X, "0")}});
    FAIL("expected an agreement violation");
  } catch (const etale::AxiomViolation& v) {
    CHECK(v.axiom() == "agreement");
    CHECK(v.what() == std::string("agreement: labels 1, g; witness point (0)"));
    CHECK(v.where().find("labels 1, g; witness point (0)") != std::string::npos);
  }
  CHECK_THROWS_AS(GermSystem::with_witnesses(systems::z2(), {PartialMap::identity(X), PartialMap::identity(X)},
                                             {{{1, 0}, Region::parse(X, "0*1")}, {{0, 1}, Region::parse(X, "1")}}),
                  etale::AxiomViolation);
  // h_g must square to the identity
  CHECK_THROWS_AS(GermSystem::with_witnesses(systems::z2(), {PartialMap::identity(X), PartialMap::parse(X, {"ε -> 0"})}, {}),
                  etale::AxiomViolation);

  for (std::size_t n = 2; n <= 3; ++n) CHECK(etale::validate_system(systems::pair(n)).empty());
  CHECK(etale::validate_system(systems::z2_point()).empty());
  CHECK(etale::validate_system(systems::cuntz2(), 2).empty());
}

TEST_CASE("germ equality, arrows and isotropy in the doubled-point system") {
  const GermSystem dbl = systems::dbl();
  CHECK(dbl.germ_eq(1, 0, pt("0(1)")));
  CHECK_FALSE(dbl.germ_eq(1, 0, pt("(0)")));
  const Arrow g0 = etale::make_arrow(dbl, 1, pt("(0)"));
  CHECK(g0.label == 1);
  CHECK(etale::arrow_inv(dbl, g0) == g0);
  CHECK(etale::arrow_mul(dbl, g0, g0) == etale::make_arrow(dbl, 0, pt("(0)")));
  CHECK(etale::make_arrow(dbl, 1, pt("1(0)")).label == 0);
  CHECK_THROWS_AS(etale::arrow_mul(dbl, g0, etale::make_arrow(dbl, 0, pt("(1)"))), etale::UsageError);

  const auto iso = etale::isotropy_at(dbl, pt("(0)"));
  REQUIRE(iso.size() == 2);
  CHECK(iso[0].trivial);
  CHECK_FALSE(iso[1].trivial);
  CHECK(etale::isotropy_at(dbl, pt("(01)")).size() == 1);

  CHECK_FALSE(etale::is_hausdorff(dbl));
  const Region danger = etale::dangerous_set(dbl);
  CHECK(danger == Region::singleton(systems::binary(), pt("(0)")));
  CHECK(danger.is_meagre());
}

TEST_CASE("symmetric inverse monoids give pair groupoids") {
  const GermSystem i2 = systems::pair(2);
  CHECK(i2.label_count() == 7);
  const Label p = i2.intern(PartialMap::finite(Space::finite(2), {0, -1}));
  CHECK(i2.germ_eq(0, p, Point::index(0)));
  CHECK_FALSE(i2.germ_eq(0, p, Point::index(1)));
  for (std::size_t n = 2; n <= 4; ++n) {
    const GermSystem gs = systems::pair(n);
    const auto arrows = etale::enumerate_arrows(gs);
    CHECK(arrows.size() == n * n);
    CHECK(etale::is_hausdorff(gs));
    CHECK(etale::dangerous_set(gs).is_empty());
    if (n <= 3) CHECK(brute_force_arrow_count(gs) == n * n);
  }
  const GermSystem zp = systems::z2_point();
  CHECK(etale::enumerate_arrows(zp).size() == 2);
  CHECK(etale::isotropy_at(zp, Point::index(0)).size() == 2);
  CHECK_THROWS_AS(etale::enumerate_arrows(systems::cuntz2()), etale::UsageError);
}

TEST_CASE("regime A germ equality matches witness search") {
  etale::random::Rng rng(17);
  for (int round = 0; round < 12; ++round) {
    const Space space = Space::finite(3);
    std::vector<PartialMap> gens{etale::random::finite_map(rng, space), etale::random::finite_map(rng, space)};
    const GermSystem gs = GermSystem::from_closure(etale::generate_closure(gens, {"a", "b"}, 1000));
    for (std::size_t x = 0; x < 3; ++x)
      for (Label t = 0; t < gs.label_count(); ++t)
        for (Label u = 0; u < gs.label_count(); ++u) {
          const Point px = Point::index(x);
          const bool both = gs.domain(t).contains(px) && gs.domain(u).contains(px);
          CHECK(gs.germ_eq(t, u, px) == (both && witness_search(gs, t, u, px)));
        }
    CHECK(etale::enumerate_arrows(gs).size() == brute_force_arrow_count(gs));
    CHECK(etale::validate_system(gs).empty());
  }
}

TEST_CASE("regime B: the Cuntz pseudogroup") {
  const GermSystem c = systems::cuntz2();
  CHECK(c.name(1) == "v0");
  CHECK(c.name(3) == "v0*");
  CHECK(c.mul(c.star(1), 1) == 0);
  const Label l = c.parse_label("v0.v1*");
  CHECK(c.h(l) == PartialMap::parse(systems::binary(), {"1 -> 0"}));
  CHECK(c.star(l) == c.parse_label("v1.v0*"));
  CHECK(etale::is_hausdorff(c, 3));
  CHECK(etale::dangerous_set(c, 2).is_empty());
  CHECK(c.germ_eq(c.parse_label("v0.v0*"), 0, pt("0(1)")));
  CHECK(c.canonical(c.parse_label("v0.v0*"), pt("0(1)")) == 0);
  const auto iso = etale::isotropy_at(c, pt("(0)"), 2);
  CHECK(iso.size() == 5);  // 1, v0, v0*, v0.v0, v0*.v0*
}

TEST_CASE("germ equality is a congruence on random systems") {
  etale::random::Rng rng(23);
  const Space& X = systems::binary();
  std::vector<GermSystem> systems_under_test{systems::dbl(), systems::cuntz2(), systems::pair(3)};
  for (int i = 0; i < 4; ++i)
    systems_under_test.push_back(GermSystem::pseudogroup(
        {etale::random::prefix_exchange(rng, X, 2), etale::random::prefix_exchange(rng, X, 2)}, {"a", "b"}));
  for (const GermSystem& gs : systems_under_test) {
    const auto L = gs.labels(2);
    for (const Point& x : sample_points(rng, gs.space(), 6)) {
      std::vector<Label> at;
      for (Label t : L)
        if (gs.domain(t).contains(x)) at.push_back(t);
      for (Label t : at) {
        CHECK(gs.germ_eq(t, t, x));
        const Label c = gs.canonical(t, x);
        CHECK(gs.germ_eq(c, t, x));
        for (Label l = 0; l < c; ++l) CHECK_FALSE(gs.germ_eq(l, t, x));
        for (Label u : at) {
          CHECK(gs.germ_eq(t, u, x) == gs.germ_eq(u, t, x));
          CHECK(gs.germ_eq(t, u, x) == (gs.canonical(t, x) == gs.canonical(u, x)));
          const Arrow a = etale::make_arrow(gs, t, x);
          const Arrow inv = etale::arrow_inv(gs, a);
          CHECK(etale::arrow_mul(gs, inv, a) == etale::make_arrow(gs, 0, x));
          // [w, h_t x]·[t, x] depends only on the germ of t
          for (Label w : at) {
            const Point y = gs.h(t).apply(x);
            if (!gs.domain(w).contains(y) || !gs.germ_eq(t, u, x)) continue;
            const Arrow b = etale::make_arrow(gs, w, y);
            CHECK(etale::arrow_mul(gs, b, a) == etale::arrow_mul(gs, b, etale::make_arrow(gs, u, x)));
          }
        }
      }
    }
    CHECK(etale::is_hausdorff(gs) == etale::dangerous_set(gs).is_empty());
    for (const Point& x : etale::dangerous_set(gs).points().value_or(std::vector<Point>{}))
      CHECK(etale::isotropy_at(gs, x).size() > 1);
  }
}
