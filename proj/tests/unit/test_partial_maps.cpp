#include "doctest.h"
#include "etale/error.hpp"
#include "etale/partial_map.hpp"
#include "etale/random.hpp"

using etale::PartialMap;
using etale::Point;
using etale::Region;
using etale::Space;

namespace {
const Space kBin = Space::cantor("01");
const Space kFour = Space::finite(4);
PartialMap map(std::vector<std::string> rules) { return PartialMap::parse(kBin, rules); }
Point pt(const char* s) { return Point::parse(s); }
Region cyl(const char* w) { return Region::cylinder(kBin, w); }

// Brute-force membership checks on sampled points stand in for set equality.
bool defined_and_equal(const PartialMap& f, const PartialMap& g, const Point& x) {
  return f.defined_at(x) && g.defined_at(x) && f.apply(x) == g.apply(x);
}
}  // namespace

TEST_CASE("composition and inversion of the two shift branches") {
  const PartialMap v0 = map({"ε -> 0"});
  CHECK(etale::compose(etale::invert(v0), v0) == PartialMap::identity(kBin));
  CHECK(etale::compose(v0, v0) == map({"ε -> 00"}));
  CHECK(etale::compose(v0, etale::invert(v0)) == map({"0 -> 0"}));
  CHECK(etale::compose(etale::invert(v0), map({"ε -> 1"})).is_empty());
  CHECK(etale::restrict(PartialMap::identity(kBin), cyl("1")) == map({"1 -> 1"}));
  CHECK_THROWS_AS(etale::restrict(v0, Region::parse(kBin, "0*1")), etale::UsageError);
}

TEST_CASE("canonical form merges sibling rules") {
  CHECK(map({"0 -> 10", "1 -> 11"}) == map({"ε -> 1"}));
  CHECK(map({"00 -> 00", "01 -> 01", "1 -> 1"}) == PartialMap::identity(kBin));
  CHECK(map({"id on 0"}).to_string() == "{0 -> 0}");
  CHECK(PartialMap::identity(kBin).to_string() == "{ε -> ε}");
  CHECK_THROWS_AS(map({"0 -> 1", "01 -> 0"}), etale::ScenarioError);
  CHECK_THROWS_AS(map({"0 -> 1", "1 -> 10"}), etale::ScenarioError);
  CHECK_THROWS_AS(map({"0 1"}), etale::ScenarioError);
}

TEST_CASE("application, domain, range, image and preimage") {
  const PartialMap v0 = map({"ε -> 0"});
  const PartialMap f = map({"0 -> 11", "10 -> 0"});
  CHECK(v0.apply(pt("(1)")) == pt("0(1)"));
  CHECK(f.apply(pt("(01)")) == pt("11(10)"));
  CHECK(f.apply(pt("10(1)")) == pt("0(1)"));
  CHECK_THROWS_AS(f.apply(pt("(1)")), etale::UsageError);
  CHECK(f.domain() == (cyl("0") | cyl("10")));
  CHECK(f.range() == (cyl("0") | cyl("11")));
  CHECK(etale::image(v0, Region::full(kBin)) == cyl("0"));
  CHECK(etale::preimage(v0, cyl("01")) == cyl("1"));
  CHECK(etale::preimage(v0, cyl("1")).is_empty());
  CHECK(etale::image(v0, Region::parse(kBin, "0*1")) == Region::parse(kBin, "00*1"));
  CHECK(etale::image(v0, Region::singleton(kBin, pt("(0)"))) == Region::singleton(kBin, pt("(0)")));
}

TEST_CASE("fixed regions") {
  const auto shift = etale::fix_region(map({"ε -> 0"}));
  CHECK(shift.clopen_part.is_empty());
  REQUIRE(shift.isolated_points.size() == 1);
  CHECK(shift.isolated_points[0] == pt("(0)"));
  CHECK(shift.has_empty_interior());

  const auto partial_id = etale::fix_region(map({"0 -> 0", "1 -> 11"}));
  CHECK(partial_id.clopen_part == cyl("0"));
  CHECK(partial_id.isolated_points == std::vector<Point>{pt("(1)")});
  CHECK(partial_id.to_region() == (cyl("0") | Region::singleton(kBin, pt("(1)"))));

  const auto down = etale::fix_region(map({"01 -> 0", "1 -> 1"}));
  CHECK(down.clopen_part == cyl("1"));
  CHECK(down.isolated_points == std::vector<Point>{pt("0(1)")});

  const auto swap = etale::fix_region(PartialMap::finite(kFour, {1, 0, 2, -1}));
  CHECK(swap.clopen_part == Region::subset(kFour, {2}));
}

TEST_CASE("local and pointwise agreement") {
  const PartialMap id = PartialMap::identity(kBin);
  const PartialMap half = map({"0 -> 0", "1 -> 10"});
  CHECK(etale::local_agreement(id, half) == cyl("0"));
  CHECK(etale::pointwise_agreement(id, half) == (cyl("0") | Region::singleton(kBin, pt("1(0)"))));
  CHECK(etale::local_agreement(map({"ε -> 0"}), id).is_empty());
  CHECK(etale::pointwise_agreement(map({"ε -> 0"}), id) == Region::singleton(kBin, pt("(0)")));
  CHECK(etale::local_agreement(map({"0 -> 1"}), map({"1 -> 0"})).is_empty());

  const PartialMap a = PartialMap::finite(kFour, {0, 2, 1, -1});
  const PartialMap b = PartialMap::finite(kFour, {0, 1, 2, 3});
  CHECK(etale::local_agreement(a, b) == Region::subset(kFour, {0}));
}

TEST_CASE("finite partial injections") {
  const PartialMap f = PartialMap::parse(kFour, {"0 -> 1", "1 -> 2"});
  CHECK(f.to_string() == "{0 -> 1, 1 -> 2}");
  CHECK(etale::compose(f, f) == PartialMap::parse(kFour, {"0 -> 2"}));
  CHECK(etale::invert(f) == PartialMap::parse(kFour, {"1 -> 0", "2 -> 1"}));
  CHECK(PartialMap::parse(kFour, {"id on {1,3}"}).domain() == Region::subset(kFour, {1, 3}));
  CHECK_THROWS_AS(PartialMap::parse(kFour, {"0 -> 1", "2 -> 1"}), etale::ScenarioError);
  CHECK_THROWS_AS(PartialMap::parse(kFour, {"0 -> 4"}), etale::ScenarioError);
}

TEST_CASE("random maps satisfy the partial-map laws pointwise") {
  etale::random::Rng rng(7);
  for (const Space& space : {kBin, Space::cantor("abc"), kFour}) {
    for (int round = 0; round < 60; ++round) {
      const PartialMap f = etale::random::partial_map(rng, space, 3);
      const PartialMap g = etale::random::partial_map(rng, space, 3);
      const Region u = etale::random::open(rng, space, 3);
      const PartialMap fg = etale::compose(f, g);
      const PartialMap fi = etale::invert(f);
      CHECK(etale::invert(fi) == f);
      CHECK(etale::compose(f, PartialMap::identity(space)) == f);
      CHECK(etale::compose(etale::compose(f, g), fi) == etale::compose(f, etale::compose(g, fi)));
      CHECK(etale::compose(etale::compose(f, fi), f) == f);
      CHECK(fg.domain() == etale::preimage(g, f.domain()));
      CHECK(etale::image(f, f.domain()) == f.range());
      CHECK(etale::local_agreement(f, g).is_clopen());
      CHECK(etale::local_agreement(f, g).subset_of(etale::pointwise_agreement(f, g)));
      CHECK(etale::fix_region(f).clopen_part == etale::local_agreement(f, PartialMap::identity(space)));
      const Region pre = etale::preimage(f, u);
      CHECK(etale::image(f, pre) == (u & f.range()));
      for (int k = 0; k < 25; ++k) {
        const Point x = etale::random::point(rng, space);
        CHECK(fg.defined_at(x) == (g.defined_at(x) && f.defined_at(g.apply(x))));
        if (fg.defined_at(x)) CHECK(fg.apply(x) == f.apply(g.apply(x)));
        if (f.defined_at(x)) CHECK(fi.apply(f.apply(x)) == x);
        CHECK(f.domain().contains(x) == f.defined_at(x));
        CHECK(pre.contains(x) == (f.defined_at(x) && u.contains(f.apply(x))));
        CHECK(etale::fix_region(f).to_region().contains(x) == (f.defined_at(x) && f.apply(x) == x));
        CHECK(etale::pointwise_agreement(f, g).contains(x) == defined_and_equal(f, g, x));
      }
    }
  }
}
