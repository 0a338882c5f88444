#include <random>

#include "doctest.h"
#include "etale/error.hpp"
#include "etale/region.hpp"
#include "regex_oracle.hpp"

using etale::OpenSet;
using etale::Point;
using etale::Region;
using etale::Space;

namespace {
const Space kBin = Space::cantor("01");
Region lang(const char* re) { return Region::parse(kBin, re); }
Point pt(const char* s) { return Point::parse(s); }
}  // namespace

TEST_CASE("points are kept in canonical form") {
  CHECK(Point::periodic("0", "0") == Point::periodic("", "0"));
  CHECK(Point::periodic("1", "0101") == Point::periodic("", "10"));
  CHECK(Point::periodic("01", "1").to_string() == "0(1)");
  CHECK(pt("0(0)").to_string() == "(0)");
  CHECK(pt("(01)").drop(1) == pt("(10)"));
  CHECK(pt("(1)").prepend("0") == pt("0(1)"));
  CHECK_THROWS_AS(Point::parse("01()"), etale::ScenarioError);
}

TEST_CASE("set algebra on cylinder languages") {
  CHECK((Region::cylinder(kBin, "0") | Region::cylinder(kBin, "1")).is_full());
  CHECK((lang("0*1") & Region::cylinder(kBin, "1")) == Region::cylinder(kBin, "1"));
  const Region rest = Region::full(kBin) - lang("0*1");
  CHECK(rest == Region::singleton(kBin, pt("(0)")));
  CHECK(rest.describe() == "{(0)}");
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const Point x = oracle::random_point(rng);
    CHECK(rest.contains(x) == (x == pt("(0)")));
  }
}

TEST_CASE("mixed spaces are rejected") {
  const Space other = Space::cantor("ab");
  CHECK_THROWS_AS((void)(Region::full(kBin) | Region::full(other)), etale::UsageError);
  CHECK_THROWS_AS((void)(Region::full(kBin) & Region::full(Space::finite(2))), etale::UsageError);
}

TEST_CASE("closure") {
  CHECK(lang("0*1").closure().is_full());
  CHECK(Region::cylinder(kBin, "0").closure() == Region::cylinder(kBin, "0"));
  CHECK(Region::empty(kBin).closure().is_empty());
  CHECK(lang("0*1").describe() == "X \xE2\x88\x96 {(0)}");
}

TEST_CASE("empty interior, nowhere density and meagreness") {
  const Region p = Region::singleton(kBin, pt("(0)"));
  CHECK(p.has_empty_interior());
  CHECK(p.is_nowhere_dense());
  CHECK(p.is_meagre());
  const Region c = Region::cylinder(kBin, "0");
  CHECK_FALSE(c.has_empty_interior());
  CHECK_FALSE(c.is_nowhere_dense());
  CHECK_FALSE(c.is_meagre());
  const Space fin = Space::finite(3);
  const Region s = Region::subset(fin, {1});
  CHECK_FALSE(s.has_empty_interior());
  CHECK_FALSE(s.is_meagre());
  CHECK(Region::empty(fin).has_empty_interior());
}

TEST_CASE("membership and sampling") {
  CHECK_FALSE(lang("0*1").contains(pt("(0)")));
  CHECK(lang("0*1").contains(pt("0(1)")));
  CHECK(*Region::full(kBin).sample() == pt("(0)"));
  CHECK(*lang("0*1").sample() == pt("1(0)"));
  CHECK_FALSE(Region::empty(kBin).sample().has_value());
  CHECK(*Region::subset(Space::finite(4), {2, 3}).sample() == Point::index(2));
}

TEST_CASE("atoms") {
  const auto one = etale::atoms(kBin, {Region::cylinder(kBin, "0")});
  REQUIRE(one.size() == 2);
  CHECK(one[0].set == Region::cylinder(kBin, "0"));
  CHECK(one[1].set == Region::cylinder(kBin, "1"));
  const auto two = etale::atoms(kBin, {lang("0*1")});
  REQUIRE(two.size() == 2);
  CHECK(two[0].set == lang("0*1"));
  CHECK(two[1].set == Region::singleton(kBin, pt("(0)")));
  CHECK(two[1].sample == pt("(0)"));
  const auto none = etale::atoms(kBin, {});
  REQUIRE(none.size() == 1);
  CHECK(none[0].set.is_full());
}

TEST_CASE("regex syntax") {
  CHECK(lang("\xCE\xB5").is_full());
  CHECK(lang("()").is_full());
  CHECK(lang("\xE2\x88\x85").is_empty());
  CHECK(lang("X").is_full());
  CHECK(lang("0|1").is_full());
  CHECK(lang(".0") == (Region::cylinder(kBin, "00") | Region::cylinder(kBin, "10")));
  CHECK_THROWS_AS(lang("2"), etale::ScenarioError);
  CHECK_THROWS_AS(lang("(0"), etale::ScenarioError);
  const auto cyl = (lang("0") | lang("10")).cylinders();
  REQUIRE(cyl.has_value());
  CHECK(*cyl == std::vector<std::string>{"0", "10"});
  CHECK_FALSE(lang("0*1").cylinders().has_value());
}

TEST_CASE("open sets agree with the std::regex prefix oracle") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 150; ++i) {
    const std::string pattern = oracle::random_pattern(rng);
    const Region r = lang(pattern.c_str());
    const oracle::PrefixOracle o(pattern, "01");
    CHECK(r.is_open());
    for (int j = 0; j < 12; ++j) {
      const Point x = oracle::random_point(rng);
      INFO(pattern, " at ", x.to_string());
      CHECK(r.contains(x) == o.contains(x));
    }
  }
}

TEST_CASE("Boolean and closure laws on random constructible sets") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 80; ++i) {
    const Region a = lang(oracle::random_pattern(rng).c_str());
    const Region b = lang(oracle::random_pattern(rng).c_str()) - lang(oracle::random_pattern(rng).c_str());
    const Region c = lang(oracle::random_pattern(rng).c_str()).complement();
    CHECK(((a | b) | c) == (a | (b | c)));
    CHECK((a & (b | c)) == ((a & b) | (a & c)));
    CHECK((a | b).complement() == (a.complement() & b.complement()));
    for (const Region& s : {a, b, c, a ^ b}) {
      const Region cl = s.closure();
      CHECK(cl.closure() == cl);
      CHECK(s.subset_of(cl));
      CHECK(s.complement().interior() == cl.complement());
      const bool e = s.has_empty_interior();
      CHECK(s.is_nowhere_dense() == e);
      CHECK(s.is_meagre() == e);
    }
    CHECK((a & b).closure().subset_of(a.closure() & b.closure()));
  }
}

TEST_CASE("closure membership against a depth-bounded cylinder oracle") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 60; ++i) {
    const Region u = lang(oracle::random_pattern(rng).c_str());
    const Region cl = u.closure();
    const std::size_t states = u.dfa()->size();
    for (int j = 0; j < 8; ++j) {
      const Point x = oracle::random_point(rng);
      const std::size_t depth = x.prefix().size() + 2 * states * x.period().size();
      bool every_cylinder_meets = true;
      for (std::size_t n = 0; n <= depth && every_cylinder_meets; ++n)
        every_cylinder_meets = Region::cylinder(kBin, x.head(n)).intersects(u);
      CHECK(cl.contains(x) == every_cylinder_meets);
    }
  }
}

TEST_CASE("open set wrapper") {
  const OpenSet u = OpenSet::parse(kBin, "0*1");
  CHECK((u | OpenSet::cylinder(kBin, "0")).is_full());
  CHECK_THROWS_AS(OpenSet::from_region(Region::singleton(kBin, pt("(0)"))), etale::UsageError);
  CHECK_FALSE(u.is_clopen());
  CHECK(OpenSet::cylinder(kBin, "01").is_clopen());
}
