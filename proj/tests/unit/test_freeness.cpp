#include "doctest.h"
#include "etale/freeness.hpp"
#include "etale/random.hpp"
#include "systems.hpp"

using etale::GermSystem;
using etale::Label;
using etale::Point;
using etale::Region;
using etale::Verdict;

namespace {
Point pt(const char* s) { return Point::parse(s); }
const etale::Space& X() { return systems::binary(); }
}  // namespace

TEST_CASE("fixed-point sets") {
  const auto dbl = etale::fix_sets(systems::dbl(), 1);
  CHECK(dbl.fix == Region::singleton(X(), pt("(0)")));
  CHECK(dbl.underline_fix.is_empty());

  const auto zp = etale::fix_sets(systems::z2_point(), 1);
  CHECK(zp.fix.is_full());
  CHECK(zp.underline_fix.is_full());

  const GermSystem c = systems::cuntz2();
  const auto v0 = etale::fix_sets(c, c.parse_label("v0"));
  CHECK(v0.fix == Region::singleton(X(), pt("(0)")));
  CHECK(v0.underline_fix == Region::singleton(X(), pt("(0)")));
}

TEST_CASE("freeness reports of the reference systems") {
  const auto dbl = etale::freeness_report(systems::dbl());
  CHECK_FALSE(dbl.hausdorff);
  CHECK_FALSE(dbl.effective.holds());
  CHECK(dbl.effective.label == Label{1});
  CHECK(dbl.topologically_free.status == Verdict::Status::True);
  CHECK(dbl.as_topologically_free.status == Verdict::Status::True);
  CHECK(dbl.topologically_principal.status == Verdict::Status::True);

  const auto zp = etale::freeness_report(systems::z2_point());
  CHECK_FALSE(zp.topologically_free.holds());
  CHECK(zp.topologically_free.label == Label{1});
  CHECK(zp.topologically_free.to_string() == "false");

  for (std::size_t n = 2; n <= 4; ++n) {
    const auto r = etale::freeness_report(systems::pair(n));
    CHECK(r.hausdorff);
    CHECK(r.effective.status == Verdict::Status::True);
    CHECK(r.topologically_free.status == Verdict::Status::True);
    CHECK(r.as_topologically_free.status == Verdict::Status::True);
    CHECK(r.topologically_principal.status == Verdict::Status::True);
    CHECK(etale::is_minimal(systems::pair(n)).status == Verdict::Status::True);
  }

  const auto c = etale::freeness_report(systems::cuntz2(), 3);
  CHECK(c.hausdorff);
  CHECK(c.topologically_free.status == Verdict::Status::VerifiedUpTo);
  CHECK(c.topologically_free.to_string() == "verified up to 3");
  CHECK(c.effective.holds());
  CHECK_THROWS_AS(etale::freeness_report(systems::dbl(), 0), etale::UsageError);
}

TEST_CASE("invariance, saturation and minimality") {
  const GermSystem c = systems::cuntz2();
  CHECK(etale::saturate(c, Region::cylinder(X(), "0")).is_full());
  CHECK(etale::saturate(c, Region::cylinder(X(), "0110")).is_full());
  CHECK(etale::is_minimal(c, 3).status == Verdict::Status::VerifiedUpTo);
  CHECK(etale::invariant(systems::dbl(), Region::parse(X(), "0*1")));
  CHECK_FALSE(etale::invariant(c, Region::cylinder(X(), "0")));
  // the doubled-point system moves nothing: every set is invariant
  CHECK_FALSE(etale::is_minimal(systems::dbl(), 2).holds());

  const GermSystem p3 = systems::pair(3);
  const etale::Space three = etale::Space::finite(3);
  for (unsigned mask = 1; mask < 7; ++mask) {
    std::vector<std::size_t> pts;
    for (std::size_t i = 0; i < 3; ++i)
      if (mask >> i & 1u) pts.push_back(i);
    CHECK_FALSE(etale::invariant(p3, Region::subset(three, pts)));
  }
  CHECK(etale::invariant(p3, Region::full(three)));
}

TEST_CASE("pure-infiniteness witness search") {
  const GermSystem c = systems::cuntz2();
  const auto found = etale::pure_infiniteness_witness(c, Region::full(X()), 2, 2);
  REQUIRE(std::holds_alternative<etale::PureInfinitenessWitness>(found));
  const auto& w = std::get<etale::PureInfinitenessWitness>(found);
  CHECK(w.v.is_full());
  REQUIRE(w.slices.size() == 1);
  CHECK(c.name(w.slices[0].label) == "v0");
  // clause by clause
  const Region range = etale::image(c.h(w.slices[0].label), w.slices[0].set);
  CHECK(w.slices[0].set == w.v);
  CHECK(range.closure() == Region::cylinder(X(), "0"));
  CHECK(range.closure() != w.v);

  CHECK(std::holds_alternative<etale::NotFoundUpTo>(
      etale::pure_infiniteness_witness(systems::dbl(), Region::full(X()), 2, 2)));
  for (std::size_t n = 2; n <= 4; ++n)
    CHECK(std::holds_alternative<etale::NotFoundUpTo>(etale::pure_infiniteness_witness(
        systems::pair(n), Region::full(etale::Space::finite(n)), 2, 2)));
  CHECK(std::holds_alternative<etale::NotFoundUpTo>(
      etale::pure_infiniteness_witness(systems::z2_point(), Region::full(etale::Space::finite(1)), 2, 2)));
}

TEST_CASE("implication chain on random regime A systems") {
  etale::random::Rng rng(5);
  for (int round = 0; round < 60; ++round) {
    const etale::Space space = round % 2 ? etale::Space::finite(3) : etale::Space::finite(4);
    std::vector<etale::PartialMap> gens{etale::random::finite_map(rng, space), etale::random::finite_map(rng, space)};
    const GermSystem gs = GermSystem::from_closure(etale::generate_closure(gens, {"a", "b"}, 1000));
    const auto r = etale::freeness_report(gs);
    CHECK(etale::implication_failures(r).empty());
    CHECK(r.hausdorff);
    // discrete orbit spaces: saturations are invariant and contain their input
    const Region u = etale::random::clopen(rng, space, 0);
    const Region s = etale::saturate(gs, u);
    CHECK(u.subset_of(s));
    CHECK(etale::invariant(gs, s));
  }
}
