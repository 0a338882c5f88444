#include <cmath>

#include "doctest.h"
#include "etale/orbit.hpp"
#include "etale/random.hpp"
#include "systems.hpp"

using etale::GermSystem;
using etale::Label;
using etale::Point;
using etale::Region;
using etale::Scalar;
using etale::ScalarMatrix;
using etale::Section;
using etale::SectionAlgebra;

namespace {

Point pt(const char* s) { return Point::parse(s); }

ScalarMatrix matrix(std::initializer_list<std::initializer_list<int>> rows) {
  ScalarMatrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (int v : r) m.at(i, j++) = Scalar(v);
    ++i;
  }
  return m;
}

double magnitude(const Scalar& s) { return std::sqrt(s.norm2().get_d()); }

}  // namespace

TEST_CASE("orbit bases on the doubled point") {
  const GermSystem d = systems::dbl();
  const auto off = etale::orbit_basis(d, pt("0(1)"));
  CHECK(off.arrows.size() == 1);
  CHECK_FALSE(off.truncated);
  const auto origin = etale::orbit_basis(d, pt("(0)"));
  REQUIRE(origin.arrows.size() == 2);
  CHECK(origin.arrows[0].label == 0);
  CHECK(origin.arrows[1].label == 1);

  const auto c = etale::orbit_basis(systems::cuntz2(), pt("(0)"), 2);
  CHECK(c.truncated);
  CHECK(c.bound == 2);
  CHECK(c.arrows.size() == 10);  // 1, v0, v1, v0*, v0.v0, v0.v1, v1.v0, v1.v1, v0*.v0*, v1.v0*
  CHECK(c.arrows[0].label == 0);
}

TEST_CASE("orbit matrices of the reference elements") {
  const SectionAlgebra d(systems::dbl());
  CHECK(etale::lambda_matrix(d, d.delta(1), pt("(0)")).matrix == matrix({{0, 1}, {1, 0}}));
  const Section f = d.sub(d.delta(1), d.delta(0));
  const auto m = etale::lambda_matrix(d, f, pt("(0)"));
  CHECK(m.matrix == matrix({{-1, 1}, {1, -1}}));
  CHECK_FALSE(m.matrix.is_zero());
  CHECK(etale::lambda_matrix(d, f, pt("0(1)")).matrix == matrix({{0}}));
  CHECK(m.matrix.to_string() == "[-1, 1; 1, -1]");

  const auto probe = etale::reduced_norm_probe(d, f);
  CHECK(probe.exact);
  CHECK(probe.value == doctest::Approx(2).epsilon(1e-9));
  CHECK(etale::reduced_norm_probe(d, d.zero()).value == 0);

  // The trivially acting group: π kills δ_1 − δ_g, λ does not.
  const SectionAlgebra z(systems::z2_point());
  const Section g = z.sub(z.delta(0), z.delta(1));
  const auto orbit = etale::orbit_points(z.system(), Point::index(0));
  REQUIRE(orbit.points.size() == 1);
  CHECK(etale::orbit_matrix(z, g, orbit) == matrix({{0}}));
  CHECK(etale::lambda_matrix(z, g, Point::index(0)).matrix == matrix({{1, -1}, {-1, 1}}));
  const auto kernel = etale::in_orbit_kernel(z, g);
  CHECK(kernel.in_kernel);
  CHECK_FALSE(z.is_zero(g));
  CHECK_FALSE(z.is_singular(g));
  CHECK_FALSE(etale::in_orbit_kernel(z, z.delta(1)).in_kernel);

  // On the doubled point, π detects nothing beyond the unit germs either.
  CHECK(etale::in_orbit_kernel(d, f).in_kernel);
  const auto not_kernel = etale::in_orbit_kernel(d, d.delta(1));
  CHECK_FALSE(not_kernel.in_kernel);
  CHECK(not_kernel.witness.has_value());

  const SectionAlgebra p(systems::pair(2));
  const Label s = p.system().parse_label("s");
  const auto swap = etale::reduced_norm_probe(p, p.delta(s), {}, 2, 1e-9);
  CHECK(swap.exact);
  CHECK(swap.value == doctest::Approx(1).epsilon(1e-9));
  const SectionAlgebra c(systems::cuntz2());
  CHECK_FALSE(etale::reduced_norm_probe(c, c.delta(1)).exact);
}

TEST_CASE("operator norms") {
  CHECK(etale::operator_norm(matrix({{3, 0}, {0, 4}})) == doctest::Approx(4));
  CHECK(etale::operator_norm(matrix({{0, 0}, {0, 1}})) == doctest::Approx(1));
  CHECK(etale::operator_norm(matrix({{1, 1}, {1, 1}})) == doctest::Approx(2));
  ScalarMatrix rot(1, 1);
  rot.at(0, 0) = Scalar(3, 4);
  CHECK(etale::operator_norm(rot) == doctest::Approx(5));
  CHECK(etale::operator_norm(ScalarMatrix()) == 0);
  CHECK_THROWS_AS(etale::operator_norm(rot, 0), etale::UsageError);
}

TEST_CASE("λ_x is a *-homomorphism on untruncated bases") {
  etale::random::Rng rng(41);
  for (const GermSystem& gs : {systems::dbl(), systems::z2_point(), systems::pair(2), systems::pair(3)}) {
    const SectionAlgebra a(gs);
    for (int i = 0; i < 20; ++i) {
      const Section f = etale::random::section(rng, gs);
      const Section g = etale::random::section(rng, gs);
      const Point x = etale::random::point(rng, gs.space());
      const auto mf = etale::lambda_matrix(a, f, x), mg = etale::lambda_matrix(a, g, x);
      CHECK_FALSE(mf.truncated);
      CHECK(etale::lambda_matrix(a, a.mul(f, g), x).matrix == mf.matrix * mg.matrix);
      CHECK(etale::lambda_matrix(a, a.star(f), x).matrix == mf.matrix.adjoint());
      CHECK(etale::lambda_matrix(a, a.add(f, g), x).matrix.rows() == mf.matrix.rows());

      // operator norm dominates every entry
      double biggest = 0;
      for (std::size_t r = 0; r < mf.matrix.rows(); ++r)
        for (std::size_t c = 0; c < mf.matrix.cols(); ++c) biggest = std::max(biggest, magnitude(mf.matrix.at(r, c)));
      const auto probe = etale::reduced_norm_probe(a, f, {x});
      CHECK(probe.value >= biggest - 1e-9);
      CHECK(etale::reduced_norm_probe(a, f).value >= probe.value - 1e-9);

      // zero sections have zero matrices
      CHECK(etale::lambda_matrix(a, a.sub(f, f), x).matrix.is_zero());
    }
  }
}

TEST_CASE("unit-label sections are seen on the diagonal of π") {
  etale::random::Rng rng(43);
  for (const GermSystem& gs : {systems::dbl(), systems::cuntz2(), systems::z2_point(), systems::pair(3)}) {
    const SectionAlgebra a(gs);
    for (int i = 0; i < 20; ++i) {
      const Section u = etale::random::unit_section(rng, gs);
      const Point x = etale::random::point(rng, gs.space());
      Scalar value;
      for (const auto& t : u.terms)
        if (t.set.contains(x)) value += t.coeff;
      const auto orbit = etale::orbit_points(gs, x);
      CHECK(etale::orbit_matrix(a, u, orbit).at(0, 0) == value);
      CHECK(etale::in_orbit_kernel(a, u).in_kernel == a.is_zero(u));
    }
  }
}

TEST_CASE("λ_x is constant on the atoms of the probe partition") {
  etale::random::Rng rng(47);
  const SectionAlgebra a(systems::dbl());
  for (int i = 0; i < 20; ++i) {
    const Section f = etale::random::section(rng, a.system());
    const auto probe = etale::reduced_norm_probe(a, f);
    REQUIRE(probe.exact);
    for (int k = 0; k < 10; ++k) {
      const Point y = etale::random::point(rng, a.system().space());
      // the sample point whose λ-matrix y should share: same basis labels
      // and same matrix, as λ is constant on the atom containing y
      const auto my = etale::lambda_matrix(a, f, y);
      bool matched = false;
      for (const Point& x : probe.points) {
        const auto mx = etale::lambda_matrix(a, f, x);
        if (mx.matrix == my.matrix && mx.basis.arrows.size() == my.basis.arrows.size()) matched = true;
      }
      CHECK(matched);
    }
  }
}
