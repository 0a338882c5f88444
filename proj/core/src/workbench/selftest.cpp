#include "etale/workbench/selftest.hpp"

#include <cmath>

#include "etale/freeness.hpp"
#include "etale/orbit.hpp"
#include "etale/workbench/gallery.hpp"

namespace etale::workbench {

void SuiteResult::check(bool ok, const std::string& what) {
  ++checks;
  if (ok) return;
  if (failures++ == 0) first_failure = what;
}

void SuiteResult::merge(const SuiteResult& o) {
  cases += o.cases;
  checks += o.checks;
  if (o.failures && failures == 0) first_failure = o.first_failure;
  failures += o.failures;
}

namespace {

bool small_routes_agree(const Region& r) {
  const bool a = r.has_empty_interior(), b = r.is_nowhere_dense(), c = r.is_meagre();
  return a == b && b == c;
}

bool same_function(const Space& space, const PointFunction& f, const PointFunction& g) {
  std::vector<PointFunction::Piece> parts;
  for (const auto& p : f.pieces()) parts.push_back(p);
  for (const auto& p : g.pieces()) parts.push_back({p.set, Scalar(-1) * p.value});
  return PointFunction::sum(space, parts).pieces().empty();
}

bool same_nf(const SectionAlgebra& a, const Section& f, const Section& g) { return a.is_zero(a.sub(f, g)); }

}  // namespace

SuiteResult topology_suite(random::Rng& rng, std::size_t cases) {
  SuiteResult r{"topology"};
  const Space X = Space::cantor("01");
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const Region u = random::open(rng, X, 4).closure().interior();
    const Region v = random::open(rng, X, 4).closure().interior();
    const std::string tag = "case " + std::to_string(i);
    r.check(u.is_open() && u == u.closure().interior(), tag + ": regular open");
    const Region boundary = u.closure() - u;
    r.check(small_routes_agree(u) && small_routes_agree(boundary) && small_routes_agree(u | boundary) &&
                small_routes_agree(v - u) && small_routes_agree((u ^ v) - (u | v).interior()),
            tag + ": empty interior / nowhere dense / meagre disagree");
    r.check(boundary.is_meagre() && (u.is_empty() || !u.is_meagre()), tag + ": boundary small, open set large");
    r.check((u | v).complement() == (u.complement() & v.complement()), tag + ": De Morgan");
    r.check((u & (v | boundary)) == ((u & v) | (u & boundary)), tag + ": distributivity");
    r.check(u.interior().subset_of(u) && u.subset_of(u.closure()), tag + ": interior ⊆ set ⊆ closure");
    r.check(u.closure().closure() == u.closure() && u.interior().interior() == u.interior(), tag + ": idempotence");
    r.check(u.interior() == u.complement().closure().complement(), tag + ": interior/closure duality");
    r.check((u | v).closure() == (u.closure() | v.closure()), tag + ": closure of a union");
    r.check((u & v).interior() == (u.interior() & v.interior()), tag + ": interior of an intersection");
  }
  return r;
}

SuiteResult germ_suite(const GermSystem& gs, random::Rng& rng, std::size_t cases) {
  SuiteResult r{"germs"};
  r.check(validate_system(gs, 2, true).empty(), "validate_system reports a failure");
  const auto labels = gs.labels(2);
  std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const Label t = labels[pick(rng)], u = labels[pick(rng)], w = labels[pick(rng)];
    const Point x = random::point(rng, gs.space());
    const std::string tag = gs.name(t) + ", " + gs.name(u) + " at " + x.to_string();
    if (gs.regime() == Regime::A) {
      // v ≤ t iff v = t v* v, read off the table; v must be defined at x
      const InverseSemigroup& s = *gs.semigroup();
      bool witness = false;
      for (Label v = 0; v < s.size() && !witness; ++v) {
        const Label vv = s.mul(s.star(v), v);
        witness = s.mul(t, vv) == v && s.mul(u, vv) == v && gs.h(v).defined_at(x);
      }
      r.check(gs.germ_eq(t, u, x) == witness, tag + ": germ_eq against witness search");
    }
    if (!gs.domain(t).contains(x)) continue;
    const Arrow a = make_arrow(gs, t, x);
    r.check(arrow_mul(gs, arrow_inv(gs, a), a) == make_arrow(gs, 0, x), tag + ": a⁻¹a is a unit");
    const Point y = range(gs, a);
    if (!gs.domain(u).contains(y)) continue;
    const Arrow b = make_arrow(gs, u, y);
    const Point z = range(gs, b);
    if (!gs.domain(w).contains(z)) continue;
    const Arrow c = make_arrow(gs, w, z);
    r.check(arrow_mul(gs, arrow_mul(gs, c, b), a) == arrow_mul(gs, c, arrow_mul(gs, b, a)), tag + ": associativity");
  }
  return r;
}

SuiteResult freeness_suite(const GermSystem& gs) {
  SuiteResult r{"freeness"};
  ++r.cases;
  FreenessReport fr;
  try {
    fr = freeness_report(gs, 2);
  } catch (const InvariantViolation& e) {
    r.check(false, e.what());
    return r;
  }
  for (const auto& f : implication_failures(fr)) r.check(false, "implication fails: " + f);
  r.check(fr.as_topologically_free.holds() == fr.topologically_free.holds(), "AS topologically free ⟺ free");
  if (fr.hausdorff) r.check(fr.effective.holds() == fr.topologically_free.holds(), "Hausdorff: effective ⟺ free");
  r.check(fr.hausdorff == is_hausdorff(gs, 2), "Hausdorff flag");
  r.check(dangerous_set(gs, 2).is_meagre(), "dangerous set is meagre");
  r.check(fr.hausdorff == dangerous_set(gs, 2).is_empty(), "Hausdorff ⟺ no dangerous points");
  return r;
}

SuiteResult algebra_suite(const GermSystem& gs, random::Rng& rng, std::size_t cases) {
  SuiteResult r{"algebra"};
  const SectionAlgebra a(gs);
  const Space& space = gs.space();
  const bool hausdorff = is_hausdorff(gs);
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const Section f = random::section(rng, gs), g = random::section(rng, gs), h = random::section(rng, gs);
    const std::string tag = "f = " + a.to_string(f);
    r.check(same_nf(a, a.mul(a.mul(f, g), h), a.mul(f, a.mul(g, h))), tag + ": associativity");
    r.check(same_nf(a, a.star(a.mul(f, g)), a.mul(a.star(g), a.star(f))), tag + ": (fg)* = g*f*");
    r.check(same_nf(a, a.star(a.star(f)), f), tag + ": f** = f");
    r.check(same_nf(a, a.mul(f, a.add(g, h)), a.add(a.mul(f, g), a.mul(f, h))), tag + ": distributivity");
    r.check(a.to_string(a.normal_form(f)) == a.to_string(a.normal_form_by_atoms(f)), tag + ": normal-form routes");
    r.check(a.is_singular(f) == a.el_kernel_member(f), tag + ": singularity routes");
    const Section d = a.sub(f, g);
    r.check(a.is_singular(d) == a.el_kernel_member(d), tag + ": singularity routes on a difference");
    if (hausdorff) r.check(a.is_singular(f) == a.is_zero(f), tag + ": singular ⟺ zero on a Hausdorff system");

    const Section u = random::unit_section(rng, gs), w = random::unit_section(rng, gs);
    const auto eu = a.expectation(u), ef = a.expectation(f), ew = a.expectation(w);
    const auto euf = a.expectation(a.mul(a.mul(u, f), w));
    std::vector<Region> sets;
    for (const auto* pf : {&eu, &ef, &ew, &euf})
      for (const auto& p : pf->pieces()) sets.push_back(p.set);
    bool bimodule = true;
    for (const Atom& at : atoms(space, sets))
      bimodule &= euf.value(at.sample) == eu.value(at.sample) * ef.value(at.sample) * ew.value(at.sample);
    r.check(bimodule, tag + ": E(ufw) = E(u)E(f)E(w)");
    const auto pos = a.expectation(a.mul(a.star(f), f));
    bool positive = true;
    for (const auto& p : pos.pieces()) positive &= p.value.is_real() && p.value.re() > 0;
    r.check(positive, tag + ": E(f*f) ≥ 0");
    std::vector<PointFunction::Piece> direct;
    for (const auto& t : u.terms) direct.push_back({t.set, t.coeff});
    r.check(same_function(space, eu, PointFunction::sum(space, direct)), tag + ": E is the identity on unit sections");
    r.check(same_function(space, a.expectation(a.star(f)), [&] {
              std::vector<PointFunction::Piece> c;
              for (const auto& p : ef.pieces()) c.push_back({p.set, p.value.conj()});
              return PointFunction::sum(space, c);
            }()),
            tag + ": E(f*) = E(f)*");
  }
  bool clopen_valued = true;
  for (Label t : gs.labels(2)) clopen_valued &= a.expectation(a.delta(t)).support().is_clopen();
  r.check(clopen_valued == hausdorff, "Hausdorff ⟺ E maps every slice to a clopen-supported function");
  return r;
}

SuiteResult orbit_suite(const GermSystem& gs, random::Rng& rng, std::size_t cases) {
  SuiteResult r{"orbit"};
  const SectionAlgebra a(gs);
  for (std::size_t i = 0; i < cases; ++i, ++r.cases) {
    const Section f = random::section(rng, gs), g = random::section(rng, gs);
    const Point x = random::point(rng, gs.space());
    const std::string tag = "f = " + a.to_string(f) + " at " + x.to_string();
    const auto mf = lambda_matrix(a, f, x), mg = lambda_matrix(a, g, x);
    if (!mf.truncated) {
      r.check(lambda_matrix(a, a.mul(f, g), x).matrix == mf.matrix * mg.matrix, tag + ": λ(fg) = λ(f)λ(g)");
      r.check(lambda_matrix(a, a.star(f), x).matrix == mf.matrix.adjoint(), tag + ": λ(f*) = λ(f)*");
    }
    double biggest = 0;
    for (std::size_t p = 0; p < mf.matrix.rows(); ++p)
      for (std::size_t q = 0; q < mf.matrix.cols(); ++q)
        biggest = std::max(biggest, std::sqrt(mf.matrix.at(p, q).norm2().get_d()));
    r.check(reduced_norm_probe(a, f, {x}).value >= biggest - 1e-9, tag + ": norm dominates entries");
    const Section u = random::unit_section(rng, gs);
    Scalar value;
    for (const auto& t : u.terms)
      if (t.set.contains(x)) value += t.coeff;
    r.check(orbit_matrix(a, u, orbit_points(gs, x)).at(0, 0) == value, tag + ": unit sections on the diagonal");
  }
  return r;
}

std::vector<SuiteResult> selftest(std::uint64_t seed, std::size_t cases) {
  random::Rng rng(seed);
  std::vector<SuiteResult> out{topology_suite(rng, cases)};
  SuiteResult germs{"germs"}, free{"freeness"}, algebra{"algebra"}, orbit{"orbit"};
  for (const auto& name : gallery_names()) {
    const Scenario s = load_json(gallery_scenario(name), "gallery:" + name);
    auto tagged = [&](SuiteResult r) {
      if (!r.ok()) r.first_failure = name + ": " + r.first_failure;
      return r;
    };
    germs.merge(tagged(germ_suite(s.system, rng, cases)));
    free.merge(tagged(freeness_suite(s.system)));
    algebra.merge(tagged(algebra_suite(s.system, rng, cases)));
    orbit.merge(tagged(orbit_suite(s.system, rng, cases)));
  }
  out.insert(out.end(), {germs, free, algebra, orbit});
  return out;
}

Json to_json(const std::vector<SuiteResult>& results) {
  Json j = Json::array();
  for (const auto& r : results) {
    Json e{{"suite", r.name}, {"cases", r.cases}, {"checks", r.checks}, {"failures", r.failures}};
    if (!r.ok()) e["first_failure"] = r.first_failure;
    j.push_back(std::move(e));
  }
  return j;
}

}  // namespace etale::workbench
