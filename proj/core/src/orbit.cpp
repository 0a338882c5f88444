#include "etale/orbit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <set>

#include "etale/error.hpp"

namespace etale {

bool ScalarMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

ScalarMatrix ScalarMatrix::adjoint() const {
  ScalarMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j).conj();
  return out;
}

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.cols_ != b.rows_) throw UsageError("matrix shapes do not match");
  ScalarMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return out;
}

bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string ScalarMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < cols_; ++j) out += (j ? ", " : "") + at(i, j).to_string();
  }
  return out + "]";
}

OrbitBasis orbit_basis(const GermSystem& gs, const Point& x, std::size_t bound) {
  OrbitBasis b{x, {}, !gs.has_finite_labels(), bound};
  std::set<Label> seen;
  for (Label t : gs.labels(bound)) {
    if (!gs.domain(t).contains(x)) continue;
    const Label c = gs.canonical(t, x);
    if (seen.insert(c).second) b.arrows.push_back({c, x});
  }
  std::sort(b.arrows.begin(), b.arrows.end());
  return b;
}

OrbitMatrix lambda_matrix(const SectionAlgebra& alg, const Section& f, const Point& x, std::size_t bound) {
  const GermSystem& gs = alg.system();
  OrbitMatrix out{orbit_basis(gs, x, bound), {}, false};
  out.truncated = out.basis.truncated;
  const auto& arrows = out.basis.arrows;
  out.matrix = ScalarMatrix(arrows.size(), arrows.size());
  for (std::size_t j = 0; j < arrows.size(); ++j) {
    const Arrow inv = arrow_inv(gs, arrows[j]);
    for (std::size_t i = 0; i < arrows.size(); ++i)
      out.matrix.at(i, j) = alg.j_eval(f, arrow_mul(gs, arrows[i], inv));
  }
  return out;
}

OrbitPoints orbit_points(const GermSystem& gs, const Point& x, std::size_t bound) {
  OrbitPoints out{{x}, !gs.has_finite_labels()};
  std::set<Point> seen{x};
  for (Label t : gs.labels(bound)) {
    if (!gs.domain(t).contains(x)) continue;
    Point y = gs.h(t).apply(x);
    if (seen.insert(y).second) out.points.push_back(std::move(y));
  }
  return out;
}

ScalarMatrix orbit_matrix(const SectionAlgebra& alg, const Section& f, const OrbitPoints& orbit) {
  const GermSystem& gs = alg.system();
  const auto& pts = orbit.points;
  ScalarMatrix m(pts.size(), pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j)
    for (const Term& t : f.terms) {
      if (!t.set.contains(pts[j])) continue;
      const Point y = gs.h(t.label).apply(pts[j]);
      const auto it = std::find(pts.begin(), pts.end(), y);
      if (it != pts.end()) m.at(static_cast<std::size_t>(it - pts.begin()), j) += t.coeff;
    }
  return m;
}

OrbitKernelVerdict in_orbit_kernel(const SectionAlgebra& alg, const Section& f) {
  const GermSystem& gs = alg.system();
  const std::size_t n = f.terms.size();
  std::vector<Region> sets;
  Region universe = Region::empty(gs.space());
  for (const Term& t : f.terms) {
    sets.push_back(t.set);
    universe = universe | t.set;
  }
  // index of the set where terms i < j send points to the same image
  std::vector<std::vector<std::size_t>> agree(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      agree[i][j] = sets.size();
      sets.push_back(pointwise_agreement(gs.h(f.terms[i].label), gs.h(f.terms[j].label)));
    }
  for (const Atom& a : atoms(universe, sets)) {
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (!a.inside[i] || used[i]) continue;
      Scalar sum = f.terms[i].coeff;
      for (std::size_t j = i + 1; j < n; ++j)
        if (a.inside[j] && !used[j] && a.inside[agree[i][j]]) {
          used[j] = true;
          sum += f.terms[j].coeff;
        }
      if (!sum.is_zero()) return {false, a.sample};
    }
  }
  return {true, std::nullopt};
}

double operator_norm(const ScalarMatrix& m, double tol) {
  if (!(tol > 0)) throw UsageError("tolerance must be positive");
  if (m.rows() == 0 || m.cols() == 0 || m.is_zero()) return 0;
  Eigen::MatrixXcd a(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = {m.at(i, j).real_double(), m.at(i, j).imag_double()};
  const Eigen::MatrixXcd h = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) throw BoundExceeded("eigen solver did not converge");
  const Eigen::Index top = solver.eigenvalues().size() - 1;
  const double lambda = std::max(0.0, solver.eigenvalues()(top));
  const Eigen::VectorXcd v = solver.eigenvectors().col(top);
  const double residual = (h * v - lambda * v).norm();
  if (residual > tol * std::max(1.0, lambda))
    throw BoundExceeded("operator norm residual " + std::to_string(residual) + " above tolerance");
  return std::sqrt(lambda);
}

namespace {

// Points on whose atoms every λ_x(f) is constant up to relabelling the
// basis: the partition generated by domains, witness sets, term supports
// and their preimages under every label.
std::optional<std::vector<Point>> constancy_points(const SectionAlgebra& alg, const Section& f) {
  const GermSystem& gs = alg.system();
  if (!gs.has_finite_labels()) return std::nullopt;
  const auto labels = gs.labels(0);
  if (labels.size() > 12) return std::nullopt;
  std::vector<Region> base;
  for (Label t : labels) base.push_back(gs.domain(t));
  for (Label t : labels)
    for (Label u : labels)
      if (t < u) base.push_back(gs.D(t, u));
  for (const Term& t : f.terms) base.push_back(t.set);
  std::vector<Region> sets = base;
  for (Label t : labels)
    for (const Region& s : base) sets.push_back(preimage(gs.h(t), s));
  std::vector<Point> out;
  for (const Atom& a : atoms(gs.space(), sets)) out.push_back(a.sample);
  return out;
}

std::vector<Point> support_points(const SectionAlgebra& alg, const Section& f) {
  const GermSystem& gs = alg.system();
  std::vector<Region> sets;
  for (const Term& t : f.terms) {
    sets.push_back(t.set);
    for (const Term& u : f.terms)
      if (t.label < u.label) sets.push_back(gs.D(t.label, u.label));
  }
  std::vector<Point> out;
  for (const Atom& a : atoms(gs.space(), sets)) out.push_back(a.sample);
  return out;
}

}  // namespace

NormProbe reduced_norm_probe(const SectionAlgebra& alg, const Section& f, std::vector<Point> points,
                             std::size_t bound, double tol) {
  const GermSystem& gs = alg.system();
  NormProbe probe;
  if (points.empty()) {
    if (gs.space().is_finite()) {
      for (std::size_t i = 0; i < gs.space().size(); ++i) points.push_back(Point::index(i));
      probe.exact = gs.has_finite_labels();
    } else if (auto exact = constancy_points(alg, f)) {
      points = std::move(*exact);
      probe.exact = true;
    } else {
      points = support_points(alg, f);
    }
  }
  for (const Point& x : points) probe.value = std::max(probe.value, operator_norm(lambda_matrix(alg, f, x, bound).matrix, tol));
  probe.points = std::move(points);
  return probe;
}

}  // namespace etale
