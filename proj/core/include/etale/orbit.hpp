#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "etale/section.hpp"

namespace etale {

/// A dense matrix of exact scalars.
class ScalarMatrix {
 public:
  ScalarMatrix() = default;
  ScalarMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  ScalarMatrix adjoint() const;
  friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
  friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b);
  /// Rows as "[a, b; c, d]".
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// The arrow classes with source x. Complete for finite label sets; regime B
/// uses labels(bound) and sets `truncated`.
struct OrbitBasis {
  Point base;
  std::vector<Arrow> arrows;
  bool truncated = false;
  std::size_t bound = 0;
};
OrbitBasis orbit_basis(const GermSystem& gs, const Point& x, std::size_t bound = 2);

struct OrbitMatrix {
  OrbitBasis basis;
  ScalarMatrix matrix;
  bool truncated = false;
};

/// λ_x(f) on ℓ²(arrows with source x): entry (a, b) = j(f)(a·b⁻¹).
OrbitMatrix lambda_matrix(const SectionAlgebra& alg, const Section& f, const Point& x, std::size_t bound = 2);

/// The orbit {h_t(x)}, x first, then in order of discovery over labels(bound).
struct OrbitPoints {
  std::vector<Point> points;
  bool truncated = false;
};
OrbitPoints orbit_points(const GermSystem& gs, const Point& x, std::size_t bound = 2);

/// π_[x](f) on ℓ²(orbit of x): entry (h_t z, z) collects c for each term
/// (t, U, c) with z ∈ U.
ScalarMatrix orbit_matrix(const SectionAlgebra& alg, const Section& f, const OrbitPoints& orbit);

/// Whether π_[x](f) = 0 for every point x, decided exactly; otherwise a
/// point z at which π(f) δ_z ≠ 0.
struct OrbitKernelVerdict {
  bool in_kernel;
  std::optional<Point> witness;
};
OrbitKernelVerdict in_orbit_kernel(const SectionAlgebra& alg, const Section& f);

/// Largest singular value of m, via a Hermitian eigensolver on m*·m.
/// Throws BoundExceeded if the eigen-residual exceeds tol (relative).
double operator_norm(const ScalarMatrix& m, double tol = 1e-9);

struct NormProbe {
  double value = 0;
  bool exact = false;  // the maximum over the probed points is the reduced norm
  std::vector<Point> points;
};
/// max over points of ‖λ_x(f)‖. With no points given, samples one point per
/// atom of a partition on which λ_x is constant (finite label sets; then the
/// result is exact), or per atom of f's supports (regime B; a lower bound).
NormProbe reduced_norm_probe(const SectionAlgebra& alg, const Section& f, std::vector<Point> points = {},
                             std::size_t bound = 2, double tol = 1e-9);

}  // namespace etale
