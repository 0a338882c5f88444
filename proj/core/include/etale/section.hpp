#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "etale/germ_system.hpp"
#include "etale/scalar.hpp"

namespace etale {

/// coeff · 1_{[t, set]}: a constant function on the bisection over a clopen
/// set ⊆ dom h_t.
struct Term {
  Label label;
  Region set;
  Scalar coeff;
};

/// A finite sum of slice terms. Plain data; the algebra lives in
/// SectionAlgebra.
struct Section {
  std::vector<Term> terms;
};

/// A piece of the germ-function of a section: value `coeff` on the germs
/// of `rep` over `base`. Bases need not be open.
struct Cell {
  Region base;
  Label rep;
  Scalar coeff;
};

/// Cells with pairwise distinct (rep, coeff), sorted. At each point, the
/// representative of a germ class is the least label of the section's
/// terms in that class. Empty iff the section is zero.
struct NormalForm {
  std::vector<Cell> cells;
  bool is_zero() const { return cells.empty(); }
};

/// A function on the space, constant on finitely many disjoint pieces;
/// zero off the pieces. Pieces carry distinct nonzero values.
class PointFunction {
 public:
  struct Piece {
    Region set;
    Scalar value;
  };

  /// Sums value·1_set over the inputs.
  static PointFunction sum(const Space& space, const std::vector<Piece>& parts);

  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  Scalar value(const Point& x) const;
  Region support() const;
  std::string to_string() const;

 private:
  explicit PointFunction(const Space& space) : space_(space) {}
  Space space_;
  std::vector<Piece> pieces_;
};

/// The convolution *-algebra of finite slice sums over a germ system.
class SectionAlgebra {
 public:
  explicit SectionAlgebra(GermSystem gs) : gs_(std::move(gs)) {}
  const GermSystem& system() const noexcept { return gs_; }

  Section zero() const { return {}; }
  /// 1_{[t, dom h_t]}.
  Section delta(Label t) const;
  /// c · 1_{[t, u]}. Throws UsageError unless u is clopen and inside dom h_t.
  Section slice(Label t, const Region& u, const Scalar& c = 1) const;

  Section add(const Section& f, const Section& g) const;
  Section sub(const Section& f, const Section& g) const;
  Section scale(const Scalar& c, const Section& f) const;
  /// Termwise (t,U,c)(u,V,d) = (tu, V ∩ h_u⁻¹(U), cd); identical slices are merged.
  Section mul(const Section& f, const Section& g) const;
  Section star(const Section& f) const;

  NormalForm normal_form(const Section& f) const;
  /// Same normal form computed by atom refinement over {U_i} ∪ {D_{t_i,t_j}}.
  NormalForm normal_form_by_atoms(const Section& f) const;
  bool is_zero(const Section& f) const { return normal_form(f).is_zero(); }

  /// j(f)(a): sum of the coefficients of the terms whose slice contains a.
  Scalar j_eval(const Section& f, const Arrow& a) const;

  /// E(f) = Σ c · 1_{U ∩ D_{t,1}}: the restriction of j(f) to unit germs.
  PointFunction expectation(const Section& f) const;

  /// The support of j(f) has empty interior: every normal-form cell has a
  /// base with empty interior.
  bool is_singular(const Section& f) const;
  /// The support of E(f* f) is meagre. Decided independently of is_singular.
  bool el_kernel_member(const Section& f) const;
  bool ess_equal(const Section& f, const Section& g) const { return is_singular(sub(f, g)); }

  /// "c * (t, <set>)" terms joined by + or -; "(t)" is δ_t and a missing
  /// coefficient is 1. Throws ScenarioError.
  Section parse(std::string_view text) const;
  std::string to_string(const Section& f) const;
  std::string to_string(const NormalForm& nf) const;

 private:
  GermSystem gs_;
};

}  // namespace etale
