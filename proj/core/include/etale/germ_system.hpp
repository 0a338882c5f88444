#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "etale/inverse_semigroup.hpp"
#include "etale/partial_map.hpp"
#include "etale/point.hpp"
#include "etale/region.hpp"

namespace etale {

/// How the germ-witness sets D_{t,u} arise.
///  A: a finite inverse semigroup acting by partial maps; D_{t,u} is the
///     union of dom h_v over v ≤ t, u.
///  B: the pseudogroup generated by finitely many prefix exchanges; labels
///     are the generated maps themselves and D_{t,u} is their local agreement.
///  C: a finite inverse semigroup with user-supplied witness sets.
enum class Regime { A, B, C };

const char* to_string(Regime r);

using Label = std::size_t;

/// A groupoid presentation: labels with partial maps, a multiplication and
/// involution on labels, and open witness sets deciding germ equality.
/// Label 0 is always the unit, acting as the identity.
///
/// Regime B interns labels lazily (breadth-first when enumerated by word
/// length); interning is thread-safe and never renumbers existing labels,
/// so a GermSystem is logically immutable. Copies share their caches.
class GermSystem {
 public:
  /// Regime A. Checks that the maps form an action: h_1 = id,
  /// h_{tu} = h_t ∘ h_u and h_{t*} = h_t⁻¹ (AxiomViolation "action").
  static GermSystem from_action(InverseSemigroup s, std::vector<PartialMap> maps);
  static GermSystem from_closure(ActedSemigroup acted);

  /// Regime B. Generators must be prefix exchanges on a common Cantor space.
  static GermSystem pseudogroup(std::vector<PartialMap> gens, std::vector<std::string> names);

  /// Regime C. `witnesses` lists D_{t,u} for t ≠ u (either order); absent
  /// pairs are empty, and D_{t,t} defaults to dom h_t. Every axiom is
  /// validated; the first failure is thrown as an AxiomViolation.
  static GermSystem with_witnesses(InverseSemigroup s, std::vector<PartialMap> maps,
                                   const std::map<std::pair<Label, Label>, Region>& witnesses);

  const Space& space() const;
  Regime regime() const;
  bool has_finite_labels() const { return regime() != Regime::B; }

  /// Labels known so far (regime B: interned so far).
  std::size_t label_count() const;
  /// All labels (A, C), or every composition of generators and their
  /// inverses of word length ≤ bound, in breadth-first order (B).
  std::vector<Label> labels(std::size_t bound) const;
  /// Regime B generator labels, then their inverses.
  std::vector<Label> letters() const;

  const std::string& name(Label t) const;
  /// Resolves a label name. In regime B any word such as "v0.v1*" is
  /// accepted. Throws ScenarioError for unknown names.
  Label parse_label(const std::string& name) const;

  Label unit() const noexcept { return 0; }
  const PartialMap& h(Label t) const;
  const Region& domain(Label t) const;
  Label mul(Label t, Label u) const;
  Label star(Label t) const;

  /// Regime B: the label of a generated map (interned if new).
  Label intern(const PartialMap& m) const;

  const Region& D(Label t, Label u) const;
  bool germ_eq(Label t, Label u, const Point& x) const;
  /// Least label germ-equal to t at x. Throws UsageError if x ∉ dom h_t.
  Label canonical(Label t, const Point& x) const;

  /// Regimes A and C.
  const InverseSemigroup* semigroup() const;

  struct State;

 private:
  explicit GermSystem(std::shared_ptr<State> s) : s_(std::move(s)) {}
  std::shared_ptr<State> s_;
};

/// An arrow [t, x]: the germ of label t at the source point x.
/// Arrows built by make_arrow carry the canonical label, so equality of
/// arrows is equality of germs.
struct Arrow {
  Label label = 0;
  Point source = Point::index(0);

  friend bool operator==(const Arrow&, const Arrow&) = default;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

/// A basic open bisection {[t, x] : x ∈ set}, with set ⊆ dom h_t.
struct Slice {
  Label label;
  Region set;
};

Arrow make_arrow(const GermSystem& gs, Label t, const Point& x);
Point range(const GermSystem& gs, const Arrow& a);
/// a1 · a2; requires source(a1) = range(a2) (UsageError otherwise).
Arrow arrow_mul(const GermSystem& gs, const Arrow& a1, const Arrow& a2);
Arrow arrow_inv(const GermSystem& gs, const Arrow& a);
std::string to_string(const GermSystem& gs, const Arrow& a);

/// Every arrow of a finite system (finite space and finite label set).
std::vector<Arrow> enumerate_arrows(const GermSystem& gs);

struct AxiomFailure {
  std::string axiom;
  std::vector<Label> labels;
  std::optional<Point> witness;
  /// "labels t, u; witness point x"
  std::string where(const GermSystem& gs) const;
  std::string describe(const GermSystem& gs) const;
};

/// Checks unit, action, diagonal, symmetry, domain, agreement, transitivity,
/// right/left multiplicativity and star compatibility over labels(bound).
std::vector<AxiomFailure> validate_system(const GermSystem& gs, std::size_t bound = 2,
                                          bool stop_at_first = false);

/// Every D_{t,u} closed in dom h_t ∩ dom h_u (regime B: over labels(bound)).
bool is_hausdorff(const GermSystem& gs, std::size_t bound = 2);
inline bool units_closed(const GermSystem& gs, std::size_t bound = 2) { return is_hausdorff(gs, bound); }

/// ⋃_{t≠u} closure(D_{t,u}) ∩ dom h_t ∩ dom h_u ∖ D_{t,u}.
Region dangerous_set(const GermSystem& gs, std::size_t bound = 2);

struct IsotropyClass {
  Arrow arrow;
  bool trivial;  // germ-equal to the unit
};
/// Germ classes of labels fixing x, unit class first.
std::vector<IsotropyClass> isotropy_at(const GermSystem& gs, const Point& x, std::size_t bound = 2);

}  // namespace etale
