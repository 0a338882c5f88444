#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "etale/error.hpp"
#include "etale/germ_system.hpp"

namespace etale {

/// Germ-level fixed points of a label: Fix(t) = {x : h_t(x) = x} ∖ D_{t,1},
/// and the part of it away from the closure of D_{t,1}.
struct FixSets {
  Label label;
  Region fix;
  Region underline_fix;
};
FixSets fix_sets(const GermSystem& gs, Label t);

/// True / False(witness) / VerifiedUpTo(bound). Refutations are always exact.
struct Verdict {
  enum class Status { True, False, VerifiedUpTo };
  Status status = Status::True;
  std::optional<Label> label;   // witness label for False
  std::optional<Point> point;   // witness point for False
  std::size_t bound = 0;        // for VerifiedUpTo

  static Verdict yes() { return {}; }
  static Verdict no(std::optional<Label> t, std::optional<Point> x) { return {Status::False, t, std::move(x), 0}; }
  static Verdict up_to(std::size_t b) { return {Status::VerifiedUpTo, std::nullopt, std::nullopt, b}; }

  bool holds() const { return status != Status::False; }
  /// "true", "false", or "verified up to N".
  std::string to_string() const;
};

struct FreenessReport {
  std::vector<FixSets> fixes;
  Verdict effective;
  Verdict topologically_free;
  Verdict as_topologically_free;
  Verdict topologically_principal;
  bool hausdorff = true;
  std::size_t bound = 0;
};

/// Decides the four non-triviality conditions over labels(bound). Regime B
/// verdicts that hold are reported as VerifiedUpTo(bound). Throws
/// InvariantViolation if the recorded implications between them fail.
FreenessReport freeness_report(const GermSystem& gs, std::size_t bound = 2);

/// Names of the implications that fail in a report (empty when consistent).
std::vector<std::string> implication_failures(const FreenessReport& r);

/// h_t(u ∩ dom h_t) ⊆ u for every label (regime B: every generator and
/// inverse, which is exact for the generated pseudogroup).
bool invariant(const GermSystem& gs, const Region& u);

/// Saturation did not stabilise within the iteration cap.
class Unstable : public BoundExceeded {
 public:
  using BoundExceeded::BoundExceeded;
};

/// Least invariant set containing u, by adding images until a fixpoint.
Region saturate(const GermSystem& gs, const Region& u, std::size_t iter_cap = 64);

/// Every cylinder of depth ≤ depth (finite space: every point) saturates to
/// the whole space. Cantor verdicts that hold are VerifiedUpTo(depth); a
/// failure names the cylinder's sample point.
Verdict is_minimal(const GermSystem& gs, std::size_t depth = 3, std::size_t iter_cap = 64);

struct PureInfinitenessWitness {
  Region v;
  std::vector<Slice> slices;
};
struct NotFoundUpTo {
  std::size_t depth;
  std::size_t len;
};

/// Searches cylinders V ⊆ u of depth ≤ depth (finite space: nonempty
/// subsets), and tuples of at most max_tuple slices (t, dom h_t ∩ V) with
/// t among labels(len), for: ranges pairwise disjoint, sources covering V,
/// and closure of the union of ranges a proper subset of V.
std::variant<PureInfinitenessWitness, NotFoundUpTo> pure_infiniteness_witness(
    const GermSystem& gs, const Region& u, std::size_t depth = 2, std::size_t len = 2,
    std::size_t max_tuple = 3);

}  // namespace etale
