#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "etale/point.hpp"
#include "etale/region.hpp"
#include "etale/space.hpp"

namespace etale {

/// One prefix-rewrite rule a·w ↦ b·w (alphabet words).
struct Rule {
  std::string from;
  std::string to;
  friend auto operator<=>(const Rule&, const Rule&) = default;
  friend bool operator==(const Rule&, const Rule&) = default;
};

/// A partial homeomorphism of the space: a partial injection of a finite
/// set, or a prefix exchange of Cantor space whose rules have pairwise
/// disjoint domain cylinders and pairwise disjoint range cylinders.
///
/// Values are canonical: sibling rules (p·s → q·s for every symbol s) are
/// merged and rules are sorted, so equal maps compare equal.
class PartialMap {
 public:
  static PartialMap identity(const Space& space);
  static PartialMap empty(const Space& space);
  /// Identity on a clopen set. Throws UsageError when `u` is not clopen.
  static PartialMap identity_on(const Region& u);
  /// Finite backend: image[i] is the image of i, or -1 where undefined.
  static PartialMap finite(const Space& space, std::vector<long> image);
  /// Cantor backend. Throws UsageError when cylinders overlap.
  static PartialMap prefix_exchange(const Space& space, std::vector<Rule> rules);

  /// Parses rules "a -> b" (ε or nothing for the empty word), "id" and
  /// "id on <set>". On a finite space a and b are point indices.
  static PartialMap parse(const Space& space, const std::vector<std::string>& rules);

  const Space& space() const noexcept { return space_; }
  const std::vector<Rule>& rules() const noexcept { return rules_; }
  const std::vector<long>& image() const noexcept { return image_; }

  Region domain() const;
  Region range() const;
  bool is_identity() const;
  bool is_empty() const;
  bool defined_at(const Point& x) const;

  /// Throws UsageError when x is outside the domain.
  Point apply(const Point& x) const;

  std::string to_string() const;
  std::vector<std::string> to_rules() const;

  friend bool operator==(const PartialMap&, const PartialMap&) = default;
  friend bool operator<(const PartialMap& a, const PartialMap& b) {
    return a.to_string() < b.to_string();
  }

 private:
  explicit PartialMap(const Space& space) : space_(space) {}
  void canonicalize();

  Space space_;
  std::vector<Rule> rules_;
  std::vector<long> image_;
};

/// The rule with common trailing letters dropped. Two rules defined at a
/// point agree on a neighbourhood of it iff their reduced rules coincide.
Rule reduced_rule(Rule r);

/// f ∘ g, defined on g⁻¹(dom f ∩ ran g).
PartialMap compose(const PartialMap& f, const PartialMap& g);
PartialMap invert(const PartialMap& f);
/// f restricted to a clopen set. Throws UsageError on non-clopen `u`.
PartialMap restrict(const PartialMap& f, const Region& u);

/// Image and preimage of a constructible set (open sets stay open).
Region image(const PartialMap& f, const Region& u);
Region preimage(const PartialMap& f, const Region& u);

/// {x ∈ dom f : f(x) = x}: a clopen part plus finitely many isolated points.
struct FixRegion {
  Region clopen_part;
  std::vector<Point> isolated_points;

  Region to_region() const;
  /// Empty interior iff the clopen part is empty.
  bool has_empty_interior() const { return clopen_part.is_empty(); }
};
FixRegion fix_region(const PartialMap& f);

/// Largest open set on which f and g agree: a clopen union of cylinders.
Region local_agreement(const PartialMap& f, const PartialMap& g);
/// {x : f(x) and g(x) defined and equal}: local agreement plus isolated points.
Region pointwise_agreement(const PartialMap& f, const PartialMap& g);

}  // namespace etale
