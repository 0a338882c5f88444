#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <string>
#include <vector>

#include "etale/error.hpp"
#include "etale/partial_map.hpp"

namespace etale {

/// A validated finite inverse semigroup with a two-sided unit. Elements are
/// indices into names(); the involution t ↦ t* and the natural partial order
/// are precomputed.
class InverseSemigroup {
 public:
  using Elem = std::size_t;

  /// Checks the table and builds the structure. `star` may be empty, in
  /// which case the pseudo-inverse is solved for. Throws AxiomViolation
  /// ("table", "unit", "associativity", "pseudo-inverse", "star",
  /// "idempotents-commute") naming a counterexample.
  static InverseSemigroup validate(std::vector<std::string> names, Elem unit,
                                   std::vector<std::vector<Elem>> table,
                                   std::vector<Elem> star = {});

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Elem t) const { return names_.at(t); }
  /// Throws UsageError for an unknown name.
  Elem index_of(const std::string& name) const;

  Elem unit() const noexcept { return unit_; }
  Elem mul(Elem t, Elem u) const { return table_[t][u]; }
  Elem star(Elem t) const { return star_[t]; }
  const std::vector<std::vector<Elem>>& table() const noexcept { return table_; }

  bool is_idempotent(Elem e) const { return table_[e][e] == e; }
  const std::vector<Elem>& idempotents() const noexcept { return idempotents_; }

  /// Natural order: t ≤ u iff t = u t* t.
  bool leq(Elem t, Elem u) const { return below_[u].test(t); }
  /// {v : v ≤ t}, as a bitset over the elements.
  const boost::dynamic_bitset<>& down_set(Elem t) const { return below_[t]; }

  /// {v : v ≤ t and v ≤ u}, in element order.
  std::vector<Elem> meet_witnesses(Elem t, Elem u) const;

 private:
  InverseSemigroup() = default;

  std::vector<std::string> names_;
  Elem unit_ = 0;
  std::vector<std::vector<Elem>> table_;
  std::vector<Elem> star_;
  std::vector<Elem> idempotents_;
  std::vector<boost::dynamic_bitset<>> below_;
};

/// A closure computation outgrew its cap.
class CapExceeded : public BoundExceeded {
 public:
  CapExceeded(std::size_t count, std::size_t frontier)
      : BoundExceeded("closure needs more than " + std::to_string(count) + " elements; frontier " +
                      std::to_string(frontier)),
        count_(count), frontier_(frontier) {}

  std::size_t count() const noexcept { return count_; }
  std::size_t frontier() const noexcept { return frontier_; }

 private:
  std::size_t count_;
  std::size_t frontier_;
};

/// A finite inverse semigroup together with its action by partial maps.
struct ActedSemigroup {
  InverseSemigroup semigroup;
  std::vector<PartialMap> maps;  // maps[t] = h_t
};

/// The inverse monoid generated by `gens` (identity adjoined as element 0).
/// Elements are ordered breadth-first by word length, then lexicographically
/// in the letter order g1..gm, g1*..gm*; each is named by its least word,
/// e.g. "a.b*". Throws CapExceeded when more than `cap` maps appear.
ActedSemigroup generate_closure(const std::vector<PartialMap>& gens,
                                const std::vector<std::string>& gen_names, std::size_t cap);

/// Symbol used for the letter joiner in generated element names.
inline constexpr char kWordJoiner = '.';

}  // namespace etale
