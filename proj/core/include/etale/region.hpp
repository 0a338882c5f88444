#pragma once

#include <boost/dynamic_bitset.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "etale/detail/dfa.hpp"
#include "etale/point.hpp"
#include "etale/space.hpp"

namespace etale {

/// A constructible subset of a Space: a Boolean combination of regular open
/// sets. On Cantor space the representation is a canonical weak automaton,
/// so two regions are equal iff their representations are identical. On a
/// finite space it is a bitset.
///
/// Every predicate is decided exactly. For regions, "meagre", "nowhere
/// dense" and "empty interior" coincide; the three predicates are computed
/// along independent routes so that the coincidence can be tested.
class Region {
 public:
  static Region empty(const Space& space);
  static Region full(const Space& space);
  /// [w] = w·Σ^ω for an alphabet word w.
  static Region cylinder(const Space& space, std::string_view word);
  static Region singleton(const Space& space, const Point& x);
  /// Subset of a finite space.
  static Region subset(const Space& space, const std::vector<std::size_t>& points);
  static Region from_bits(const Space& space, boost::dynamic_bitset<> bits);
  static Region from_dfa(const Space& space, detail::Dfa dfa);

  /// Open set from text: an anchored regular expression (Cantor; words with
  /// a prefix in the language), or "{i,j,...}" (finite). "X" and "∅" are
  /// accepted on both backends.
  static Region parse(const Space& space, std::string_view text);

  const Space& space() const noexcept { return space_; }

  bool is_empty() const;
  bool is_full() const;
  bool contains(const Point& x) const;

  Region operator|(const Region& other) const;
  Region operator&(const Region& other) const;
  Region operator-(const Region& other) const;
  Region operator^(const Region& other) const;
  Region complement() const;

  Region closure() const;
  Region interior() const;

  bool has_empty_interior() const;
  bool is_nowhere_dense() const;
  bool is_meagre() const;

  bool is_open() const;
  bool is_closed() const;
  bool is_clopen() const;

  bool subset_of(const Region& other) const;
  bool intersects(const Region& other) const;

  /// Deterministic sample: least index, or the shortlex-least lasso u·v^ω.
  std::optional<Point> sample() const;

  /// Maximal cylinders (alphabet words) covering the set, when clopen.
  std::optional<std::vector<std::string>> cylinders() const;
  /// The set's points, when it is finite (Cantor backend: small point sets).
  std::optional<std::vector<Point>> points(std::size_t limit = 64) const;

  /// Human-readable canonical description, e.g. "[0] ∪ [10]", "X ∖ {(0)}".
  std::string describe() const;

  const detail::Dfa* dfa() const noexcept { return space_.is_finite() ? nullptr : &dfa_; }
  const boost::dynamic_bitset<>* bits() const noexcept {
    return space_.is_finite() ? &bits_ : nullptr;
  }

  friend bool operator==(const Region& a, const Region& b);
  friend bool operator<(const Region& a, const Region& b);

 private:
  explicit Region(const Space& space) : space_(space) {}

  detail::Lasso to_lasso(const Point& x) const;
  Point from_lasso(const detail::Lasso& l) const;

  Space space_;
  boost::dynamic_bitset<> bits_;
  detail::Dfa dfa_;
};

/// A region known to be open. Unions and intersections stay open.
class OpenSet {
 public:
  static OpenSet empty(const Space& space) { return OpenSet(Region::empty(space)); }
  static OpenSet full(const Space& space) { return OpenSet(Region::full(space)); }
  static OpenSet cylinder(const Space& space, std::string_view word) {
    return OpenSet(Region::cylinder(space, word));
  }
  static OpenSet parse(const Space& space, std::string_view text) {
    return OpenSet(Region::parse(space, text));
  }
  /// Throws UsageError when the region is not open.
  static OpenSet from_region(Region r);
  static OpenSet interior_of(const Region& r) { return OpenSet(r.interior()); }

  const Region& region() const noexcept { return region_; }
  operator const Region&() const noexcept { return region_; }  // NOLINT(google-explicit-constructor)
  const Space& space() const noexcept { return region_.space(); }

  OpenSet operator|(const OpenSet& o) const { return OpenSet(region_ | o.region_); }
  OpenSet operator&(const OpenSet& o) const { return OpenSet(region_ & o.region_); }
  Region operator-(const Region& o) const { return region_ - o; }

  bool is_empty() const { return region_.is_empty(); }
  bool is_full() const { return region_.is_full(); }
  bool is_clopen() const { return region_.is_clopen(); }
  bool contains(const Point& x) const { return region_.contains(x); }
  bool subset_of(const Region& o) const { return region_.subset_of(o); }
  Region closure() const { return region_.closure(); }
  std::optional<Point> sample() const { return region_.sample(); }
  std::optional<std::vector<std::string>> cylinders() const { return region_.cylinders(); }
  std::string describe() const { return region_.describe(); }

  friend bool operator==(const OpenSet& a, const OpenSet& b) { return a.region_ == b.region_; }
  friend bool operator<(const OpenSet& a, const OpenSet& b) { return a.region_ < b.region_; }

 private:
  explicit OpenSet(Region r) : region_(std::move(r)) {}

  Region region_;
};

/// Nonempty atoms of the Boolean algebra generated by `sets` inside `universe`.
struct Atom {
  Region set;
  std::vector<bool> inside;  // membership pattern, one entry per input set
  Point sample;
};
std::vector<Atom> atoms(const Region& universe, const std::vector<Region>& sets);
std::vector<Atom> atoms(const Space& space, const std::vector<Region>& sets);

}  // namespace etale
