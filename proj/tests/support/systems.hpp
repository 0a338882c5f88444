#pragma once

// Small germ systems built directly through the library API, for tests that
// must not depend on the scenario loader.

#include <string>
#include <vector>

#include "etale/germ_system.hpp"

namespace systems {

inline const etale::Space& binary() {
  static const etale::Space s = etale::Space::cantor("01");
  return s;
}

inline etale::InverseSemigroup z2() {
  return etale::InverseSemigroup::validate({"1", "g"}, 0, {{0, 1}, {1, 0}});
}

/// Two copies of every point, glued away from (0): h_g = id, D_{g,1} = Lang(0*1).
inline etale::GermSystem dbl() {
  const auto& X = binary();
  return etale::GermSystem::with_witnesses(z2(), {etale::PartialMap::identity(X), etale::PartialMap::identity(X)},
                                           {{{1, 0}, etale::Region::parse(X, "0*1")}});
}

/// ℤ/2 acting trivially on one point.
inline etale::GermSystem z2_point() {
  const auto one = etale::Space::finite(1);
  return etale::GermSystem::from_action(z2(), {etale::PartialMap::identity(one), etale::PartialMap::identity(one)});
}

inline etale::GermSystem cuntz2() {
  const auto& X = binary();
  return etale::GermSystem::pseudogroup(
      {etale::PartialMap::parse(X, {"ε -> 0"}), etale::PartialMap::parse(X, {"ε -> 1"})}, {"v0", "v1"});
}

/// Standard generators of the symmetric inverse monoid I_n.
inline std::vector<etale::PartialMap> symmetric_generators(std::size_t n) {
  const auto space = etale::Space::finite(n);
  std::vector<long> transposition(n), cycle(n), corner(n);
  for (std::size_t i = 0; i < n; ++i) {
    transposition[i] = static_cast<long>(i);
    cycle[i] = static_cast<long>((i + 1) % n);
    corner[i] = i == 0 ? -1 : static_cast<long>(i);
  }
  std::swap(transposition[0], transposition[1]);
  return {etale::PartialMap::finite(space, transposition), etale::PartialMap::finite(space, cycle),
          etale::PartialMap::finite(space, corner)};
}

inline etale::GermSystem pair(std::size_t n) {
  return etale::GermSystem::from_closure(etale::generate_closure(symmetric_generators(n), {"s", "c", "p"}, 1000));
}

}  // namespace systems
