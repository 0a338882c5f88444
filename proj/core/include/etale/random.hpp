#pragma once

#include <random>
#include <string>
#include <vector>

#include "etale/partial_map.hpp"
#include "etale/point.hpp"
#include "etale/region.hpp"
#include "etale/section.hpp"

// Random generators shared by the self-test command and the test suites.
namespace etale::random {

using Rng = std::mt19937_64;

/// A complete prefix code: a random finite partition of Σ^ω into cylinders.
std::vector<std::string> prefix_code(Rng& rng, const Space& space, int max_depth);

/// A random prefix exchange pairing parts of two random prefix codes.
PartialMap prefix_exchange(Rng& rng, const Space& space, int max_depth);

/// A random partial injection of a finite space.
PartialMap finite_map(Rng& rng, const Space& space);

PartialMap partial_map(Rng& rng, const Space& space, int max_depth);

/// A random ultimately periodic point (finite: a random index).
Point point(Rng& rng, const Space& space, int max_len = 4);

/// A random clopen set (union of cylinders of a random prefix code).
Region clopen(Rng& rng, const Space& space, int max_depth);

/// A random open set built from cylinders and an optional non-clopen part.
Region open(Rng& rng, const Space& space, int max_depth);

/// A small random scalar: an integer or half-integer, sometimes complex.
Scalar scalar(Rng& rng);

/// A random section with up to max_terms slice terms over labels(bound).
Section section(Rng& rng, const GermSystem& gs, std::size_t max_terms = 3, std::size_t bound = 2);

/// A random section supported on the unit label.
Section unit_section(Rng& rng, const GermSystem& gs, std::size_t max_terms = 2);

}  // namespace etale::random
