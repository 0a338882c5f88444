#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "etale/random.hpp"
#include "etale/workbench/report.hpp"

namespace etale::workbench {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0; }
  void check(bool ok, const std::string& what);
  void merge(const SuiteResult& other);
};

/// Three routes to "small" agree, plus Boolean and closure laws, on random
/// regular open sets of {0,1}^ω and their boundaries.
SuiteResult topology_suite(random::Rng& rng, std::size_t cases);

/// Witness sets against a brute-force search over the table (finite
/// labels), and arrow associativity and inverse laws.
SuiteResult germ_suite(const GermSystem& gs, random::Rng& rng, std::size_t cases);

/// Implications between the freeness conditions, AS ⟺ free, and
/// effective ⟺ free on Hausdorff systems.
SuiteResult freeness_suite(const GermSystem& gs);

/// *-algebra laws, expectation laws, the Hausdorff test through E, both
/// normal-form routes and both singularity routes, on `cases` random triples.
SuiteResult algebra_suite(const GermSystem& gs, random::Rng& rng, std::size_t cases);

/// λ_x is a *-homomorphism on untruncated bases, and the norm probe
/// dominates matrix entries.
SuiteResult orbit_suite(const GermSystem& gs, random::Rng& rng, std::size_t cases);

/// Every suite over every gallery system, `cases` random cases each.
std::vector<SuiteResult> selftest(std::uint64_t seed = 20240601, std::size_t cases = 50);
Json to_json(const std::vector<SuiteResult>& results);

}  // namespace etale::workbench
