#pragma once

// Deterministic weak automata over symbol indices 0..arity-1.
//
// A run on an infinite word eventually stays inside one strongly connected
// component; the word is accepted iff that component is flagged. Flags are
// kept constant on every nontrivial SCC and are zero on transient states, so
// the canonical form (reachable, language-minimal, BFS-numbered) is unique
// and set equality is vector equality.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace etale::detail {

using State = std::uint32_t;

struct Dfa {
  std::size_t arity = 2;
  std::vector<State> next;           // next[q * arity + a]
  std::vector<std::uint8_t> accept;  // per state

  std::size_t size() const noexcept { return accept.size(); }
  State step(State q, std::size_t a) const noexcept { return next[q * arity + a]; }
  State run(State q, const std::string& word) const noexcept;

  friend bool operator==(const Dfa&, const Dfa&) = default;
  friend auto operator<=>(const Dfa&, const Dfa&) = default;
};

/// Ultimately periodic word given as (prefix, period) of symbol indices.
struct Lasso {
  std::string prefix;
  std::string period;
};

enum class BoolOp { Union, Intersect, Minus, Xor };

Dfa empty_dfa(std::size_t arity);
Dfa full_dfa(std::size_t arity);
Dfa cylinder_dfa(std::size_t arity, const std::string& word);
Dfa lasso_dfa(std::size_t arity, const Lasso& point);

/// Open set of all words having a prefix accepted by a complete finite-word DFA.
Dfa open_from_prefix_dfa(std::size_t arity, const std::vector<State>& next,
                         const std::vector<std::uint8_t>& final_states);

Dfa canonicalize(Dfa a);
Dfa combine(const Dfa& a, const Dfa& b, BoolOp op);
Dfa complement(const Dfa& a);

bool is_empty(const Dfa& a);
bool accepts(const Dfa& a, const Lasso& x, State from = 0);

/// States all of whose continuations are accepted.
std::vector<bool> universal_states(const Dfa& a);
/// States with at least one accepted continuation.
std::vector<bool> live_states(const Dfa& a);

Dfa interior(const Dfa& a);
Dfa closure(const Dfa& a);

/// True iff a reachable accepting SCC has no outgoing edges.
bool has_accepting_bottom_scc(const Dfa& a);

/// Shortlex-least path to an accepting cycle, closed by the shortlex-least cycle.
std::optional<Lasso> sample(const Dfa& a);

/// ⋃ prefix_i · L(target from state_i); prefixes must be pairwise incomparable.
Dfa prefixed_union(const std::vector<std::pair<std::string, State>>& entries, const Dfa& target);

/// Maximal cylinders inside the set, or nullopt if the set is not clopen.
std::optional<std::vector<std::string>> clopen_cover(const Dfa& a);

/// Enumerates the set when it is finite (at most `limit` points).
std::optional<std::vector<Lasso>> finite_points(const Dfa& a, std::size_t limit = 64);

/// SCC decomposition of an arbitrary graph given by adjacency lists.
struct Sccs {
  std::vector<std::uint32_t> component;  // per node
  std::vector<bool> nontrivial;          // per component: has a cycle
  std::size_t count = 0;
};
Sccs strongly_connected(const std::vector<std::vector<std::uint32_t>>& succ);
Sccs strongly_connected(const Dfa& a);

}  // namespace etale::detail
