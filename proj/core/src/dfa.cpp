#include "etale/detail/dfa.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "etale/error.hpp"

namespace etale::detail {

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

std::vector<std::vector<std::uint32_t>> successors(const Dfa& a) {
  std::vector<std::vector<std::uint32_t>> succ(a.size());
  for (State q = 0; q < a.size(); ++q) {
    succ[q].reserve(a.arity);
    for (std::size_t s = 0; s < a.arity; ++s) succ[q].push_back(a.step(q, s));
  }
  return succ;
}

std::vector<bool> reachable(const Dfa& a, State from = 0) {
  std::vector<bool> seen(a.size(), false);
  std::vector<State> todo{from};
  seen[from] = true;
  while (!todo.empty()) {
    const State q = todo.back();
    todo.pop_back();
    for (std::size_t s = 0; s < a.arity; ++s) {
      const State r = a.step(q, s);
      if (!seen[r]) {
        seen[r] = true;
        todo.push_back(r);
      }
    }
  }
  return seen;
}

// States that can reach some state satisfying `target`.
std::vector<bool> can_reach(const Dfa& a, const std::vector<bool>& target) {
  std::vector<std::vector<State>> pred(a.size());
  for (State q = 0; q < a.size(); ++q)
    for (std::size_t s = 0; s < a.arity; ++s) pred[a.step(q, s)].push_back(q);
  std::vector<bool> hit = target;
  std::vector<State> todo;
  for (State q = 0; q < a.size(); ++q)
    if (hit[q]) todo.push_back(q);
  while (!todo.empty()) {
    const State q = todo.back();
    todo.pop_back();
    for (State p : pred[q]) {
      if (!hit[p]) {
        hit[p] = true;
        todo.push_back(p);
      }
    }
  }
  return hit;
}

// Renumbers the states reachable from `start` in BFS order (symbols ascending).
Dfa bfs_renumber(const Dfa& a, State start) {
  std::vector<State> id(a.size(), kUnset);
  std::vector<State> order{start};
  id[start] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t s = 0; s < a.arity; ++s) {
      const State r = a.step(order[i], s);
      if (id[r] == kUnset) {
        id[r] = static_cast<State>(order.size());
        order.push_back(r);
      }
    }
  }
  Dfa out;
  out.arity = a.arity;
  out.accept.resize(order.size());
  out.next.resize(order.size() * a.arity);
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.accept[i] = a.accept[order[i]];
    for (std::size_t s = 0; s < a.arity; ++s) out.next[i * a.arity + s] = id[a.step(order[i], s)];
  }
  return out;
}

// Zero the flags of transient states.
void normalize_flags(Dfa& a, const Sccs& sccs) {
  for (State q = 0; q < a.size(); ++q)
    if (!sccs.nontrivial[sccs.component[q]]) a.accept[q] = 0;
}

// Shortest nonempty word leading from q back to q.
std::string cycle_word(const Dfa& a, State q) {
  std::vector<State> parent(a.size(), kUnset);
  std::vector<char> via(a.size(), 0);
  std::deque<State> todo{q};
  std::vector<bool> seen(a.size(), false);
  seen[q] = true;
  while (!todo.empty()) {
    const State v = todo.front();
    todo.pop_front();
    for (std::size_t s = 0; s < a.arity; ++s) {
      const State r = a.step(v, s);
      if (r == q) {
        std::string word(1, static_cast<char>(s));
        for (State u = v; u != q; u = parent[u]) word.push_back(via[u]);
        std::reverse(word.begin(), word.end());
        return word;
      }
      if (!seen[r]) {
        seen[r] = true;
        parent[r] = v;
        via[r] = static_cast<char>(s);
        todo.push_back(r);
      }
    }
  }
  return {};
}

}  // namespace

State Dfa::run(State q, const std::string& word) const noexcept {
  for (char c : word) q = step(q, static_cast<unsigned char>(c));
  return q;
}

Sccs strongly_connected(const std::vector<std::vector<std::uint32_t>>& succ) {
  const std::size_t n = succ.size();
  Sccs out;
  out.component.assign(n, kUnset);
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> calls;
  std::uint32_t counter = 0;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    calls.emplace_back(root, 0);
    while (!calls.empty()) {
      const std::uint32_t v = calls.back().first;
      const std::size_t i = calls.back().second;
      if (i < succ[v].size()) {
        calls.back().second = i + 1;
        const std::uint32_t w = succ[v][i];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          calls.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        const auto comp = static_cast<std::uint32_t>(out.count++);
        std::size_t members = 0;
        std::uint32_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.component[w] = comp;
          ++members;
        } while (w != v);
        bool cyclic = members > 1;
        if (!cyclic)
          cyclic = std::find(succ[v].begin(), succ[v].end(), v) != succ[v].end();
        out.nontrivial.push_back(cyclic);
      }
      calls.pop_back();
      if (!calls.empty()) {
        const std::uint32_t parent = calls.back().first;
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return out;
}

Sccs strongly_connected(const Dfa& a) { return strongly_connected(successors(a)); }

Dfa empty_dfa(std::size_t arity) {
  Dfa d;
  d.arity = arity;
  d.next.assign(arity, 0);
  d.accept = {0};
  return d;
}

Dfa full_dfa(std::size_t arity) {
  Dfa d = empty_dfa(arity);
  d.accept = {1};
  return d;
}

Dfa cylinder_dfa(std::size_t arity, const std::string& word) {
  // states 0..m along the word, m = accepting sink, m+1 = rejecting sink
  const auto m = static_cast<State>(word.size());
  Dfa d;
  d.arity = arity;
  d.accept.assign(m + 2, 0);
  d.accept[m] = 1;
  d.next.assign((m + 2) * arity, m + 1);
  for (State i = 0; i < m; ++i)
    d.next[i * arity + static_cast<unsigned char>(word[i])] = i + 1;
  for (std::size_t s = 0; s < arity; ++s) d.next[m * arity + s] = m;
  return canonicalize(std::move(d));
}

Dfa lasso_dfa(std::size_t arity, const Lasso& x) {
  const auto u = static_cast<State>(x.prefix.size());
  const auto v = static_cast<State>(x.period.size());
  const State sink = u + v;
  Dfa d;
  d.arity = arity;
  d.accept.assign(sink + 1, 0);
  d.next.assign((sink + 1) * arity, sink);
  for (State i = 0; i < u; ++i)
    d.next[i * arity + static_cast<unsigned char>(x.prefix[i])] = i + 1;
  for (State j = 0; j < v; ++j) {
    d.next[(u + j) * arity + static_cast<unsigned char>(x.period[j])] = u + (j + 1) % v;
    d.accept[u + j] = 1;
  }
  return canonicalize(std::move(d));
}

Dfa open_from_prefix_dfa(std::size_t arity, const std::vector<State>& next,
                         const std::vector<std::uint8_t>& final_states) {
  const auto n = static_cast<State>(final_states.size());
  Dfa d;
  d.arity = arity;
  d.accept.assign(n + 1, 0);
  d.accept[n] = 1;
  d.next.resize((n + 1) * arity);
  for (State q = 0; q < n; ++q)
    for (std::size_t s = 0; s < arity; ++s)
      d.next[q * arity + s] = final_states[q] ? n : next[q * arity + s];
  for (std::size_t s = 0; s < arity; ++s) d.next[n * arity + s] = n;
  return canonicalize(std::move(d));
}

Dfa canonicalize(Dfa in) {
  Dfa a = bfs_renumber(in, 0);
  const std::size_t n = a.size();
  const std::size_t k = a.arity;
  const Sccs sccs = strongly_connected(a);
  normalize_flags(a, sccs);

  // Language equivalence of states through the ordered pair graph: (p,q) is
  // distinguishable iff it reaches a cyclic pair-SCC whose flags disagree.
  const std::size_t pairs = n * n;
  std::vector<std::vector<std::uint32_t>> pair_succ(pairs);
  for (State p = 0; p < n; ++p)
    for (State q = 0; q < n; ++q) {
      auto& out = pair_succ[p * n + q];
      out.reserve(k);
      for (std::size_t s = 0; s < k; ++s)
        out.push_back(static_cast<std::uint32_t>(a.step(p, s) * n + a.step(q, s)));
    }
  const Sccs pair_sccs = strongly_connected(pair_succ);
  std::vector<std::vector<std::uint32_t>> pair_pred(pairs);
  std::vector<bool> distinct(pairs, false);
  std::vector<std::uint32_t> todo;
  for (std::uint32_t i = 0; i < pairs; ++i) {
    for (std::uint32_t j : pair_succ[i]) pair_pred[j].push_back(i);
    if (pair_sccs.nontrivial[pair_sccs.component[i]] && a.accept[i / n] != a.accept[i % n]) {
      distinct[i] = true;
      todo.push_back(i);
    }
  }
  while (!todo.empty()) {
    const std::uint32_t i = todo.back();
    todo.pop_back();
    for (std::uint32_t j : pair_pred[i])
      if (!distinct[j]) {
        distinct[j] = true;
        todo.push_back(j);
      }
  }

  std::vector<State> cls(n, kUnset);
  std::vector<State> rep;
  for (State p = 0; p < n; ++p) {
    if (cls[p] != kUnset) continue;
    cls[p] = static_cast<State>(rep.size());
    rep.push_back(p);
    for (State q = p + 1; q < n; ++q)
      if (cls[q] == kUnset && !distinct[p * n + q]) cls[q] = cls[p];
  }

  Dfa quot;
  quot.arity = k;
  quot.accept.assign(rep.size(), 0);
  quot.next.resize(rep.size() * k);
  for (State c = 0; c < rep.size(); ++c)
    for (std::size_t s = 0; s < k; ++s) quot.next[c * k + s] = cls[a.step(rep[c], s)];

  // A flag per cyclic SCC of the quotient, read off one cycle through it.
  const Sccs qsccs = strongly_connected(quot);
  std::vector<int> comp_flag(qsccs.count, -1);
  for (State c = 0; c < quot.size(); ++c) {
    const auto comp = qsccs.component[c];
    if (!qsccs.nontrivial[comp]) continue;
    if (comp_flag[comp] < 0) {
      const std::string word = cycle_word(quot, c);
      comp_flag[comp] = accepts(a, Lasso{"", word}, rep[c]) ? 1 : 0;
    }
    quot.accept[c] = static_cast<std::uint8_t>(comp_flag[comp]);
  }
  return bfs_renumber(quot, 0);
}

Dfa combine(const Dfa& a, const Dfa& b, BoolOp op) {
  if (a.arity != b.arity) throw UsageError("automata over different alphabets");
  const std::size_t k = a.arity;
  std::vector<State> id(a.size() * b.size(), kUnset);
  std::vector<std::pair<State, State>> order{{0, 0}};
  id[0] = 0;
  Dfa out;
  out.arity = k;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [p, q] = order[i];
    const bool fa = a.accept[p] != 0;
    const bool fb = b.accept[q] != 0;
    bool f = false;
    switch (op) {
      case BoolOp::Union: f = fa || fb; break;
      case BoolOp::Intersect: f = fa && fb; break;
      case BoolOp::Minus: f = fa && !fb; break;
      case BoolOp::Xor: f = fa != fb; break;
    }
    out.accept.push_back(f ? 1 : 0);
    for (std::size_t s = 0; s < k; ++s) {
      const State p2 = a.step(p, s);
      const State q2 = b.step(q, s);
      State& slot = id[p2 * b.size() + q2];
      if (slot == kUnset) {
        slot = static_cast<State>(order.size());
        order.emplace_back(p2, q2);
      }
      out.next.push_back(slot);
    }
  }
  return canonicalize(std::move(out));
}

Dfa complement(const Dfa& a) {
  Dfa c = a;
  for (auto& f : c.accept) f = f ? 0 : 1;
  // transient states may carry either flag; canonicalize zeroes them
  return canonicalize(std::move(c));
}

bool is_empty(const Dfa& a) {
  const Sccs sccs = strongly_connected(a);
  const auto seen = reachable(a);
  for (State q = 0; q < a.size(); ++q)
    if (seen[q] && sccs.nontrivial[sccs.component[q]] && a.accept[q]) return false;
  return true;
}

bool accepts(const Dfa& a, const Lasso& x, State from) {
  State q = a.run(from, x.prefix);
  std::vector<bool> seen(a.size(), false);
  while (!seen[q]) {
    seen[q] = true;
    q = a.run(q, x.period);
  }
  // q starts a block that repeats forever, hence lies on a cycle
  return a.accept[q] != 0;
}

std::vector<bool> universal_states(const Dfa& a) {
  const Sccs sccs = strongly_connected(a);
  std::vector<bool> bad(a.size(), false);
  for (State q = 0; q < a.size(); ++q)
    bad[q] = sccs.nontrivial[sccs.component[q]] && !a.accept[q];
  auto reach_bad = can_reach(a, bad);
  for (std::size_t q = 0; q < reach_bad.size(); ++q) reach_bad[q] = !reach_bad[q];
  return reach_bad;
}

std::vector<bool> live_states(const Dfa& a) {
  const Sccs sccs = strongly_connected(a);
  std::vector<bool> good(a.size(), false);
  for (State q = 0; q < a.size(); ++q)
    good[q] = sccs.nontrivial[sccs.component[q]] && a.accept[q];
  return can_reach(a, good);
}

Dfa interior(const Dfa& a) {
  const auto univ = universal_states(a);
  const auto n = static_cast<State>(a.size());
  Dfa d;
  d.arity = a.arity;
  d.accept.assign(n + 1, 0);
  d.accept[n] = 1;
  d.next.resize((n + 1) * a.arity);
  for (State q = 0; q <= n; ++q)
    for (std::size_t s = 0; s < a.arity; ++s)
      d.next[q * a.arity + s] = (q == n || univ[q]) ? n : a.step(q, s);
  return canonicalize(std::move(d));
}

Dfa closure(const Dfa& a) {
  const auto live = live_states(a);
  const auto n = static_cast<State>(a.size());
  Dfa d;
  d.arity = a.arity;
  d.accept.assign(n + 1, 0);
  d.next.resize((n + 1) * a.arity);
  for (State q = 0; q <= n; ++q) {
    const bool alive = q < n && live[q];
    d.accept[q] = alive ? 1 : 0;
    for (std::size_t s = 0; s < a.arity; ++s) d.next[q * a.arity + s] = alive ? a.step(q, s) : n;
  }
  return canonicalize(std::move(d));
}

bool has_accepting_bottom_scc(const Dfa& a) {
  const Sccs sccs = strongly_connected(a);
  const auto seen = reachable(a);
  std::vector<int> bottom(sccs.count, 1);
  for (State q = 0; q < a.size(); ++q)
    for (std::size_t s = 0; s < a.arity; ++s)
      if (sccs.component[a.step(q, s)] != sccs.component[q]) bottom[sccs.component[q]] = 0;
  for (State q = 0; q < a.size(); ++q) {
    const auto c = sccs.component[q];
    if (seen[q] && sccs.nontrivial[c] && a.accept[q] && bottom[c]) return true;
  }
  return false;
}

std::optional<Lasso> sample(const Dfa& a) {
  const Sccs sccs = strongly_connected(a);
  std::vector<State> parent(a.size(), kUnset);
  std::vector<char> via(a.size(), 0);
  std::vector<bool> seen(a.size(), false);
  std::deque<State> todo{0};
  seen[0] = true;
  while (!todo.empty()) {
    const State q = todo.front();
    todo.pop_front();
    if (sccs.nontrivial[sccs.component[q]] && a.accept[q]) {
      Lasso out;
      for (State u = q; u != 0; u = parent[u]) out.prefix.push_back(via[u]);
      std::reverse(out.prefix.begin(), out.prefix.end());
      out.period = cycle_word(a, q);
      return out;
    }
    for (std::size_t s = 0; s < a.arity; ++s) {
      const State r = a.step(q, s);
      if (!seen[r]) {
        seen[r] = true;
        parent[r] = q;
        via[r] = static_cast<char>(s);
        todo.push_back(r);
      }
    }
  }
  return std::nullopt;
}

Dfa prefixed_union(const std::vector<std::pair<std::string, State>>& entries, const Dfa& target) {
  const std::size_t k = target.arity;
  if (entries.empty()) return empty_dfa(k);
  for (const auto& [prefix, state] : entries) {
    if (prefix.empty()) {
      if (entries.size() != 1) throw UsageError("prefixed_union: overlapping prefixes");
      return canonicalize(bfs_renumber(target, state));
    }
  }
  // Trie cells: >= 0 trie node, kTargetBase + s target state, kNone unset.
  constexpr std::int64_t kNone = -1;
  constexpr std::int64_t kTargetBase = std::int64_t{1} << 40;
  std::vector<std::vector<std::int64_t>> trie(1, std::vector<std::int64_t>(k, kNone));
  for (const auto& [prefix, state] : entries) {
    std::size_t node = 0;
    for (std::size_t i = 0; i + 1 < prefix.size(); ++i) {
      auto& cell = trie[node][static_cast<unsigned char>(prefix[i])];
      if (cell == kNone) {
        cell = static_cast<std::int64_t>(trie.size());
        trie.emplace_back(k, kNone);
      } else if (cell >= kTargetBase) {
        throw UsageError("prefixed_union: overlapping prefixes");
      }
      node = static_cast<std::size_t>(trie[node][static_cast<unsigned char>(prefix[i])]);
    }
    auto& last = trie[node][static_cast<unsigned char>(prefix.back())];
    if (last != kNone) throw UsageError("prefixed_union: overlapping prefixes");
    last = kTargetBase + state;
  }
  const auto t = static_cast<State>(trie.size());
  const auto sink = static_cast<State>(t + target.size());
  Dfa d;
  d.arity = k;
  d.accept.assign(sink + 1, 0);
  d.next.assign((sink + 1) * k, sink);
  for (State i = 0; i < t; ++i)
    for (std::size_t s = 0; s < k; ++s) {
      const auto cell = trie[i][s];
      if (cell == kNone) continue;
      d.next[i * k + s] =
          cell >= kTargetBase ? static_cast<State>(t + (cell - kTargetBase)) : static_cast<State>(cell);
    }
  for (State q = 0; q < target.size(); ++q) {
    d.accept[t + q] = target.accept[q];
    for (std::size_t s = 0; s < k; ++s) d.next[(t + q) * k + s] = t + target.step(q, s);
  }
  return canonicalize(std::move(d));
}

std::optional<std::vector<std::string>> clopen_cover(const Dfa& a) {
  const auto univ = universal_states(a);
  const auto live = live_states(a);
  std::vector<std::string> out;
  // explicit stack of (state, word); words are visited in lexicographic order
  std::vector<std::pair<State, std::string>> todo{{0, {}}};
  while (!todo.empty()) {
    auto [q, word] = std::move(todo.back());
    todo.pop_back();
    if (univ[q]) {
      out.push_back(std::move(word));
      continue;
    }
    if (!live[q]) continue;
    if (word.size() > a.size()) return std::nullopt;
    for (std::size_t s = a.arity; s-- > 0;) todo.emplace_back(a.step(q, s), word + static_cast<char>(s));
  }
  return out;
}

std::optional<std::vector<Lasso>> finite_points(const Dfa& a, std::size_t limit) {
  const Sccs sccs = strongly_connected(a);
  const auto live = live_states(a);
  const auto seen = reachable(a);
  std::vector<std::string> cycle_of(a.size());
  for (State q = 0; q < a.size(); ++q) {
    if (!seen[q] || !live[q]) continue;
    const auto c = sccs.component[q];
    if (!sccs.nontrivial[c]) continue;
    if (!a.accept[q]) return std::nullopt;
    std::size_t inside = 0;
    for (std::size_t s = 0; s < a.arity; ++s) {
      const State r = a.step(q, s);
      if (sccs.component[r] == c) ++inside;
      else if (live[r]) return std::nullopt;
    }
    if (inside != 1) return std::nullopt;
    cycle_of[q] = cycle_word(a, q);
  }
  std::vector<Lasso> out;
  std::vector<std::pair<State, std::string>> todo{{0, {}}};
  while (!todo.empty()) {
    auto [q, word] = std::move(todo.back());
    todo.pop_back();
    if (!live[q]) continue;
    if (!cycle_of[q].empty()) {
      out.push_back(Lasso{word, cycle_of[q]});
      if (out.size() > limit) return std::nullopt;
      continue;
    }
    for (std::size_t s = a.arity; s-- > 0;) todo.emplace_back(a.step(q, s), word + static_cast<char>(s));
  }
  return out;
}

}  // namespace etale::detail
