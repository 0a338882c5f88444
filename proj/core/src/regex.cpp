#include "etale/regex.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "etale/error.hpp"

namespace etale {

namespace {

constexpr std::string_view kEpsilon = "\xCE\xB5";
constexpr std::string_view kEmptySet = "\xE2\x88\x85";
constexpr int kAny = -1;

struct Nfa {
  struct Edge {
    int symbol;  // kAny or symbol index
    int to;
  };
  std::vector<std::vector<int>> eps;
  std::vector<std::vector<Edge>> edges;

  int add() {
    eps.emplace_back();
    edges.emplace_back();
    return static_cast<int>(eps.size()) - 1;
  }
};

struct Fragment {
  int in;
  int out;
};

class Parser {
 public:
  Parser(const Space& space, std::string_view text) : space_(space), text_(text) {}

  Fragment parse() {
    Fragment f = alternation();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

  Nfa nfa;

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ScenarioError("regex '" + std::string(text_) + "' at offset " + std::to_string(pos_) +
                        ": " + why);
  }

  void skip() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool at(std::string_view token) {
    skip();
    return text_.substr(pos_, token.size()) == token;
  }

  Fragment epsilon() {
    const int a = nfa.add();
    return {a, a};
  }

  Fragment empty_language() {
    return {nfa.add(), nfa.add()};
  }

  Fragment alternation() {
    Fragment left = concatenation();
    while (at("|")) {
      ++pos_;
      Fragment right = concatenation();
      const int in = nfa.add();
      const int out = nfa.add();
      nfa.eps[in] = {left.in, right.in};
      nfa.eps[left.out].push_back(out);
      nfa.eps[right.out].push_back(out);
      left = {in, out};
    }
    return left;
  }

  Fragment concatenation() {
    Fragment acc = epsilon();
    while (true) {
      skip();
      if (pos_ >= text_.size() || text_[pos_] == '|' || text_[pos_] == ')') return acc;
      Fragment next = repetition();
      nfa.eps[acc.out].push_back(next.in);
      acc.out = next.out;
    }
  }

  Fragment repetition() {
    Fragment f = atom();
    while (at("*")) {
      ++pos_;
      const int hub = nfa.add();
      nfa.eps[hub].push_back(f.in);
      nfa.eps[f.out].push_back(hub);
      f = {hub, hub};
    }
    return f;
  }

  Fragment atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    if (at(kEpsilon)) {
      pos_ += kEpsilon.size();
      return epsilon();
    }
    if (at(kEmptySet)) {
      pos_ += kEmptySet.size();
      return empty_language();
    }
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Fragment inner = alternation();
      if (!at(")")) fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (c == '.') {
      ++pos_;
      return symbol(kAny);
    }
    const int s = space_.symbol(c);
    if (s < 0) fail("symbol '" + std::string(1, c) + "' not in alphabet " + space_.alphabet());
    ++pos_;
    return symbol(s);
  }

  Fragment symbol(int s) {
    const int a = nfa.add();
    const int b = nfa.add();
    nfa.edges[a].push_back({s, b});
    return {a, b};
  }

  const Space& space_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::vector<bool> eps_closure(const Nfa& nfa, std::vector<bool> set) {
  std::vector<int> todo;
  for (std::size_t i = 0; i < set.size(); ++i)
    if (set[i]) todo.push_back(static_cast<int>(i));
  while (!todo.empty()) {
    const int q = todo.back();
    todo.pop_back();
    for (int r : nfa.eps[q])
      if (!set[r]) {
        set[r] = true;
        todo.push_back(r);
      }
  }
  return set;
}

}  // namespace

detail::Dfa compile_open_regex(const Space& space, std::string_view pattern) {
  if (!space.is_cantor()) throw UsageError("regular expressions need a Cantor space");
  Parser parser(space, pattern);
  const Fragment f = parser.parse();
  const Nfa& nfa = parser.nfa;
  const std::size_t k = space.arity();
  const std::size_t n = nfa.eps.size();

  std::map<std::vector<bool>, detail::State> ids;
  std::vector<std::vector<bool>> subsets;
  std::vector<detail::State> next;
  std::vector<std::uint8_t> finals;

  std::vector<bool> start(n, false);
  start[f.in] = true;
  start = eps_closure(nfa, std::move(start));
  ids.emplace(start, 0);
  subsets.push_back(start);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const std::vector<bool> current = subsets[i];
    finals.push_back(current[f.out] ? 1 : 0);
    for (std::size_t s = 0; s < k; ++s) {
      std::vector<bool> target(n, false);
      for (std::size_t q = 0; q < n; ++q) {
        if (!current[q]) continue;
        for (const auto& e : nfa.edges[q])
          if (e.symbol == kAny || e.symbol == static_cast<int>(s)) target[e.to] = true;
      }
      target = eps_closure(nfa, std::move(target));
      auto [it, inserted] = ids.emplace(target, static_cast<detail::State>(subsets.size()));
      if (inserted) subsets.push_back(target);
      next.push_back(it->second);
    }
  }
  return detail::open_from_prefix_dfa(k, next, finals);
}

}  // namespace etale
