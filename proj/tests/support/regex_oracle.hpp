#pragma once

// Test-only oracle: decides x ∈ ⋃_{w∈L}[w] by taking Brzozowski
// derivatives of the pattern along the prefixes of x, independently of the
// automaton engine. (std::regex backtracks exponentially on patterns such as
// ((0)*0|00)*1, so it is not usable here.)

#include <algorithm>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "etale/point.hpp"

namespace oracle {

struct Re;
using ReP = std::shared_ptr<const Re>;

struct Re {
  enum Kind { Empty, Eps, Sym, Alt, Cat, Star } kind;
  char sym = 0;
  std::vector<ReP> kids;
  std::string key;
};

inline ReP mk(Re::Kind k, char sym, std::vector<ReP> kids) {
  auto r = std::make_shared<Re>();
  r->kind = k;
  r->sym = sym;
  r->kids = std::move(kids);
  switch (k) {
    case Re::Empty: r->key = "!"; break;
    case Re::Eps: r->key = "e"; break;
    case Re::Sym: r->key = std::string(1, sym); break;
    case Re::Star: r->key = "(" + r->kids[0]->key + ")*"; break;
    case Re::Cat: r->key = "(" + r->kids[0]->key + "." + r->kids[1]->key + ")"; break;
    case Re::Alt: {
      r->key = "(";
      for (const auto& c : r->kids) r->key += c->key + "|";
      r->key += ")";
    }
  }
  return r;
}

inline ReP empty() { return mk(Re::Empty, 0, {}); }
inline ReP eps() { return mk(Re::Eps, 0, {}); }

inline ReP cat(ReP a, ReP b) {
  if (a->kind == Re::Empty || b->kind == Re::Empty) return empty();
  if (a->kind == Re::Eps) return b;
  if (b->kind == Re::Eps) return a;
  return mk(Re::Cat, 0, {a, b});
}

inline ReP alt(const std::vector<ReP>& parts) {
  std::vector<ReP> flat;
  std::set<std::string> seen;
  auto add = [&](const ReP& p, auto&& self) -> void {
    if (p->kind == Re::Empty) return;
    if (p->kind == Re::Alt) {
      for (const auto& k : p->kids) self(k, self);
      return;
    }
    if (seen.insert(p->key).second) flat.push_back(p);
  };
  for (const auto& p : parts) add(p, add);
  if (flat.empty()) return empty();
  if (flat.size() == 1) return flat[0];
  std::sort(flat.begin(), flat.end(), [](const ReP& x, const ReP& y) { return x->key < y->key; });
  return mk(Re::Alt, 0, flat);
}

inline bool nullable(const ReP& r) {
  switch (r->kind) {
    case Re::Empty: case Re::Sym: return false;
    case Re::Eps: case Re::Star: return true;
    case Re::Cat: return nullable(r->kids[0]) && nullable(r->kids[1]);
    case Re::Alt:
      for (const auto& k : r->kids)
        if (nullable(k)) return true;
      return false;
  }
  return false;
}

inline ReP deriv(const ReP& r, char c) {
  switch (r->kind) {
    case Re::Empty: case Re::Eps: return empty();
    case Re::Sym: return r->sym == c ? eps() : empty();
    case Re::Star: return cat(deriv(r->kids[0], c), r);
    case Re::Cat: {
      ReP d = cat(deriv(r->kids[0], c), r->kids[1]);
      return nullable(r->kids[0]) ? alt({d, deriv(r->kids[1], c)}) : d;
    }
    case Re::Alt: {
      std::vector<ReP> ds;
      for (const auto& k : r->kids) ds.push_back(deriv(k, c));
      return alt(ds);
    }
  }
  return empty();
}

// Grammar: alt := cat ('|' cat)*; cat := post*; post := atom '*'*;
// atom := symbol | '.' | 'ε' | '(' alt ')'.
class Parser {
 public:
  Parser(const std::string& s, const std::string& alphabet) : s_(s), alphabet_(alphabet) {}
  ReP parse() {
    ReP r = parse_alt();
    if (i_ != s_.size()) throw std::runtime_error("oracle: trailing input in " + s_);
    return r;
  }

 private:
  void skip() {
    while (i_ < s_.size() && s_[i_] == ' ') ++i_;
  }
  ReP parse_alt() {
    std::vector<ReP> parts{parse_cat()};
    skip();
    while (i_ < s_.size() && s_[i_] == '|') {
      ++i_;
      parts.push_back(parse_cat());
      skip();
    }
    return parts.size() == 1 ? parts[0] : alt(parts);
  }
  ReP parse_cat() {
    ReP r = eps();
    for (;;) {
      skip();
      if (i_ >= s_.size() || s_[i_] == '|' || s_[i_] == ')') return r;
      r = cat(r, parse_post());
    }
  }
  ReP parse_post() {
    ReP r = parse_atom();
    skip();
    while (i_ < s_.size() && s_[i_] == '*') {
      r = mk(Re::Star, 0, {r});
      ++i_;
      skip();
    }
    return r;
  }
  ReP parse_atom() {
    if (s_.compare(i_, 2, "\xCE\xB5") == 0) {
      i_ += 2;
      return eps();
    }
    const char c = s_[i_++];
    if (c == '(') {
      skip();
      ReP r = (i_ < s_.size() && s_[i_] == ')') ? eps() : parse_alt();
      skip();
      if (i_ >= s_.size() || s_[i_] != ')') throw std::runtime_error("oracle: missing ) in " + s_);
      ++i_;
      return r;
    }
    if (c == '.') {
      std::vector<ReP> syms;
      for (char a : alphabet_) syms.push_back(mk(Re::Sym, a, {}));
      return alt(syms);
    }
    return mk(Re::Sym, c, {});
  }

  const std::string& s_;
  const std::string& alphabet_;
  std::size_t i_ = 0;
};

class PrefixOracle {
 public:
  PrefixOracle(const std::string& pattern, const std::string& alphabet, std::size_t depth = 48)
      : re_(Parser(pattern, alphabet).parse()), depth_(depth) {}

  bool contains(const etale::Point& x) const {
    ReP r = re_;
    for (std::size_t n = 0; n <= depth_; ++n) {
      if (nullable(r)) return true;
      if (r->kind == Re::Empty) return false;
      r = deriv(r, x.at(n));
    }
    return false;
  }

 private:
  ReP re_;
  std::size_t depth_;
};

/// Random regular expression over a binary alphabet "01".
inline std::string random_pattern(std::mt19937_64& rng, int depth = 3) {
  std::uniform_int_distribution<int> pick(0, 9);
  const int r = pick(rng);
  if (depth <= 0 || r < 3) return std::string(1, "01"[r % 2]);
  if (r < 5) return random_pattern(rng, depth - 1) + random_pattern(rng, depth - 1);
  if (r < 7) return "(" + random_pattern(rng, depth - 1) + "|" + random_pattern(rng, depth - 1) + ")";
  if (r < 9) return "(" + random_pattern(rng, depth - 1) + ")*" + std::string(1, "01"[r % 2]);
  return "0*1" + random_pattern(rng, depth - 1);
}

inline etale::Point random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(0, 4), bit(0, 1);
  std::string u, v;
  const int lu = len(rng);
  const int lv = len(rng) + 1;
  for (int i = 0; i < lu; ++i) u.push_back("01"[bit(rng)]);
  for (int i = 0; i < lv; ++i) v.push_back("01"[bit(rng)]);
  return etale::Point::periodic(u, v);
}

}  // namespace oracle
