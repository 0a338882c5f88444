#include "etale/random.hpp"

#include <algorithm>

namespace etale::random {

namespace {

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::size_t below(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

void grow(Rng& rng, const std::string& alphabet, std::string w, int depth, std::vector<std::string>& out) {
  if (depth == 0 || (!w.empty() && coin(rng, 0.45)) ) {
    out.push_back(w);
    return;
  }
  for (char s : alphabet) grow(rng, alphabet, w + s, depth - 1, out);
}

}  // namespace

std::vector<std::string> prefix_code(Rng& rng, const Space& space, int max_depth) {
  std::vector<std::string> out;
  grow(rng, space.alphabet(), "", max_depth, out);
  return out;
}

PartialMap prefix_exchange(Rng& rng, const Space& space, int max_depth) {
  if (coin(rng, 0.1)) return PartialMap::identity(space);
  auto dom = prefix_code(rng, space, max_depth);
  auto ran = prefix_code(rng, space, max_depth);
  std::shuffle(dom.begin(), dom.end(), rng);
  std::shuffle(ran.begin(), ran.end(), rng);
  const std::size_t n = std::min(dom.size(), ran.size());
  const std::size_t k = n == 0 ? 0 : 1 + below(rng, n);
  std::vector<Rule> rules;
  for (std::size_t i = 0; i < k; ++i) rules.push_back({dom[i], ran[i]});
  return PartialMap::prefix_exchange(space, std::move(rules));
}

PartialMap finite_map(Rng& rng, const Space& space) {
  std::vector<long> target(space.size());
  for (std::size_t i = 0; i < target.size(); ++i) target[i] = static_cast<long>(i);
  std::shuffle(target.begin(), target.end(), rng);
  for (auto& v : target)
    if (coin(rng, 0.3)) v = -1;
  return PartialMap::finite(space, std::move(target));
}

PartialMap partial_map(Rng& rng, const Space& space, int max_depth) {
  return space.is_finite() ? finite_map(rng, space) : prefix_exchange(rng, space, max_depth);
}

Point point(Rng& rng, const Space& space, int max_len) {
  if (space.is_finite()) return Point::index(below(rng, space.size()));
  auto word = [&](std::size_t min_len) {
    std::string w;
    const std::size_t len = min_len + below(rng, static_cast<std::size_t>(max_len) + 1);
    for (std::size_t i = 0; i < len; ++i) w += space.alphabet()[below(rng, space.arity())];
    return w;
  };
  const std::string u = word(0);
  return Point::periodic(u, word(1));
}

Region clopen(Rng& rng, const Space& space, int max_depth) {
  if (space.is_finite()) {
    boost::dynamic_bitset<> b(space.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = coin(rng, 0.5);
    return Region::from_bits(space, std::move(b));
  }
  Region out = Region::empty(space);
  for (const auto& w : prefix_code(rng, space, max_depth))
    if (coin(rng, 0.4)) out = out | Region::cylinder(space, w);
  return out;
}

Region open(Rng& rng, const Space& space, int max_depth) {
  Region out = clopen(rng, space, max_depth);
  if (space.is_finite() || !coin(rng, 0.5)) return out;
  // w·a*·b for random symbols a ≠ b: open but not closed
  std::string w;
  for (int i = below(rng, 3); i > 0; --i) w += space.alphabet()[below(rng, space.arity())];
  const std::size_t a = below(rng, space.arity());
  const std::size_t b = (a + 1 + below(rng, space.arity() - 1)) % space.arity();
  std::string pattern = w + "(" + space.alphabet()[a] + ")*" + space.alphabet()[b];
  return out | Region::parse(space, pattern);
}

Scalar scalar(Rng& rng) {
  const long re = static_cast<long>(below(rng, 7)) - 3;
  const long im = coin(rng, 0.25) ? static_cast<long>(below(rng, 5)) - 2 : 0;
  const long den = coin(rng, 0.2) ? 2 : 1;
  Scalar c(mpq_class(re, den), mpq_class(im, 1));
  return c.is_zero() ? Scalar(1) : c;
}

namespace {

Section random_terms(Rng& rng, const GermSystem& gs, std::size_t max_terms, const std::vector<Label>& labels) {
  Section f;
  const std::size_t n = 1 + below(rng, max_terms);
  for (std::size_t i = 0; i < n; ++i) {
    const Label t = labels[below(rng, labels.size())];
    Region u = gs.domain(t);
    if (coin(rng, 0.5)) u = u & clopen(rng, gs.space(), 2);
    if (u.is_empty()) continue;
    f.terms.push_back({t, std::move(u), scalar(rng)});
  }
  return f;
}

}  // namespace

Section section(Rng& rng, const GermSystem& gs, std::size_t max_terms, std::size_t bound) {
  return random_terms(rng, gs, max_terms, gs.labels(bound));
}

Section unit_section(Rng& rng, const GermSystem& gs, std::size_t max_terms) {
  return random_terms(rng, gs, max_terms, {gs.unit()});
}

}  // namespace etale::random
