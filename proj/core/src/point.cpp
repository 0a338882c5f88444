#include "etale/point.hpp"

#include <algorithm>
#include <charconv>

#include "etale/error.hpp"

namespace etale {

namespace {

// Shortest d with v == (v[0,d))^(|v|/d).
std::string primitive_root(const std::string& v) {
  const std::size_t n = v.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = v[i] == v[i - d];
    if (ok) return v.substr(0, d);
  }
  return v;
}

}  // namespace

Point Point::index(std::size_t i) {
  Point p;
  p.is_index_ = true;
  p.index_ = i;
  return p;
}

Point Point::periodic(std::string prefix, std::string period) {
  if (period.empty()) throw UsageError("ultimately periodic point needs a nonempty period");
  Point p;
  p.period_ = primitive_root(period);
  p.prefix_ = std::move(prefix);
  // u·c·(w c)^ω == u·(c w)^ω
  while (!p.prefix_.empty() && p.prefix_.back() == p.period_.back()) {
    p.prefix_.pop_back();
    std::rotate(p.period_.rbegin(), p.period_.rbegin() + 1, p.period_.rend());
  }
  return p;
}

Point Point::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const auto open = text.find('(');
  if (open == std::string_view::npos) {
    std::size_t i = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), i);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
      throw ScenarioError("bad point '" + std::string(text) + "' (expected u(v) or an index)");
    return index(i);
  }
  if (text.back() != ')' || text.find('(', open + 1) != std::string_view::npos)
    throw ScenarioError("bad point '" + std::string(text) + "' (expected u(v))");
  std::string u(text.substr(0, open));
  std::string v(text.substr(open + 1, text.size() - open - 2));
  if (v.empty()) throw ScenarioError("bad point '" + std::string(text) + "': empty period");
  return periodic(std::move(u), std::move(v));
}

char Point::at(std::size_t n) const {
  if (n < prefix_.size()) return prefix_[n];
  return period_[(n - prefix_.size()) % period_.size()];
}

std::string Point::head(std::size_t n) const {
  std::string out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
  return out;
}

Point Point::drop(std::size_t n) const {
  if (n <= prefix_.size()) return periodic(prefix_.substr(n), period_);
  const std::size_t k = (n - prefix_.size()) % period_.size();
  return periodic("", period_.substr(k) + period_.substr(0, k));
}

Point Point::prepend(std::string_view word) const {
  return periodic(std::string(word) + prefix_, period_);
}

std::string Point::to_string() const {
  if (is_index_) return std::to_string(index_);
  return prefix_ + "(" + period_ + ")";
}

}  // namespace etale
