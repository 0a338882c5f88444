#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

namespace etale {

/// A computable point: an index of a finite space, or an ultimately
/// periodic word u·v^ω of Cantor space kept in canonical form (primitive
/// period, prefix as short as possible).
class Point {
 public:
  static Point index(std::size_t i);
  static Point periodic(std::string prefix, std::string period);

  /// Parses "u(v)" (Cantor) or a decimal index (finite).
  static Point parse(std::string_view text);

  bool is_index() const noexcept { return is_index_; }
  std::size_t index() const noexcept { return index_; }
  const std::string& prefix() const noexcept { return prefix_; }
  const std::string& period() const noexcept { return period_; }

  /// n-th letter of the infinite word.
  char at(std::size_t n) const;
  /// The first n letters.
  std::string head(std::size_t n) const;
  /// Drops the first n letters.
  Point drop(std::size_t n) const;
  /// Prepends a finite word.
  Point prepend(std::string_view word) const;

  std::string to_string() const;

  friend auto operator<=>(const Point&, const Point&) = default;
  friend bool operator==(const Point&, const Point&) = default;

 private:
  Point() = default;

  bool is_index_ = false;
  std::size_t index_ = 0;
  std::string prefix_;
  std::string period_;
};

}  // namespace etale
