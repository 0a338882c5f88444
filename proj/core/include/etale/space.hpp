#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace etale {

/// The ambient unit space: a finite discrete set {0..n-1} or the Cantor
/// space of infinite words over a finite alphabet (at least two symbols).
class Space {
 public:
  static Space finite(std::size_t n);
  static Space cantor(std::string alphabet);

  bool is_finite() const noexcept { return finite_; }
  bool is_cantor() const noexcept { return !finite_; }

  /// Number of points (finite backend only).
  std::size_t size() const noexcept { return size_; }

  /// Alphabet symbols in their declared order (Cantor backend only).
  const std::string& alphabet() const noexcept { return alphabet_; }
  std::size_t arity() const noexcept { return alphabet_.size(); }

  /// Index of a symbol in the alphabet, or -1.
  int symbol(char c) const noexcept;

  /// Alphabet word -> word of symbol indices. Throws UsageError on foreign symbols.
  std::string encode(std::string_view word) const;
  std::string decode(std::string_view indices) const;

  std::string to_string() const;

  bool operator==(const Space&) const = default;

 private:
  Space() = default;

  bool finite_ = true;
  std::size_t size_ = 0;
  std::string alphabet_;
};

/// Throws UsageError unless both spaces coincide.
void require_same_space(const Space& a, const Space& b, std::string_view what);

}  // namespace etale
