#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace etale {

/// Exact complex rational a + b·i.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  Scalar(mpq_class re, mpq_class im = 0);

  /// "3", "-1/2", "i", "-2/3i", "1/2+3/4 i". Throws ScenarioError.
  static Scalar parse(std::string_view text);

  const mpq_class& re() const noexcept { return re_; }
  const mpq_class& im() const noexcept { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }
  /// |z|², exact.
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  Scalar operator-() const { return Scalar(-re_, -im_); }
  /// Throws UsageError on division by zero.
  friend Scalar operator/(const Scalar& a, const Scalar& b);

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  /// Arbitrary but fixed total order (real part, then imaginary part).
  friend bool operator<(const Scalar& a, const Scalar& b);

  std::string to_string() const;
  double real_double() const { return re_.get_d(); }
  double imag_double() const { return im_.get_d(); }

 private:
  mpq_class re_ = 0;
  mpq_class im_ = 0;
};

}  // namespace etale
