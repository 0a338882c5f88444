#include "etale/scalar.hpp"

#include <regex>

#include "etale/error.hpp"

namespace etale {

namespace {

mpq_class parse_rational(const std::string& s, std::string_view whole) {
  static const std::regex pattern(R"([+-]?\d+(/\d+)?)");
  if (!std::regex_match(s, pattern)) throw ScenarioError("bad scalar '" + std::string(whole) + "'");
  const std::string body = s[0] == '+' ? s.substr(1) : s;
  const auto slash = body.find('/');
  if (slash != std::string::npos && mpz_class(body.substr(slash + 1)) == 0)
    throw ScenarioError("zero denominator in scalar '" + std::string(whole) + "'");
  mpq_class q(body);
  q.canonicalize();
  return q;
}

std::string rational_text(const mpq_class& q) { return q.get_str(); }

}  // namespace

Scalar::Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

Scalar Scalar::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) throw ScenarioError("empty scalar");
  if (s.back() != 'i') return Scalar(parse_rational(s, text));
  s.pop_back();
  // split "re±im" at the last sign that is not leading
  std::size_t k = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;)
    if (s[i] == '+' || s[i] == '-') {
      k = i;
      break;
    }
  std::string re = k == std::string::npos ? "" : s.substr(0, k);
  std::string im = k == std::string::npos ? s : s.substr(k);
  if (im.empty() || im == "+") im = "1";
  else if (im == "-") im = "-1";
  return Scalar(re.empty() ? mpq_class(0) : parse_rational(re, text), parse_rational(im, text));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  const mpq_class n = b.norm2();
  if (sgn(n) == 0) throw UsageError("division by zero");
  const Scalar p = a * b.conj();
  return Scalar(p.re_ / n, p.im_ / n);
}

bool operator<(const Scalar& a, const Scalar& b) {
  if (a.re_ != b.re_) return a.re_ < b.re_;
  return a.im_ < b.im_;
}

std::string Scalar::to_string() const {
  if (sgn(im_) == 0) return rational_text(re_);
  std::string im;
  if (im_ == 1) im = "i";
  else if (im_ == -1) im = "-i";
  else im = rational_text(im_) + " i";
  if (sgn(re_) == 0) return im;
  return rational_text(re_) + (sgn(im_) > 0 ? "+" : "") + im;
}

}  // namespace etale
