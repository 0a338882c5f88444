#include "etale/space.hpp"

#include <algorithm>

#include "etale/error.hpp"

namespace etale {

namespace {
constexpr std::string_view kReserved = "()|*.{},ε ";
}

Space Space::finite(std::size_t n) {
  if (n == 0) throw UsageError("finite space needs at least one point");
  Space s;
  s.finite_ = true;
  s.size_ = n;
  return s;
}

Space Space::cantor(std::string alphabet) {
  if (alphabet.size() < 2) throw UsageError("Cantor alphabet needs at least two symbols");
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    const char c = alphabet[i];
    if (static_cast<unsigned char>(c) >= 0x80 || kReserved.find(c) != std::string_view::npos ||
        c == '-' || c == '>' || c == '/' || c == '+') {
      throw UsageError(std::string("alphabet symbol '") + c + "' is reserved");
    }
    if (alphabet.find(c, i + 1) != std::string::npos)
      throw UsageError(std::string("alphabet symbol '") + c + "' repeated");
  }
  Space s;
  s.finite_ = false;
  s.alphabet_ = std::move(alphabet);
  return s;
}

int Space::symbol(char c) const noexcept {
  const auto pos = alphabet_.find(c);
  return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

std::string Space::encode(std::string_view word) const {
  std::string out;
  out.reserve(word.size());
  for (char c : word) {
    const int s = symbol(c);
    if (s < 0) throw UsageError(std::string("symbol '") + c + "' not in alphabet " + alphabet_);
    out.push_back(static_cast<char>(s));
  }
  return out;
}

std::string Space::decode(std::string_view indices) const {
  std::string out;
  out.reserve(indices.size());
  for (char i : indices) out.push_back(alphabet_.at(static_cast<unsigned char>(i)));
  return out;
}

std::string Space::to_string() const {
  return finite_ ? "finite(" + std::to_string(size_) + ")" : "cantor(" + alphabet_ + ")";
}

void require_same_space(const Space& a, const Space& b, std::string_view what) {
  if (!(a == b))
    throw UsageError(std::string(what) + ": operands live on different spaces (" + a.to_string() +
                     " vs " + b.to_string() + ")");
}

}  // namespace etale
