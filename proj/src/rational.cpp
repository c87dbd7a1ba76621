#include "freechain/rational.hpp"

#include <stdexcept>

namespace freechain {

namespace {

Int parse_int(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) throw std::invalid_argument("sign without digits");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9')
      throw std::invalid_argument("invalid integer: " + std::string(text));
  }
  return Int(std::string(text));
}

}  // namespace

Rat parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  return Rat(num, den);
}

std::string rational_to_string(const Rat& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

Rat sqrt_upper(const Rat& q, unsigned scale_bits) {
  if (q < 0) throw std::invalid_argument("sqrt of negative rational");
  // floor(sqrt(n * 4^B / d)) + 1 over 2^B strictly exceeds sqrt(n/d).
  Int scaled = (numerator(q) << (2 * scale_bits)) / denominator(q);
  Int s = sqrt(scaled);
  return Rat(s + 1, Int(1) << scale_bits);
}

Rat pow2k_root_upper(const Rat& q, int k, unsigned scale_bits) {
  if (q <= 0 || q > 1) throw std::invalid_argument("root base must be in (0,1]");
  Rat r = q;
  for (int i = 0; i < k; ++i) r = sqrt_upper(r, scale_bits);
  if (r >= 1) throw std::logic_error("root upper bound lost all precision");
  return r;
}

}  // namespace freechain
