#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace freechain {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Parses "num/den" or a bare integer. Throws std::invalid_argument on
/// malformed input or a zero denominator.
Rat parse_rational(std::string_view text);

/// Canonical "num/den" form, always with an explicit denominator.
std::string rational_to_string(const Rat& q);

/// Rational upper bound on sqrt(q) for q >= 0, tight to about 2^-scale_bits.
Rat sqrt_upper(const Rat& q, unsigned scale_bits = 128);

/// Rational upper bound on the 2^k-th root of q (0 < q <= 1), obtained by
/// iterating sqrt_upper. The result never underestimates the true root, so
/// a factor that clears it also clears the exact root.
Rat pow2k_root_upper(const Rat& q, int k, unsigned scale_bits = 128);

}  // namespace freechain
