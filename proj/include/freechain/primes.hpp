#pragma once

#include <cstdint>
#include <vector>

#include "freechain/rational.hpp"

namespace freechain {

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::int64_t n);

/// Strictly increasing primes p_i together with the per-factor targets that
/// selected them and the exact running products of (p_i - 1)/(p_i + k_i).
struct PrimePlan {
  Rat alpha;
  std::vector<int> lengths;
  std::vector<std::int64_t> primes;
  std::vector<Rat> factor_targets;
  std::vector<Rat> partial_products;

  int count() const { return static_cast<int>(primes.size()); }
};

/// Picks, for each i, the smallest prime exceeding its predecessor whose
/// factor (p-1)/(p+k_i) reaches the target alpha^(2^-i) (computed as a safe
/// upper bound), then verifies the exact inequality: every partial product
/// of the factors strictly exceeds alpha. Requires 0 < alpha < 1 and
/// non-decreasing lengths.
PrimePlan choose_primes(const Rat& alpha, const std::vector<int>& lengths);

}  // namespace freechain
