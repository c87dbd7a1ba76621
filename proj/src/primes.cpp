#include "freechain/primes.hpp"

#include <stdexcept>

namespace freechain {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = static_cast<std::uint64_t>(n - 1);
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, static_cast<std::uint64_t>(n));
    if (x == 1 || x == static_cast<std::uint64_t>(n - 1)) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, static_cast<std::uint64_t>(n));
      if (x == static_cast<std::uint64_t>(n - 1)) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

PrimePlan choose_primes(const Rat& alpha, const std::vector<int>& lengths) {
  if (!(alpha > 0 && alpha < 1))
    throw std::invalid_argument("alpha must lie strictly between 0 and 1");
  for (std::size_t i = 1; i < lengths.size(); ++i) {
    if (lengths[i] < lengths[i - 1])
      throw std::invalid_argument("lengths must be non-decreasing");
  }
  PrimePlan plan;
  plan.alpha = alpha;
  plan.lengths = lengths;
  std::int64_t prev = 1;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    int k = lengths[i];
    if (k < 1) throw std::invalid_argument("lengths must be positive");
    Rat tau = pow2k_root_upper(alpha, static_cast<int>(i) + 1);
    // (p-1)/(p+k) >= tau  <=>  p >= (1 + tau*k)/(1 - tau)
    Rat min_p = (1 + tau * Rat(k)) / (1 - tau);
    Int ceil_p = numerator(min_p) / denominator(min_p);
    if (ceil_p * denominator(min_p) < numerator(min_p)) ++ceil_p;
    if (ceil_p > Int(1) << 62)
      throw std::runtime_error("required prime exceeds supported range");
    std::int64_t candidate =
        std::max<std::int64_t>(static_cast<std::int64_t>(ceil_p), prev + 1);
    if (candidate < 2) candidate = 2;
    while (!is_prime(candidate)) ++candidate;
    plan.primes.push_back(candidate);
    plan.factor_targets.push_back(tau);
    prev = candidate;
  }
  // Exact verification of the product inequality at every prefix.
  Rat prod = 1;
  for (std::size_t i = 0; i < plan.primes.size(); ++i) {
    prod *= Rat(plan.primes[i] - 1, plan.primes[i] + lengths[i]);
    if (!(prod > alpha))
      throw std::logic_error("prime plan failed the exact product check");
    plan.partial_products.push_back(prod);
  }
  return plan;
}

}  // namespace freechain
