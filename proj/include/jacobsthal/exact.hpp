#ifndef JACOBSTHAL_EXACT_HPP
#define JACOBSTHAL_EXACT_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "jacobsthal/primes.hpp"

namespace jacobsthal {

// Brute-force ground truth.  Everything here is exact and deliberately
// simple; intended for testing and small k only.

class OracleRangeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Number of multiples of d in the window (b, b+m].
inline uint64_t count_multiples(uint64_t b, uint64_t m, uint64_t d) {
  if (d == 0) throw std::invalid_argument("count_multiples: d must be >= 1");
  return (b + m) / d - b / d;
}

// Count of primes among the first k dividing a.
inline uint64_t omega_k(uint64_t a, std::size_t k, const PrimeBasis& basis) {
  uint64_t count = 0;
  for (std::size_t i = 1; i <= k; ++i)
    if (a % basis.prime(i) == 0) ++count;
  return count;
}

// Count of integers in (b, b+m] coprime to the first k primes, by trial
// division.
inline uint64_t phi_window(uint64_t b, uint64_t m, std::size_t k,
                           const PrimeBasis& basis) {
  uint64_t count = 0;
  for (uint64_t a = b + 1; a <= b + m; ++a) {
    bool coprime = true;
    for (std::size_t i = 1; i <= k && coprime; ++i)
      if (a % basis.prime(i) == 0) coprime = false;
    if (coprime) ++count;
  }
  return count;
}

// Periodic coprimality indicator mod P_k with prefix sums over two
// concatenated periods, so every window start b < P_k is covered without
// wraparound logic.
class CoprimeIndicator {
public:
  static constexpr uint64_t kModulusLimit = 1000000000;  // refuse to thrash

  CoprimeIndicator(std::size_t k, const PrimeBasis& basis) : k_(k) {
    CappedUint pk = primorial(k, basis);
    if (pk.is_saturated() || pk.value() > kModulusLimit)
      throw OracleRangeError("CoprimeIndicator: P_k too large for exact oracle");
    modulus_ = static_cast<uint64_t>(pk.value());

    bits_.assign(modulus_, 1);
    for (std::size_t i = 1; i <= k; ++i) {
      uint64_t p = basis.prime(i);
      for (uint64_t a = 0; a < modulus_; a += p) bits_[a] = 0;
    }

    prefix_.resize(2 * modulus_ + 1);
    prefix_[0] = 0;
    for (uint64_t x = 0; x < 2 * modulus_; ++x)
      prefix_[x + 1] = prefix_[x] + bits_[x % modulus_];
    totient_ = prefix_[modulus_];

    positions_.reserve(totient_);
    for (uint64_t a = 0; a < modulus_; ++a)
      if (bits_[a]) positions_.push_back(static_cast<uint32_t>(a));
  }

  std::size_t k() const { return k_; }
  uint64_t modulus() const { return modulus_; }
  uint64_t totient() const { return totient_; }
  bool coprime(uint64_t a) const { return bits_[a % modulus_] != 0; }

  // Minimum of phi_window over all starts b.  The minimum is attained at
  // b = 0 or at b equal to a coprime position: sliding b back to the
  // nearest coprime never increases the window count.
  uint64_t phi_min(uint64_t m) const {
    uint64_t full = m / modulus_;
    uint64_t r = m % modulus_;
    uint64_t base = full * totient_;
    if (r == 0) return base;
    // window (b, b+r] = [b+1, b+r+1); prefix_[q_t + 1] == t + 1
    uint32_t best = prefix_[r + 1] - prefix_[1];  // b = 0
    for (uint64_t t = 0; t < positions_.size(); ++t) {
      uint32_t cnt = prefix_[positions_[t] + 1 + r] - static_cast<uint32_t>(t + 1);
      best = std::min(best, cnt);
    }
    return base + best;
  }

  // Maximal gap between consecutive coprime integers, scanned over one
  // period with wraparound.
  uint64_t max_gap() const {
    uint64_t best = 0;
    for (std::size_t t = 0; t + 1 < positions_.size(); ++t)
      best = std::max<uint64_t>(best, positions_[t + 1] - positions_[t]);
    // wrap from the last coprime to the first of the next period
    best = std::max<uint64_t>(
        best, positions_.front() + modulus_ - positions_.back());
    return best;
  }

private:
  std::size_t k_;
  uint64_t modulus_ = 0;
  uint64_t totient_ = 0;
  std::vector<uint8_t> bits_;
  std::vector<uint32_t> prefix_;
  std::vector<uint32_t> positions_;
};

// Minimum of phi_window(b, m, k) over all b.  Builds a fresh indicator;
// use CoprimeIndicator directly for repeated queries at one k.
inline uint64_t phi_min_exact(uint64_t m, std::size_t k,
                              const PrimeBasis& basis) {
  if (k == 0) return m;
  return CoprimeIndicator(k, basis).phi_min(m);
}

// Exact h(k): smallest m such that every window of m consecutive integers
// contains one coprime to P_k.
inline uint64_t jacobsthal_exact(std::size_t k, const PrimeBasis& basis) {
  return CoprimeIndicator(k, basis).max_gap();
}

}  // namespace jacobsthal

#endif  // JACOBSTHAL_EXACT_HPP
