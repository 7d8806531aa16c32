#ifndef JACOBSTHAL_PRIMES_HPP
#define JACOBSTHAL_PRIMES_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace jacobsthal {

using uint128_t = unsigned __int128;

// Unsigned integer with a saturation marker.  A saturated value means
// "exceeds the representable cap" and compares greater than every exact
// value.
class CappedUint {
public:
  static CappedUint exact(uint128_t v) {
    CappedUint c;
    c.value_ = v;
    return c;
  }
  static CappedUint saturated() {
    CappedUint c;
    c.saturated_ = true;
    return c;
  }

  bool is_saturated() const { return saturated_; }

  uint128_t value() const {
    if (saturated_)
      throw std::logic_error("CappedUint: value() called on saturated value");
    return value_;
  }

  CappedUint mul(uint128_t factor) const {
    if (saturated_) return saturated();
    if (factor != 0 && value_ > ~uint128_t{0} / factor) return saturated();
    return exact(value_ * factor);
  }

  friend bool operator==(const CappedUint& a, const CappedUint& b) {
    if (a.saturated_ != b.saturated_) return false;
    return a.saturated_ || a.value_ == b.value_;
  }
  friend bool operator!=(const CappedUint& a, const CappedUint& b) {
    return !(a == b);
  }
  friend bool operator<(const CappedUint& a, const CappedUint& b) {
    if (a.saturated_) return false;
    if (b.saturated_) return true;
    return a.value_ < b.value_;
  }

private:
  uint128_t value_ = 0;
  bool saturated_ = false;
};

// The ordered first k_max primes, 1-indexed so that prime(1) == 2.
class PrimeBasis {
public:
  explicit PrimeBasis(std::vector<uint64_t> primes)
      : primes_(std::move(primes)) {}

  std::size_t k_max() const { return primes_.size(); }

  uint64_t prime(std::size_t i) const {
    if (i < 1 || i > primes_.size())
      throw std::out_of_range("PrimeBasis: prime index out of range");
    return primes_[i - 1];
  }

  const std::vector<uint64_t>& primes() const { return primes_; }

private:
  std::vector<uint64_t> primes_;
};

// First k_max primes via Eratosthenes over a growable segment.
inline PrimeBasis sieve_primes(std::size_t k_max) {
  if (k_max == 0)
    throw std::invalid_argument("sieve_primes: k_max must be at least 1");

  // upper bound on p_k, regrown if the estimate falls short
  std::size_t limit = 16;
  if (k_max >= 6) {
    double n = static_cast<double>(k_max);
    limit = static_cast<std::size_t>(n * (std::log(n) + std::log(std::log(n))) + 16);
  }

  std::vector<uint64_t> primes;
  for (;;) {
    primes.clear();
    std::vector<bool> composite(limit + 1, false);
    for (std::size_t p = 2; p <= limit; ++p) {
      if (composite[p]) continue;
      primes.push_back(p);
      if (primes.size() == k_max) break;
      for (std::size_t q = p * p; q <= limit; q += p) composite[q] = true;
    }
    if (primes.size() >= k_max) break;
    limit *= 2;
  }
  primes.resize(k_max);
  return PrimeBasis(std::move(primes));
}

// Product of the first k primes; k = 0 gives the empty product 1.
inline CappedUint primorial(std::size_t k, const PrimeBasis& basis) {
  if (k > basis.k_max())
    throw std::out_of_range("primorial: k exceeds basis size");
  CappedUint acc = CappedUint::exact(1);
  for (std::size_t i = 1; i <= k; ++i) acc = acc.mul(basis.prime(i));
  return acc;
}

// Totient of the k-th primorial: product of (p_i - 1) for i <= k.
inline CappedUint totient_primorial(std::size_t k, const PrimeBasis& basis) {
  if (k > basis.k_max())
    throw std::out_of_range("totient_primorial: k exceeds basis size");
  CappedUint acc = CappedUint::exact(1);
  for (std::size_t i = 1; i <= k; ++i) acc = acc.mul(basis.prime(i) - 1);
  return acc;
}

}  // namespace jacobsthal

#endif  // JACOBSTHAL_PRIMES_HPP
