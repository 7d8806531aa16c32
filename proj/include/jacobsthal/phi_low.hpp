#ifndef JACOBSTHAL_PHI_LOW_HPP
#define JACOBSTHAL_PHI_LOW_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "jacobsthal/primes.hpp"
#include "jacobsthal/table.hpp"

namespace jacobsthal {

class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Recursion policy for the lower bound.
struct BoundConfig {
  std::size_t base_k = 6;           // stopping-table threshold
  bool use_known_h = false;         // prune with known h(k) for k <= 49
  std::vector<uint64_t> known_h;    // 1-indexed; required if use_known_h
  bool memo_enabled = true;
};

// Recursive lower bound on phi_min(m, k): the count of integers coprime
// to P_k that every window of m consecutive integers is guaranteed to
// contain is at least phi_low(m, k).
class PhiLowEngine {
public:
  PhiLowEngine(const PrimeBasis& basis, const TableSet& tables, BoundConfig cfg)
      : basis_(basis), tables_(tables), cfg_(std::move(cfg)) {
    if (cfg_.base_k < 1 || cfg_.base_k > tables_.base_k())
      throw std::invalid_argument("PhiLowEngine: base_k has no table set");
    if (cfg_.use_known_h) {
      if (cfg_.known_h.size() < 50)
        throw std::invalid_argument("PhiLowEngine: known_h must cover k <= 49");
      if (cfg_.known_h[49] != 742)
        throw std::invalid_argument("PhiLowEngine: known_h[49] must be 742");
    }
    std::size_t n = basis_.k_max();
    primorials_.reserve(n + 1);
    totients_.reserve(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      primorials_.push_back(primorial(k, basis_));
      totients_.push_back(totient_primorial(k, basis_));
    }
  }

  const BoundConfig& config() const { return cfg_; }
  uint64_t evaluations() const { return evaluations_; }
  void set_budget(uint64_t max_evaluations) { budget_ = max_evaluations; }
  void reset_evaluations() { evaluations_ = 0; }

  // E term: primes p_i (1 < i <= k) for which the ceiling count at p_i
  // and the floor count at 2 p_i cannot both occur at a minimizing
  // window start.
  static uint64_t e_correction(uint64_t r, std::size_t k,
                               const PrimeBasis& basis) {
    uint64_t e = 0;
    for (std::size_t i = 2; i <= k; ++i) {
      uint64_t p = basis.prime(i);
      if (r % p == 0) continue;  // also skips all i when r == 0
      if ((r - r % p + p) % 2 == 0 || (r - 1) % p == 0) ++e;
    }
    return e;
  }

  // r - sum of ceil(r/p_i) for i <= k, plus sum of floor(r/(2 p_i)) for
  // 2 <= i <= k.  May be negative.
  static int64_t header_terms(uint64_t r, std::size_t k,
                              const PrimeBasis& basis) {
    int64_t acc = static_cast<int64_t>(r);
    for (std::size_t i = 1; i <= k; ++i) {
      uint64_t p = basis.prime(i);
      acc -= static_cast<int64_t>((r + p - 1) / p);
      if (i >= 2) acc += static_cast<int64_t>(r / (2 * p));
    }
    return acc;
  }

  uint64_t phi_low(uint64_t m, std::size_t k) {
    ++evaluations_;
    if (evaluations_ > budget_)
      throw BudgetExceeded("phi_low: evaluation budget exceeded");
    if (k < 1 || k > basis_.k_max())
      throw std::out_of_range("phi_low: k out of range");

    const CappedUint& pk = primorials_[k];
    uint64_t full = 0;
    uint64_t r = m;
    if (!pk.is_saturated() && pk.value() <= m) {
      uint64_t pk64 = static_cast<uint64_t>(pk.value());
      full = m / pk64;
      r = m % pk64;
    }
    uint64_t base = 0;
    if (full > 0)
      base = full * static_cast<uint64_t>(totients_[k].value());

    if (k <= cfg_.base_k) return base + tables_.lookup(r, k);
    if (r < 2 * basis_.prime(k - 1)) return base;
    if (cfg_.use_known_h && k <= 49 && r < cfg_.known_h[k]) return base;

    uint64_t key = 0;
    if (cfg_.memo_enabled) {
      key = memo_key(m, k);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }

    int64_t acc = static_cast<int64_t>(base);
    acc += header_terms(r, k, basis_) +
           static_cast<int64_t>(e_correction(r, k, basis_));

    // Double sum over prime pairs p_i < p_j.  Once a recursive call
    // returns 0 the rest of the inner loop would too (m_new decreases in
    // j); if the first call of a cycle is 0, so are all later cycles.
    bool outer_done = false;
    for (std::size_t i = 2; i + 1 <= k && !outer_done; ++i) {
      uint64_t pi = basis_.prime(i);
      for (std::size_t j = i + 1; j <= k; ++j) {
        uint64_t m_new = r / (pi * basis_.prime(j));
        uint64_t u = phi_low(m_new, i - 1);
        if (u == 0) {
          if (j == i + 1) outer_done = true;
          break;
        }
        acc += static_cast<int64_t>(u);
      }
    }

    uint64_t result = acc > 0 ? static_cast<uint64_t>(acc) : 0;
    if (cfg_.memo_enabled) memo_.emplace(key, result);
    return result;
  }

private:
  static uint64_t memo_key(uint64_t m, std::size_t k) {
    constexpr uint64_t stride = 1u << 14;
    if (k >= stride || m > (std::numeric_limits<uint64_t>::max() / stride))
      throw std::out_of_range("phi_low: memo key out of range");
    return m * stride + k;
  }

  const PrimeBasis& basis_;
  const TableSet& tables_;
  BoundConfig cfg_;
  std::vector<CappedUint> primorials_;
  std::vector<CappedUint> totients_;
  std::unordered_map<uint64_t, uint64_t> memo_;
  uint64_t evaluations_ = 0;
  uint64_t budget_ = std::numeric_limits<uint64_t>::max();
};

}  // namespace jacobsthal

#endif  // JACOBSTHAL_PHI_LOW_HPP
