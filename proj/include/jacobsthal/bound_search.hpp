#ifndef JACOBSTHAL_BOUND_SEARCH_HPP
#define JACOBSTHAL_BOUND_SEARCH_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "jacobsthal/phi_low.hpp"

namespace jacobsthal {

struct BoundResult {
  std::size_t k = 0;
  uint64_t b_k = 0;            // least m >= start with phi_low(m, k) > 0
  uint64_t evaluations = 0;    // phi_low calls spent on this k
  std::chrono::nanoseconds elapsed{0};
};

struct CoeffResult {
  std::size_t k = 0;
  int64_t c_k = 0;
  uint64_t bound = 0;  // floor(c_k * k^2 / 10000)
};

// Linear search for the least m >= start_m with phi_low(m, k) > 0.
inline BoundResult find_b(std::size_t k, uint64_t start_m, PhiLowEngine& eng) {
  if (start_m < 1) throw std::invalid_argument("find_b: start_m must be >= 1");
  auto t0 = std::chrono::steady_clock::now();
  uint64_t evals0 = eng.evaluations();
  uint64_t m = start_m;
  while (eng.phi_low(m, k) < 1) ++m;
  BoundResult res;
  res.k = k;
  res.b_k = m;
  res.evaluations = eng.evaluations() - evals0;
  res.elapsed = std::chrono::steady_clock::now() - t0;
  return res;
}

// b(k) for k from start_k to end_k.  m carries forward between k values
// unless reset_m is set, so the reported b column is nondecreasing.
inline std::vector<BoundResult> sweep_b(std::size_t start_k, std::size_t end_k,
                                        uint64_t initial_m, PhiLowEngine& eng,
                                        bool reset_m = false) {
  if (start_k > end_k)
    throw std::invalid_argument("sweep_b: start_k must not exceed end_k");
  std::vector<BoundResult> out;
  uint64_t m = initial_m;
  for (std::size_t k = start_k; k <= end_k; ++k) {
    if (reset_m) m = initial_m;
    out.push_back(find_b(k, m, eng));
    m = out.back().b_k;
  }
  return out;
}

inline uint64_t coeff_bound(int64_t c, std::size_t k) {
  if (c <= 0) return 0;
  return static_cast<uint64_t>(c) * (k * k) / 10000;
}

// Least coefficient C_k (in units of 1/10000) with
// phi_low(floor(C_k k^2 / 10000), k) > 0; C_k carries across k.
inline std::vector<CoeffResult> coeff_sweep(std::size_t start_k,
                                            std::size_t end_k,
                                            int64_t initial_c,
                                            PhiLowEngine& eng) {
  if (start_k > end_k)
    throw std::invalid_argument("coeff_sweep: start_k must not exceed end_k");
  if (initial_c < 1)
    throw std::invalid_argument("coeff_sweep: initial_c must be >= 1");
  std::vector<CoeffResult> out;
  int64_t c = initial_c;
  for (std::size_t k = start_k; k <= end_k; ++k) {
    int64_t start_c = c;
    while (eng.phi_low(coeff_bound(c, k), k) > 0) --c;
    if (c < start_c) {
      ++c;
    } else {
      while (eng.phi_low(coeff_bound(c, k), k) < 1) ++c;
    }
    out.push_back({k, c, coeff_bound(c, k)});
  }
  return out;
}

// Classical upper bounds, in log10 (the raw values overflow quickly).
inline double kanold_log10(std::size_t k) {
  return static_cast<double>(k) * std::log10(2.0);  // h(k) <= 2^k
}

inline double stevens_log10(std::size_t k) {
  // h(k) <= 2 k^(2 + 2e log k)
  double lk = static_cast<double>(k);
  return std::log10(2.0) +
         (2.0 + 2.0 * std::exp(1.0) * std::log(lk)) * std::log10(lk);
}

}  // namespace jacobsthal

#endif  // JACOBSTHAL_BOUND_SEARCH_HPP
