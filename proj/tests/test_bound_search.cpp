#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "jacobsthal/bound_search.hpp"
#include "jacobsthal/exact.hpp"
#include "jacobsthal/known_h.hpp"

using namespace jacobsthal;

namespace {

PhiLowEngine make_engine(const PrimeBasis& basis, const TableSet& tables,
                         bool use_known_h) {
  BoundConfig cfg;
  cfg.use_known_h = use_known_h;
  if (use_known_h) cfg.known_h = hagedorn_h();
  return PhiLowEngine(basis, tables, cfg);
}

}  // namespace

TEST_CASE("find_b exact at small k") {
  auto basis = sieve_primes(12);
  auto tables = TableSet::build(6, basis);
  auto eng = make_engine(basis, tables, false);

  CHECK(find_b(1, 1, eng).b_k == 2);
  CHECK(find_b(4, 1, eng).b_k == 10);
  for (std::size_t k = 1; k <= 6; ++k)
    CHECK(find_b(k, 1, eng).b_k == jacobsthal_exact(k, basis));
  for (std::size_t k : {std::size_t{7}, std::size_t{8}})
    CHECK(find_b(k, 1, eng).b_k >= jacobsthal_exact(k, basis));

  CHECK_THROWS_AS(find_b(3, 0, eng), std::invalid_argument);
}

TEST_CASE("find_b is start independent below the answer") {
  auto basis = sieve_primes(8);
  auto tables = TableSet::build(6, basis);
  auto eng = make_engine(basis, tables, false);
  for (std::size_t k = 2; k <= 6; ++k) {
    uint64_t b = find_b(k, 1, eng).b_k;
    for (uint64_t start : {uint64_t{1}, uint64_t{2}, b / 2 + 1, b})
      CHECK(find_b(k, start, eng).b_k == b);
  }
}

TEST_CASE("sweep_b carries m forward and is nondecreasing") {
  auto basis = sieve_primes(60);
  auto tables = TableSet::build(6, basis);
  auto eng = make_engine(basis, tables, true);

  auto results = sweep_b(50, 60, 742, eng);
  REQUIRE(results.size() == 11);
  for (std::size_t i = 1; i < results.size(); ++i)
    CHECK(results[i].b_k >= results[i - 1].b_k);

  CHECK_THROWS_AS(sweep_b(5, 3, 1, eng), std::invalid_argument);
}

TEST_CASE("sweep_b with reset matches independent searches") {
  auto basis = sieve_primes(8);
  auto tables = TableSet::build(6, basis);
  auto eng = make_engine(basis, tables, false);
  auto swept = sweep_b(1, 6, 1, eng, /*reset_m=*/true);
  for (const auto& res : swept)
    CHECK(res.b_k == jacobsthal_exact(res.k, basis));
}

TEST_CASE("known-h pruning never weakens the bound") {
  auto basis = sieve_primes(120);
  auto tables = TableSet::build(6, basis);
  auto plain = make_engine(basis, tables, false);
  auto known = make_engine(basis, tables, true);

  auto b_plain = sweep_b(50, 120, 742, plain);
  auto b_known = sweep_b(50, 120, 742, known);
  for (std::size_t i = 0; i < b_plain.size(); ++i)
    CHECK(b_known[i].b_k <= b_plain[i].b_k);
}

TEST_CASE("coeff_sweep postconditions") {
  auto basis = sieve_primes(70);
  auto tables = TableSet::build(6, basis);
  auto eng = make_engine(basis, tables, true);

  auto results = coeff_sweep(60, 64, 10000, eng);
  REQUIRE(results.size() == 5);
  auto checker = make_engine(basis, tables, true);
  for (const auto& res : results) {
    CHECK(res.bound == coeff_bound(res.c_k, res.k));
    CHECK(checker.phi_low(res.bound, res.k) > 0);
    CHECK(checker.phi_low(coeff_bound(res.c_k - 1, res.k), res.k) == 0);
  }

  // a second run starting from the settled coefficient is a fixed point
  auto again = coeff_sweep(60, 60, results[0].c_k, eng);
  CHECK(again[0].c_k == results[0].c_k);

  CHECK_THROWS_AS(coeff_sweep(60, 60, 0, eng), std::invalid_argument);
}

TEST_CASE("coefficient bounds dominate h(k) at small k") {
  auto basis = sieve_primes(10);
  auto tables = TableSet::build(6, basis);
  auto eng = make_engine(basis, tables, false);
  for (std::size_t k = 7; k <= 8; ++k) {
    auto res = coeff_sweep(k, k, 10000, eng);
    CHECK(res[0].bound >= jacobsthal_exact(k, basis));
  }
}

TEST_CASE("classical bounds in log10") {
  CHECK(kanold_log10(1) == doctest::Approx(std::log10(2.0)));
  CHECK(kanold_log10(49) == doctest::Approx(14.75).epsilon(0.01));
  CHECK(kanold_log10(49) < 15.0);
  CHECK(stevens_log10(49) < 40.0);
  CHECK(stevens_log10(100) > kanold_log10(100));
  for (std::size_t k = 260; k <= 1000; ++k)
    CHECK(stevens_log10(k) < kanold_log10(k));
}
