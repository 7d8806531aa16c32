#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "jacobsthal/exact.hpp"
#include "jacobsthal/table.hpp"

using namespace jacobsthal;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  auto dir = fs::temp_directory_path() / "jacobsthal_table_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(f)),
                     std::istreambuf_iterator<char>());
}

void check_table_invariants(const PhiMinTable& t, const PrimeBasis& basis) {
  CHECK(t.values.size() == t.modulus);
  CHECK(t.values[0] == 0);
  for (uint64_t m = 0; m + 1 < t.modulus; ++m) {
    uint32_t step = t.values[m + 1] - t.values[m];
    CHECK(step <= 1);
  }
  uint64_t h = jacobsthal_exact(t.k, basis);
  for (uint64_t m = 0; m < t.modulus; ++m)
    CHECK((t.values[m] == 0) == (m < h));
  uint64_t phi = static_cast<uint64_t>(totient_primorial(t.k, basis).value());
  CHECK(t.values[t.modulus - 1] == phi - 1);
}

}  // namespace

TEST_CASE("build_table small cases") {
  auto basis = sieve_primes(8);

  auto t1 = build_table(1, basis);
  CHECK(t1.modulus == 2);
  CHECK(t1.values == std::vector<uint32_t>{0, 0});

  auto t2 = build_table(2, basis);
  CHECK(t2.values[3] == 0);
  CHECK(t2.values[4] == 1);

  auto t6 = build_table(6, basis);
  for (uint64_t m = 0; m < 22; ++m) CHECK(t6.values[m] == 0);
  CHECK(t6.values[22] >= 1);

  CHECK_THROWS_AS(build_table(0, basis), std::out_of_range);
  CHECK_THROWS_AS(build_table(9, basis), std::out_of_range);
}

TEST_CASE("table invariants hold for k <= 5") {
  auto basis = sieve_primes(8);
  for (std::size_t k = 1; k <= 5; ++k)
    check_table_invariants(build_table(k, basis), basis);
}

TEST_CASE("save/load round trip is byte identical") {
  auto basis = sieve_primes(8);
  auto dir = temp_dir();
  auto t3 = build_table(3, basis);
  auto path = dir / table_filename(3);
  save_table(t3, path);

  auto loaded = load_table(path);
  CHECK(loaded.k == t3.k);
  CHECK(loaded.modulus == t3.modulus);
  CHECK(loaded.values == t3.values);

  auto path2 = dir / "again.bin";
  save_table(loaded, path2);
  CHECK(read_file(path) == read_file(path2));

  // header + 4 bytes per value + 32-byte digest
  CHECK(fs::file_size(path) == 8 + 4 + 8 + 8 + 4 * t3.modulus + 32);
}

TEST_CASE("corrupted byte is rejected by the checksum") {
  auto basis = sieve_primes(8);
  auto dir = temp_dir();
  auto path = dir / table_filename(2);
  save_table(build_table(2, basis), path);

  std::string bytes = read_file(path);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::string corrupted = bytes;
    corrupted[rng() % corrupted.size()] ^= 0x01;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f.write(corrupted.data(), static_cast<std::streamsize>(corrupted.size()));
    f.close();
    CHECK_THROWS_AS(load_table(path), TableIoError);
  }

  CHECK_THROWS_AS(load_table(dir / "missing.bin"), TableIoError);
}

TEST_CASE("TableSet lookup matches the oracle") {
  auto basis = sieve_primes(8);
  auto tables = TableSet::build(6, basis);

  CHECK(tables.lookup(0, 3) == 0);
  CHECK(tables.lookup(2, 1) == 1);
  CHECK(tables.lookup(100, 4) == phi_min_exact(100, 4, basis));

  for (std::size_t k = 1; k <= 4; ++k) {
    CoprimeIndicator oracle(k, basis);
    for (uint64_t m = 0; m < oracle.modulus(); ++m)
      CHECK(tables.lookup(m, k) == oracle.phi_min(m));
  }
  std::mt19937_64 rng(123);
  for (std::size_t k : {std::size_t{5}, std::size_t{6}}) {
    CoprimeIndicator oracle(k, basis);
    for (int trial = 0; trial < 10000; ++trial) {
      uint64_t m = rng() % oracle.modulus();
      CHECK(tables.lookup(m, k) == oracle.phi_min(m));
    }
  }

  // beyond one period: each full period adds phi(P_k)
  CHECK(tables.lookup(30030, 6) == 5760);
  CHECK(tables.lookup(30031, 6) == 5760);
  CHECK(tables.lookup(2 * 30030 + 22, 6) == 2 * 5760 + tables.lookup(22, 6));
  CHECK_THROWS_AS(tables.lookup(0, 7), std::out_of_range);
}

TEST_CASE("TableSet directory round trip") {
  auto basis = sieve_primes(8);
  auto dir = temp_dir();
  auto tables = TableSet::build(3, basis);
  tables.save_dir(dir);

  auto loaded = TableSet::load_dir(dir, 3);
  for (std::size_t k = 1; k <= 3; ++k) {
    CHECK(loaded.table(k).values == tables.table(k).values);
    check_table_invariants(loaded.table(k), basis);
  }

  fs::remove(dir / table_filename(2));
  CHECK_THROWS_AS(TableSet::load_dir(dir, 3), TableIoError);
}
