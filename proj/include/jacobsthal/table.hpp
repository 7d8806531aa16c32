#ifndef JACOBSTHAL_TABLE_HPP
#define JACOBSTHAL_TABLE_HPP

#include <array>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "jacobsthal/exact.hpp"
#include "jacobsthal/primes.hpp"
#include "jacobsthal/sha256.hpp"

namespace jacobsthal {

class TableIoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Exact phi_min(m, k) for one k and all 0 <= m < P_k.
struct PhiMinTable {
  uint32_t k = 0;
  uint64_t modulus = 0;
  std::vector<uint32_t> values;
};

inline constexpr std::size_t kMaxTableK = 8;
inline constexpr char kTableMagic[8] = {'P', 'H', 'I', 'M', 'I', 'N', '0', '1'};

inline std::string table_filename(std::size_t k) {
  return "phimin_k" + std::to_string(k) + ".bin";
}

inline PhiMinTable build_table(std::size_t k, const PrimeBasis& basis) {
  if (k < 1 || k > kMaxTableK)
    throw std::out_of_range("build_table: k must be in [1, 8]");
  CoprimeIndicator oracle(k, basis);
  PhiMinTable t;
  t.k = static_cast<uint32_t>(k);
  t.modulus = oracle.modulus();
  t.values.resize(t.modulus);
  for (uint64_t m = 0; m < t.modulus; ++m)
    t.values[m] = static_cast<uint32_t>(oracle.phi_min(m));
  return t;
}

namespace detail {

inline void put_u32(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}

inline void put_u64(std::string& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}

inline uint32_t get_u32(const uint8_t* p) {
  return uint32_t(p[0]) | (uint32_t(p[1]) << 8) | (uint32_t(p[2]) << 16) |
         (uint32_t(p[3]) << 24);
}

inline uint64_t get_u64(const uint8_t* p) {
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

inline std::string serialize_table(const PhiMinTable& t) {
  std::string out;
  out.reserve(8 + 4 + 8 + 8 + 4 * t.values.size() + 32);
  out.append(kTableMagic, sizeof(kTableMagic));
  put_u32(out, t.k);
  put_u64(out, t.modulus);
  put_u64(out, t.values.size());
  for (uint32_t v : t.values) put_u32(out, v);
  auto digest = Sha256::digest(out.data(), out.size());
  out.append(reinterpret_cast<const char*>(digest.data()), digest.size());
  return out;
}

}  // namespace detail

inline void save_table(const PhiMinTable& t, const std::filesystem::path& path) {
  std::string bytes = detail::serialize_table(t);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw TableIoError("save_table: cannot open " + path.string());
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw TableIoError("save_table: write failed for " + path.string());
}

inline PhiMinTable load_table(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw TableIoError("load_table: cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(f)),
                    std::istreambuf_iterator<char>());

  constexpr std::size_t header = 8 + 4 + 8 + 8;
  if (bytes.size() < header + 32)
    throw TableIoError("load_table: truncated file " + path.string());
  if (std::memcmp(bytes.data(), kTableMagic, sizeof(kTableMagic)) != 0)
    throw TableIoError("load_table: bad magic in " + path.string());

  const auto* p = reinterpret_cast<const uint8_t*>(bytes.data());
  PhiMinTable t;
  t.k = detail::get_u32(p + 8);
  t.modulus = detail::get_u64(p + 12);
  uint64_t count = detail::get_u64(p + 20);
  if (bytes.size() != header + 4 * count + 32 || count != t.modulus)
    throw TableIoError("load_table: inconsistent sizes in " + path.string());

  auto digest = Sha256::digest(bytes.data(), bytes.size() - 32);
  if (std::memcmp(digest.data(), bytes.data() + bytes.size() - 32, 32) != 0)
    throw TableIoError("load_table: checksum mismatch in " + path.string());

  t.values.resize(count);
  for (uint64_t i = 0; i < count; ++i)
    t.values[i] = detail::get_u32(p + header + 4 * i);
  return t;
}

// Complete set of stopping tables for k = 1..base_k.
class TableSet {
public:
  TableSet(std::size_t base_k, std::vector<PhiMinTable> tables)
      : base_k_(base_k), tables_(std::move(tables)) {
    if (base_k_ < 1 || base_k_ > kMaxTableK)
      throw std::out_of_range("TableSet: base_k must be in [1, 8]");
    if (tables_.size() != base_k_)
      throw std::invalid_argument("TableSet: incomplete table set");
    for (std::size_t k = 1; k <= base_k_; ++k)
      if (tables_[k - 1].k != k)
        throw std::invalid_argument("TableSet: tables out of order");
  }

  static TableSet build(std::size_t base_k, const PrimeBasis& basis) {
    std::vector<PhiMinTable> tables;
    for (std::size_t k = 1; k <= base_k; ++k)
      tables.push_back(build_table(k, basis));
    return TableSet(base_k, std::move(tables));
  }

  static TableSet load_dir(const std::filesystem::path& dir, std::size_t base_k) {
    std::vector<PhiMinTable> tables;
    for (std::size_t k = 1; k <= base_k; ++k) {
      auto path = dir / table_filename(k);
      if (!std::filesystem::exists(path))
        throw TableIoError("missing table file " + path.string());
      tables.push_back(load_table(path));
    }
    return TableSet(base_k, std::move(tables));
  }

  void save_dir(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    for (const auto& t : tables_) save_table(t, dir / table_filename(t.k));
  }

  std::size_t base_k() const { return base_k_; }

  const PhiMinTable& table(std::size_t k) const {
    if (k < 1 || k > base_k_)
      throw std::out_of_range("TableSet: k out of range");
    return tables_[k - 1];
  }

  // Exact phi_min(m, k) for k <= base_k; m beyond the stored period is
  // reduced, with each full period contributing phi(P_k) (= last stored
  // value + 1).
  uint64_t lookup(uint64_t m, std::size_t k) const {
    const PhiMinTable& t = table(k);
    uint64_t full = m / t.modulus;
    uint64_t r = m % t.modulus;
    uint64_t phi = t.values.back() + 1;
    return full * phi + t.values[r];
  }

private:
  std::size_t base_k_;
  std::vector<PhiMinTable> tables_;
};

}  // namespace jacobsthal

#endif  // JACOBSTHAL_TABLE_HPP
