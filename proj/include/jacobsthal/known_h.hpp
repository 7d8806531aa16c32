#ifndef JACOBSTHAL_KNOWN_H_HPP
#define JACOBSTHAL_KNOWN_H_HPP

#include <array>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace jacobsthal {

// Hagedorn's exact h(k) for k = 1..49 (index 0 unused).  Mirrored in
// data/hagedorn_h.csv; a test keeps file and array in sync, and the
// entries for k <= 8 are revalidated against the brute-force oracle.
inline constexpr std::array<uint64_t, 50> kHagedornH = {
    0,   2,   4,   6,   10,  14,  22,  26,  34,  40,
    46,  58,  66,  74,  90,  100, 106, 118, 132, 152,
    174, 190, 200, 216, 234, 258, 264, 282, 300, 312,
    330, 354, 378, 388, 414, 432, 450, 476, 492, 510,
    538, 550, 574, 600, 616, 642, 660, 686, 718, 742};

inline std::vector<uint64_t> hagedorn_h() {
  return std::vector<uint64_t>(kHagedornH.begin(), kHagedornH.end());
}

// Loads a k,h CSV (header line optional) into a 1-indexed vector.
inline std::vector<uint64_t> load_known_h(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("load_known_h: cannot open " + path);
  std::vector<uint64_t> out(1, 0);
  std::string line;
  std::size_t expected_k = 1;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (!std::isdigit(static_cast<unsigned char>(line[0]))) continue;  // header
    std::istringstream row(line);
    std::string k_str, h_str;
    if (!std::getline(row, k_str, ',') || !std::getline(row, h_str, ','))
      throw std::runtime_error("load_known_h: malformed row in " + path);
    if (std::stoull(k_str) != expected_k)
      throw std::runtime_error("load_known_h: rows must be consecutive k in " + path);
    out.push_back(std::stoull(h_str));
    ++expected_k;
  }
  return out;
}

}  // namespace jacobsthal

#endif  // JACOBSTHAL_KNOWN_H_HPP
