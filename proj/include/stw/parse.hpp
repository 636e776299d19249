#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stw/algebra.hpp"
#include "stw/oddform.hpp"
#include "stw/rootsys.hpp"

namespace stw {

inline std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t p = text.find(sep, start);
    if (p == std::string_view::npos) {
      out.push_back(std::string(text.substr(start)));
      break;
    }
    out.push_back(std::string(text.substr(start, p - start)));
    start = p + 1;
  }
  return out;
}

inline long long parse_int(std::string_view s, const std::string& what) {
  try {
    size_t pos = 0;
    long long v = std::stoll(std::string(s), &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (...) {
    fail("ConfigError", "expected an integer for " + what + ", got '" + std::string(s) + "'");
  }
}

// "7" or "(3,1)" / "3,1" as residues
inline RingElement parse_element(const BaseRing& K, std::string_view text) {
  std::string t(text);
  if (!t.empty() && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  if (t.find(',') != std::string::npos) {
    std::vector<long long> rs;
    for (const auto& part : split(t, ',')) rs.push_back(parse_int(part, "ring element"));
    return K.from_residues(rs);
  }
  return K.from_int(parse_int(t, "ring element"));
}

inline std::vector<RingElement> parse_elements(const BaseRing& K, std::string_view text) {
  std::vector<RingElement> out;
  for (const auto& part : split(text, ','))
    out.push_back(K.from_int(parse_int(part, "ring element list")));
  return out;
}

// "m4:z4" or "m4:z4:1,1,1,1" (block sizes)
inline MatrixAlgebra parse_algebra(std::string_view tag) {
  auto parts = split(tag, ':');
  if (parts.size() < 2 || parts[0].size() < 2 || parts[0][0] != 'm')
    fail("ConfigError", "bad algebra tag '" + std::string(tag) + "' (expected m<n>:<ring>)");
  int n = static_cast<int>(parse_int(parts[0].substr(1), "algebra size"));
  const BaseRing* K = ring(parts[1]);
  if (parts.size() == 2) return MatrixAlgebra::scalar_blocks(K, n);
  std::vector<int> blocks;
  int idx = 0, bid = 0;
  for (const auto& sz : split(parts[2], ',')) {
    int b = static_cast<int>(parse_int(sz, "block size"));
    for (int i = 0; i < b; ++i, ++idx) blocks.push_back(bid);
    ++bid;
  }
  if (static_cast<int>(blocks.size()) != n)
    fail("ConfigError", "block sizes do not sum to the matrix size in '" + std::string(tag) + "'");
  return MatrixAlgebra::full(K, n, blocks);
}

// "odd:z4:3:1" -> split odd form algebra tag
struct OddTag {
  const BaseRing* K;
  int rank;
  int middle;
};

inline OddTag parse_odd_tag(std::string_view tag) {
  auto parts = split(tag, ':');
  if (parts.size() != 4 || parts[0] != "odd")
    fail("ConfigError", "bad odd form tag '" + std::string(tag) + "' (expected odd:<ring>:<rank>:<middle>)");
  return {ring(parts[1]), static_cast<int>(parse_int(parts[2], "rank")),
          static_cast<int>(parse_int(parts[3], "middle block"))};
}

}  // namespace stw
