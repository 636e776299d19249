#pragma once

#include <string>
#include <vector>

namespace stw {

// Reduced words in a free group; letters are signed 1-based generator ids.
namespace freegroup {

inline std::vector<int> reduce(const std::vector<int>& w) {
  std::vector<int> out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l) out.pop_back();
    else out.push_back(l);
  }
  return out;
}

inline std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> w = a;
  w.insert(w.end(), b.begin(), b.end());
  return reduce(w);
}

inline std::vector<int> inverse(const std::vector<int>& w) {
  std::vector<int> out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

inline std::vector<int> conj(const std::vector<int>& g, const std::vector<int>& x) {
  return concat(concat(g, x), inverse(g));
}

inline std::vector<int> commutator(const std::vector<int>& a, const std::vector<int>& b) {
  return concat(concat(a, b), concat(inverse(a), inverse(b)));
}

// The expansion of [g_1..g_n, h_1..h_m] into conjugated simple commutators,
// verified as a free-group identity. Generators: g_i = i, h_j = n + j.
inline bool commutator_expansion_identity(int n, int m) {
  std::vector<int> G, H;
  for (int i = 1; i <= n; ++i) G.push_back(i);
  for (int j = 1; j <= m; ++j) H.push_back(n + j);
  std::vector<int> lhs = commutator(G, H);

  std::vector<int> rhs;
  for (int i = n; i >= 1; --i) {
    std::vector<int> row;
    for (int j = 1; j <= m; ++j) {
      std::vector<int> hpfx(H.begin(), H.begin() + (j - 1));
      row = concat(row, conj(hpfx, commutator({i}, {n + j})));
    }
    std::vector<int> gpfx(G.begin(), G.begin() + (i - 1));
    rhs = concat(rhs, conj(gpfx, row));
  }
  return reduce(concat(lhs, inverse(rhs))).empty();
}

}  // namespace freegroup
}  // namespace stw
