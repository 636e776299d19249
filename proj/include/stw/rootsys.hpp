#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stw/report.hpp"

namespace stw {

using RootVec = std::vector<int>;

namespace detail {

using Rat = boost::multiprecision::cpp_rational;

// Exact phase-one simplex deciding feasibility of  theta . v >= 1  for all v.
// Free theta is split into nonnegative parts; Bland's rule guarantees
// termination.
inline bool halfspace_lp(const std::vector<RootVec>& vs) {
  if (vs.empty()) return true;
  const int d = static_cast<int>(vs[0].size());
  const int m = static_cast<int>(vs.size());
  // columns: theta+ (d), theta- (d), surplus (m), artificial (m)
  const int ncols = 2 * d + 2 * m;
  std::vector<std::vector<Rat>> T(m, std::vector<Rat>(ncols + 1, 0));
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < d; ++k) {
      T[i][k] = vs[i][k];
      T[i][d + k] = -vs[i][k];
    }
    T[i][2 * d + i] = -1;          // surplus
    T[i][2 * d + m + i] = 1;       // artificial
    T[i][ncols] = 1;               // rhs
    basis[i] = 2 * d + m + i;
  }
  // objective: minimize the sum of artificials; reduced-cost row for the
  // all-artificial starting basis
  std::vector<Rat> z(ncols + 1, 0);
  for (int i = 0; i < m; ++i)
    for (int c = 0; c <= ncols; ++c) z[c] += T[i][c];
  for (int i = 0; i < m; ++i) z[2 * d + m + i] -= 1;

  while (true) {
    int enter = -1;
    for (int c = 0; c < ncols; ++c)
      if (z[c] > 0) { enter = c; break; }  // Bland's rule
    if (enter < 0) break;
    int leave = -1;
    Rat best = 0;
    for (int i = 0; i < m; ++i) {
      if (T[i][enter] > 0) {
        Rat ratio = T[i][ncols] / T[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave < 0) break;  // unbounded in phase one cannot happen, but stay safe
    // pivot
    Rat piv = T[leave][enter];
    for (int c = 0; c <= ncols; ++c) T[leave][c] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      Rat f = T[i][enter];
      for (int c = 0; c <= ncols; ++c) T[i][c] -= f * T[leave][c];
    }
    Rat f = z[enter];
    if (f != 0)
      for (int c = 0; c <= ncols; ++c) z[c] -= f * T[leave][c];
    basis[leave] = enter;
  }
  return z[ncols] == 0;  // artificials drained to zero
}

inline int dot(const RootVec& a, const RootVec& b) {
  int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RootVec vadd(const RootVec& a, const RootVec& b) {
  RootVec c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline RootVec vneg(const RootVec& a) {
  RootVec c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}

inline RootVec vscale(int k, const RootVec& a) {
  RootVec c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = k * a[i];
  return c;
}

inline bool parallel(const RootVec& a, const RootVec& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      if (a[i] * b[j] != a[j] * b[i]) return false;
  return true;
}

}  // namespace detail

enum class RootType { A, B, C, D, E6, E7, E8, F4, G2, BC };

struct RootSystem {
  RootType type;
  int rank = 0;
  int dim = 0;  // ambient coordinate dimension
  std::vector<RootVec> roots;
  std::map<RootVec, int> index;
  std::string tag;

  int index_of(const RootVec& v) const {
    auto it = index.find(v);
    return it == index.end() ? -1 : it->second;
  }
  bool contains(const RootVec& v) const { return index.count(v) > 0; }
  const RootVec& root(int i) const { return roots[i]; }
  int size() const { return static_cast<int>(roots.size()); }

  int negate(int i) const { return index_of(detail::vneg(roots[i])); }
  bool has_double(int i) const { return contains(detail::vscale(2, roots[i])); }  // ultrashort
  bool has_half(int i) const {
    RootVec v = roots[i];
    for (int c : v)
      if (c % 2) return false;
    RootVec h(v.size());
    for (size_t k = 0; k < v.size(); ++k) h[k] = v[k] / 2;
    return contains(h);
  }
  int double_of(int i) const { return index_of(detail::vscale(2, roots[i])); }
  int half_of(int i) const {
    RootVec v = roots[i], h(v.size());
    for (size_t k = 0; k < v.size(); ++k) h[k] = v[k] / 2;
    return index_of(h);
  }
  bool parallel_roots(int i, int j) const { return detail::parallel(roots[i], roots[j]); }

  std::string root_name(int i) const;
};

namespace detail {

inline void finish(RootSystem& s) {
  std::sort(s.roots.begin(), s.roots.end());
  for (size_t i = 0; i < s.roots.size(); ++i) s.index[s.roots[i]] = static_cast<int>(i);
}

}  // namespace detail

inline RootSystem make_root_system(RootType t, int rank) {
  RootSystem s;
  s.type = t;
  s.rank = rank;
  auto unit = [](int d, int i) {
    RootVec v(d, 0);
    v[i] = 1;
    return v;
  };
  auto add = [&s](const RootVec& v) { s.roots.push_back(v); };

  switch (t) {
    case RootType::A: {
      if (rank < 1) fail("ConfigError", "rank must be >= 1");
      s.dim = rank + 1;
      for (int i = 0; i < s.dim; ++i)
        for (int j = 0; j < s.dim; ++j)
          if (i != j) add(detail::vadd(unit(s.dim, i), detail::vneg(unit(s.dim, j))));
      s.tag = "A" + std::to_string(rank);
      break;
    }
    case RootType::B:
    case RootType::C:
    case RootType::D:
    case RootType::BC: {
      if (rank < 1) fail("ConfigError", "rank must be >= 1");
      s.dim = rank;
      for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j)
          for (int si : {1, -1})
            for (int sj : {1, -1}) {
              RootVec v(rank, 0);
              v[i] = si;
              v[j] = sj;
              add(v);
            }
      if (t != RootType::D) {
        int shortmul = (t == RootType::C) ? 2 : 1;
        for (int i = 0; i < rank; ++i)
          for (int si : {1, -1}) {
            RootVec v(rank, 0);
            v[i] = si * shortmul;
            add(v);
          }
      }
      if (t == RootType::BC)
        for (int i = 0; i < rank; ++i)
          for (int si : {2, -2}) {
            RootVec v(rank, 0);
            v[i] = si;
            add(v);
          }
      const char* name = t == RootType::B ? "B" : t == RootType::C ? "C" : t == RootType::D ? "D" : "BC";
      s.tag = std::string(name) + std::to_string(rank);
      break;
    }
    case RootType::G2: {
      // realization in the sum-zero hyperplane of R^3
      s.rank = 2;
      s.dim = 3;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          if (i != j) add(detail::vadd(unit(3, i), detail::vneg(unit(3, j))));
      for (int i = 0; i < 3; ++i) {
        RootVec v(3, -1);
        v[i] = 2;  // 2e_i - e_j - e_k
        add(v);
        add(detail::vneg(v));
      }
      // dedupe the long roots added twice (v independent of j up to k swap)
      std::sort(s.roots.begin(), s.roots.end());
      s.roots.erase(std::unique(s.roots.begin(), s.roots.end()), s.roots.end());
      s.tag = "G2";
      break;
    }
    case RootType::F4: {
      // doubled coordinates so all roots are integral
      s.rank = 4;
      s.dim = 4;
      for (int i = 0; i < 4; ++i)
        for (int si : {2, -2}) {
          RootVec v(4, 0);
          v[i] = si;
          add(v);
        }
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          for (int si : {2, -2})
            for (int sj : {2, -2}) {
              RootVec v(4, 0);
              v[i] = si;
              v[j] = sj;
              add(v);
            }
      for (int mask = 0; mask < 16; ++mask) {
        RootVec v(4);
        for (int i = 0; i < 4; ++i) v[i] = (mask >> i & 1) ? -1 : 1;
        add(v);
      }
      s.tag = "F4";
      break;
    }
    case RootType::E6:
    case RootType::E7:
    case RootType::E8: {
      // E8 in doubled coordinates; E7/E6 as orthogonal subsystems
      s.rank = t == RootType::E8 ? 8 : (t == RootType::E7 ? 7 : 6);
      s.dim = 8;
      std::vector<RootVec> e8;
      for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
          for (int si : {2, -2})
            for (int sj : {2, -2}) {
              RootVec v(8, 0);
              v[i] = si;
              v[j] = sj;
              e8.push_back(v);
            }
      for (int mask = 0; mask < 256; ++mask) {
        if (__builtin_popcount(mask) % 2) continue;  // even number of minus signs
        RootVec v(8);
        for (int i = 0; i < 8; ++i) v[i] = (mask >> i & 1) ? -1 : 1;
        e8.push_back(v);
      }
      for (const auto& v : e8) {
        if (t == RootType::E7 && v[6] != v[7]) continue;          // orthogonal to e7 - e8
        if (t == RootType::E6 && (v[6] != v[7] || v[5] != v[6])) continue;
        add(v);
      }
      s.tag = std::string("E") + std::to_string(s.rank);
      break;
    }
  }
  detail::finish(s);
  return s;
}

inline RootSystem root_system_from_tag(std::string_view tag) {
  auto num = [&](size_t off) {
    int n = 0;
    for (char c : tag.substr(off)) {
      if (c < '0' || c > '9') fail("ConfigError", "bad root system tag '" + std::string(tag) + "'");
      n = n * 10 + (c - '0');
    }
    return n;
  };
  if (tag.size() >= 3 && tag.substr(0, 2) == "BC") return make_root_system(RootType::BC, num(2));
  if (tag == "G2") return make_root_system(RootType::G2, 2);
  if (tag == "F4") return make_root_system(RootType::F4, 4);
  if (tag == "E6") return make_root_system(RootType::E6, 6);
  if (tag == "E7") return make_root_system(RootType::E7, 7);
  if (tag == "E8") return make_root_system(RootType::E8, 8);
  if (tag.size() >= 2) {
    switch (tag[0]) {
      case 'A': return make_root_system(RootType::A, num(1));
      case 'B': return make_root_system(RootType::B, num(1));
      case 'C': return make_root_system(RootType::C, num(1));
      case 'D': return make_root_system(RootType::D, num(1));
      default: break;
    }
  }
  fail("ConfigError", "unknown root system tag '" + std::string(tag) + "'");
}

// "e1-e2", "e1+e2", "2e1", "-e1". Coordinates are 1-based.
inline RootVec parse_root(const RootSystem& s, std::string_view text) {
  RootVec v(s.dim, 0);
  int sign = 1;
  size_t i = 0;
  auto expect = [&](bool c, const char* what) {
    if (!c) fail("ConfigError", std::string("bad root '") + std::string(text) + "': expected " + what);
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '+') {
      sign = 1;
      ++i;
      continue;
    }
    if (c == '-') {
      sign = -1;
      ++i;
      continue;
    }
    int coef = 1;
    if (c >= '0' && c <= '9') {
      coef = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') coef = coef * 10 + (text[i++] - '0');
    }
    expect(i < text.size() && text[i] == 'e', "'e'");
    ++i;
    expect(i < text.size() && text[i] >= '1' && text[i] <= '9', "coordinate index");
    int idx = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') idx = idx * 10 + (text[i++] - '0');
    expect(idx >= 1 && idx <= s.dim, "coordinate in range");
    v[idx - 1] += sign * coef;
    sign = 1;
  }
  if (!s.contains(v)) fail("ConfigError", "'" + std::string(text) + "' is not a root of " + s.tag);
  return v;
}

inline std::string RootSystem::root_name(int i) const {
  const RootVec& v = roots[i];
  std::string out;
  for (int k = 0; k < dim; ++k) {
    if (v[k] == 0) continue;
    int c = v[k];
    if (c > 0 && !out.empty()) out += "+";
    if (c < 0) {
      out += "-";
      c = -c;
    }
    if (c != 1) out += std::to_string(c);
    out += "e" + std::to_string(k + 1);
  }
  return out.empty() ? "0" : out;
}

struct RootSubset {
  const RootSystem* sys = nullptr;
  std::vector<int> members;  // sorted root ids

  bool contains(int id) const { return std::binary_search(members.begin(), members.end(), id); }
  size_t size() const { return members.size(); }
  void normalize() {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
  }
};

inline RootSubset subset_of(const RootSystem& s, const std::vector<int>& ids) {
  RootSubset r{&s, ids};
  r.normalize();
  return r;
}

inline RootSubset subset_from_names(const RootSystem& s, const std::vector<std::string>& names) {
  std::vector<int> ids;
  for (const auto& n : names) ids.push_back(s.index_of(parse_root(s, n)));
  return subset_of(s, ids);
}

// Open half-space test: a cheap search over small integral functionals first,
// then the exact LP decides.
inline bool in_open_halfspace(const RootSystem& s, const std::vector<int>& ids) {
  if (ids.empty()) return true;
  int h = 0;
  for (const auto& v : s.roots)
    for (int c : v) h = std::max(h, std::abs(c));
  // candidate functionals with entries in {-h..h}, skipped when the grid is large
  double grid = 1;
  for (int k = 0; k < s.dim; ++k) grid *= 2 * h + 1;
  if (grid <= 20000) {
    RootVec theta(s.dim, -h);
    while (true) {
      bool ok = false;
      for (int c : theta)
        if (c != 0) { ok = true; break; }
      if (ok) {
        ok = true;
        for (int id : ids)
          if (detail::dot(theta, s.roots[id]) <= 0) { ok = false; break; }
        if (ok) return true;
      }
      int pos = s.dim - 1;
      while (pos >= 0) {
        if (++theta[pos] <= h) break;
        theta[pos] = -h;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  std::vector<RootVec> vs;
  for (int id : ids) vs.push_back(s.roots[id]);
  return detail::halfspace_lp(vs);
}

inline bool is_sum_closed(const RootSubset& S) {
  const RootSystem& s = *S.sys;
  for (size_t a = 0; a < S.members.size(); ++a)
    for (size_t b = a; b < S.members.size(); ++b) {
      int id = s.index_of(detail::vadd(s.roots[S.members[a]], s.roots[S.members[b]]));
      if (id >= 0 && !S.contains(id)) return false;
    }
  return true;
}

inline bool is_special_closed(const RootSubset& S) {
  return is_sum_closed(S) && in_open_halfspace(*S.sys, S.members);
}

// Smallest special closed superset; requires the open half-space condition.
inline RootSubset closure(const RootSubset& X) {
  if (!in_open_halfspace(*X.sys, X.members))
    fail("HalfSpaceViolation", "set is not contained in an open half-space");
  const RootSystem& s = *X.sys;
  std::set<int> acc(X.members.begin(), X.members.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(acc.begin(), acc.end());
    for (size_t a = 0; a < cur.size(); ++a)
      for (size_t b = a; b < cur.size(); ++b) {
        int id = s.index_of(detail::vadd(s.roots[cur[a]], s.roots[cur[b]]));
        if (id >= 0 && !acc.count(id)) {
          acc.insert(id);
          grew = true;
        }
      }
  }
  return subset_of(s, std::vector<int>(acc.begin(), acc.end()));
}

// Solves gamma = c*beta + d*alpha exactly; returns true with c,d as fractions
// (cn/cd, dn/dd reduced) when gamma lies in the plane.
namespace detail {
inline bool plane_coords(const RootVec& alpha, const RootVec& beta, const RootVec& gamma, long long& cn,
                         long long& cd) {
  // find two coordinates where (beta, alpha) has nonzero determinant
  int n = static_cast<int>(alpha.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      long long det = (long long)beta[i] * alpha[j] - (long long)beta[j] * alpha[i];
      if (det == 0) continue;
      long long c_num = (long long)gamma[i] * alpha[j] - (long long)gamma[j] * alpha[i];
      long long d_num = (long long)beta[i] * gamma[j] - (long long)beta[j] * gamma[i];
      // candidate c = c_num/det, d = d_num/det; verify on all coordinates
      for (int k = 0; k < n; ++k)
        if (c_num * beta[k] + d_num * alpha[k] != det * gamma[k]) return false;
      cn = c_num;
      cd = det;
      return true;
    }
  return false;
}
}  // namespace detail

// Thick alpha-series through beta: all roots c*beta + d*alpha with c > 0.
inline RootSubset thick_series(const RootSystem& s, int alpha, int beta) {
  if (detail::parallel(s.roots[alpha], s.roots[beta]))
    fail("DependentRoots", "thick series requires linearly independent roots");
  std::vector<int> out;
  for (int id = 0; id < s.size(); ++id) {
    long long cn = 0, cd = 1;
    if (!detail::plane_coords(s.roots[alpha], s.roots[beta], s.roots[id], cn, cd)) continue;
    if (cd < 0) {
      cn = -cn;
      cd = -cd;
    }
    if (cn > 0) out.push_back(id);
  }
  return subset_of(s, out);
}

// All roots in the rational span of the given subset.
inline RootSubset saturated_subsystem(const RootSubset& X) {
  const RootSystem& s = *X.sys;
  using Rat = detail::Rat;
  // row-reduce the span basis
  std::vector<std::vector<Rat>> basis;
  auto reduce = [&](std::vector<Rat> v) {
    for (const auto& b : basis) {
      int lead = -1;
      for (size_t k = 0; k < b.size(); ++k)
        if (b[k] != 0) { lead = static_cast<int>(k); break; }
      if (lead >= 0 && v[lead] != 0) {
        Rat f = v[lead] / b[lead];
        for (size_t k = 0; k < v.size(); ++k) v[k] -= f * b[k];
      }
    }
    return v;
  };
  for (int id : X.members) {
    std::vector<Rat> v(s.dim);
    for (int k = 0; k < s.dim; ++k) v[k] = s.roots[id][k];
    v = reduce(v);
    bool nz = false;
    for (const auto& c : v)
      if (c != 0) { nz = true; break; }
    if (nz) basis.push_back(v);
  }
  std::vector<int> out;
  for (int id = 0; id < s.size(); ++id) {
    std::vector<Rat> v(s.dim);
    for (int k = 0; k < s.dim; ++k) v[k] = s.roots[id][k];
    v = reduce(v);
    bool zero = true;
    for (const auto& c : v)
      if (c != 0) { zero = false; break; }
    if (zero) out.push_back(id);
  }
  return subset_of(s, out);
}

// Unordered pairs of linearly independent roots summing to alpha.
inline std::vector<std::pair<int, int>> root_decompositions(const RootSystem& s, int alpha) {
  std::vector<std::pair<int, int>> out;
  for (int b = 0; b < s.size(); ++b) {
    RootVec rest = detail::vadd(s.roots[alpha], detail::vneg(s.roots[b]));
    int c = s.index_of(rest);
    if (c < 0 || c < b) continue;
    if (detail::parallel(s.roots[b], s.roots[c])) continue;
    out.push_back({b, c});
  }
  return out;
}

// Positive systems via generic functionals. Available for the types whose
// Weyl group acts by (signed) coordinate permutations in our realization.
inline std::vector<std::vector<int>> positive_systems(const RootSystem& s) {
  std::vector<RootVec> thetas;
  bool signs = true;
  switch (s.type) {
    case RootType::A: signs = false; break;
    case RootType::B:
    case RootType::C:
    case RootType::D:
    case RootType::BC: signs = true; break;
    case RootType::G2: {
      // S3 x {+-1} on the sum-zero realization
      RootVec base{4, 1, 0};
      std::sort(base.begin(), base.end());
      do {
        thetas.push_back(base);
        thetas.push_back(detail::vneg(base));
      } while (std::next_permutation(base.begin(), base.end()));
      break;
    }
    default: fail("ConfigError", "positive system enumeration unsupported for " + s.tag);
  }
  if (thetas.empty()) {
    RootVec base(s.dim);
    for (int i = 0; i < s.dim; ++i) base[i] = 1 << i;  // generic: distinct, sum-free
    std::sort(base.begin(), base.end());
    do {
      if (signs) {
        for (int mask = 0; mask < (1 << s.dim); ++mask) {
          RootVec t = base;
          for (int i = 0; i < s.dim; ++i)
            if (mask >> i & 1) t[i] = -t[i];
          thetas.push_back(t);
        }
      } else {
        thetas.push_back(base);
      }
    } while (std::next_permutation(base.begin(), base.end()));
  }
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> out;
  for (const auto& th : thetas) {
    std::vector<int> pos;
    bool ok = true;
    for (int id = 0; id < s.size(); ++id) {
      int d = detail::dot(th, s.roots[id]);
      if (d == 0) { ok = false; break; }
      if (d > 0) pos.push_back(id);
    }
    if (!ok) continue;
    if (seen.insert(pos).second) out.push_back(pos);
  }
  return out;
}

// Every special closed subset, enumerated as the sum-closed subsets of the
// positive systems. Practical for the desk-scale ranks used here.
inline std::vector<std::vector<int>> all_special_closed(const RootSystem& s) {
  std::set<std::vector<int>> seen;
  for (const auto& pos : positive_systems(s)) {
    const int n = static_cast<int>(pos.size());
    if (n > 20) fail("ConfigError", "positive system too large to enumerate subsets");
    for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
      std::vector<int> ids;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) ids.push_back(pos[i]);
      RootSubset S = subset_of(s, ids);
      if (is_sum_closed(S)) seen.insert(S.members);
    }
  }
  return std::vector<std::vector<int>>(seen.begin(), seen.end());
}

}  // namespace stw
