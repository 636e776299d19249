#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stw/ring.hpp"

namespace stw {

// Dense matrix over a finite base ring. Small and exact; everything at desk
// scale, so clarity over speed.
struct Mat {
  const BaseRing* ring = nullptr;
  int rows = 0, cols = 0;
  std::vector<RingElement> a;

  Mat() = default;
  Mat(const BaseRing* K, int r, int c) : ring(K), rows(r), cols(c), a(size_t(r) * c, K->zero()) {}

  RingElement& at(int i, int j) { return a[size_t(i) * cols + j]; }
  const RingElement& at(int i, int j) const { return a[size_t(i) * cols + j]; }

  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& x : a)
      if (!stw::is_zero(x)) return false;
    return true;
  }

  static Mat identity(const BaseRing* K, int n) {
    Mat m(K, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = K->one();
    return m;
  }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < rows; ++i) {
      s += i ? ";" : "";
      for (int j = 0; j < cols; ++j) {
        s += j ? "," : "";
        s += ring->to_string(at(i, j));
      }
    }
    return s + "]";
  }

  // stable byte key for hashing / dedup
  std::string key() const {
    std::string s;
    s.reserve(a.size() * 2 * ring->nfactors());
    for (const auto& x : a)
      for (size_t f = 0; f < ring->nfactors(); ++f) {
        s.push_back(static_cast<char>(x.r[f] & 0xff));
        s.push_back(static_cast<char>(x.r[f] >> 8));
      }
    return s;
  }
};

inline Mat operator+(const Mat& x, const Mat& y) {
  Mat z = x;
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] = z.a[i] + y.a[i];
  return z;
}

inline Mat operator-(const Mat& x) {
  Mat z = x;
  for (auto& c : z.a) c = -c;
  return z;
}

inline Mat operator-(const Mat& x, const Mat& y) { return x + (-y); }

inline Mat operator*(const Mat& x, const Mat& y) {
  Mat z(x.ring, x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const RingElement& c = x.at(i, k);
      if (stw::is_zero(c)) continue;
      for (int j = 0; j < y.cols; ++j) z.at(i, j) = z.at(i, j) + c * y.at(k, j);
    }
  return z;
}

inline Mat operator*(const RingElement& c, const Mat& x) {
  Mat z = x;
  for (auto& v : z.a) v = c * v;
  return z;
}

inline Mat operator*(const Mat& x, const RingElement& c) { return c * x; }

inline Mat transpose(const Mat& x) {
  Mat z(x.ring, x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z.at(j, i) = x.at(i, j);
  return z;
}

// Inverse over a finite product of local rings: invert each factor projection
// by Gauss-Jordan with unit pivots, then recombine.
inline std::optional<Mat> try_invert(const Mat& m) {
  if (m.rows != m.cols) return std::nullopt;
  const BaseRing* K = m.ring;
  const int n = m.rows;
  Mat out(K, n, n);
  for (size_t f = 0; f < K->nfactors(); ++f) {
    const uint32_t mod = K->factors[f].mod;
    const uint32_t p = K->factors[f].p;
    // augmented [A | I] mod p^e
    std::vector<std::vector<int64_t>> A(n, std::vector<int64_t>(2 * n, 0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) A[i][j] = m.at(i, j).r[f];
      A[i][n + i] = 1 % mod;
    }
    auto inv_mod = [&](int64_t v) -> int64_t {
      int64_t t = 0, newt = 1, r = mod, newr = v % mod;
      while (newr != 0) {
        int64_t q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
      }
      return ((t % mod) + mod) % mod;
    };
    for (int c = 0; c < n; ++c) {
      int piv = -1;
      for (int r = c; r < n; ++r)
        if (A[r][c] % p != 0) { piv = r; break; }
      if (piv < 0) return std::nullopt;  // not invertible in this factor
      std::swap(A[c], A[piv]);
      int64_t inv = inv_mod(A[c][c]);
      for (int j = 0; j < 2 * n; ++j) A[c][j] = A[c][j] * inv % mod;
      for (int r = 0; r < n; ++r) {
        if (r == c || A[r][c] == 0) continue;
        int64_t fmul = A[r][c];
        for (int j = 0; j < 2 * n; ++j) A[r][j] = ((A[r][j] - fmul * A[c][j]) % mod + mod) % mod;
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.at(i, j).r[f] = static_cast<uint16_t>(A[i][n + j]);
  }
  for (auto& x : out.a) x.ring = K;
  return out;
}

inline Mat invert(const Mat& m) {
  auto r = try_invert(m);
  if (!r) fail("NotInvertible", "matrix is not invertible");
  return *r;
}

inline bool is_invertible(const Mat& m) { return try_invert(m).has_value(); }

inline Mat random_matrix(const BaseRing* K, int rows, int cols, Rng& rng) {
  Mat m(K, rows, cols);
  for (auto& x : m.a) x = random_element(*K, rng);
  return m;
}

inline Mat random_invertible(const BaseRing* K, int n, Rng& rng) {
  while (true) {
    Mat m = random_matrix(K, n, n, rng);
    if (is_invertible(m)) return m;
  }
}

}  // namespace stw
