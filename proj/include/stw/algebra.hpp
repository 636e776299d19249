#pragma once

#include <functional>
#include <string>
#include <vector>

#include "stw/matrix.hpp"
#include "stw/report.hpp"
#include "stw/rng.hpp"

namespace stw {

// Full matrix algebra over a finite base ring with a complete family of
// orthogonal block idempotents e_1..e_{l+1}.
struct MatrixAlgebra {
  const BaseRing* K = nullptr;
  int n = 0;
  std::vector<int> block_of;  // size n, values in [0, nblocks)
  int nblocks = 0;

  static MatrixAlgebra full(const BaseRing* K, int n, std::vector<int> blocks) {
    MatrixAlgebra A;
    A.K = K;
    A.n = n;
    A.block_of = std::move(blocks);
    for (int b : A.block_of) A.nblocks = std::max(A.nblocks, b + 1);
    for (int b = 0; b < A.nblocks; ++b)
      if (std::find(A.block_of.begin(), A.block_of.end(), b) == A.block_of.end())
        fail("ConfigError", "empty idempotent block");
    return A;
  }

  // n blocks of size 1 (the generic linear case used throughout)
  static MatrixAlgebra scalar_blocks(const BaseRing* K, int n) {
    std::vector<int> b(n);
    for (int i = 0; i < n; ++i) b[i] = i;
    return full(K, n, std::move(b));
  }

  Mat zero() const { return Mat(K, n, n); }
  Mat one() const { return Mat::identity(K, n); }

  Mat e(int block) const {
    Mat m = zero();
    for (int i = 0; i < n; ++i)
      if (block_of[i] == block) m.at(i, i) = K->one();
    return m;
  }

  // e_i x e_j block mask
  Mat proj(int bi, int bj, const Mat& x) const {
    Mat m = zero();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (block_of[i] == bi && block_of[j] == bj) m.at(i, j) = x.at(i, j);
    return m;
  }

  bool in_block(int bi, int bj, const Mat& x) const { return proj(bi, bj, x) == x; }

  std::vector<std::pair<int, int>> block_cells(int bi, int bj) const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (block_of[i] == bi && block_of[j] == bj) out.push_back({i, j});
    return out;
  }

  // Completeness witness: 1 = sum_t u_t e_b v_t with explicit matrix units.
  bool completeness_witness(int block) const {
    int col = -1;
    for (int i = 0; i < n; ++i)
      if (block_of[i] == block) { col = i; break; }
    if (col < 0) return false;
    Mat acc = zero();
    for (int i = 0; i < n; ++i) {
      Mat u = zero(), v = zero();
      u.at(i, col) = K->one();
      v.at(col, i) = K->one();
      acc = acc + u * e(block) * v;
    }
    return acc == one();
  }

  Mat random(Rng& rng) const { return random_matrix(K, n, n, rng); }

  Mat random_in_block(int bi, int bj, Rng& rng) const {
    Mat m = zero();
    for (auto [i, j] : block_cells(bi, bj)) m.at(i, j) = random_element(*K, rng);
    return m;
  }

  std::vector<Mat> enumerate_block(int bi, int bj, uint64_t cap = 1 << 20) const {
    auto cells = block_cells(bi, bj);
    double total = 1;
    for (size_t c = 0; c < cells.size(); ++c) total *= static_cast<double>(K->order());
    if (total > static_cast<double>(cap)) fail("ConfigError", "block too large to enumerate");
    std::vector<Mat> out;
    std::vector<uint64_t> idx(cells.size(), 0);
    while (true) {
      Mat m = zero();
      for (size_t c = 0; c < cells.size(); ++c)
        m.at(cells[c].first, cells[c].second) = K->element_at(idx[c]);
      out.push_back(m);
      int pos = static_cast<int>(cells.size()) - 1;
      while (pos >= 0) {
        if (++idx[pos] < K->order()) break;
        idx[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
    return out;
  }
};

// Crossed module carriers over a matrix algebra. The payload of a carrier
// element is always an ambient matrix; the kind fixes delta, the internal
// multiplication, and membership.
struct AlgCrossedModule {
  enum class Kind { IdealCentral, ZeroMult, Homotope, RightMultTest };

  const MatrixAlgebra* A = nullptr;
  Kind kind = Kind::Homotope;
  RingElement scalar;  // c for IdealCentral, s for Homotope
  Mat twist;           // RightMultTest only

  static AlgCrossedModule ideal(const MatrixAlgebra& A, const RingElement& c) {
    return AlgCrossedModule{&A, Kind::IdealCentral, c, {}};
  }
  static AlgCrossedModule zero_mult(const MatrixAlgebra& A) {
    return AlgCrossedModule{&A, Kind::ZeroMult, A.K->zero(), {}};
  }
  // Deliberately broken structure map (delta = right multiplication by a
  // fixed element) used by the negative tests.
  static AlgCrossedModule twisted_test(const MatrixAlgebra& A, const Mat& g) {
    return AlgCrossedModule{&A, Kind::RightMultTest, A.K->zero(), g};
  }

  bool contains(const Mat& x) const {
    if (kind != Kind::IdealCentral) return true;
    Ideal I = ideal_generated(*A->K, {scalar});
    for (const auto& v : x.a)
      if (!I.contains(v)) return false;
    return true;
  }

  Mat delta(const Mat& x) const {
    switch (kind) {
      case Kind::IdealCentral: return x;
      case Kind::ZeroMult: return A->zero();
      case Kind::Homotope: return x * scalar;
      case Kind::RightMultTest: return x * twist;
    }
    return A->zero();
  }

  Mat mul(const Mat& x, const Mat& y) const {
    switch (kind) {
      case Kind::IdealCentral: return x * y;
      case Kind::ZeroMult: return A->zero();
      case Kind::Homotope: return x * y * scalar;
      case Kind::RightMultTest: return x * twist * y;
    }
    return A->zero();
  }

  // ambient actions
  Mat act_l(const Mat& a, const Mat& x) const { return a * x; }
  Mat act_r(const Mat& x, const Mat& a) const { return x * a; }

  Mat sample(Rng& rng) const {
    Mat m = A->random(rng);
    if (kind == Kind::IdealCentral) m = scalar * m;
    return m;
  }

  std::string label_str() const {
    switch (kind) {
      case Kind::IdealCentral: return "ideal(" + A->K->to_string(scalar) + ")";
      case Kind::ZeroMult: return "zeromult";
      case Kind::Homotope: return "homotope(" + A->K->to_string(scalar) + ")";
      case Kind::RightMultTest: return "twisted-test";
    }
    return "?";
  }
};

// The s-homotope of A as a crossed module over A.
inline AlgCrossedModule homotope(const MatrixAlgebra& A, const RingElement& s) {
  return AlgCrossedModule{&A, AlgCrossedModule::Kind::Homotope, s};
}

// Transition along a label factor s2: payload of A^(s') moves to A^(s) when
// s' = s * s2. The map is x |-> x*s2.
inline Mat homotope_transition(const AlgCrossedModule& from, const AlgCrossedModule& to,
                               const RingElement& s2, const Mat& x) {
  if (from.kind != AlgCrossedModule::Kind::Homotope || to.kind != AlgCrossedModule::Kind::Homotope)
    fail("LabelMismatch", "transition requires homotope carriers");
  if (from.scalar != to.scalar * s2)
    fail("LabelMismatch", "label equation s' = s*s'' does not hold");
  return x * s2;
}

// Verifies the crossed-module identities on samples (exhaustive for tiny A).
inline CheckReport check_crossed_module(const AlgCrossedModule& X, long long budget, Rng& rng) {
  CheckReport rep;
  rep.name = "crossed-module/" + X.label_str();
  const MatrixAlgebra& A = *X.A;

  auto& add_it = rep.add("delta-additive");
  auto& eq_l = rep.add("delta-left-equivariant");
  auto& eq_r = rep.add("delta-right-equivariant");
  auto& pf_l = rep.add("peiffer-left");
  auto& pf_r = rep.add("peiffer-right");

  uint64_t asize = 1;
  double as = 1;
  for (int i = 0; i < A.n * A.n; ++i) as *= static_cast<double>(A.K->order());
  bool exhaustive = as <= 4096 && as * as <= static_cast<double>(budget) * 16;
  std::vector<Mat> xs;
  if (exhaustive) {
    asize = static_cast<uint64_t>(as);
    for (uint64_t i = 0; i < asize; ++i) {
      Mat m(A.K, A.n, A.n);
      uint64_t t = i;
      for (auto& c : m.a) {
        c = A.K->element_at(t % A.K->order());
        t /= A.K->order();
      }
      if (X.contains(m)) xs.push_back(m);
    }
  }

  auto sample_x = [&](Rng& r) { return exhaustive ? xs[r.below(xs.size())] : X.sample(r); };
  long long trials = exhaustive ? static_cast<long long>(xs.size()) * static_cast<long long>(xs.size())
                                : budget;
  if (exhaustive) {
    for (const auto& x : xs)
      for (const auto& y : xs) {
        rep.record(add_it, X.delta(x + y) == X.delta(x) + X.delta(y),
                   "x=" + x.to_string() + " y=" + y.to_string());
        rep.record(pf_l, X.mul(x, y) == X.act_l(X.delta(x), y),
                   "x=" + x.to_string() + " y=" + y.to_string());
        rep.record(pf_r, X.mul(x, y) == X.act_r(x, X.delta(y)),
                   "x=" + x.to_string() + " y=" + y.to_string());
      }
    // equivariance over all ambient a and carrier x when the algebra is tiny
    for (uint64_t i = 0; i < asize; ++i) {
      Mat a(A.K, A.n, A.n);
      uint64_t t = i;
      for (auto& c : a.a) {
        c = A.K->element_at(t % A.K->order());
        t /= A.K->order();
      }
      for (const auto& x : xs) {
        rep.record(eq_l, X.delta(X.act_l(a, x)) == a * X.delta(x),
                   "a=" + a.to_string() + " x=" + x.to_string());
        rep.record(eq_r, X.delta(X.act_r(x, a)) == X.delta(x) * a,
                   "a=" + a.to_string() + " x=" + x.to_string());
      }
    }
  } else {
    for (long long t = 0; t < trials; ++t) {
      Mat x = sample_x(rng), y = sample_x(rng), a = A.random(rng);
      rep.record(add_it, X.delta(x + y) == X.delta(x) + X.delta(y),
                 "x=" + x.to_string() + " y=" + y.to_string());
      rep.record(pf_l, X.mul(x, y) == X.act_l(X.delta(x), y),
                 "x=" + x.to_string() + " y=" + y.to_string());
      rep.record(pf_r, X.mul(x, y) == X.act_r(x, X.delta(y)),
                 "x=" + x.to_string() + " y=" + y.to_string());
      rep.record(eq_l, X.delta(X.act_l(a, x)) == a * X.delta(x),
                 "a=" + a.to_string() + " x=" + x.to_string());
      rep.record(eq_r, X.delta(X.act_r(x, a)) == X.delta(x) * a,
                 "a=" + a.to_string() + " x=" + x.to_string());
    }
  }
  return rep;
}

// Element of the semidirect product X |x A: pair (x, a) with the
// action-twisted multiplication.
struct PairElt {
  Mat x;  // carrier payload
  Mat a;  // ambient part

  bool operator==(const PairElt& o) const { return x == o.x && a == o.a; }
  bool operator!=(const PairElt& o) const { return !(*this == o); }
  std::string to_string() const { return x.to_string() + "|x" + a.to_string(); }
  std::string key() const { return x.key() + "#" + a.key(); }
};

struct SemidirectAlgebra {
  AlgCrossedModule cm;

  const MatrixAlgebra& base() const { return *cm.A; }

  PairElt zero() const { return {cm.A->zero(), cm.A->zero()}; }
  PairElt one() const { return {cm.A->zero(), cm.A->one()}; }
  PairElt d(const Mat& a) const { return {cm.A->zero(), a}; }
  PairElt from_x(const Mat& x) const { return {x, cm.A->zero()}; }

  Mat p1(const PairElt& e) const { return e.a; }
  Mat p2(const PairElt& e) const { return cm.delta(e.x) + e.a; }

  PairElt add(const PairElt& u, const PairElt& v) const { return {u.x + v.x, u.a + v.a}; }
  PairElt neg(const PairElt& u) const { return {-u.x, -u.a}; }

  PairElt mul(const PairElt& u, const PairElt& v) const {
    return {cm.mul(u.x, v.x) + cm.act_r(u.x, v.a) + cm.act_l(u.a, v.x), u.a * v.a};
  }

  // (x,a)^{-1} = (-(delta(x)+a)^{-1} x a^{-1}, a^{-1}); the Peiffer identity
  // makes this a two-sided inverse.
  std::optional<PairElt> try_inv(const PairElt& u) const {
    auto ai = try_invert(u.a);
    if (!ai) return std::nullopt;
    auto ui = try_invert(p2(u));
    if (!ui) return std::nullopt;
    PairElt r{-cm.act_l(*ui, cm.act_r(u.x, *ai)), *ai};
    return r;
  }

  PairElt inv(const PairElt& u) const {
    auto r = try_inv(u);
    if (!r) fail("NotInvertible", "semidirect element is not invertible");
    return *r;
  }

  PairElt conj(const PairElt& g, const PairElt& h) const { return mul(mul(g, h), inv(g)); }
  PairElt commutator(const PairElt& g, const PairElt& h) const {
    return mul(mul(g, h), mul(inv(g), inv(h)));
  }
};

// Builds the semidirect product after validating the crossed-module identities.
inline SemidirectAlgebra semidirect(const AlgCrossedModule& X, long long validate_budget = 200) {
  Rng rng(0x5eed5eedULL);
  CheckReport rep = check_crossed_module(X, validate_budget, rng);
  if (!rep.passed()) fail("InvalidCrossedModule", "crossed-module identities fail for " + X.label_str());
  return SemidirectAlgebra{X};
}

}  // namespace stw
