#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stw/algebra.hpp"
#include "stw/rootsys.hpp"

namespace stw {

// Split odd form algebra: R = M_{2l+m0}(K) with rows/columns indexed
// -l..-1, (middle block of size m0), 1..l, involution = antidiagonal
// transpose, and the maximal odd form parameter
//   Delta = { (m, a) : a + bar(m) m + bar(a) = 0 }.
struct OddFormAlgebra {
  enum class Involution { AntidiagTranspose, PlainTranspose };

  MatrixAlgebra R;
  int l = 0, m0 = 0;
  Involution inv_kind = Involution::AntidiagTranspose;

  int n() const { return R.n; }

  // position of a signed index; signed 0 is invalid (middle is a block)
  int pos(int s) const { return s < 0 ? s + l : l + m0 + s - 1; }
  int nblocks() const { return 2 * l + (m0 > 0 ? 1 : 0); }
  int block_id(int s) const {
    if (s < 0) return s + l;
    if (s == 0) return l;  // middle
    return l + (m0 > 0 ? 1 : 0) + s - 1;
  }

  Mat bar(const Mat& x) const {
    Mat z(x.ring, x.cols, x.rows);
    const int N = x.rows;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        auto [fi, fj] = flip(i, j);
        z.at(i, j) = x.at(fi, fj);
      }
    return z;
  }

  // cell (i,j) of bar(x) reads x at flip(i,j)
  std::pair<int, int> flip(int i, int j) const {
    if (inv_kind == Involution::AntidiagTranspose) return {n() - 1 - j, n() - 1 - i};
    return {j, i};
  }

  Mat e(int s) const { return R.e(block_id(s)); }
  Mat e_mid() const { return m0 > 0 ? R.e(block_id(0)) : R.zero(); }
};

struct OddFormPoint {
  Mat m, a;
  bool operator==(const OddFormPoint& o) const { return m == o.m && a == o.a; }
  bool operator!=(const OddFormPoint& o) const { return !(*this == o); }
  std::string to_string() const { return "(" + m.to_string() + "," + a.to_string() + ")"; }
  std::string key() const { return m.key() + "#" + a.key(); }
};

struct HyperbolicFamily {
  std::map<int, Mat> e;           // signed indices +-1..+-l
  std::map<int, OddFormPoint> q;  // signed indices
};

// ---- Delta operations ----

inline bool is_point(const OddFormAlgebra& O, const OddFormPoint& u) {
  return (u.a + O.bar(u.m) * u.m + O.bar(u.a)).is_zero();
}

inline OddFormPoint dzero(const OddFormAlgebra& O) { return {O.R.zero(), O.R.zero()}; }

inline OddFormPoint dadd(const OddFormAlgebra& O, const OddFormPoint& u, const OddFormPoint& v) {
  return {u.m + v.m, u.a - O.bar(u.m) * v.m + v.a};
}

inline OddFormPoint dneg(const OddFormAlgebra& O, const OddFormPoint& u) {
  return {-u.m, O.bar(u.a)};
}

inline OddFormPoint dsum(const OddFormAlgebra& O, const std::vector<OddFormPoint>& us) {
  OddFormPoint acc = dzero(O);
  for (const auto& u : us) acc = dadd(O, acc, u);
  return acc;
}

inline OddFormPoint phi(const OddFormAlgebra& O, const Mat& c) { return {O.R.zero(), c - O.bar(c)}; }

inline const Mat& pi(const OddFormPoint& u) { return u.m; }
inline const Mat& rho(const OddFormPoint& u) { return u.a; }

inline OddFormPoint act(const OddFormAlgebra& O, const OddFormPoint& u, const Mat& b) {
  return {u.m * b, O.bar(b) * u.a * b};
}

// action of b + k*1 in R |x K
inline OddFormPoint act_rk(const OddFormAlgebra& O, const OddFormPoint& u, const Mat& b,
                           const RingElement& k) {
  Mat total = b + k * O.R.one();
  return act(O, u, total);
}

// ---- canonical trace solving: a + bar(a) = c ----

// Returns a deterministic particular solution, or nullopt when the
// antidiagonal entries are not divisible by 2 in some factor. Requires
// bar(c) = c.
inline std::optional<Mat> solve_trace(const OddFormAlgebra& O, const Mat& c) {
  if (O.bar(c) != c) return std::nullopt;
  const int N = c.rows;
  const BaseRing* K = c.ring;
  Mat a(K, N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      auto [fi, fj] = O.flip(i, j);
      if (fi == i && fj == j) {
        // fixed entry: 2x = c
        RingElement v = c.at(i, j);
        RingElement x = K->zero();
        for (size_t f = 0; f < K->nfactors(); ++f) {
          uint32_t mod = K->factors[f].mod;
          if (K->factors[f].p == 2) {
            if (v.r[f] % 2) return std::nullopt;
            x.r[f] = static_cast<uint16_t>(v.r[f] / 2);
          } else {
            // 2 is a unit
            uint32_t inv2 = 1;
            for (uint32_t t = 1; t < mod; ++t)
              if (2 * t % mod == 1) { inv2 = t; break; }
            x.r[f] = static_cast<uint16_t>(uint64_t(v.r[f]) * inv2 % mod);
          }
        }
        x.ring = K;
        a.at(i, j) = x;
      } else if (std::make_pair(i, j) < std::make_pair(fi, fj)) {
        a.at(i, j) = c.at(i, j);
        // flipped entry stays zero
      }
    }
  return a;
}

// Random z with z + bar(z) = 0.
inline Mat random_trace_zero(const OddFormAlgebra& O, Rng& rng) {
  const int N = O.n();
  const BaseRing* K = O.R.K;
  Mat z(K, N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      auto [fi, fj] = O.flip(i, j);
      if (fi == i && fj == j) {
        // 2x = 0
        RingElement x = K->zero();
        for (size_t f = 0; f < K->nfactors(); ++f) {
          if (K->factors[f].p == 2) {
            uint32_t half = K->factors[f].mod / 2;
            x.r[f] = rng.below(2) ? static_cast<uint16_t>(half) : 0;
          }
        }
        x.ring = K;
        z.at(i, j) = x;
      } else if (std::make_pair(i, j) < std::make_pair(fi, fj)) {
        RingElement v = random_element(*K, rng);
        z.at(i, j) = v;
        z.at(fi, fj) = -v;
      }
    }
  return z;
}

namespace detail {
// Element divisible by 2 in the 2-adic factors (odd factors unconstrained).
inline RingElement random_even2(const BaseRing& K, Rng& rng) {
  RingElement x = random_element(K, rng);
  for (size_t f = 0; f < K.nfactors(); ++f)
    if (K.factors[f].p == 2) x.r[f] = static_cast<uint16_t>(x.r[f] / 2 * 2);
  return x;
}
}  // namespace detail

// Uniform-ish random point of Delta: the middle fixed row of m (present when
// n is odd) is forced even so the trace equation is solvable.
inline OddFormPoint random_point(const OddFormAlgebra& O, Rng& rng) {
  const int N = O.n();
  const BaseRing* K = O.R.K;
  bool antidiag = O.inv_kind == OddFormAlgebra::Involution::AntidiagTranspose;
  int fixed_row = (antidiag && N % 2) ? (N - 1) / 2 : -1;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat m(K, N, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        m.at(i, j) = (i == fixed_row) ? detail::random_even2(*K, rng) : random_element(*K, rng);
    auto a0 = solve_trace(O, -(O.bar(m) * m));
    if (a0) return {m, *a0 + random_trace_zero(O, rng)};
  }
  // phi-images are always points
  return phi(O, random_matrix(K, N, N, rng));
}

// Random element of the ultrashort parameter set for signed index j:
// pi-part in the middle column block of j, rho-part in the (-j, j) cell.
inline OddFormPoint random_ultrashort(const OddFormAlgebra& O, int j, Rng& rng) {
  const BaseRing* K = O.R.K;
  const int N = O.n();
  Mat m(K, N, N);
  int col = O.pos(j);
  int fixed_row = (N % 2) ? (N - 1) / 2 : -1;
  for (int r = O.l; r < O.l + O.m0; ++r)
    m.at(r, col) = (r == fixed_row) ? detail::random_even2(*K, rng) : random_element(*K, rng);
  auto a0 = solve_trace(O, -(O.bar(m) * m));
  if (!a0) return dzero(O);
  Mat a = *a0;
  // add a random trace-zero supported on the (-j, j) cell
  int rr = O.pos(-j), cc = O.pos(j);
  Mat z(K, N, N);
  if (rr == N - 1 - cc && cc == N - 1 - rr) {
    RingElement x = K->zero();
    for (size_t f = 0; f < K->nfactors(); ++f)
      if (K->factors[f].p == 2) {
        uint32_t half = K->factors[f].mod / 2;
        x.r[f] = rng.below(2) ? static_cast<uint16_t>(half) : 0;
      }
    x.ring = K;
    z.at(rr, cc) = x;
  }
  return {m, a + z};
}

inline std::vector<OddFormPoint> enumerate_ultrashort(const OddFormAlgebra& O, int j,
                                                      uint64_t cap = 1 << 20) {
  const BaseRing* K = O.R.K;
  const int N = O.n();
  int col = O.pos(j), rr = O.pos(-j);
  double total = static_cast<double>(K->order());
  for (int r = 0; r < O.m0; ++r) total *= static_cast<double>(K->order());
  if (total > static_cast<double>(cap)) fail("ConfigError", "ultrashort parameter set too large");
  std::vector<OddFormPoint> out;
  std::vector<uint64_t> idx(O.m0 + 1, 0);
  while (true) {
    Mat m(K, N, N), a(K, N, N);
    for (int r = 0; r < O.m0; ++r) m.at(O.l + r, col) = K->element_at(idx[r]);
    a.at(rr, col) = K->element_at(idx[O.m0]);
    OddFormPoint u{m, a};
    if (is_point(O, u)) out.push_back(u);
    int p = O.m0;
    while (p >= 0) {
      if (++idx[p] < K->order()) break;
      idx[p] = 0;
      --p;
    }
    if (p < 0) break;
  }
  return out;
}

// ---- construction ----

inline std::pair<OddFormAlgebra, HyperbolicFamily> build_split_oddform(const BaseRing* K, int l,
                                                                       int m0) {
  if (l < 1 || m0 < 0) fail("ConfigError", "need rank >= 1 and middle block >= 0");
  OddFormAlgebra O;
  O.l = l;
  O.m0 = m0;
  int n = 2 * l + m0;
  std::vector<int> blocks(n);
  for (int s = -l; s <= l; ++s) {
    if (s == 0) continue;
    blocks[O.pos(s)] = O.block_id(s);
  }
  for (int k = 0; k < m0; ++k) blocks[l + k] = O.block_id(0);
  O.R = MatrixAlgebra::full(K, n, blocks);
  HyperbolicFamily F;
  for (int s = -l; s <= l; ++s) {
    if (s == 0) continue;
    F.e[s] = O.e(s);
    F.q[s] = OddFormPoint{O.e(s), O.R.zero()};
  }
  return {O, F};
}

// ---- axiom checker ----

// Two-sided ideal membership in M_n(K): R e R = M_n(I) with I generated by
// the entries of e.
namespace detail {
inline bool in_two_sided_ideal(const Mat& x, const Mat& gen) {
  Ideal I = ideal_generated(*x.ring, std::vector<RingElement>(gen.a.begin(), gen.a.end()));
  for (const auto& v : x.a)
    if (!I.contains(v)) return false;
  return true;
}
}  // namespace detail

struct OddFormBudget {
  long long samples = 2000;
  bool phi_matrix_units = true;  // include exhaustive phi-images of matrix units
};

inline CheckReport check_oddform_axioms(const OddFormAlgebra& O, const HyperbolicFamily& F,
                                        const OddFormBudget& budget, Rng& rng,
                                        const std::vector<OddFormPoint>* point_pool = nullptr) {
  CheckReport rep;
  rep.name = "oddform-axioms";
  const BaseRing* K = O.R.K;
  const int N = O.n();

  auto& a1 = rep.add("alg/pi-phi-zero");
  auto& a2 = rep.add("alg/phi-kills-traces");
  auto& a3 = rep.add("alg/rho-phi");
  auto& a4 = rep.add("alg/near-commutativity");
  auto& a5 = rep.add("alg/phi-action");
  auto& a6 = rep.add("alg/rho-additivity");
  auto& a7 = rep.add("alg/pi-action");
  auto& a8 = rep.add("alg/rho-quadratic");
  auto& a9 = rep.add("alg/rho-action");
  auto& a10 = rep.add("alg/action-additivity");

  std::vector<OddFormPoint> pool;
  if (point_pool) {
    pool = *point_pool;
  } else {
    if (budget.phi_matrix_units) {
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
          for (uint64_t v = 1; v < K->order(); ++v) {
            Mat c(K, N, N);
            c.at(i, j) = K->element_at(v);
            pool.push_back(phi(O, c));
          }
    }
    long long extra = std::max<long long>(budget.samples / 4, 8);
    for (long long t = 0; t < extra; ++t) pool.push_back(random_point(O, rng));
  }
  for (const auto& u : pool) {
    if (!is_point(O, u)) {
      rep.add("alg/point-membership").status = Status::Fail;
      rep.notes.push_back("pool contains a non-point " + u.to_string());
      return rep;
    }
  }

  auto rand_u = [&](Rng& r) -> const OddFormPoint& { return pool[r.below(pool.size())]; };

  for (long long t = 0; t < budget.samples; ++t) {
    Mat a = random_matrix(K, N, N, rng);
    Mat b = random_matrix(K, N, N, rng);
    Mat b2 = random_matrix(K, N, N, rng);
    RingElement k = random_element(*K, rng);
    RingElement kb = random_element(*K, rng);
    Mat brk = b + kb * O.R.one();  // generic element of R |x K
    OddFormPoint u = rand_u(rng), v = rand_u(rng);

    rep.record(a1, pi(phi(O, a)).is_zero(), "a=" + a.to_string());
    rep.record(a2,
               phi(O, a + O.bar(a)) == dzero(O) && phi(O, O.bar(a) * a * k) == dzero(O),
               "a=" + a.to_string() + " k=" + K->to_string(k));
    rep.record(a3, rho(phi(O, a)) == a - O.bar(a), "a=" + a.to_string());
    rep.record(a4,
               dadd(O, v, u) == dsum(O, {u, phi(O, O.bar(pi(u)) * pi(v)), v}),
               "u=" + u.to_string() + " v=" + v.to_string());
    rep.record(a5, act(O, phi(O, a), brk) == phi(O, O.bar(brk) * a * brk),
               "a=" + a.to_string() + " b=" + brk.to_string());
    rep.record(a6,
               rho(dadd(O, u, v)) == rho(u) - O.bar(pi(u)) * pi(v) + rho(v),
               "u=" + u.to_string() + " v=" + v.to_string());
    rep.record(a7, pi(act(O, u, brk)) == pi(u) * brk, "u=" + u.to_string());
    rep.record(a8, (rho(u) + O.bar(pi(u)) * pi(u) + O.bar(rho(u))).is_zero(), "u=" + u.to_string());
    rep.record(a9, rho(act(O, u, brk)) == O.bar(brk) * rho(u) * brk, "u=" + u.to_string());
    Mat brk2 = b2 + k * O.R.one();
    rep.record(a10,
               act(O, u, brk + brk2) ==
                   dsum(O, {act(O, u, brk), phi(O, O.bar(brk2) * rho(u) * brk), act(O, u, brk2)}),
               "u=" + u.to_string());
  }

  auto& f1 = rep.add("family/orthogonal-idempotents");
  auto& f2 = rep.add("family/involution-swaps-indices");
  auto& f3 = rep.add("family/completeness");
  auto& f4 = rep.add("family/pi-of-q");
  auto& f5 = rep.add("family/rho-of-q");
  auto& f6 = rep.add("family/q-column");

  for (const auto& [i, ei] : F.e) {
    for (const auto& [j, ej] : F.e)
      if (i != j)
        rep.record(f1, (ei * ej).is_zero(),
                   "i=" + std::to_string(i) + " j=" + std::to_string(j));
    rep.record(f2, O.bar(ei) == F.e.at(-i), "i=" + std::to_string(i));
    for (const auto& [j, ej] : F.e)
      if (i != j)
        rep.record(f3, detail::in_two_sided_ideal(ei, ej),
                   "i=" + std::to_string(i) + " j=" + std::to_string(j));
    const OddFormPoint& qi = F.q.at(i);
    rep.record(f4, pi(qi) == ei, "i=" + std::to_string(i));
    rep.record(f5, rho(qi).is_zero(), "i=" + std::to_string(i));
    rep.record(f6, act(O, qi, ei) == qi, "i=" + std::to_string(i));
  }
  return rep;
}

// ---- unitary root elements ----

// Signed block data of a BC root vector.
struct BcRoot {
  enum class Kind { Medium, Ultrashort, Long };
  Kind kind;
  int i = 0, j = 0;  // medium: e_j - e_i; ultrashort/long: j
};

inline BcRoot classify_bc_root(const RootVec& v) {
  std::vector<std::pair<int, int>> nz;  // (coordinate, value)
  for (size_t c = 0; c < v.size(); ++c)
    if (v[c]) nz.push_back({static_cast<int>(c) + 1, v[c]});
  BcRoot r{BcRoot::Kind::Ultrashort, 0, 0};
  if (nz.size() == 1 && std::abs(nz[0].second) == 1) {
    r.kind = BcRoot::Kind::Ultrashort;
    r.j = nz[0].second > 0 ? nz[0].first : -nz[0].first;
    return r;
  }
  if (nz.size() == 1 && std::abs(nz[0].second) == 2) {
    r.kind = BcRoot::Kind::Long;
    r.j = nz[0].second > 0 ? nz[0].first : -nz[0].first;
    return r;
  }
  if (nz.size() == 2 && std::abs(nz[0].second) == 1 && std::abs(nz[1].second) == 1) {
    int t1 = nz[0].second > 0 ? nz[0].first : -nz[0].first;
    int t2 = nz[1].second > 0 ? nz[1].first : -nz[1].first;
    // v = e_{t1} + e_{t2} = e_j - e_i with i = -t2 (or swap); pick i + j > 0
    r.kind = BcRoot::Kind::Medium;
    if (t1 - t2 > 0) {
      r.j = t1;
      r.i = -t2;
    } else {
      r.j = t2;
      r.i = -t1;
    }
    return r;
  }
  fail("ConfigError", "not a BC root");
}

inline bool ultrashort_param_ok(const OddFormAlgebra& O, int j, const OddFormPoint& u) {
  if (!is_point(O, u)) return false;
  // pi in the middle column block of j, rho in the (-j, j) cell
  const int N = O.n();
  int col = O.pos(j), rr = O.pos(-j);
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) {
      bool mid_ok = (r >= O.l && r < O.l + O.m0 && c == col);
      if (!mid_ok && !is_zero(u.m.at(r, c))) return false;
      bool rho_ok = (r == rr && c == col);
      if (!rho_ok && !is_zero(u.a.at(r, c))) return false;
    }
  return true;
}

inline bool long_param_ok(const OddFormAlgebra& O, int j, const OddFormPoint& u) {
  return u.m.is_zero() && ultrashort_param_ok(O, j, u) && O.bar(u.a) == -u.a;
}

// t_alpha in the unitary group: T_{ij}(a) = 1 + a - bar(a) for medium roots,
// T_j(u) = 1 + pi(u) - bar(pi(u)) + rho(u) for ultrashort and long roots.
inline Mat unitary_root_element(const OddFormAlgebra& O, const RootVec& root, const OddFormPoint& p) {
  BcRoot r = classify_bc_root(root);
  switch (r.kind) {
    case BcRoot::Kind::Medium: {
      if (!p.m.is_zero() || O.R.proj(O.block_id(r.i), O.block_id(r.j), p.a) != p.a)
        fail("ParameterOutOfBlock", "medium root parameter must lie in e_i R e_j");
      return O.R.one() + p.a - O.bar(p.a);
    }
    case BcRoot::Kind::Ultrashort: {
      if (!ultrashort_param_ok(O, r.j, p))
        fail("ParameterOutOfBlock", "ultrashort parameter constraint violated");
      return O.R.one() + p.m - O.bar(p.m) + p.a;
    }
    case BcRoot::Kind::Long: {
      if (!long_param_ok(O, r.j, p))
        fail("ParameterOutOfBlock", "long root parameter must be a phi-image in e_{-j} R e_j");
      return O.R.one() + p.a;
    }
  }
  fail("ConfigError", "unreachable");
}

// Strict coordinate reader: the left inverse of unitary_root_element on
// elements with the exact unipotent pattern of the root.
inline OddFormPoint read_root_coordinate(const OddFormAlgebra& O, const RootVec& root, const Mat& g) {
  BcRoot r = classify_bc_root(root);
  const int N = O.n();
  OddFormPoint p{Mat(g.ring, N, N), Mat(g.ring, N, N)};
  switch (r.kind) {
    case BcRoot::Kind::Medium:
      p.a = O.R.proj(O.block_id(r.i), O.block_id(r.j), g);
      break;
    case BcRoot::Kind::Ultrashort: {
      int col = O.pos(r.j), rr = O.pos(-r.j);
      for (int row = O.l; row < O.l + O.m0; ++row) p.m.at(row, col) = g.at(row, col);
      p.a.at(rr, col) = g.at(rr, col);
      break;
    }
    case BcRoot::Kind::Long: {
      int col = O.pos(r.j), rr = O.pos(-r.j);
      p.a.at(rr, col) = g.at(rr, col);
      break;
    }
  }
  if (unitary_root_element(O, root, p) != g)
    fail("PatternMismatch", "element does not have the unipotent pattern of the root");
  return p;
}

}  // namespace stw
