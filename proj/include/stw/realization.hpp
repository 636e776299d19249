#pragma once

#include <string>
#include <vector>

#include "stw/algebra.hpp"
#include "stw/oddform.hpp"
#include "stw/rootsys.hpp"

namespace stw {

// ---- algebra objects behind the linear realization ----

struct MatAlgObj {
  const MatrixAlgebra* A = nullptr;
  using Elt = Mat;

  int nblocks() const { return A->nblocks; }
  Elt one() const { return A->one(); }
  Elt zero() const { return A->zero(); }
  Elt add(const Elt& x, const Elt& y) const { return x + y; }
  Elt neg(const Elt& x) const { return -x; }
  Elt mul(const Elt& x, const Elt& y) const { return x * y; }
  Elt inv(const Elt& x) const { return invert(x); }
  bool eq(const Elt& x, const Elt& y) const { return x == y; }
  Elt proj(int bi, int bj, const Elt& x) const { return A->proj(bi, bj, x); }
  Elt random_block(int bi, int bj, Rng& rng) const { return A->random_in_block(bi, bj, rng); }
  std::vector<Elt> enumerate_block(int bi, int bj, uint64_t cap) const {
    return A->enumerate_block(bi, bj, cap);
  }
  double block_count(int bi, int bj) const {
    double t = 1;
    for (size_t c = 0; c < A->block_cells(bi, bj).size(); ++c)
      t *= static_cast<double>(A->K->order());
    return t;
  }
  std::string str(const Elt& x) const { return x.to_string(); }
  std::string key(const Elt& x) const { return x.key(); }
};

// Enumeration of carrier-side block elements of a crossed module.
inline std::vector<Mat> enumerate_carrier_block(const AlgCrossedModule& X, int bi, int bj,
                                                uint64_t cap) {
  std::vector<Mat> amb = X.A->enumerate_block(bi, bj, cap);
  if (X.kind != AlgCrossedModule::Kind::IdealCentral) return amb;
  std::vector<Mat> out;
  std::set<std::string> seen;
  for (const auto& m : amb) {
    Mat y = X.scalar * m;
    if (seen.insert(y.key()).second) out.push_back(y);
  }
  return out;
}

inline Mat random_carrier_block(const AlgCrossedModule& X, int bi, int bj, Rng& rng) {
  Mat m = X.A->random_in_block(bi, bj, rng);
  if (X.kind == AlgCrossedModule::Kind::IdealCentral) m = X.scalar * m;
  return m;
}

struct PairAlgObj {
  const SemidirectAlgebra* S = nullptr;
  using Elt = PairElt;

  int nblocks() const { return S->base().nblocks; }
  Elt one() const { return S->one(); }
  Elt zero() const { return S->zero(); }
  Elt add(const Elt& x, const Elt& y) const { return S->add(x, y); }
  Elt neg(const Elt& x) const { return S->neg(x); }
  Elt mul(const Elt& x, const Elt& y) const { return S->mul(x, y); }
  Elt inv(const Elt& x) const { return S->inv(x); }
  bool eq(const Elt& x, const Elt& y) const { return x == y; }
  Elt proj(int bi, int bj, const Elt& x) const {
    return {S->base().proj(bi, bj, x.x), S->base().proj(bi, bj, x.a)};
  }
  Elt random_block(int bi, int bj, Rng& rng) const {
    return {random_carrier_block(S->cm, bi, bj, rng), S->base().random_in_block(bi, bj, rng)};
  }
  std::vector<Elt> enumerate_block(int bi, int bj, uint64_t cap) const {
    std::vector<Elt> out;
    auto xs = enumerate_carrier_block(S->cm, bi, bj, cap);
    auto as = S->base().enumerate_block(bi, bj, cap);
    if (xs.size() * as.size() > cap) fail("ConfigError", "pair block too large to enumerate");
    for (const auto& x : xs)
      for (const auto& a : as) out.push_back({x, a});
    return out;
  }
  double block_count(int bi, int bj) const {
    MatAlgObj amb{&S->base()};
    double a = amb.block_count(bi, bj);
    if (S->cm.kind != AlgCrossedModule::Kind::IdealCentral) return a * a;
    // ideal block size: count distinct c*b
    auto xs = enumerate_carrier_block(S->cm, bi, bj, 1 << 16);
    return static_cast<double>(xs.size()) * a;
  }
  std::string str(const Elt& x) const { return x.to_string(); }
  std::string key(const Elt& x) const { return x.key(); }
};

// ---- linear realization: G = invertible elements, t_{e_i - e_j}(p) = 1 + p ----

template <class AO>
struct GlRealization {
  const RootSystem* phi_ = nullptr;  // type A, rank = nblocks - 1
  AO alg;

  using Param = typename AO::Elt;
  using G = typename AO::Elt;

  const RootSystem& phi() const { return *phi_; }

  // block pair of a type-A root e_i - e_j
  std::pair<int, int> blocks_of(int root) const {
    const RootVec& v = phi_->roots[root];
    int bi = -1, bj = -1;
    for (size_t c = 0; c < v.size(); ++c) {
      if (v[c] == 1) bi = static_cast<int>(c);
      if (v[c] == -1) bj = static_cast<int>(c);
    }
    return {bi, bj};
  }

  Param pzero(int) const { return alg.zero(); }
  Param padd(int, const Param& p, const Param& q) const { return alg.add(p, q); }
  Param pneg(int, const Param& p) const { return alg.neg(p); }
  bool peq(int, const Param& p, const Param& q) const { return alg.eq(p, q); }
  bool pis_zero(int r, const Param& p) const { return alg.eq(p, alg.zero()); }
  bool in_param_set(int root, const Param& p) const {
    auto [bi, bj] = blocks_of(root);
    return alg.eq(alg.proj(bi, bj, p), p);
  }

  G t(int root, const Param& p) const { return alg.add(alg.one(), p); }
  Param read_block(int root, const G& g) const {
    auto [bi, bj] = blocks_of(root);
    return alg.proj(bi, bj, g);
  }

  G one() const { return alg.one(); }
  G mul(const G& x, const G& y) const { return alg.mul(x, y); }
  G inv(const G& x) const { return alg.inv(x); }
  G conj(const G& g, const G& h) const { return mul(mul(g, h), inv(g)); }
  G commutator(const G& x, const G& y) const { return mul(mul(x, y), mul(inv(x), inv(y))); }
  bool geq(const G& x, const G& y) const { return alg.eq(x, y); }
  bool is_one(const G& x) const { return alg.eq(x, alg.one()); }

  std::vector<Param> enumerate_params(int root, uint64_t cap = 65536) const {
    auto [bi, bj] = blocks_of(root);
    return alg.enumerate_block(bi, bj, cap);
  }
  Param random_param(int root, Rng& rng) const {
    auto [bi, bj] = blocks_of(root);
    return alg.random_block(bi, bj, rng);
  }
  double param_count(int root) const {
    auto [bi, bj] = blocks_of(root);
    return alg.block_count(bi, bj);
  }
  std::string gstr(const G& x) const { return alg.str(x); }
  std::string pstr(int, const Param& p) const { return alg.str(p); }
  std::string gkey(const G& x) const { return alg.key(x); }
};

inline GlRealization<MatAlgObj> linear_realization(const RootSystem& phi, const MatrixAlgebra& A) {
  if (phi.type != RootType::A) fail("ConfigError", "linear realization needs a type A system");
  if (A.nblocks != phi.rank + 1)
    fail("ConfigError", "algebra must have rank+1 idempotent blocks");
  return GlRealization<MatAlgObj>{&phi, MatAlgObj{&A}};
}

inline GlRealization<PairAlgObj> pair_realization(const RootSystem& phi, const SemidirectAlgebra& S) {
  if (phi.type != RootType::A) fail("ConfigError", "linear realization needs a type A system");
  if (S.base().nblocks != phi.rank + 1)
    fail("ConfigError", "algebra must have rank+1 idempotent blocks");
  return GlRealization<PairAlgObj>{&phi, PairAlgObj{&S}};
}

// ---- unitary realization over a split odd form algebra ----

struct UnitaryRealization {
  const RootSystem* phi_ = nullptr;  // type BC
  const OddFormAlgebra* O = nullptr;
  const HyperbolicFamily* F = nullptr;

  using Param = OddFormPoint;
  using G = Mat;

  const RootSystem& phi() const { return *phi_; }
  BcRoot classify(int root) const { return classify_bc_root(phi_->roots[root]); }

  Param pzero(int) const { return dzero(*O); }
  Param padd(int, const Param& u, const Param& v) const { return dadd(*O, u, v); }
  Param pneg(int root, const Param& u) const {
    BcRoot r = classify(root);
    if (r.kind == BcRoot::Kind::Medium) return {O->R.zero(), -u.a};
    return dneg(*O, u);
  }
  bool peq(int, const Param& u, const Param& v) const { return u == v; }
  bool pis_zero(int, const Param& u) const { return u.m.is_zero() && u.a.is_zero(); }

  bool in_param_set(int root, const Param& u) const {
    BcRoot r = classify(root);
    switch (r.kind) {
      case BcRoot::Kind::Medium:
        return u.m.is_zero() &&
               O->R.proj(O->block_id(r.i), O->block_id(r.j), u.a) == u.a;
      case BcRoot::Kind::Ultrashort: return ultrashort_param_ok(*O, r.j, u);
      case BcRoot::Kind::Long: return long_param_ok(*O, r.j, u);
    }
    return false;
  }

  G t(int root, const Param& u) const { return unitary_root_element(*O, phi_->roots[root], u); }

  Param read_block(int root, const G& g) const {
    BcRoot r = classify(root);
    const int N = O->n();
    Param p{Mat(g.ring, N, N), Mat(g.ring, N, N)};
    switch (r.kind) {
      case BcRoot::Kind::Medium:
        p.a = O->R.proj(O->block_id(r.i), O->block_id(r.j), g);
        break;
      case BcRoot::Kind::Ultrashort: {
        int col = O->pos(r.j), rr = O->pos(-r.j);
        for (int row = O->l; row < O->l + O->m0; ++row) p.m.at(row, col) = g.at(row, col);
        p.a.at(rr, col) = g.at(rr, col);  // joint read absorbs the doubled root
        break;
      }
      case BcRoot::Kind::Long: {
        int col = O->pos(r.j), rr = O->pos(-r.j);
        p.a.at(rr, col) = g.at(rr, col);
        break;
      }
    }
    return p;
  }

  G one() const { return O->R.one(); }
  G mul(const G& x, const G& y) const { return x * y; }
  G inv(const G& x) const { return invert(x); }
  G conj(const G& g, const G& h) const { return g * h * invert(g); }
  G commutator(const G& x, const G& y) const { return x * y * invert(x) * invert(y); }
  bool geq(const G& x, const G& y) const { return x == y; }
  bool is_one(const G& x) const { return x == O->R.one(); }

  std::vector<Param> enumerate_params(int root, uint64_t cap = 65536) const {
    BcRoot r = classify(root);
    std::vector<Param> out;
    switch (r.kind) {
      case BcRoot::Kind::Medium:
        for (const auto& m : O->R.enumerate_block(O->block_id(r.i), O->block_id(r.j), cap))
          out.push_back({O->R.zero(), m});
        break;
      case BcRoot::Kind::Ultrashort: out = enumerate_ultrashort(*O, r.j, cap); break;
      case BcRoot::Kind::Long:
        for (const auto& u : enumerate_ultrashort(*O, r.j, cap))
          if (long_param_ok(*O, r.j, u)) out.push_back(u);
        break;
    }
    return out;
  }

  Param random_param(int root, Rng& rng) const {
    BcRoot r = classify(root);
    switch (r.kind) {
      case BcRoot::Kind::Medium:
        return {O->R.zero(), O->R.random_in_block(O->block_id(r.i), O->block_id(r.j), rng)};
      case BcRoot::Kind::Ultrashort: return random_ultrashort(*O, r.j, rng);
      case BcRoot::Kind::Long: {
        auto all = enumerate_params(root);
        return all[rng.below(all.size())];
      }
    }
    return dzero(*O);
  }

  double param_count(int root) const { return static_cast<double>(enumerate_params(root).size()); }

  std::string gstr(const G& x) const { return x.to_string(); }
  std::string pstr(int, const Param& u) const { return u.to_string(); }
  std::string gkey(const G& x) const { return x.key(); }
};

inline UnitaryRealization unitary_realization(const RootSystem& phi, const OddFormAlgebra& O,
                                              const HyperbolicFamily& F) {
  if (phi.type != RootType::BC) fail("ConfigError", "unitary realization needs a type BC system");
  if (O.l != phi.rank) fail("ConfigError", "hyperbolic family rank must match the root system");
  return UnitaryRealization{&phi, &O, &F};
}

}  // namespace stw
