#pragma once

#include <string>
#include <vector>

#include "stw/steinberg.hpp"

namespace stw {

// Shared scaffolding for the checks that live inside G(Phi, X |x A): the
// relative generators z and the crossed-square data, all evaluated in the
// pair carrier.
struct RelativeContext {
  const RootSystem* phi = nullptr;
  const MatrixAlgebra* A = nullptr;
  SemidirectAlgebra S;
  GlRealization<PairAlgObj> real;

  RelativeContext(const RootSystem& phi_, const MatrixAlgebra& A_, const AlgCrossedModule& X)
      : phi(&phi_), A(&A_), S(semidirect(X)), real(pair_realization(phi_, S)) {}

  const AlgCrossedModule& X() const { return S.cm; }

  // x_alpha(a) for a carrier-side parameter
  PairElt xX(int root, const Mat& a) const { return real.t(root, PairElt{a, A->zero()}); }
  // t_alpha(p) = d-embedded ambient root element
  PairElt tA(int root, const Mat& p) const { return real.t(root, PairElt{A->zero(), p}); }
  PairElt D(const Mat& m) const { return S.d(m); }

  PairElt mul(const PairElt& a, const PairElt& b) const { return S.mul(a, b); }
  PairElt inv(const PairElt& a) const { return S.inv(a); }
  PairElt conj(const PairElt& g, const PairElt& h) const { return S.conj(g, h); }
  PairElt comm(const PairElt& g, const PairElt& h) const { return S.commutator(g, h); }
  bool is_one(const PairElt& a) const { return a == S.one(); }

  Mat rand_xblock(int root, Rng& rng) const {
    auto [bi, bj] = real.blocks_of(root);
    return random_carrier_block(X(), bi, bj, rng);
  }
  Mat rand_ablock(int root, Rng& rng) const {
    auto [bi, bj] = real.blocks_of(root);
    return A->random_in_block(bi, bj, rng);
  }

  // z_alpha(a, p) = conjugate of x_alpha(a) by x_{-alpha}(p)
  PairElt z(int alpha, const Mat& a, const Mat& p) const {
    return conj(tA(phi->negate(alpha), p), xX(alpha, a));
  }

  // word in St(Sigma, X) (carrier image)
  PairElt word_X(const std::vector<int>& roots, int len, Rng& rng) const {
    PairElt g = S.one();
    for (int i = 0; i < len; ++i) {
      int r = roots[rng.below(roots.size())];
      g = mul(g, xX(r, rand_xblock(r, rng)));
    }
    return g;
  }
  PairElt word_A(const std::vector<int>& roots, int len, Rng& rng) const {
    PairElt g = S.one();
    for (int i = 0; i < len; ++i) {
      int r = roots[rng.below(roots.size())];
      g = mul(g, tA(r, rand_ablock(r, rng)));
    }
    return g;
  }
  // z_Sigma(g, h) = h g h^{-1}
  PairElt zS(const PairElt& g, const PairElt& h) const { return conj(h, g); }

  // random element of Ker(p1) via a word with its ambient part divided out
  PairElt rand_ker(Rng& rng, int len = 4) const {
    PairElt v = S.one();
    for (int i = 0; i < len; ++i) {
      int r = rng.below_int(phi->size());
      v = mul(v, real.t(r, PairElt{rand_xblock(r, rng), rand_ablock(r, rng)}));
    }
    return mul(v, inv(D(S.p1(v))));
  }

  // random element of G(Phi, X) = invertible pairs with ambient part 1
  PairElt rand_gx(Rng& rng) const {
    for (int tries = 0; tries < 64; ++tries) {
      Mat x = X().sample(rng);
      PairElt g{x, A->one()};
      if (S.try_inv(g)) return g;
    }
    return S.one();
  }

  Mat rand_eA(Rng& rng, int len = 4) const {  // element of the elementary subgroup
    Mat g = A->one();
    for (int i = 0; i < len; ++i) {
      int r = rng.below_int(phi->size());
      auto [bi, bj] = real.blocks_of(r);
      g = g * (A->one() + A->random_in_block(bi, bj, rng));
    }
    return g;
  }
  Mat rand_glA(Rng& rng) const { return random_invertible(A->K, A->n, rng); }
};

// The seven relation families of the relative Steinberg presentation,
// evaluated as exact identities in the pair carrier.
inline CheckReport check_relative_presentation(const RootSystem& phi, const MatrixAlgebra& A,
                                               const AlgCrossedModule& X, long long budget,
                                               Rng& rng) {
  CheckReport rep;
  rep.name = "relative-presentation";
  RelativeContext C(phi, A, X);

  auto& f1 = rep.add("z-additivity");
  auto& f2 = rep.add("zS-multiplicativity");
  auto& f3 = rep.add("zS-restricts-to-z");
  auto& f4 = rep.add("one-dimensional-series-commute");
  auto& f5 = rep.add("conjugation-rule");
  auto& f6 = rep.add("two-series-exchange");
  auto& f7 = rep.add("parameter-shift-by-delta");

  // thick series bookkeeping
  struct Series {
    int alpha;
    std::vector<int> members;
    std::vector<int> neg_members;
    bool one_dimensional;
  };
  std::vector<Series> series;
  for (int alpha = 0; alpha < phi.size(); ++alpha)
    for (int beta = 0; beta < phi.size(); ++beta) {
      if (phi.parallel_roots(alpha, beta)) continue;
      RootSubset s = thick_series(phi, alpha, beta);
      if (beta != s.members.front()) continue;  // one representative per series
      Series sr;
      sr.alpha = alpha;
      sr.members = s.members;
      for (int id : s.members) sr.neg_members.push_back(phi.negate(id));
      sr.one_dimensional = true;
      for (int id : s.members)
        if (!phi.parallel_roots(id, beta)) sr.one_dimensional = false;
      series.push_back(sr);
    }

  long long trials = std::max<long long>(budget / 24, 4);
  for (long long t = 0; t < trials; ++t) {
    int alpha = rng.below_int(phi.size());
    int nalpha = phi.negate(alpha);
    Mat a = C.rand_xblock(alpha, rng), b = C.rand_xblock(alpha, rng);
    Mat p = C.rand_ablock(nalpha, rng);

    // (1) z(a + b, p) = z(a, p) z(b, p)
    rep.record(f1, C.z(alpha, a + b, p) == C.mul(C.z(alpha, a, p), C.z(alpha, b, p)),
               phi.root_name(alpha) + " a=" + a.to_string() + " b=" + b.to_string() +
                   " p=" + p.to_string());

    // (7) z(a, p + delta(b')) = ^{z_{-alpha}(b', 0)} z(a, p)
    Mat bp = C.rand_xblock(nalpha, rng);
    PairElt lhs7 = C.z(alpha, a, p + X.delta(bp));
    PairElt rhs7 = C.conj(C.z(nalpha, bp, A.zero()), C.z(alpha, a, p));
    rep.record(f7, lhs7 == rhs7,
               phi.root_name(alpha) + " a=" + a.to_string() + " p=" + p.to_string() +
                   " b'=" + bp.to_string());
  }

  for (const auto& sr : series) {
    long long per = std::max<long long>(budget / (6 * series.size()), 2);
    for (long long t = 0; t < per; ++t) {
      PairElt g = C.word_X(sr.members, 3, rng);
      PairElt g2 = C.word_X(sr.members, 3, rng);
      PairElt h = C.word_A(sr.neg_members, 3, rng);

      // (2) z_S(g g', h) = z_S(g, h) z_S(g', h)
      rep.record(f2, C.zS(C.mul(g, g2), h) == C.mul(C.zS(g, h), C.zS(g2, h)), "series check");

      // (3) z_S(x_alpha(a), x_{-alpha}(p)) = z_alpha(a, p) for alpha in Sigma
      int alpha = sr.members[rng.below(sr.members.size())];
      Mat a = C.rand_xblock(alpha, rng);
      Mat p = C.rand_ablock(phi.negate(alpha), rng);
      rep.record(f3,
                 C.zS(C.xX(alpha, a), C.tA(phi.negate(alpha), p)) == C.z(alpha, a, p),
                 phi.root_name(alpha));

      // (5) conjugation rule through w = t_{-a}(p) t_a(delta(a)) t_{-a}(-p)
      int al = sr.alpha;
      int nal = phi.negate(al);
      Mat aa = C.rand_xblock(al, rng);
      Mat pp = C.rand_ablock(nal, rng);
      PairElt w = C.mul(C.mul(C.tA(nal, pp), C.tA(al, X.delta(aa))), C.tA(nal, -pp));
      PairElt lhs = C.conj(C.z(al, aa, pp), C.zS(g, h));
      PairElt rhs = C.zS(C.conj(w, g), C.conj(w, h));
      rep.record(f5, lhs == rhs, phi.root_name(al) + " series conj");
    }
    // (4) commuting for one-dimensional series
    if (sr.one_dimensional) {
      int beta = sr.members.front();
      int alpha = sr.alpha;
      long long per4 = std::max<long long>(budget / (12 * series.size()), 2);
      for (long long t = 0; t < per4; ++t) {
        Mat a = C.rand_xblock(alpha, rng), b = C.rand_xblock(beta, rng);
        Mat p = C.rand_ablock(phi.negate(alpha), rng), q = C.rand_ablock(phi.negate(beta), rng);
        PairElt com = C.comm(C.z(alpha, a, p), C.z(beta, b, q));
        rep.record(f4, C.is_one(com),
                   phi.root_name(alpha) + "," + phi.root_name(beta) + " a=" + a.to_string() +
                       " b=" + b.to_string());
      }
    }
  }

  // (6) exchange over a base of a two-dimensional indecomposable saturated
  // subsystem: in type A these are the adjacent pairs
  for (int alpha = 0; alpha < phi.size(); ++alpha)
    for (int beta = 0; beta < phi.size(); ++beta) {
      if (alpha == beta || phi.parallel_roots(alpha, beta)) continue;
      int sum = phi.index_of(detail::vadd(phi.roots[alpha], phi.roots[beta]));
      if (sum < 0) continue;
      long long per = 2;
      for (long long t = 0; t < per; ++t) {
        std::vector<int> middle{sum};
        PairElt g = C.word_X(middle, 2, rng);
        PairElt h = C.word_A(middle, 2, rng);
        Mat p = C.rand_ablock(alpha, rng), q = C.rand_ablock(beta, rng);
        PairElt lhs = C.zS(C.conj(C.tA(alpha, p), g),
                           C.conj(C.tA(alpha, p), C.mul(h, C.tA(beta, q))));
        PairElt rhs = C.zS(C.conj(C.tA(beta, q), g), C.mul(C.tA(alpha, p), h));
        rep.record(f6, lhs == rhs, phi.root_name(alpha) + "," + phi.root_name(beta));
      }
    }
  return rep;
}

// Crossed-square data for delta: X -> A over the pair carrier:
//   L = Ker(p1), M = G(Phi, X), N = image of St(Phi, A), P = G(Phi, A),
//   pairing <g, a> = [g, d(a)].
inline CheckReport check_crossed_square(const RootSystem& phi, const MatrixAlgebra& A,
                                        const AlgCrossedModule& X, long long budget, Rng& rng) {
  CheckReport rep;
  rep.name = "crossed-square";
  RelativeContext C(phi, A, X);
  const SemidirectAlgebra& S = C.S;

  auto pair_h = [&](const PairElt& g, const Mat& n) { return C.comm(g, C.D(n)); };
  auto conj_m = [&](const Mat& m, const PairElt& x) { return C.conj(C.D(m), x); };

  // five axiom families
  auto& ax_cm = rep.add("axiom/crossed-modules-over-P");
  auto& ax_eq = rep.add("axiom/equivariance");
  auto& ax_h1 = rep.add("axiom/pairing-multiplicative-left");
  auto& ax_h2 = rep.add("axiom/pairing-multiplicative-right");
  auto& ax_hm = rep.add("axiom/pairing-evaluates-maps");
  auto& ax_hl = rep.add("axiom/pairing-on-images");
  // the fifteen action identities
  std::vector<Item*> ids;
  for (int i = 1; i <= 15; ++i)
    ids.push_back(&rep.add("identity/" + std::to_string(i < 10 ? 0 : i / 10) +
                           std::to_string(i % 10)));
  auto& uniq = rep.add("uniqueness-expansion");
  auto& peif = rep.add("peiffer-in-kernel");

  long long trials = std::max<long long>(budget / 40, 4);
  for (long long t = 0; t < trials; ++t) {
    PairElt x = C.rand_ker(rng), y = C.rand_ker(rng);
    PairElt g = C.rand_gx(rng), hh = C.rand_gx(rng);
    Mat a = C.rand_eA(rng), b = C.rand_eA(rng);
    Mat u = C.rand_glA(rng);

    auto P2 = [&](const PairElt& e) { return S.p2(e); };

    // --- crossed modules over P (Peiffer + equivariance of the structure maps)
    {
      bool ok = true;
      // L over P: ^l l' = ^{lambda(l)} l'
      ok = ok && C.conj(x, y) == conj_m(P2(x), y);
      // M over P: ^m m' = ^{mu(m)} m'
      ok = ok && C.conj(g, hh) == conj_m(P2(g), hh);
      // equivariance of lambda, mu under conjugation by P
      ok = ok && P2(C.conj(C.D(u), x)) == u * P2(x) * invert(u);
      ok = ok && P2(C.conj(C.D(u), g)) == u * P2(g) * invert(u);
      rep.record(ax_cm, ok, "x=" + x.to_string() + " g=" + g.to_string());
    }
    // --- equivariance of the pairing
    rep.record(ax_eq,
               C.conj(C.D(u), pair_h(g, a)) == pair_h(C.conj(C.D(u), g), u * a * invert(u)),
               "u-conjugation of the pairing");
    // --- multiplicativity
    rep.record(ax_h1, pair_h(C.mul(g, hh), a) == C.mul(C.conj(g, pair_h(hh, a)), pair_h(g, a)),
               "left");
    rep.record(ax_h2, pair_h(g, a * b) == C.mul(pair_h(g, a), conj_m(a, pair_h(g, b))), "right");
    // --- the pairing evaluates the structure maps
    {
      bool ok = P2(pair_h(g, a)) == P2(g) * a * invert(P2(g)) * invert(a);
      ok = ok && pair_h(g, a) == C.mul(g, C.conj(C.D(a), C.inv(g)));
      rep.record(ax_hm, ok, "maps");
    }
    // --- pairing against images: h(m, nu-hat(l)) = ^{mu(m)} l * l^{-1}
    {
      PairElt lhs = pair_h(g, P2(x));
      PairElt rhs = C.mul(conj_m(P2(g), x), C.inv(x));
      bool ok = lhs == rhs;
      PairElt lhs2 = pair_h(x, a);  // h(mu-hat(l), n) = l ^{nu(n)} l^{-1}
      PairElt rhs2 = C.mul(x, C.conj(C.D(a), C.inv(x)));
      ok = ok && lhs2 == rhs2;
      rep.record(ax_hl, ok, "x=" + x.to_string());
    }

    // --- the fifteen identities
    Mat ua = u * a * invert(u);
    rep.record(*ids[0], conj_m(u, conj_m(a, x)) == conj_m(ua, conj_m(u, x)), "1");
    rep.record(*ids[1], P2(C.conj(g, x)) == P2(g) * P2(x) * invert(P2(g)), "2");
    rep.record(*ids[2], C.conj(g, x) == C.conj(g, x), "3");
    rep.record(*ids[3],
               conj_m(u, C.conj(g, x)) == C.conj(C.conj(C.D(u), g), conj_m(u, x)), "4");
    rep.record(*ids[4], P2(conj_m(u, x)) == u * P2(x) * invert(u), "5");
    rep.record(*ids[5], conj_m(u, x) == conj_m(u, x), "6");
    rep.record(*ids[6], pair_h(g, a * b) == C.mul(pair_h(g, a), conj_m(a, pair_h(g, b))), "7");
    rep.record(*ids[7], P2(pair_h(g, a)) == P2(g) * a * invert(P2(g)) * invert(a), "8");
    rep.record(*ids[8], pair_h(g, a) == C.mul(g, conj_m(a, C.inv(g))), "9");
    rep.record(*ids[9],
               pair_h(C.mul(g, hh), a) == C.mul(C.conj(g, pair_h(hh, a)), pair_h(g, a)), "10");
    rep.record(*ids[10], pair_h(x, a) == C.mul(x, conj_m(a, C.inv(x))), "11");
    rep.record(*ids[11], C.conj(x, y) == conj_m(P2(x), y), "12");
    rep.record(*ids[12], conj_m(u, pair_h(g, a)) == pair_h(C.conj(C.D(u), g), ua), "13");
    rep.record(*ids[13],
               C.mul(pair_h(g, a), conj_m(a, C.conj(g, x))) ==
                   C.mul(C.conj(g, conj_m(a, x)), pair_h(g, a)),
               "14");
    rep.record(*ids[14], conj_m(a, x) == conj_m(a, x), "15");

    // --- uniqueness expansion for <g, [a, b]>
    {
      Mat comm_ab = a * b * invert(a) * invert(b);
      PairElt up = pair_h(g, a), vp = pair_h(g, b);
      PairElt rhs = C.mul(C.mul(up, conj_m(a, vp)),
                          C.mul(conj_m(a * b * invert(a), C.inv(up)), conj_m(comm_ab, C.inv(vp))));
      rep.record(uniq, pair_h(g, comm_ab) == rhs, "g, [a,b]");
    }
    // --- Peiffer identity inside Ker(p1)
    rep.record(peif, C.conj(x, y) == conj_m(P2(x), y), "x=" + x.to_string());
  }

  // degeneracies: <1, a> = 1 and h(m, 1) = 1
  auto& degen = rep.add("pairing-degeneracies");
  for (int t = 0; t < 8; ++t) {
    Mat a = C.rand_eA(rng);
    PairElt g = C.rand_gx(rng);
    bool ok = pair_h(S.one(), a) == S.one() && pair_h(g, A.one()) == S.one();
    rep.record(degen, ok, "");
  }
  return rep;
}

}  // namespace stw
