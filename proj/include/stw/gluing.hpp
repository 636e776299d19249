#pragma once

#include <string>
#include <vector>

#include "stw/freegroup.hpp"
#include "stw/relative.hpp"
#include "stw/tower.hpp"

namespace stw {

// ---- Gauss decomposition over a local base ring ----

struct GaussFactor {
  enum class Kind { RootElement, Transposition, Diagonal };
  Kind kind;
  int i = 0, j = 0;  // blocks involved for root elements / transpositions
  Mat value;
  std::string tag;
};

// Factors an invertible matrix over a local ring into unipotent root
// elements, transpositions (block-diagonal after merging the two indices,
// hence inside D_{e_i - e_j}), and a diagonal torus element. Requires scalar
// blocks. The factors re-multiply to the input in order.
inline std::vector<GaussFactor> gauss_decompose(const MatrixAlgebra& A, const Mat& g) {
  if (A.K->nfactors() > 1) fail("ConfigError", "gauss decomposition needs a local base ring");
  if (A.nblocks != A.n) fail("ConfigError", "gauss decomposition needs scalar blocks");
  const int n = A.n;
  Mat M = g;
  std::vector<GaussFactor> left, right;

  auto transvection = [&](int i, int j, const RingElement& c) {
    Mat T = A.one();
    T.at(i, j) = c;
    return T;
  };

  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (is_unit(M.at(r, c))) { piv = r; break; }
    if (piv < 0) fail("NotInvertible", "no unit pivot in column " + std::to_string(c));
    if (piv != c) {
      Mat P = A.zero();
      for (int r = 0; r < n; ++r) {
        if (r == piv) P.at(r, c) = A.K->one();
        else if (r == c) P.at(r, piv) = A.K->one();
        else P.at(r, r) = A.K->one();
      }
      left.push_back({GaussFactor::Kind::Transposition, c, piv, P,
                      "swap(" + std::to_string(c + 1) + "," + std::to_string(piv + 1) + ")"});
      M = P * M;  // P is its own inverse
    }
    RingElement inv_piv = invert(M.at(c, c));
    for (int r = 0; r < n; ++r) {
      if (r == c || is_zero(M.at(r, c))) continue;
      RingElement coef = M.at(r, c) * inv_piv;
      Mat T = transvection(r, c, coef);
      left.push_back({GaussFactor::Kind::RootElement, r, c, T,
                      "t_{" + std::to_string(r + 1) + std::to_string(c + 1) + "}(" +
                          A.K->to_string(coef) + ")"});
      M = transvection(r, c, -coef) * M;
    }
  }
  std::vector<GaussFactor> out = left;
  if (M != A.one())
    out.push_back({GaussFactor::Kind::Diagonal, 0, 0, M, "torus"});
  return out;
}

inline Mat remultiply(const MatrixAlgebra& A, const std::vector<GaussFactor>& fs) {
  Mat g = A.one();
  for (const auto& f : fs) g = g * f.value;
  return g;
}

// ---- gluing relations over a covering ----

struct GluingConfig {
  RingElement s;
  std::vector<RingElement> ks;
  int depth = 4;
  long long budget = 200;
};

namespace detail {

// Per-level scaffolding: pair carriers for the covering pieces, the pairwise
// pieces, and the glued target.
struct GlueLevel {
  RingElement ts;                    // s^m
  std::vector<RingElement> ti;      // (s k_i)^m
  std::vector<RingElement> kim;     // k_i^m
  SemidirectAlgebra Ss;
  std::vector<SemidirectAlgebra> Si;
  std::vector<std::vector<SemidirectAlgebra>> Sij;  // upper triangle

  GlueLevel(const MatrixAlgebra& A, const RingElement& s, const std::vector<RingElement>& ks,
            int m)
      : Ss{homotope(A, pow(s, static_cast<uint64_t>(m)))} {
    const int n = static_cast<int>(ks.size());
    ts = pow(s, static_cast<uint64_t>(m));
    for (int i = 0; i < n; ++i) {
      ti.push_back(pow(s * ks[i], static_cast<uint64_t>(m)));
      kim.push_back(pow(ks[i], static_cast<uint64_t>(m)));
      Si.push_back(SemidirectAlgebra{homotope(A, ti.back())});
    }
    Sij.resize(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        Sij[i].push_back(SemidirectAlgebra{homotope(A, ti[i] * pow(ks[j], static_cast<uint64_t>(m)))});
  }

  // can from piece i to the glued level: payload * k_i^m
  PairElt can(int i, const PairElt& e) const { return {e.x * kim[i], e.a}; }
  // can from the pairwise piece (i,j) into piece i (multiply by k_j^m) or j
  PairElt can_pair_to(int i, int j, bool to_i, const PairElt& e) const {
    return {e.x * (to_i ? kim[j] : kim[i]), e.a};
  }
};

}  // namespace detail

// The three gluing relation families, the epimorphism witness through the
// partition of unity, and the symbolic commutator-expansion identity.
inline CheckReport check_gluing_relations(const RootSystem& phi, const MatrixAlgebra& A,
                                          const GluingConfig& cfg, Rng& rng) {
  CheckReport rep;
  rep.name = "gluing-relations";
  const BaseRing* K = A.K;
  const int n = static_cast<int>(cfg.ks.size());

  auto& hyp = rep.add("partition-hypothesis");
  auto& hom = rep.add("can-homomorphy");
  auto& ident = rep.add("pairwise-identification");
  auto& conj = rep.add("conjugation-through-the-base");
  auto& epi = rep.add("epimorphism-witness");
  auto& fg = rep.add("free-group-expansion");

  for (int m = 1; m <= cfg.depth; ++m) {
    auto sol = partition_of_unity(*K, cfg.s, cfg.ks, m);
    if (!sol) {
      rep.record(hyp, false, "level " + std::to_string(m) + ": no partition of unity");
      rep.notes.push_back("HypothesisFailure at level " + std::to_string(m));
      return rep;
    }
    rep.record(hyp, true, "");

    detail::GlueLevel L(A, cfg.s, cfg.ks, m);
    auto real_s = pair_realization(phi, L.Ss);
    std::vector<GlRealization<PairAlgObj>> real_i;
    for (int i = 0; i < n; ++i) real_i.push_back(pair_realization(phi, L.Si[i]));

    auto rand_word = [&](const SemidirectAlgebra& S, const GlRealization<PairAlgObj>& real,
                         Rng& r, int len) {
      PairElt g = S.one();
      for (int t = 0; t < len; ++t) {
        int root = r.below_int(phi.size());
        auto [bi, bj] = real.blocks_of(root);
        g = S.mul(g, real.t(root, PairElt{A.random_in_block(bi, bj, r), A.zero()}));
      }
      return g;
    };

    long long per = std::max<long long>(cfg.budget / (cfg.depth * n), 2);
    for (int i = 0; i < n; ++i) {
      for (long long t = 0; t < per; ++t) {
        PairElt g = rand_word(L.Si[i], real_i[i], rng, 3);
        PairElt h = rand_word(L.Si[i], real_i[i], rng, 3);
        rep.record(hom, L.can(i, L.Si[i].mul(g, h)) == L.Ss.mul(L.can(i, g), L.can(i, h)),
                   "level " + std::to_string(m) + " piece " + std::to_string(i));
      }
      for (int j = i + 1; j < n; ++j) {
        SemidirectAlgebra& Spair = L.Sij[i][j - i - 1];
        auto real_ij = pair_realization(phi, Spair);
        for (long long t = 0; t < per; ++t) {
          PairElt g = rand_word(Spair, real_ij, rng, 3);
          rep.record(ident,
                     L.can(i, L.can_pair_to(i, j, true, g)) ==
                         L.can(j, L.can_pair_to(i, j, false, g)),
                     "level " + std::to_string(m) + " pieces " + std::to_string(i) + "," +
                         std::to_string(j));
        }
      }
    }

    // conjugation family: ^{can_i(g)} can_j(h) = can_j(^{w} h) with w the
    // image of g in the base group
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        for (long long t = 0; t < per; ++t) {
          PairElt g = rand_word(L.Si[i], real_i[i], rng, 3);
          PairElt h = rand_word(L.Si[j], real_i[j], rng, 3);
          Mat w = L.Si[i].p2(g);  // x * t_i + 1 in GL(A)
          PairElt lhs = L.Ss.conj(L.can(i, g), L.can(j, h));
          PairElt rhs = L.can(j, L.Si[j].conj(L.Si[j].d(w), h));
          rep.record(conj, lhs == rhs,
                     "level " + std::to_string(m) + " pieces " + std::to_string(i) + "," +
                         std::to_string(j));
        }
      }

    // epimorphism witness: x_alpha(a s^{m'}) factors through the pieces
    RingElement smp = pow(cfg.s, static_cast<uint64_t>(sol->m_prime));
    for (int root = 0; root < phi.size(); ++root) {
      auto [bi, bj] = real_s.blocks_of(root);
      for (long long t = 0; t < 3; ++t) {
        Mat a = A.random_in_block(bi, bj, rng);
        PairElt lhs = real_s.t(root, PairElt{a * smp, A.zero()});
        PairElt prod = L.Ss.one();
        for (int i = 0; i < n; ++i) {
          PairElt xi = real_i[i].t(root, PairElt{a * sol->t[i], A.zero()});
          prod = L.Ss.mul(prod, L.can(i, xi));
        }
        rep.record(epi, lhs == prod,
                   "level " + std::to_string(m) + " " + phi.root_name(root) + " a=" +
                       a.to_string());
      }
    }
  }

  for (int nn = 1; nn <= 3; ++nn)
    for (int mm = 1; mm <= 3; ++mm)
      rep.record(fg, freegroup::commutator_expansion_identity(nn, mm),
                 "n=" + std::to_string(nn) + " m=" + std::to_string(mm));
  return rep;
}

// ---- glued Steinberg presentation at a fixed level ----

// Generators x^i_alpha(a) over each covering piece with the reduced relation
// families: additivity per piece, pairwise identifications, and commutator
// instances whose second argument passes through the piece-to-base
// transition. Every commutator relator is validated against the pair
// carrier at the glued level.
struct GluedSteinbergPresentation {
  Presentation pres;
  std::vector<std::tuple<int, int, int>> gen_info;        // (piece, root, param index)
  std::vector<std::vector<std::vector<Mat>>> params;      // [piece][root]
  std::vector<std::vector<std::map<std::string, int>>> gen_of;  // [piece][root]: key -> id

  int generator(int piece, int root, const Mat& a) const {
    auto it = gen_of[piece][root].find(a.key());
    if (it == gen_of[piece][root].end()) fail("ConfigError", "parameter missing from alphabet");
    return it->second;
  }
  std::vector<int> word(int piece, int root, const Mat& a) const {
    int g = generator(piece, root, a);
    return g ? std::vector<int>{g} : std::vector<int>{};
  }
};

inline GluedSteinbergPresentation glued_steinberg_presentation(const RootSystem& phi,
                                                               const MatrixAlgebra& A,
                                                               const RingElement& s,
                                                               const std::vector<RingElement>& ks,
                                                               int level) {
  GluedSteinbergPresentation out;
  const int n = static_cast<int>(ks.size());
  detail::GlueLevel L(A, s, ks, level);
  auto real_s = pair_realization(phi, L.Ss);

  out.params.resize(n);
  out.gen_of.resize(n);
  for (int i = 0; i < n; ++i) {
    out.params[i].resize(phi.size());
    out.gen_of[i].resize(phi.size());
    for (int r = 0; r < phi.size(); ++r) {
      auto [bi, bj] = real_s.blocks_of(r);
      out.params[i][r] = A.enumerate_block(bi, bj, 4096);
      for (size_t pi = 0; pi < out.params[i][r].size(); ++pi) {
        const Mat& a = out.params[i][r][pi];
        if (a.is_zero()) {
          out.gen_of[i][r][a.key()] = 0;
          continue;
        }
        out.pres.names.push_back("x^" + std::to_string(i) + "_{" + phi.root_name(r) + "}(" +
                                 a.to_string() + ")");
        out.gen_info.push_back({i, r, static_cast<int>(pi)});
        out.gen_of[i][r][a.key()] = ++out.pres.ngens;
      }
    }
  }

  auto append = [](std::vector<int>& w, const std::vector<int>& v) {
    w.insert(w.end(), v.begin(), v.end());
  };

  // additivity inside each piece
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < phi.size(); ++r)
      for (const auto& a : out.params[i][r])
        for (const auto& b : out.params[i][r]) {
          if (a.is_zero() || b.is_zero()) continue;
          std::vector<int> w = out.word(i, r, a);
          append(w, out.word(i, r, b));
          append(w, Presentation::inverse_word(out.word(i, r, a + b)));
          out.pres.add_relator(w);
        }

  // pairwise identifications
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int r = 0; r < phi.size(); ++r)
        for (const auto& a : out.params[i][r]) {
          if (a.is_zero()) continue;
          std::vector<int> w = out.word(i, r, a * L.kim[j]);
          append(w, Presentation::inverse_word(out.word(j, r, a * L.kim[i])));
          out.pres.add_relator(w);
        }

  // commutator instances, validated in the glued carrier
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int ar = 0; ar < phi.size(); ++ar)
        for (int br = 0; br < phi.size(); ++br) {
          if (ar == br || anti_parallel(phi, ar, br)) continue;
          int sum = phi.index_of(detail::vadd(phi.roots[ar], phi.roots[br]));
          auto [abi, abj] = real_s.blocks_of(ar);
          auto [bbi, bbj] = real_s.blocks_of(br);
          for (const auto& a : out.params[i][ar])
            for (const auto& b : out.params[j][br]) {
              if (a.is_zero() || b.is_zero()) continue;
              std::vector<int> w = out.word(i, ar, a);
              append(w, out.word(j, br, b));
              append(w, Presentation::inverse_word(out.word(i, ar, a)));
              append(w, Presentation::inverse_word(out.word(j, br, b)));
              Mat f = A.zero();
              if (sum >= 0) {
                Mat bdown = b * L.ti[j];  // image of b in the base algebra
                f = (abj == bbi) ? A.proj(abi, bbj, a * bdown) : -(A.proj(bbi, abj, bdown * a));
              }
              if (!f.is_zero()) append(w, Presentation::inverse_word(out.word(i, sum, f)));
              out.pres.add_relator(w);
              // carrier validation of the instance at the glued level
              PairElt ga = real_s.t(ar, PairElt{a * L.kim[i], A.zero()});
              PairElt gb = real_s.t(br, PairElt{b * L.kim[j], A.zero()});
              PairElt rhs = f.is_zero() ? L.Ss.one()
                                        : real_s.t(sum, PairElt{f * L.kim[i], A.zero()});
              if (!(L.Ss.commutator(ga, gb) == rhs))
                fail("ResidueNonzero", "glued commutator relator fails in the carrier");
            }
        }
  return out;
}

// ---- compatibility identities for the localized action ----

struct WeakActionConfig {
  RingElement s;
  std::vector<RingElement> ks;
  int depth = 3;
  long long budget = 100;
};

// The three displayed identities for the action of an element g of the
// localized base group on the glued towers, evaluated at each level. The
// action of g on the piece-i tower goes through the localization at s*k_i:
// conjugation by the unit lift of the image of g.
inline CheckReport check_weak_action_identities(const RootSystem& phi, const MatrixAlgebra& A,
                                                const Mat& g, const WeakActionConfig& cfg,
                                                Rng& rng) {
  CheckReport rep;
  rep.name = "weak-action";
  const BaseRing* K = A.K;
  const int n = static_cast<int>(cfg.ks.size());

  auto& cover = rep.add("covering-decomposition");
  auto& i1 = rep.add("action-homomorphy");
  auto& i2 = rep.add("action-matches-on-overlaps");
  auto& i3 = rep.add("conjugation-transport");

  // localization data per piece, with the unit lift of the image of g
  std::vector<Localization> loc;
  for (int i = 0; i < n; ++i) loc.push_back(localize(*K, cfg.s * cfg.ks[i]));

  // map a matrix over K into the piece and lift it back as a unit of A:
  // embedded image plus the complementary identity
  auto lift_to = [&](int piece, const Mat& m) {
    const Localization& L = loc[piece];
    if (L.ring->is_zero_ring()) return A.one();
    Mat lift(K, A.n, A.n);
    for (int r = 0; r < A.n; ++r)
      for (int c = 0; c < A.n; ++c) lift.at(r, c) = L.embed(L.map(m.at(r, c)));
    Mat compl_id = A.one() - L.embed(L.ring->one()) * A.one();
    return lift + compl_id;
  };

  std::vector<Mat> glift;
  for (int i = 0; i < n; ++i) {
    const Localization& L = loc[i];
    if (L.ring->nfactors() > 1) {
      rep.add("piece-" + std::to_string(i)).status = Status::Inconclusive;
      rep.notes.push_back("CoveringNotFound: localization at piece " + std::to_string(i) +
                          " is not local");
      return rep;
    }
    glift.push_back(lift_to(i, g));
    if (L.ring->is_zero_ring()) {
      rep.record(cover, true, "piece " + std::to_string(i) + ": zero piece");
      continue;
    }
    // image of g in the piece, decomposed over the local ring
    MatrixAlgebra Ai = MatrixAlgebra::scalar_blocks(L.ring, A.n);
    Mat gi(L.ring, A.n, A.n);
    for (int r = 0; r < A.n; ++r)
      for (int c = 0; c < A.n; ++c) gi.at(r, c) = L.map(g.at(r, c));
    try {
      auto fs = gauss_decompose(Ai, gi);
      rep.record(cover, remultiply(Ai, fs) == gi,
                 "piece " + std::to_string(i) + ": re-multiplication");
      rep.notes.push_back("piece " + std::to_string(i) + ": " + std::to_string(fs.size()) +
                          " factors over D-subgroups");
    } catch (const Error& e) {
      rep.record(cover, false, std::string("piece ") + std::to_string(i) + ": " + e.what());
      return rep;
    }
  }

  for (int m = 1; m <= cfg.depth; ++m) {
    detail::GlueLevel L(A, cfg.s, cfg.ks, m);
    auto real_s = pair_realization(phi, L.Ss);
    std::vector<GlRealization<PairAlgObj>> real_i;
    for (int i = 0; i < n; ++i) real_i.push_back(pair_realization(phi, L.Si[i]));

    auto rand_word = [&](int i, Rng& r, int len) {
      PairElt e = L.Si[i].one();
      for (int t = 0; t < len; ++t) {
        int root = r.below_int(phi.size());
        auto [bi, bj] = real_i[i].blocks_of(root);
        e = L.Si[i].mul(e, real_i[i].t(root, PairElt{A.random_in_block(bi, bj, r), A.zero()}));
      }
      return e;
    };
    auto act = [&](int i, const PairElt& h) { return L.Si[i].conj(L.Si[i].d(glift[i]), h); };

    long long per = std::max<long long>(cfg.budget / (cfg.depth * n), 2);
    for (int i = 0; i < n; ++i)
      for (long long t = 0; t < per; ++t) {
        PairElt h = rand_word(i, rng, 3), h2 = rand_word(i, rng, 3);
        rep.record(i1,
                   L.can(i, act(i, L.Si[i].mul(h, h2))) ==
                       L.Ss.mul(L.can(i, act(i, h)), L.can(i, act(i, h2))),
                   "level " + std::to_string(m) + " piece " + std::to_string(i));
      }

    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        SemidirectAlgebra& Spair = L.Sij[i][j - i - 1];
        auto real_ij = pair_realization(phi, Spair);
        for (long long t = 0; t < per; ++t) {
          PairElt h = L.Ss.one();
          {
            PairElt w = Spair.one();
            for (int q = 0; q < 3; ++q) {
              int root = rng.below_int(phi.size());
              auto [bi, bj] = real_ij.blocks_of(root);
              w = Spair.mul(w, real_ij.t(root, PairElt{A.random_in_block(bi, bj, rng), A.zero()}));
            }
            h = w;
          }
          PairElt lhs = L.can(i, act(i, L.can_pair_to(i, j, true, h)));
          PairElt rhs = L.can(j, act(j, L.can_pair_to(i, j, false, h)));
          rep.record(i2, lhs == rhs,
                     "level " + std::to_string(m) + " pieces " + std::to_string(i) + "," +
                         std::to_string(j));
        }
      }

    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        for (long long t = 0; t < per; ++t) {
          PairElt h = rand_word(i, rng, 3), h2 = rand_word(j, rng, 3);
          PairElt lhs = L.Ss.conj(L.can(i, act(i, h)), L.can(j, act(j, h2)));
          // w = g * (image of stmap(h) in the base), lifted through piece j
          Mat w = lift_to(j, g * L.Si[i].p2(h));
          PairElt rhs = L.can(j, L.Si[j].conj(L.Si[j].d(w), h2));
          rep.record(i3, lhs == rhs,
                     "level " + std::to_string(m) + " pieces " + std::to_string(i) + "," +
                         std::to_string(j));
        }
      }
  }
  return rep;
}

}  // namespace stw
