#pragma once

#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "stw/realization.hpp"
#include "stw/report.hpp"

namespace stw {

namespace detail {

// gamma = i*alpha + j*beta with integral i, j >= 1; exact over rationals.
inline bool cone_coords(const RootVec& alpha, const RootVec& beta, const RootVec& gamma, int& oi,
                        int& oj) {
  const int n = static_cast<int>(alpha.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      long long det = (long long)alpha[a] * beta[b] - (long long)alpha[b] * beta[a];
      if (det == 0) continue;
      long long inum = (long long)gamma[a] * beta[b] - (long long)gamma[b] * beta[a];
      long long jnum = (long long)alpha[a] * gamma[b] - (long long)alpha[b] * gamma[a];
      if (inum % det || jnum % det) return false;
      long long i = inum / det, j = jnum / det;
      if (i < 1 || j < 1) return false;
      for (int k = 0; k < n; ++k)
        if (i * alpha[k] + j * beta[k] != gamma[k]) return false;
      oi = static_cast<int>(i);
      oj = static_cast<int>(j);
      return true;
    }
  return false;
}

}  // namespace detail

// Cone roots i*alpha + j*beta (i, j > 0), in the canonical peeling order:
// increasing i + j, ties by i.
inline std::vector<std::tuple<int, int, int>> cone_roots(const RootSystem& s, int ar, int br) {
  std::vector<std::tuple<int, int, int>> out;  // (root, i, j)
  const RootVec& alpha = s.roots[ar];
  const RootVec& beta = s.roots[br];
  if (detail::parallel(alpha, beta)) {
    // alpha = beta ultrashort contributes 2*alpha; all other parallel
    // non-anti-parallel configurations have an empty cone
    if (ar == br && s.has_double(ar)) out.push_back({s.double_of(ar), 1, 1});
    return out;
  }
  for (int id = 0; id < s.size(); ++id) {
    int i, j;
    if (detail::cone_coords(alpha, beta, s.roots[id], i, j)) out.push_back({id, i, j});
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    auto [rx, ix, jx] = x;
    auto [ry, iy, jy] = y;
    if (ix + jx != iy + jy) return ix + jx < iy + jy;
    if (ix != iy) return ix < iy;
    return rx < ry;
  });
  return out;
}

inline bool anti_parallel(const RootSystem& s, int ar, int br) {
  if (!s.parallel_roots(ar, br)) return false;
  const RootVec& a = s.roots[ar];
  const RootVec& b = s.roots[br];
  for (size_t k = 0; k < a.size(); ++k)
    if (a[k]) return (a[k] > 0) != (b[k] > 0);
  return false;
}

template <class R>
struct ChevalleyTerm {
  int root;
  typename R::Param param;
};

// Peels the commutator [t_alpha(p), t_beta(q)] into root coordinates along
// the cone of alpha and beta. The returned terms re-multiply to the
// commutator exactly (in the returned order); a nonzero remainder raises
// ResidueNonzero. Ultrashort coordinates are read jointly as (m, a), after
// which the doubled root contributes nothing.
template <class R>
std::vector<ChevalleyTerm<R>> extract_chevalley_maps(const R& real, int ar, int br,
                                                     const typename R::Param& p,
                                                     const typename R::Param& q) {
  const RootSystem& s = real.phi();
  if (anti_parallel(s, ar, br))
    fail("ConfigError", "commutator extraction requires non-anti-parallel roots");
  auto cone = cone_roots(s, ar, br);
  typename R::G c = real.commutator(real.t(ar, p), real.t(br, q));
  std::vector<ChevalleyTerm<R>> terms;
  std::set<int> absorbed;  // doubled roots folded into a joint ultrashort read
  for (auto [root, i, j] : cone) {
    if (absorbed.count(root)) continue;
    typename R::Param f = real.read_block(root, c);
    if (!real.in_param_set(root, f))
      fail("ResidueNonzero", "coordinate at " + s.root_name(root) + " violates the parameter set");
    if (s.has_double(root)) absorbed.insert(s.double_of(root));
    c = real.mul(real.inv(real.t(root, f)), c);
    if (!real.pis_zero(root, f)) terms.push_back({root, f});
  }
  if (!real.is_one(c))
    fail("ResidueNonzero", "peeling left a non-identity remainder " + real.gstr(c));
  return terms;
}

struct SampleBudget {
  long long samples = 2000;       // per identity family
  uint64_t exhaustive_cap = 4096;  // switch to exhaustive below this many tuples
};

namespace detail {

// Deterministic pair iteration: exhaustive over enumerate_params when small,
// otherwise seeded sampling.
template <class R, class Fn>
void for_param_pairs(const R& real, int r1, int r2, const SampleBudget& b, Rng& rng, Fn&& fn) {
  double total = real.param_count(r1) * real.param_count(r2);
  if (total <= static_cast<double>(b.exhaustive_cap)) {
    auto ps = real.enumerate_params(r1);
    auto qs = real.enumerate_params(r2);
    for (const auto& p : ps)
      for (const auto& q : qs) fn(p, q);
  } else {
    for (long long t = 0; t < b.samples; ++t) fn(real.random_param(r1, rng), real.random_param(r2, rng));
  }
}

}  // namespace detail

// Steinberg relations evaluated through the root homomorphisms in the
// carrier: additivity, the ultrashort identification, and the Chevalley
// commutator formula via peeling.
template <class R>
CheckReport check_steinberg_relations(const R& real, const SampleBudget& budget, Rng& rng) {
  CheckReport rep;
  rep.name = "steinberg-relations";
  const RootSystem& s = real.phi();

  auto& additivity = rep.add("additivity");
  for (int r = 0; r < s.size(); ++r) {
    detail::for_param_pairs(real, r, r, budget, rng, [&](const auto& p, const auto& q) {
      bool ok = real.geq(real.mul(real.t(r, p), real.t(r, q)), real.t(r, real.padd(r, p, q)));
      rep.record(additivity, ok,
                 s.root_name(r) + ": p=" + real.pstr(r, p) + " q=" + real.pstr(r, q));
    });
  }

  auto& ident = rep.add("ultrashort-identification");
  for (int r = 0; r < s.size(); ++r) {
    if (!s.has_half(r)) continue;
    int half = s.half_of(r);
    for (const auto& p : real.enumerate_params(r)) {
      bool ok = real.geq(real.t(r, p), real.t(half, p));
      rep.record(ident, ok, s.root_name(r) + ": p=" + real.pstr(r, p));
    }
  }

  auto& comm = rep.add("chevalley-commutator");
  for (int a = 0; a < s.size(); ++a)
    for (int b = 0; b < s.size(); ++b) {
      if (a == b || anti_parallel(s, a, b)) continue;
      SampleBudget pairb = budget;
      pairb.samples = std::max<long long>(budget.samples / (s.size() * 2), 4);
      detail::for_param_pairs(real, a, b, pairb, rng, [&](const auto& p, const auto& q) {
        std::string w = s.root_name(a) + "," + s.root_name(b) + ": p=" + real.pstr(a, p) +
                        " q=" + real.pstr(b, q);
        try {
          auto terms = extract_chevalley_maps(real, a, b, p, q);
          // re-multiplication check (redundant with the internal residue, kept
          // as an independent assertion on the returned data)
          typename R::G prod = real.one();
          for (const auto& t : terms) prod = real.mul(prod, real.t(t.root, t.param));
          bool ok = real.geq(prod, real.commutator(real.t(a, p), real.t(b, q)));
          rep.record(comm, ok, w);
        } catch (const Error& e) {
          rep.record(comm, false, w + " [" + e.what() + "]");
        }
      });
    }
  return rep;
}

// Injectivity of the product map over Sigma \ 2Sigma for one special closed
// subset: all parameter tuples give distinct products.
template <class R>
bool product_map_injective(const R& real, const std::vector<int>& sigma, const SampleBudget& budget,
                           Rng& rng, std::string* witness) {
  const RootSystem& s = real.phi();
  std::vector<int> factors;
  for (int id : sigma) {
    bool doubled = false;  // id in 2*Sigma?
    if (s.has_half(id)) {
      int h = s.half_of(id);
      for (int o : sigma)
        if (o == h) { doubled = true; break; }
    }
    if (!doubled) factors.push_back(id);
  }
  std::unordered_map<std::string, std::string> seen;  // product key -> tuple key

  double total = 1;
  for (int id : factors) total *= real.param_count(id);
  if (total <= static_cast<double>(budget.exhaustive_cap)) {
    if (factors.empty()) return true;
    std::vector<std::vector<typename R::Param>> ps;
    for (int id : factors) ps.push_back(real.enumerate_params(id));
    std::vector<size_t> idx(factors.size(), 0);
    // depth-first with shared prefix products
    std::vector<typename R::G> prefix(factors.size() + 1, real.one());
    size_t depth = 0;
    while (true) {
      if (depth == factors.size()) {
        std::string tkey;
        for (size_t k = 0; k < idx.size(); ++k) tkey += std::to_string(idx[k]) + ".";
        auto [it, fresh] = seen.emplace(real.gkey(prefix[depth]), tkey);
        if (!fresh && it->second != tkey) {
          if (witness)
            *witness = "tuples " + it->second + " and " + tkey + " give the same product " +
                       real.gstr(prefix[depth]);
          return false;
        }
        size_t d = depth;
        while (d > 0 && ++idx[d - 1] >= ps[d - 1].size()) {
          idx[d - 1] = 0;
          --d;
        }
        if (d == 0) return true;
        depth = d - 1;
      } else {
        prefix[depth + 1] = real.mul(prefix[depth], real.t(factors[depth], ps[depth][idx[depth]]));
        ++depth;
      }
    }
  }

  // sampled: any two distinct sampled tuples must give distinct products
  for (long long t = 0; t < budget.samples; ++t) {
    typename R::G g = real.one();
    std::string tkey;
    for (int id : factors) {
      auto p = real.random_param(id, rng);
      g = real.mul(g, real.t(id, p));
      tkey += real.pstr(id, p) + "|";
    }
    auto [it, fresh] = seen.emplace(real.gkey(g), tkey);
    if (!fresh && it->second != tkey) {
      if (witness) *witness = "tuples " + it->second + " and " + tkey + " collide";
      return false;
    }
  }
  return true;
}

// Runs the injectivity check over every special closed subset of the system.
template <class R>
CheckReport check_product_injectivity(const R& real, const SampleBudget& budget, Rng& rng) {
  CheckReport rep;
  rep.name = "product-map-injectivity";
  auto& item = rep.add("all-special-closed");
  auto sigmas = all_special_closed(real.phi());
  rep.notes.push_back("special closed subsets: " + std::to_string(sigmas.size()));
  for (const auto& sigma : sigmas) {
    std::string w;
    bool ok = product_map_injective(real, sigma, budget, rng, &w);
    std::string desc = "sigma={";
    for (int id : sigma) desc += real.phi().root_name(id) + ",";
    rep.record(item, ok, desc + "} " + w);
  }
  return rep;
}

}  // namespace stw
