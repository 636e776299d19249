#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stw/report.hpp"
#include "stw/rng.hpp"

namespace stw {

inline constexpr int kMaxFactors = 4;

struct RingElement;

// Finite commutative base ring, a product of prime-power cyclic rings.
// Instances are interned (see intern_ring) so elements can carry a stable
// pointer to their ring.
struct BaseRing {
  struct Factor {
    uint32_t p = 0;
    uint32_t e = 0;
    uint32_t mod = 0;  // p^e
  };

  std::vector<Factor> factors;
  std::string tag;          // display tag, e.g. "z12"
  bool coprime = true;      // moduli pairwise coprime => canonical integer form
  uint64_t order_ = 1;      // |K|
  std::vector<uint64_t> crt_basis;  // idempotent integers mod order_ (coprime case)

  size_t nfactors() const { return factors.size(); }
  uint64_t order() const { return order_; }
  bool is_zero_ring() const { return factors.empty(); }

  RingElement zero() const;
  RingElement one() const;
  RingElement from_int(long long v) const;
  RingElement from_residues(const std::vector<long long>& rs) const;
  RingElement element_at(uint64_t idx) const;  // enumeration by canonical order
  uint64_t index_of(const RingElement& x) const;

  std::string to_string(const RingElement& x) const;
};

struct RingElement {
  const BaseRing* ring = nullptr;
  std::array<uint16_t, kMaxFactors> r{};

  bool operator==(const RingElement& o) const {
    if (ring != o.ring) return false;
    for (size_t i = 0; i < ring->nfactors(); ++i)
      if (r[i] != o.r[i]) return false;
    return true;
  }
  bool operator!=(const RingElement& o) const { return !(*this == o); }
  bool operator<(const RingElement& o) const {
    for (size_t i = 0; i < ring->nfactors(); ++i)
      if (r[i] != o.r[i]) return r[i] < o.r[i];
    return false;
  }
};

inline RingElement BaseRing::zero() const {
  RingElement x;
  x.ring = this;
  return x;
}

inline RingElement BaseRing::one() const {
  RingElement x;
  x.ring = this;
  for (size_t i = 0; i < factors.size(); ++i) x.r[i] = factors[i].mod > 1 ? 1 : 0;
  return x;
}

inline RingElement BaseRing::from_int(long long v) const {
  RingElement x;
  x.ring = this;
  for (size_t i = 0; i < factors.size(); ++i) {
    long long m = factors[i].mod;
    long long t = v % m;
    if (t < 0) t += m;
    x.r[i] = static_cast<uint16_t>(t);
  }
  return x;
}

inline RingElement BaseRing::from_residues(const std::vector<long long>& rs) const {
  if (rs.size() != factors.size()) fail("ConfigError", "residue vector has wrong length for " + tag);
  RingElement x;
  x.ring = this;
  for (size_t i = 0; i < factors.size(); ++i) {
    long long m = factors[i].mod;
    long long t = rs[i] % m;
    if (t < 0) t += m;
    x.r[i] = static_cast<uint16_t>(t);
  }
  return x;
}

inline RingElement BaseRing::element_at(uint64_t idx) const {
  if (coprime) return from_int(static_cast<long long>(idx % std::max<uint64_t>(order_, 1)));
  RingElement x;
  x.ring = this;
  for (size_t i = 0; i < factors.size(); ++i) {
    x.r[i] = static_cast<uint16_t>(idx % factors[i].mod);
    idx /= factors[i].mod;
  }
  return x;
}

inline uint64_t BaseRing::index_of(const RingElement& x) const {
  if (coprime) {
    uint64_t v = 0;
    for (size_t i = 0; i < factors.size(); ++i)
      v = (v + static_cast<uint64_t>(x.r[i]) * crt_basis[i]) % std::max<uint64_t>(order_, 1);
    return v;
  }
  uint64_t idx = 0, mul = 1;
  for (size_t i = 0; i < factors.size(); ++i) {
    idx += mul * x.r[i];
    mul *= factors[i].mod;
  }
  return idx;
}

inline std::string BaseRing::to_string(const RingElement& x) const {
  if (is_zero_ring()) return "0";
  if (coprime) return std::to_string(index_of(x));
  std::string s = "(";
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(x.r[i]);
  }
  return s + ")";
}

// ---- element arithmetic ----

inline RingElement operator+(const RingElement& a, const RingElement& b) {
  RingElement x;
  x.ring = a.ring;
  for (size_t i = 0; i < a.ring->nfactors(); ++i)
    x.r[i] = static_cast<uint16_t>((uint32_t(a.r[i]) + b.r[i]) % a.ring->factors[i].mod);
  return x;
}

inline RingElement operator-(const RingElement& a) {
  RingElement x;
  x.ring = a.ring;
  for (size_t i = 0; i < a.ring->nfactors(); ++i) {
    uint32_t m = a.ring->factors[i].mod;
    x.r[i] = static_cast<uint16_t>((m - a.r[i]) % m);
  }
  return x;
}

inline RingElement operator-(const RingElement& a, const RingElement& b) { return a + (-b); }

inline RingElement operator*(const RingElement& a, const RingElement& b) {
  RingElement x;
  x.ring = a.ring;
  for (size_t i = 0; i < a.ring->nfactors(); ++i)
    x.r[i] = static_cast<uint16_t>((uint64_t(a.r[i]) * b.r[i]) % a.ring->factors[i].mod);
  return x;
}

inline bool is_zero(const RingElement& a) {
  for (size_t i = 0; i < a.ring->nfactors(); ++i)
    if (a.r[i]) return false;
  return true;
}

inline bool is_one(const RingElement& a) { return a == a.ring->one(); }

inline RingElement pow(const RingElement& a, uint64_t n) {
  RingElement acc = a.ring->one(), base = a;
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

inline bool is_unit(const RingElement& a) {
  for (size_t i = 0; i < a.ring->nfactors(); ++i)
    if (a.r[i] % a.ring->factors[i].p == 0) return false;
  return true;
}

inline std::optional<RingElement> try_invert(const RingElement& a) {
  if (!is_unit(a)) return std::nullopt;
  RingElement x;
  x.ring = a.ring;
  for (size_t i = 0; i < a.ring->nfactors(); ++i) {
    // extended euclid mod p^e
    int64_t m = a.ring->factors[i].mod;
    int64_t t = 0, newt = 1, rr = m, newr = a.r[i];
    while (newr != 0) {
      int64_t q = rr / newr;
      std::swap(t -= q * newt, newt);
      std::swap(rr -= q * newr, newr);
    }
    if (t < 0) t += m;
    x.r[i] = static_cast<uint16_t>(t % m);
  }
  return x;
}

inline RingElement invert(const RingElement& a) {
  auto x = try_invert(a);
  if (!x) fail("NotInvertible", "ring element is not a unit");
  return *x;
}

// p-adic valuation of the component in factor i; 0 maps to e.
inline uint32_t factor_valuation(const RingElement& a, size_t i) {
  const auto& f = a.ring->factors[i];
  if (a.r[i] == 0) return f.e;
  uint32_t v = 0;
  uint32_t x = a.r[i];
  while (x % f.p == 0) {
    x /= f.p;
    ++v;
  }
  return v;
}

inline std::vector<RingElement> all_elements(const BaseRing& K) {
  std::vector<RingElement> out;
  out.reserve(K.order());
  for (uint64_t i = 0; i < K.order(); ++i) out.push_back(K.element_at(i));
  return out;
}

inline RingElement random_element(const BaseRing& K, Rng& rng) {
  return K.element_at(rng.below(std::max<uint64_t>(K.order(), 1)));
}

// ---- ring construction / interning ----

namespace detail {

inline std::vector<std::pair<uint32_t, uint32_t>> factorize(uint64_t n) {
  std::vector<std::pair<uint32_t, uint32_t>> out;
  for (uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      uint32_t e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.push_back({static_cast<uint32_t>(p), e});
    }
  }
  if (n > 1) out.push_back({static_cast<uint32_t>(n), 1});
  return out;
}

inline uint64_t mod_pow(uint64_t b, uint64_t e, uint64_t m) {
  uint64_t acc = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) acc = acc * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return acc;
}

}  // namespace detail

inline BaseRing make_ring(const std::vector<std::pair<uint32_t, uint32_t>>& pe, std::string tag) {
  if (pe.size() > static_cast<size_t>(kMaxFactors)) fail("ConfigError", "too many ring factors in " + tag);
  BaseRing K;
  K.tag = std::move(tag);
  for (auto [p, e] : pe) {
    BaseRing::Factor f;
    f.p = p;
    f.e = e;
    f.mod = 1;
    for (uint32_t i = 0; i < e; ++i) f.mod *= p;
    if (f.mod > 60000) fail("ConfigError", "ring factor too large: " + std::to_string(f.mod));
    K.factors.push_back(f);
    K.order_ *= f.mod;
  }
  for (size_t i = 0; i < K.factors.size() && K.coprime; ++i)
    for (size_t j = i + 1; j < K.factors.size(); ++j)
      if (K.factors[i].p == K.factors[j].p) K.coprime = false;
  if (K.coprime) {
    // CRT idempotents as integers mod |K|
    for (size_t i = 0; i < K.factors.size(); ++i) {
      uint64_t mi = K.factors[i].mod;
      uint64_t rest = K.order_ / mi;
      // rest * (rest^{-1} mod mi)
      uint64_t inv = 1;
      if (mi > 1) {
        uint64_t r = rest % mi;
        // brute force inverse; mi is tiny
        for (uint64_t t = 1; t < mi; ++t)
          if (r * t % mi == 1) {
            inv = t;
            break;
          }
      }
      K.crt_basis.push_back(rest % K.order_ * inv % K.order_);
    }
  }
  return K;
}

// Parses "z12", "f2", "z4xz9". Returns an owned ring (prefer intern_ring).
inline BaseRing ring_from_tag(std::string_view tag) {
  std::string full(tag);
  auto parse_part = [&full](std::string_view part) -> std::vector<std::pair<uint32_t, uint32_t>> {
    if (part.size() < 2) fail("ConfigError", "bad ring tag '" + full + "'");
    char kind = part[0];
    uint64_t n = 0;
    for (char c : part.substr(1)) {
      if (c < '0' || c > '9') fail("ConfigError", "bad ring tag '" + full + "'");
      n = n * 10 + (c - '0');
    }
    if (n < 2) fail("ConfigError", "ring modulus must be >= 2 in '" + full + "'");
    auto pe = detail::factorize(n);
    if (kind == 'f') {
      if (pe.size() != 1 || pe[0].second != 1)
        fail("ConfigError", "field tag must name a prime: '" + full + "'");
    } else if (kind != 'z') {
      fail("ConfigError", "unknown ring tag '" + full + "'");
    }
    return pe;
  };

  std::vector<std::pair<uint32_t, uint32_t>> pe;
  size_t start = 0;
  std::string t(tag);
  while (true) {
    size_t x = t.find('x', start);
    std::string part = t.substr(start, x == std::string::npos ? std::string::npos : x - start);
    auto ppe = parse_part(part);
    pe.insert(pe.end(), ppe.begin(), ppe.end());
    if (x == std::string::npos) break;
    start = x + 1;
    if (start >= t.size()) fail("ConfigError", "bad ring tag '" + full + "'");
  }
  return make_ring(pe, t);
}

// Rings are interned so that element ring pointers stay valid for the whole
// process and equal rings compare by pointer.
inline const BaseRing* intern_ring(const BaseRing& K) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<BaseRing>> pool;
  std::string key;
  for (const auto& f : K.factors) key += std::to_string(f.p) + "^" + std::to_string(f.e) + ";";
  key += "|" + K.tag;
  std::lock_guard<std::mutex> lock(mu);
  auto it = pool.find(key);
  if (it == pool.end()) it = pool.emplace(key, std::make_unique<BaseRing>(K)).first;
  return it->second.get();
}

inline const BaseRing* ring(std::string_view tag) { return intern_ring(ring_from_tag(tag)); }

// ---- ideals ----

struct Ideal {
  const BaseRing* ring = nullptr;
  std::array<uint8_t, kMaxFactors> exps{};  // component (p_i^{exps_i}); exps_i in [0, e_i]
  std::vector<RingElement> gens;            // as given, for display

  bool contains(const RingElement& x) const {
    for (size_t i = 0; i < ring->nfactors(); ++i)
      if (factor_valuation(x, i) < exps[i]) return false;
    return true;
  }

  bool operator==(const Ideal& o) const { return ring == o.ring && exps == o.exps; }

  bool is_prime() const {
    // exactly one component equals (p), the rest are full
    int ones = 0;
    for (size_t i = 0; i < ring->nfactors(); ++i) {
      if (exps[i] == 1) ++ones;
      else if (exps[i] != 0) return false;
    }
    return ones == 1;
  }

  std::string to_string() const {
    // smallest canonical generator
    for (uint64_t i = 0; i < ring->order(); ++i) {
      RingElement x = ring->element_at(i);
      bool gen = contains(x);
      if (gen) {
        for (size_t f = 0; f < ring->nfactors(); ++f)
          if (factor_valuation(x, f) != exps[f]) {
            gen = false;
            break;
          }
      }
      if (gen) return "(" + ring->to_string(x) + ")";
    }
    return "(?)";
  }
};

inline Ideal ideal_generated(const BaseRing& K, const std::vector<RingElement>& gens) {
  Ideal I;
  I.ring = &K;
  I.gens = gens;
  for (size_t i = 0; i < K.nfactors(); ++i) {
    uint32_t v = K.factors[i].e;
    for (const auto& g : gens) v = std::min(v, factor_valuation(g, i));
    I.exps[i] = static_cast<uint8_t>(v);
  }
  return I;
}

inline std::vector<Ideal> primes(const BaseRing& K) {
  std::vector<Ideal> out;
  for (size_t i = 0; i < K.nfactors(); ++i) {
    Ideal I;
    I.ring = &K;
    I.exps[i] = 1;
    out.push_back(I);
  }
  return out;
}

// ---- multiplicative sets ----

struct MultiplicativeSet {
  const BaseRing* ring = nullptr;
  std::vector<RingElement> gens;
  std::vector<RingElement> closure;  // sorted by enumeration index, contains 1

  bool contains(const RingElement& x) const {
    return std::find(closure.begin(), closure.end(), x) != closure.end();
  }
};

inline MultiplicativeSet multiplicative_set(const BaseRing& K, const std::vector<RingElement>& gens) {
  MultiplicativeSet S;
  S.ring = &K;
  S.gens = gens;
  std::vector<char> seen(K.order(), 0);
  std::vector<RingElement> work{K.one()};
  seen[K.index_of(K.one())] = 1;
  for (size_t head = 0; head < work.size(); ++head) {
    RingElement x = work[head];
    for (const auto& g : gens) {
      RingElement y = x * g;
      uint64_t idx = K.index_of(y);
      if (!seen[idx]) {
        seen[idx] = 1;
        work.push_back(y);
      }
    }
  }
  std::sort(work.begin(), work.end(), [&](const RingElement& a, const RingElement& b) {
    return K.index_of(a) < K.index_of(b);
  });
  S.closure = std::move(work);
  return S;
}

inline bool meets(const MultiplicativeSet& S, const Ideal& I) {
  for (const auto& x : S.closure)
    if (I.contains(x)) return true;
  return false;
}

// ---- localization ----

// For finite K the localization K_k is the idempotent piece eK where e is the
// unique idempotent power of k; as a ring it is the sub-product of factors on
// which k is a unit.
struct Localization {
  const BaseRing* source = nullptr;
  const BaseRing* ring = nullptr;   // interned localized ring
  RingElement idem;                  // e in K with e = k^m, k^m = k^{2m}
  uint32_t idem_power = 0;           // smallest m with k^m idempotent
  std::vector<int> kept;             // indices of source factors kept

  RingElement map(const RingElement& x) const {
    RingElement y;
    y.ring = ring;
    for (size_t i = 0; i < kept.size(); ++i) y.r[i] = x.r[kept[i]];
    return y;
  }

  // Section of map on the idempotent piece: embed(y) = the element of eK with
  // the given kept-residues (zero elsewhere). map(embed(y)) == y.
  RingElement embed(const RingElement& y) const {
    RingElement x = source->zero();
    for (size_t i = 0; i < kept.size(); ++i) x.r[kept[i]] = y.r[i];
    return x;
  }
};

inline Localization localize(const BaseRing& K, const RingElement& k) {
  Localization L;
  L.source = &K;
  std::vector<std::pair<uint32_t, uint32_t>> pe;
  for (size_t i = 0; i < K.nfactors(); ++i) {
    if (k.r[i] % K.factors[i].p != 0) {  // unit component survives
      L.kept.push_back(static_cast<int>(i));
      pe.push_back({K.factors[i].p, K.factors[i].e});
    }
  }
  std::string tag;
  for (auto [p, e] : pe) {
    uint32_t mod = 1;
    for (uint32_t i = 0; i < e; ++i) mod *= p;
    if (!tag.empty()) tag += "x";
    tag += "z" + std::to_string(mod);
  }
  if (tag.empty()) tag = "zero";
  L.ring = intern_ring(make_ring(pe, tag));
  // smallest idempotent power of k
  RingElement x = k;
  for (uint32_t m = 1; m <= 2 * K.order() + 2; ++m) {
    if (x * x == x) {
      L.idem = x;
      L.idem_power = m;
      break;
    }
    x = x * k;
  }
  return L;
}

// ---- partition of unity ----

struct PartitionSolution {
  std::vector<RingElement> t;  // t_1..t_n with s^{m'} = sum k_i^m t_i
  int m_prime = 0;
};

// Searches in lexicographic order of canonical element indices, so the
// returned solution is deterministic.
inline std::optional<PartitionSolution> partition_of_unity(const BaseRing& K, const RingElement& s,
                                                           const std::vector<RingElement>& ks, int m) {
  if (m < 1) fail("ConfigError", "partition_of_unity requires m >= 1");
  const int n = static_cast<int>(ks.size());
  PartitionSolution sol;
  sol.m_prime = std::max(0, (m - 1) * n + 1);
  RingElement target = pow(s, static_cast<uint64_t>(sol.m_prime));
  std::vector<RingElement> km;
  km.reserve(n);
  for (const auto& k : ks) km.push_back(pow(k, static_cast<uint64_t>(m)));

  double space = 1;
  for (int i = 0; i < n; ++i) space *= static_cast<double>(K.order());
  if (space <= 4e6) {
    std::vector<uint64_t> idx(n, 0);
    std::vector<RingElement> t(n, K.zero());
    while (true) {
      RingElement acc = K.zero();
      for (int i = 0; i < n; ++i) acc = acc + km[i] * K.element_at(idx[i]);
      if (acc == target) {
        for (int i = 0; i < n; ++i) t[i] = K.element_at(idx[i]);
        sol.t = t;
        return sol;
      }
      int pos = n - 1;
      while (pos >= 0) {
        if (++idx[pos] < K.order()) break;
        idx[pos] = 0;
        --pos;
      }
      if (pos < 0) return std::nullopt;
    }
  }

  // Factorwise search for large K^n; any per-factor solution recombines.
  std::vector<RingElement> t(n, K.zero());
  for (size_t f = 0; f < K.nfactors(); ++f) {
    uint32_t mod = K.factors[f].mod;
    bool found = false;
    std::vector<uint32_t> tf(n, 0);
    while (!found) {
      uint64_t acc = 0;
      for (int i = 0; i < n; ++i) acc = (acc + uint64_t(km[i].r[f]) * tf[i]) % mod;
      if (acc == target.r[f]) {
        found = true;
        for (int i = 0; i < n; ++i) t[i].r[f] = static_cast<uint16_t>(tf[i]);
        break;
      }
      int pos = n - 1;
      while (pos >= 0) {
        if (++tf[pos] < mod) break;
        tf[pos] = 0;
        --pos;
      }
      if (pos < 0) return std::nullopt;
    }
  }
  for (auto& x : t) x.ring = &K;
  sol.t = t;
  return sol;
}

}  // namespace stw
