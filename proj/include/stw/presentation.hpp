#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "stw/report.hpp"
#include "stw/steinberg.hpp"

namespace stw {

// Finitely presented group on typed symbols. Letters of a word are signed
// 1-based generator ids; relators are stored freely and cyclically reduced.
struct Presentation {
  int ngens = 0;
  std::vector<std::string> names;            // size ngens
  std::vector<std::vector<int>> relators;

  static std::vector<int> free_reduce(std::vector<int> w) {
    std::vector<int> out;
    for (int l : w) {
      if (!out.empty() && out.back() == -l) out.pop_back();
      else out.push_back(l);
    }
    return out;
  }

  static std::vector<int> cyclic_reduce(std::vector<int> w) {
    w = free_reduce(std::move(w));
    while (w.size() >= 2 && w.front() == -w.back()) {
      w.erase(w.begin());
      w.pop_back();
    }
    return w;
  }

  void add_relator(std::vector<int> w) {
    w = cyclic_reduce(std::move(w));
    if (!w.empty()) relators.push_back(std::move(w));
  }

  static std::vector<int> inverse_word(const std::vector<int>& w) {
    std::vector<int> out(w.rbegin(), w.rend());
    for (int& l : out) l = -l;
    return out;
  }
};

struct TCLimits {
  uint32_t max_cosets = 1000000;  // total rows ever defined
  uint32_t lookahead_every = 1 << 16;
};

// Complete coset table plus trace/representative helpers.
struct CosetTable {
  enum class Status { Complete, Overflow };
  Status status = Status::Overflow;
  uint32_t ncosets = 0;        // live cosets on completion
  uint32_t total_defined = 0;  // rows ever allocated
  int ngens = 0;
  std::vector<uint32_t> table;  // ncosets x 2*ngens, complete when status == Complete

  uint32_t step(uint32_t c, int letter) const {
    int col = letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1;
    return table[size_t(c) * 2 * ngens + col];
  }

  uint32_t trace(uint32_t c, const std::vector<int>& w) const {
    for (int l : w) c = step(c, l);
    return c;
  }

  // breadth-first representative words from coset 0
  std::vector<std::vector<int>> rep_words() const {
    std::vector<std::vector<int>> rep(ncosets);
    std::vector<char> seen(ncosets, 0);
    std::deque<uint32_t> bfs{0};
    seen[0] = 1;
    while (!bfs.empty()) {
      uint32_t c = bfs.front();
      bfs.pop_front();
      for (int g = 1; g <= ngens; ++g)
        for (int l : {g, -g}) {
          uint32_t d = step(c, l);
          if (!seen[d]) {
            seen[d] = 1;
            rep[d] = rep[c];
            rep[d].push_back(l);
            bfs.push_back(d);
          }
        }
    }
    return rep;
  }
};

// HLT coset enumeration with periodic lookahead; deterministic processing
// order. Overflow is a resource signal, never a wrong answer.
class ToddCoxeter {
 public:
  ToddCoxeter(const Presentation& pres, std::vector<std::vector<int>> subgens, TCLimits limits)
      : pres_(pres), subgens_(std::move(subgens)), lim_(limits), ncols_(2 * pres.ngens) {
    for (auto& w : subgens_) w = Presentation::free_reduce(w);
  }

  CosetTable run() {
    define_root();
    for (const auto& w : subgens_) scan_and_fill(0, w);
    uint32_t next_look = lim_.lookahead_every;
    for (uint32_t c = 0; c < n_total(); ++c) {
      if (!alive(c)) continue;
      for (const auto& r : pres_.relators) {
        scan_and_fill(c, r);
        if (!alive(c)) break;
      }
      if (!alive(c)) continue;
      for (int col = 0; col < ncols_; ++col)
        if (tab(c, col) == kUndef) {
          uint32_t d = new_coset();
          if (d == kUndef) return overflow();
          link(c, col, d);
        }
      if (n_total() >= next_look) {
        lookahead();
        next_look = n_total() + lim_.lookahead_every;
      }
      if (n_total() > lim_.max_cosets) return overflow();
    }
    return finish();
  }

 private:
  static constexpr uint32_t kUndef = UINT32_MAX;

  const Presentation& pres_;
  std::vector<std::vector<int>> subgens_;
  TCLimits lim_;
  int ncols_;
  std::vector<uint32_t> table_;
  std::vector<uint32_t> parent_;  // union-find; parent_[c] == c iff alive
  std::deque<uint32_t> queue_;

  uint32_t n_total() const { return static_cast<uint32_t>(parent_.size()); }
  bool alive(uint32_t c) { return rep(c) == c; }

  uint32_t rep(uint32_t c) {
    uint32_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      uint32_t nxt = parent_[c];
      parent_[c] = r;
      c = nxt;
    }
    return r;
  }

  uint32_t& tab(uint32_t c, int col) { return table_[size_t(c) * ncols_ + col]; }

  static int col_of(int letter) { return letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1; }
  static int inv_col(int col) { return col ^ 1; }

  void define_root() {
    parent_.push_back(0);
    table_.assign(ncols_, kUndef);
  }

  uint32_t new_coset() {
    if (n_total() >= lim_.max_cosets) return kUndef;
    parent_.push_back(n_total());
    table_.resize(table_.size() + ncols_, kUndef);
    return n_total() - 1;
  }

  void link(uint32_t c, int col, uint32_t d) {
    tab(c, col) = d;
    tab(d, inv_col(col)) = c;
  }

  void merge(uint32_t a, uint32_t b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    queue_.push_back(b);
  }

  void coincidence(uint32_t a, uint32_t b) {
    merge(a, b);
    while (!queue_.empty()) {
      uint32_t e = queue_.front();
      queue_.pop_front();
      for (int col = 0; col < ncols_; ++col) {
        uint32_t f = tab(e, col);
        if (f == kUndef) continue;
        tab(f, inv_col(col)) = kUndef;  // drop the back edge into the dead coset
        uint32_t mu = rep(e), nu = rep(f);
        if (tab(mu, col) != kUndef) {
          merge(nu, tab(mu, col));
        } else if (tab(nu, inv_col(col)) != kUndef) {
          merge(mu, tab(nu, inv_col(col)));
        } else {
          tab(mu, col) = nu;
          tab(nu, inv_col(col)) = mu;
        }
      }
    }
  }

  // Scan relator w at coset c, defining cosets to close the gap (HLT style).
  void scan_and_fill(uint32_t c, const std::vector<int>& w) {
    c = rep(c);
    size_t i = 0, j = w.size();
    uint32_t f = c, b = c;
    while (true) {
      while (i < j && tab(f, col_of(w[i])) != kUndef) f = tab(f, col_of(w[i++]));
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && tab(b, inv_col(col_of(w[j - 1]))) != kUndef)
        b = tab(b, inv_col(col_of(w[--j])));
      if (j == i) {
        // both scans met across a closed word
        if (f != b) coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        link(f, col_of(w[i]), b);
        return;
      }
      uint32_t d = new_coset();
      if (d == kUndef) return;  // caller notices the overflow by the size check
      link(f, col_of(w[i]), d);
      f = d;
      ++i;
    }
  }

  // Scan without defining; closes coincidences found by complete scans.
  void lookahead() {
    for (uint32_t c = 0; c < n_total(); ++c) {
      if (!alive(c)) continue;
      for (const auto& w : pres_.relators) {
        uint32_t f = rep(c);
        bool complete = true;
        for (int l : w) {
          uint32_t nxt = tab(f, col_of(l));
          if (nxt == kUndef) {
            complete = false;
            break;
          }
          f = rep(nxt);
        }
        if (complete && f != rep(c)) coincidence(f, rep(c));
        if (!alive(c)) break;
      }
    }
  }

  CosetTable overflow() {
    CosetTable r;
    r.status = CosetTable::Status::Overflow;
    r.total_defined = n_total();
    r.ngens = pres_.ngens;
    return r;
  }

  CosetTable finish() {
    // remap live cosets to 0..n-1 in index order
    std::vector<uint32_t> newid(n_total(), kUndef);
    uint32_t n = 0;
    for (uint32_t c = 0; c < n_total(); ++c)
      if (alive(c)) newid[c] = n++;
    CosetTable r;
    r.ngens = pres_.ngens;
    r.ncosets = n;
    r.total_defined = n_total();
    r.table.assign(size_t(n) * ncols_, kUndef);
    bool complete = true;
    for (uint32_t c = 0; c < n_total(); ++c) {
      if (!alive(c)) continue;
      for (int col = 0; col < ncols_; ++col) {
        uint32_t d = tab(c, col);
        if (d == kUndef) {
          complete = false;
          continue;
        }
        r.table[size_t(newid[c]) * ncols_ + col] = newid[rep(d)];
      }
    }
    r.status = complete ? CosetTable::Status::Complete : CosetTable::Status::Overflow;
    return r;
  }
};

inline CosetTable todd_coxeter(const Presentation& pres,
                               const std::vector<std::vector<int>>& subgroup_gens = {},
                               TCLimits limits = {}) {
  ToddCoxeter tc(pres, subgroup_gens, limits);
  return tc.run();
}

// ---- Steinberg presentations over a realization ----

template <class R>
struct SteinbergPresentation {
  Presentation pres;
  const R* real = nullptr;
  std::vector<int> gen_root;                            // per generator (0-based): root id
  std::vector<int> gen_param;                           // per generator: index into params[root]
  std::vector<std::vector<typename R::Param>> params;   // per root id: all parameters, params[r][0] arbitrary order
  std::vector<std::map<std::string, int>> param_index;  // per root: key -> index
  std::vector<std::vector<int>> gen_of;                 // per root: param index -> gen id (0 if zero param)

  int generator(int root, const typename R::Param& p) const {
    auto it = param_index[root].find(real->pstr(root, p));
    if (it == param_index[root].end()) fail("ConfigError", "parameter not enumerated");
    return gen_of[root][it->second];  // 0 means the zero parameter (empty word)
  }

  std::vector<int> word(int root, const typename R::Param& p) const {
    int g = generator(root, p);
    return g ? std::vector<int>{g} : std::vector<int>{};
  }
};

// One generator per (root, nonzero parameter); relators: additivity, the
// ultrashort identification, and every commutator instance with maps
// extracted from the realization.
template <class R>
SteinbergPresentation<R> steinberg_presentation(const R& real, uint64_t enum_cap = 65536) {
  SteinbergPresentation<R> sp;
  sp.real = &real;
  const RootSystem& s = real.phi();
  sp.params.resize(s.size());
  sp.param_index.resize(s.size());
  sp.gen_of.resize(s.size());
  for (int r = 0; r < s.size(); ++r) {
    sp.params[r] = real.enumerate_params(r, enum_cap);
    for (size_t i = 0; i < sp.params[r].size(); ++i)
      sp.param_index[r][real.pstr(r, sp.params[r][i])] = static_cast<int>(i);
    sp.gen_of[r].assign(sp.params[r].size(), 0);
    for (size_t i = 0; i < sp.params[r].size(); ++i) {
      if (real.pis_zero(r, sp.params[r][i])) continue;
      sp.pres.names.push_back("x_{" + s.root_name(r) + "}(" + real.pstr(r, sp.params[r][i]) + ")");
      sp.gen_root.push_back(r);
      sp.gen_param.push_back(static_cast<int>(i));
      sp.gen_of[r][i] = ++sp.pres.ngens;
    }
  }

  auto word_of = [&](int root, const typename R::Param& p) { return sp.word(root, p); };
  auto append = [](std::vector<int>& w, const std::vector<int>& v) {
    w.insert(w.end(), v.begin(), v.end());
  };

  // additivity
  for (int r = 0; r < s.size(); ++r)
    for (const auto& p : sp.params[r])
      for (const auto& q : sp.params[r]) {
        if (real.pis_zero(r, p) || real.pis_zero(r, q)) continue;
        std::vector<int> w = word_of(r, p);
        append(w, word_of(r, q));
        append(w, Presentation::inverse_word(word_of(r, real.padd(r, p, q))));
        sp.pres.add_relator(w);
      }

  // ultrashort identification x_{2a}(p) = x_a(p)
  for (int r = 0; r < s.size(); ++r) {
    if (!s.has_half(r)) continue;
    int half = s.half_of(r);
    for (const auto& p : sp.params[r]) {
      if (real.pis_zero(r, p)) continue;
      std::vector<int> w = word_of(r, p);
      append(w, Presentation::inverse_word(word_of(half, p)));
      sp.pres.add_relator(w);
    }
  }

  // Chevalley commutator instances
  for (int a = 0; a < s.size(); ++a)
    for (int b = 0; b < s.size(); ++b) {
      if (a == b || anti_parallel(s, a, b)) continue;
      for (const auto& p : sp.params[a])
        for (const auto& q : sp.params[b]) {
          if (real.pis_zero(a, p) || real.pis_zero(b, q)) continue;
          auto terms = extract_chevalley_maps(real, a, b, p, q);
          std::vector<int> w = word_of(a, p);
          append(w, word_of(b, q));
          append(w, Presentation::inverse_word(word_of(a, p)));
          append(w, Presentation::inverse_word(word_of(b, q)));
          std::vector<int> rhs;
          for (const auto& t : terms) append(rhs, word_of(t.root, t.param));
          append(w, Presentation::inverse_word(rhs));
          sp.pres.add_relator(w);
        }
    }
  return sp;
}

// Root elimination: drops every generator on a root parallel to alpha and
// every relator that mentions such a generator.
template <class R>
SteinbergPresentation<R> eliminate_root(const SteinbergPresentation<R>& sp, int alpha) {
  const RootSystem& s = sp.real->phi();
  SteinbergPresentation<R> out;
  out.real = sp.real;
  out.params = sp.params;
  out.param_index = sp.param_index;
  out.gen_of.assign(s.size(), {});
  std::vector<int> remap(sp.pres.ngens + 1, 0);
  for (int r = 0; r < s.size(); ++r) {
    out.gen_of[r].assign(sp.params[r].size(), 0);
    if (s.parallel_roots(r, alpha)) continue;
    for (size_t i = 0; i < sp.params[r].size(); ++i) {
      int g = sp.gen_of[r][i];
      if (!g) continue;
      out.pres.names.push_back(sp.pres.names[g - 1]);
      out.gen_root.push_back(r);
      out.gen_param.push_back(static_cast<int>(i));
      remap[g] = ++out.pres.ngens;
      out.gen_of[r][i] = remap[g];
    }
  }
  for (const auto& rel : sp.pres.relators) {
    bool keep = true;
    std::vector<int> w;
    for (int l : rel) {
      int g = remap[std::abs(l)];
      if (!g) {
        keep = false;
        break;
      }
      w.push_back(l > 0 ? g : -g);
    }
    if (keep) out.pres.add_relator(w);
  }
  return out;
}

// Dictionaries between a full Steinberg presentation and its root-eliminated
// form (linear realization with scalar blocks). Surviving generators map by
// name; a generator on a root parallel to alpha maps to a commutator word
// through a decomposition of its root.
template <class R>
std::pair<std::vector<std::vector<int>>, std::vector<std::vector<int>>> elimination_dictionaries(
    const SteinbergPresentation<R>& full, const SteinbergPresentation<R>& elim, int alpha) {
  const R& real = *full.real;
  const RootSystem& s = real.phi();
  std::vector<std::vector<int>> d12(full.pres.ngens), d21(elim.pres.ngens);
  for (int g = 0; g < elim.pres.ngens; ++g) {
    int r = elim.gen_root[g], pi = elim.gen_param[g];
    d21[g] = {full.gen_of[r][pi]};
  }
  for (int g = 0; g < full.pres.ngens; ++g) {
    int r = full.gen_root[g], pi = full.gen_param[g];
    if (!s.parallel_roots(r, alpha)) {
      d12[g] = {elim.gen_of[r][pi]};
      continue;
    }
    // express x_r(p) = [x_b(p'), x_c(1)] with b + c = r, both off the line
    const auto& p = full.params[r][pi];
    bool done = false;
    for (auto [b, c] : root_decompositions(s, r)) {
      for (auto [rb, rc] : {std::pair{b, c}, std::pair{c, b}}) {
        if (s.parallel_roots(rb, alpha) || s.parallel_roots(rc, alpha)) continue;
        GlRealization<MatAlgObj> const* lin = nullptr;
        if constexpr (std::is_same_v<R, GlRealization<MatAlgObj>>) lin = &real;
        if (!lin) continue;
        auto [bi, bj] = lin->blocks_of(r);
        auto [bbi, bbj] = lin->blocks_of(rb);
        auto [cbi, cbj] = lin->blocks_of(rc);
        if (bbi != bi || cbj != bj || bbj != cbi) continue;
        // p' carries the value of p into the (bbi, bbj) cell; the second
        // factor is the unit parameter of rc
        Mat pprime = lin->alg.A->zero();
        Mat unit = lin->alg.A->zero();
        auto cells_r = lin->alg.A->block_cells(bi, bj);
        auto cells_b = lin->alg.A->block_cells(bbi, bbj);
        auto cells_c = lin->alg.A->block_cells(cbi, cbj);
        if (cells_r.size() != 1 || cells_b.size() != 1 || cells_c.size() != 1) continue;
        pprime.at(cells_b[0].first, cells_b[0].second) = p.at(cells_r[0].first, cells_r[0].second);
        unit.at(cells_c[0].first, cells_c[0].second) = lin->alg.A->K->one();
        int gb = elim.generator(rb, pprime);
        int gc = elim.generator(rc, unit);
        if (!gb || !gc) continue;
        d12[g] = {gb, gc, -gb, -gc};
        done = true;
        break;
      }
      if (done) break;
    }
    if (!done) fail("ConfigError", "no elimination word for generator " + full.pres.names[g]);
  }
  return {d12, d21};
}

// ---- comparison and certification ----

struct PresentationComparison {
  bool isomorphic = false;
  uint32_t order1 = 0, order2 = 0;
  bool overflow = false;
  std::string detail;
};

// Certifies that the dictionaries induce mutually inverse homomorphisms:
// relators map to the identity in the opposite table, coset counts agree,
// and the round-trips fix every generator.
inline PresentationComparison compare_presentations(const Presentation& p1, const Presentation& p2,
                                                    const std::vector<std::vector<int>>& dict12,
                                                    const std::vector<std::vector<int>>& dict21,
                                                    TCLimits limits = {}) {
  PresentationComparison out;
  CosetTable t1 = todd_coxeter(p1, {}, limits);
  CosetTable t2 = todd_coxeter(p2, {}, limits);
  if (t1.status != CosetTable::Status::Complete || t2.status != CosetTable::Status::Complete) {
    out.overflow = true;
    out.detail = "enumeration overflow";
    return out;
  }
  out.order1 = t1.ncosets;
  out.order2 = t2.ncosets;
  auto map_word = [](const std::vector<int>& w, const std::vector<std::vector<int>>& dict) {
    std::vector<int> out_w;
    for (int l : w) {
      const auto& img = dict[std::abs(l) - 1];
      if (l > 0) out_w.insert(out_w.end(), img.begin(), img.end());
      else {
        auto inv = Presentation::inverse_word(img);
        out_w.insert(out_w.end(), inv.begin(), inv.end());
      }
    }
    return out_w;
  };
  for (const auto& r : p1.relators)
    if (t2.trace(0, map_word(r, dict12)) != 0) {
      out.detail = "a relator of the first presentation does not vanish in the second";
      return out;
    }
  for (const auto& r : p2.relators)
    if (t1.trace(0, map_word(r, dict21)) != 0) {
      out.detail = "a relator of the second presentation does not vanish in the first";
      return out;
    }
  if (out.order1 != out.order2) {
    out.detail = "enumerated orders differ";
    return out;
  }
  // round trips act as the identity on generators (regular representation)
  for (int g = 1; g <= p1.ngens; ++g) {
    std::vector<int> w = map_word(map_word({g}, dict12), dict21);
    std::vector<int> direct{g};
    for (uint32_t c = 0; c < t1.ncosets; ++c)
      if (t1.trace(c, w) != t1.trace(c, direct)) {
        out.detail = "round trip moves generator " + std::to_string(g);
        return out;
      }
  }
  for (int g = 1; g <= p2.ngens; ++g) {
    std::vector<int> w = map_word(map_word({g}, dict21), dict12);
    std::vector<int> direct{g};
    for (uint32_t c = 0; c < t2.ncosets; ++c)
      if (t2.trace(c, w) != t2.trace(c, direct)) {
        out.detail = "round trip moves generator " + std::to_string(g);
        return out;
      }
  }
  out.isomorphic = true;
  return out;
}

// Order of the subgroup generated by carrier images, by closure.
template <class R>
uint64_t generated_subgroup_order(const R& real, uint64_t cap = 5000000) {
  std::vector<typename R::G> gens;
  const RootSystem& s = real.phi();
  for (int r = 0; r < s.size(); ++r)
    for (const auto& p : real.enumerate_params(r)) {
      if (real.pis_zero(r, p)) continue;
      gens.push_back(real.t(r, p));
    }
  std::set<std::string> seen{real.gkey(real.one())};
  std::vector<typename R::G> work{real.one()};
  for (size_t head = 0; head < work.size(); ++head) {
    for (const auto& g : gens) {
      typename R::G next = real.mul(work[head], g);
      if (seen.insert(real.gkey(next)).second) {
        if (seen.size() > cap) fail("ConfigError", "subgroup closure exceeded cap");
        work.push_back(next);
      }
    }
  }
  return seen.size();
}

// Facts about the canonical map onto the realization image: the image order
// (by closure, independent of the table), the kernel size, Lagrange
// consistency, and centrality of a kernel transversal.
template <class R>
struct EnumerationCertificate {
  CosetTable table;
  uint64_t image_order = 0;
  uint64_t kernel_order = 0;
  bool kernel_central = false;
  bool counts_consistent = false;  // ncosets == kernel * image
};

template <class R>
EnumerationCertificate<R> certify_enumeration(const SteinbergPresentation<R>& sp,
                                              TCLimits limits = {}) {
  EnumerationCertificate<R> cert;
  cert.table = todd_coxeter(sp.pres, {}, limits);
  if (cert.table.status != CosetTable::Status::Complete) return cert;
  const R& real = *sp.real;
  cert.image_order = generated_subgroup_order(real);

  // evaluate coset representatives in the carrier; kernel = cosets over 1
  auto reps = cert.table.rep_words();
  auto eval = [&](const std::vector<int>& w) {
    typename R::G g = real.one();
    for (int l : w) {
      int gi = std::abs(l) - 1;
      typename R::G m = real.t(sp.gen_root[gi], sp.params[sp.gen_root[gi]][sp.gen_param[gi]]);
      g = real.mul(g, l > 0 ? m : real.inv(m));
    }
    return g;
  };
  std::vector<uint32_t> kernel;
  for (uint32_t c = 0; c < cert.table.ncosets; ++c)
    if (real.is_one(eval(reps[c]))) kernel.push_back(c);
  cert.kernel_order = kernel.size();
  cert.counts_consistent = cert.table.ncosets == cert.kernel_order * cert.image_order;

  // centrality: each kernel representative commutes with every generator
  cert.kernel_central = true;
  for (uint32_t c : kernel) {
    for (int g = 1; g <= sp.pres.ngens && cert.kernel_central; ++g) {
      std::vector<int> w = reps[c];
      w.push_back(g);
      std::vector<int> wr = Presentation::inverse_word(reps[c]);
      std::vector<int> probe = w;
      probe.insert(probe.end(), wr.begin(), wr.end());
      probe.push_back(-g);
      if (cert.table.trace(0, probe) != 0) cert.kernel_central = false;
    }
    if (!cert.kernel_central) break;
  }
  return cert;
}

}  // namespace stw
