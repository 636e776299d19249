#pragma once

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stw/gluing.hpp"
#include "stw/parse.hpp"
#include "stw/tower.hpp"

namespace stw {

// One named check with flat key-value parameters.
struct Scenario {
  std::string name;   // section label
  std::string kind;   // check kind
  std::map<std::string, std::string> params;
  std::string origin;  // file:line for error reporting
};

struct ScenarioSuite {
  std::vector<Scenario> entries;
};

// Flat key-value format with [section] headers; '#' starts a comment.
// Section headers are "[kind]" or "[kind:label]".
inline ScenarioSuite parse_scenario_text(const std::string& text, const std::string& filename) {
  ScenarioSuite suite;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  Scenario* cur = nullptr;
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string where = filename + ":" + std::to_string(lineno);
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("ConfigError", where + ": unterminated section header");
      std::string inner = line.substr(1, line.size() - 2);
      auto parts = split(inner, ':');
      Scenario s;
      s.kind = trim(parts[0]);
      s.name = parts.size() > 1 ? trim(parts[1]) : s.kind + "-" + std::to_string(suite.entries.size() + 1);
      s.origin = where;
      suite.entries.push_back(s);
      cur = &suite.entries.back();
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) fail("ConfigError", where + ": expected key = value");
    if (!cur) fail("ConfigError", where + ": key outside of a section");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (cur->params.count(key)) fail("ConfigError", where + ": duplicate key '" + key + "'");
    cur->params[key] = val;
  }
  return suite;
}

namespace detail {

class ParamReader {
 public:
  ParamReader(const Scenario& s, std::optional<uint64_t> default_seed)
      : s_(s), default_seed_(default_seed) {}

  std::string require(const std::string& key) {
    auto it = s_.params.find(key);
    if (it == s_.params.end())
      fail("ConfigError", s_.origin + ": missing key '" + key + "' for check '" + s_.kind + "'");
    touched_.insert(key);
    return it->second;
  }
  std::string get(const std::string& key, const std::string& def) {
    auto it = s_.params.find(key);
    touched_.insert(key);
    return it == s_.params.end() ? def : it->second;
  }
  long long get_int(const std::string& key, long long def) {
    auto it = s_.params.find(key);
    touched_.insert(key);
    return it == s_.params.end() ? def : parse_int(it->second, key);
  }
  uint64_t seed() {
    auto it = s_.params.find("seed");
    touched_.insert("seed");
    if (it != s_.params.end()) return static_cast<uint64_t>(parse_int(it->second, "seed"));
    if (default_seed_) return *default_seed_;
    fail("ConfigError", s_.origin + ": seeds are mandatory for sampled checks (set seed= or STW_SEED)");
  }
  void finish() const {
    for (const auto& [k, v] : s_.params)
      if (!touched_.count(k))
        fail("ConfigError", s_.origin + ": unknown key '" + k + "' for check '" + s_.kind + "'");
  }

 private:
  const Scenario& s_;
  std::optional<uint64_t> default_seed_;
  std::set<std::string> touched_;
};

inline std::string root_list(const RootSystem& s, const std::vector<int>& ids) {
  std::string out = "{";
  for (size_t i = 0; i < ids.size(); ++i) out += (i ? "," : "") + s.root_name(ids[i]);
  return out + "}";
}

}  // namespace detail

// ---- individual runners ----

inline CheckReport run_roots(detail::ParamReader& P) {
  CheckReport rep;
  rep.name = "roots";
  RootSystem s = root_system_from_tag(P.require("phi"));
  std::string op = P.require("op");
  auto& item = rep.add(op);
  item.count = 1;
  if (op == "special-closed") {
    RootSubset sub = subset_from_names(s, split(P.require("set"), ','));
    rep.notes.push_back(std::string("special-closed: ") +
                        (is_special_closed(sub) ? "true" : "false"));
  } else if (op == "closure") {
    RootSubset sub = subset_from_names(s, split(P.require("set"), ','));
    rep.notes.push_back("closure: " + detail::root_list(s, closure(sub).members));
  } else if (op == "thick-series") {
    int alpha = s.index_of(parse_root(s, P.require("alpha")));
    int beta = s.index_of(parse_root(s, P.require("beta")));
    rep.notes.push_back("series: " + detail::root_list(s, thick_series(s, alpha, beta).members));
  } else if (op == "saturated") {
    RootSubset sub = subset_from_names(s, split(P.require("set"), ','));
    rep.notes.push_back("saturated: " + detail::root_list(s, saturated_subsystem(sub).members));
  } else if (op == "decompositions") {
    int alpha = s.index_of(parse_root(s, P.require("alpha")));
    std::string out;
    for (auto [b, c] : root_decompositions(s, alpha))
      out += "(" + s.root_name(b) + "," + s.root_name(c) + ")";
    rep.notes.push_back("decompositions: " + out);
  } else {
    fail("ConfigError", "unknown roots op '" + op + "'");
  }
  return rep;
}

inline CheckReport run_oddform(detail::ParamReader& P) {
  const BaseRing* K = ring(P.require("K"));
  int rank = static_cast<int>(P.get_int("rank", 3));
  int middle = static_cast<int>(P.get_int("middle", 1));
  OddFormBudget b;
  b.samples = P.get_int("budget", 2000);
  Rng rng(P.seed());
  auto [O, F] = build_split_oddform(K, rank, middle);
  std::string mutate = P.get("mutate", "none");
  if (mutate == "plain-transpose") {
    O.inv_kind = OddFormAlgebra::Involution::PlainTranspose;
  } else if (mutate == "phi-family") {
    for (auto& [i, q] : F.q) q = phi(O, F.e.at(i));
  } else if (mutate != "none") {
    fail("ConfigError", "unknown mutation '" + mutate + "'");
  }
  return check_oddform_axioms(O, F, b, rng);
}

inline CheckReport run_steinberg(detail::ParamReader& P) {
  std::string kind = P.get("realization", "linear");
  RootSystem phi = root_system_from_tag(P.require("phi"));
  SampleBudget b;
  b.samples = P.get_int("budget", 2000);
  Rng rng(P.seed());
  bool inject = P.get("injectivity", "on") == "on";
  CheckReport rep;
  if (kind == "linear") {
    MatrixAlgebra A = parse_algebra(P.require("algebra"));
    auto real = linear_realization(phi, A);
    rep = check_steinberg_relations(real, b, rng);
    if (inject) {
      CheckReport inj = check_product_injectivity(real, b, rng);
      for (auto& it : inj.items) rep.items.push_back(it);
      for (auto& n : inj.notes) rep.notes.push_back(n);
    }
  } else if (kind == "unitary") {
    OddTag ot{ring(P.get("K", "z2")), static_cast<int>(P.get_int("rank", phi.rank)),
              static_cast<int>(P.get_int("middle", 1))};
    if (P.get("algebra", "").size()) ot = parse_odd_tag(P.require("algebra"));
    static std::map<std::string, std::pair<OddFormAlgebra, HyperbolicFamily>> cache;
    std::string key = ot.K->tag + "/" + std::to_string(ot.rank) + "/" + std::to_string(ot.middle);
    if (!cache.count(key)) cache.emplace(key, build_split_oddform(ot.K, ot.rank, ot.middle));
    auto& [O, F] = cache.at(key);
    auto real = unitary_realization(phi, O, F);
    rep = check_steinberg_relations(real, b, rng);
    if (inject) {
      CheckReport inj = check_product_injectivity(real, b, rng);
      for (auto& it : inj.items) rep.items.push_back(it);
      for (auto& n : inj.notes) rep.notes.push_back(n);
    }
  } else {
    fail("ConfigError", "unknown realization '" + kind + "'");
  }
  rep.name = "steinberg";
  return rep;
}

inline AlgCrossedModule parse_carrier(const MatrixAlgebra& A, const std::string& text) {
  auto parts = split(text, ':');
  if (parts[0] == "ideal" && parts.size() == 2)
    return AlgCrossedModule::ideal(A, parse_element(*A.K, parts[1]));
  if (parts[0] == "zeromult") return AlgCrossedModule::zero_mult(A);
  if (parts[0] == "homotope" && parts.size() == 2)
    return homotope(A, parse_element(*A.K, parts[1]));
  fail("ConfigError", "unknown carrier '" + text + "'");
}

// The algebra must outlive the crossed module; runners keep it on a stable
// heap slot for the duration of the process.
inline const MatrixAlgebra* intern_algebra(const MatrixAlgebra& A) {
  static std::mutex mu;
  static std::vector<std::unique_ptr<MatrixAlgebra>> pool;
  std::lock_guard<std::mutex> lock(mu);
  for (const auto& p : pool) {
    if (p->K == A.K && p->n == A.n && p->block_of == A.block_of) return p.get();
  }
  pool.push_back(std::make_unique<MatrixAlgebra>(A));
  return pool.back().get();
}

inline CheckReport run_relative(detail::ParamReader& P) {
  RootSystem phi = root_system_from_tag(P.require("phi"));
  const MatrixAlgebra* A = intern_algebra(parse_algebra(P.require("algebra")));
  std::string carrier = P.get("carrier", "");
  if (carrier.empty()) carrier = "ideal:" + P.require("ideal");
  AlgCrossedModule X = parse_carrier(*A, carrier);
  Rng rng(P.seed());
  return check_relative_presentation(phi, *A, X, P.get_int("budget", 2000), rng);
}

inline CheckReport run_crossed_square(detail::ParamReader& P) {
  RootSystem phi = root_system_from_tag(P.require("phi"));
  const MatrixAlgebra* A = intern_algebra(parse_algebra(P.require("algebra")));
  std::string carrier = P.get("carrier", "");
  if (carrier.empty()) carrier = "ideal:" + P.require("ideal");
  AlgCrossedModule X = parse_carrier(*A, carrier);
  Rng rng(P.seed());
  return check_crossed_square(phi, *A, X, P.get_int("budget", 2000), rng);
}

inline CheckReport run_cosheaf(detail::ParamReader& P) {
  const BaseRing* K = ring(P.require("K"));
  CosheafConfig cfg;
  cfg.s = parse_element(*K, P.require("s"));
  for (const auto& k : parse_elements(*K, P.require("ks"))) cfg.ks.push_back(k);
  cfg.depth = static_cast<int>(P.get_int("depth", 4));
  RootSystem phi = root_system_from_tag(P.require("phi"));
  RootVec alpha = parse_root(phi, P.require("alpha"));
  if (phi.type == RootType::A) {
    const MatrixAlgebra* A =
        intern_algebra(MatrixAlgebra::scalar_blocks(K, phi.rank + 1));
    GlRealization<MatAlgObj> real = linear_realization(phi, *A);
    auto [bi, bj] = real.blocks_of(phi.index_of(alpha));
    return check_cosheaf_linear(*A, bi, bj, cfg);
  }
  if (phi.type == RootType::BC) {
    BcRoot r = classify_bc_root(alpha);
    if (r.kind != BcRoot::Kind::Ultrashort)
      fail("ConfigError", "cosheaf witness over BC needs an ultrashort root");
    int middle = static_cast<int>(P.get_int("middle", 1));
    auto [O, F] = build_split_oddform(K, phi.rank, middle);
    return check_cosheaf_ultrashort(O, r.j, cfg);
  }
  fail("ConfigError", "cosheaf witness needs a type A or BC system");
}

inline CheckReport run_gluing(detail::ParamReader& P) {
  RootSystem phi = root_system_from_tag(P.require("phi"));
  const MatrixAlgebra* A = intern_algebra(parse_algebra(P.require("algebra")));
  GluingConfig cfg;
  cfg.s = parse_element(*A->K, P.get("s", "1"));
  for (const auto& k : parse_elements(*A->K, P.require("ks"))) cfg.ks.push_back(k);
  cfg.depth = static_cast<int>(P.get_int("depth", 4));
  cfg.budget = P.get_int("budget", 200);
  Rng rng(P.seed());
  return check_gluing_relations(phi, *A, cfg, rng);
}

inline Mat parse_group_element(const MatrixAlgebra& A, const std::string& text) {
  auto parts = split(text, ':');
  if (parts[0] == "one") return A.one();
  if (parts[0].size() >= 3 && parts[0][0] == 't' && parts.size() == 2) {
    int i = parts[0][1] - '1', j = parts[0][2] - '1';
    if (i < 0 || j < 0 || i >= A.n || j >= A.n || i == j)
      fail("ConfigError", "bad root element '" + text + "'");
    Mat g = A.one();
    g.at(i, j) = parse_element(*A.K, parts[1]);
    return g;
  }
  if (parts[0] == "diag" && parts.size() == 2) {
    Mat g = A.zero();
    auto es = parse_elements(*A.K, parts[1]);
    if (static_cast<int>(es.size()) != A.n) fail("ConfigError", "diagonal length mismatch");
    for (int i = 0; i < A.n; ++i) {
      if (!is_unit(es[i])) fail("ConfigError", "diagonal entries must be units");
      g.at(i, i) = es[i];
    }
    return g;
  }
  fail("ConfigError", "unknown group element '" + text + "' (use one, t<i><j>:<a>, diag:<u,...>)");
}

inline CheckReport run_weak_action(detail::ParamReader& P) {
  RootSystem phi = root_system_from_tag(P.require("phi"));
  const MatrixAlgebra* A = intern_algebra(parse_algebra(P.require("algebra")));
  WeakActionConfig cfg;
  cfg.s = parse_element(*A->K, P.get("s", "1"));
  for (const auto& k : parse_elements(*A->K, P.require("ks"))) cfg.ks.push_back(k);
  cfg.depth = static_cast<int>(P.get_int("depth", 3));
  cfg.budget = P.get_int("budget", 100);
  Mat g = parse_group_element(*A, P.require("g"));
  Rng rng(P.seed());
  return check_weak_action_identities(phi, *A, g, cfg, rng);
}

inline CheckReport run_enumerate(detail::ParamReader& P) {
  CheckReport rep;
  rep.name = "enumerate";
  RootSystem phi = root_system_from_tag(P.require("phi"));
  std::string atag = P.require("algebra");
  TCLimits lim;
  lim.max_cosets = static_cast<uint32_t>(P.get_int("limit", 1000000));
  std::string table_stats = P.get("report", "table-stats");
  std::string elim_root = P.get("eliminate", "");
  static_cast<void>(table_stats);

  auto drive = [&](auto& real) {
    auto sp = steinberg_presentation(real);
    rep.notes.push_back("generators: " + std::to_string(sp.pres.ngens) +
                        ", relators: " + std::to_string(sp.pres.relators.size()));
    auto& term = rep.add("enumeration");
    auto cert = certify_enumeration(sp, lim);
    if (cert.table.status != CosetTable::Status::Complete) {
      term.status = Status::Inconclusive;  // Overflow signals retry, never failure
      term.witness = "overflow after " + std::to_string(cert.table.total_defined) + " cosets";
      return;
    }
    term.count = 1;
    rep.notes.push_back("order: " + std::to_string(cert.table.ncosets) +
                        " (total rows " + std::to_string(cert.table.total_defined) + ")");
    rep.notes.push_back("image order: " + std::to_string(cert.image_order));
    rep.notes.push_back("K2 order (reported): " + std::to_string(cert.kernel_order));
    auto& counts = rep.add("lagrange-counts");
    rep.record(counts, cert.counts_consistent, "order != kernel * image");
    auto& central = rep.add("kernel-central");
    rep.record(central, cert.kernel_central, "a kernel element fails to commute");
    if (!elim_root.empty()) {
      int alpha = phi.index_of(parse_root(phi, elim_root));
      auto elim = eliminate_root(sp, alpha);
      auto& order_kept = rep.add("elimination-preserves-order");
      CosetTable t2 = todd_coxeter(elim.pres, {}, lim);
      if (t2.status != CosetTable::Status::Complete) {
        order_kept.status = Status::Inconclusive;
        order_kept.witness = "eliminated enumeration overflow";
      } else {
        rep.record(order_kept, t2.ncosets == cert.table.ncosets,
                   std::to_string(t2.ncosets) + " vs " + std::to_string(cert.table.ncosets));
      }
    }
  };

  if (atag.rfind("odd:", 0) == 0) {
    OddTag ot = parse_odd_tag(atag);
    auto [O, F] = build_split_oddform(ot.K, ot.rank, ot.middle);
    auto real = unitary_realization(phi, O, F);
    drive(real);
  } else {
    const MatrixAlgebra* A = intern_algebra(parse_algebra(atag));
    auto real = linear_realization(phi, *A);
    drive(real);
  }
  return rep;
}

inline CheckReport run_extract(detail::ParamReader& P) {
  CheckReport rep;
  rep.name = "extract-chevalley";
  RootSystem phi = root_system_from_tag(P.require("phi"));
  const MatrixAlgebra* A = intern_algebra(parse_algebra(P.require("algebra")));
  auto real = linear_realization(phi, *A);
  int alpha = phi.index_of(parse_root(phi, P.require("alpha")));
  int beta = phi.index_of(parse_root(phi, P.require("beta")));
  auto [abi, abj] = real.blocks_of(alpha);
  auto [bbi, bbj] = real.blocks_of(beta);
  Mat p = A->zero(), q = A->zero();
  p.at(A->block_cells(abi, abj)[0].first, A->block_cells(abi, abj)[0].second) =
      parse_element(*A->K, P.get("p", "1"));
  q.at(A->block_cells(bbi, bbj)[0].first, A->block_cells(bbi, bbj)[0].second) =
      parse_element(*A->K, P.get("q", "1"));
  auto& item = rep.add("peeling");
  try {
    auto terms = extract_chevalley_maps(real, alpha, beta, p, q);
    item.count = 1;
    std::string out;
    for (const auto& t : terms)
      out += phi.root_name(t.root) + " -> " + t.param.to_string() + "; ";
    rep.notes.push_back("terms: " + (out.empty() ? "(empty product)" : out));
  } catch (const Error& e) {
    rep.record(item, false, e.what());
  }
  return rep;
}

// Deterministic self-test target so that replay has a reproducible failing
// identity to chew on.
inline CheckReport run_selftest(detail::ParamReader& P) {
  CheckReport rep;
  rep.name = "selftest";
  std::string outcome = P.get("outcome", "pass");
  auto& item = rep.add("fixed-identity");
  if (outcome == "fail")
    rep.record(item, false, "2+2 deliberately compared against 5");
  else
    rep.record(item, true, "");
  return rep;
}

// ---- suite running and reports ----

struct RunResult {
  Scenario scenario;
  CheckReport report;
  double seconds = 0;
};

struct RunReport {
  std::vector<RunResult> results;
  Status status() const {
    Status s = Status::Pass;
    for (const auto& r : results) s = worse(s, r.report.status());
    return s;
  }
  int exit_code() const {
    switch (status()) {
      case Status::Pass: return 0;
      case Status::Inconclusive: return 1;
      case Status::Fail: return 2;
    }
    return 2;
  }
};

inline CheckReport dispatch_scenario(const Scenario& s, std::optional<uint64_t> default_seed) {
  detail::ParamReader P(s, default_seed);
  CheckReport rep;
  if (s.kind == "roots") rep = run_roots(P);
  else if (s.kind == "oddform") rep = run_oddform(P);
  else if (s.kind == "steinberg") rep = run_steinberg(P);
  else if (s.kind == "relative") rep = run_relative(P);
  else if (s.kind == "crossed-square") rep = run_crossed_square(P);
  else if (s.kind == "cosheaf") rep = run_cosheaf(P);
  else if (s.kind == "gluing") rep = run_gluing(P);
  else if (s.kind == "weak-action") rep = run_weak_action(P);
  else if (s.kind == "enumerate") rep = run_enumerate(P);
  else if (s.kind == "extract") rep = run_extract(P);
  else if (s.kind == "selftest") rep = run_selftest(P);
  else fail("ConfigError", s.origin + ": unknown check kind '" + s.kind + "'");
  P.finish();
  return rep;
}

inline RunReport run_suite(const ScenarioSuite& suite, std::optional<uint64_t> default_seed) {
  RunReport out;
  for (const auto& s : suite.entries) {
    auto t0 = std::chrono::steady_clock::now();
    RunResult r;
    r.scenario = s;
    r.report = dispatch_scenario(s, default_seed);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.results.push_back(std::move(r));
  }
  return out;
}

// percent-encoding for byte-stable single-line fields
inline std::string encode_field(const std::string& s) {
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned char c : s) {
    if (isalnum(c) || strchr("._:/,()[]{}|+*^<>-", c)) out.push_back(static_cast<char>(c));
    else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 15]);
    }
  }
  return out;
}

inline std::string decode_field(const std::string& s) {
  std::string out;
  auto hexv = [](char c) { return c <= '9' ? c - '0' : c - 'a' + 10; };
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size()) {
      out.push_back(static_cast<char>(hexv(s[i + 1]) * 16 + hexv(s[i + 2])));
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

inline std::string replay_token(const Scenario& s, const std::string& item_id) {
  std::string t = "v1|" + encode_field(s.kind) + "|" + encode_field(s.name) + "|";
  bool first = true;
  for (const auto& [k, v] : s.params) {
    if (!first) t += ";";
    first = false;
    t += encode_field(k) + "=" + encode_field(v);
  }
  t += "|" + encode_field(item_id);
  return t;
}

// Machine-readable report: one line per item plus a summary line per
// scenario. No timings, stable ordering, percent-encoded fields: identical
// (config, seed) pairs serialize byte-identically.
inline std::string machine_format(const RunReport& rr) {
  std::string out;
  for (const auto& r : rr.results) {
    out += "config scenario=" + encode_field(r.scenario.name) + " kind=" +
           encode_field(r.scenario.kind);
    for (const auto& [k, v] : r.scenario.params)
      out += " " + encode_field(k) + "=" + encode_field(v);
    out += "\n";
    for (const auto& it : r.report.items) {
      out += "item scenario=" + encode_field(r.scenario.name) + " check=" +
             encode_field(r.report.name) + " id=" + encode_field(it.id) + " status=" +
             to_string(it.status) + " count=" + std::to_string(it.count);
      if (it.status == Status::Fail) {
        out += " witness=" + encode_field(it.witness);
        out += " replay=" + encode_field(replay_token(r.scenario, it.id));
      }
      out += "\n";
    }
    for (const auto& n : r.report.notes)
      out += "note scenario=" + encode_field(r.scenario.name) + " text=" + encode_field(n) + "\n";
    out += "summary scenario=" + encode_field(r.scenario.name) + " status=" +
           to_string(r.report.status()) + " items=" + std::to_string(r.report.items.size()) +
           " evaluations=" + std::to_string(r.report.total_count()) + "\n";
  }
  out += std::string("overall status=") + to_string(rr.status()) + "\n";
  return out;
}

inline std::string human_format(const RunReport& rr) {
  std::ostringstream out;
  for (const auto& r : rr.results) {
    out << "=== " << r.scenario.name << " (" << r.report.name << ") — "
        << to_string(r.report.status()) << " in " << r.seconds << "s\n";
    out << "  config:";
    for (const auto& [k, v] : r.scenario.params) out << " " << k << "=" << v;
    out << "\n";
    for (const auto& it : r.report.items) {
      out << "  [" << to_string(it.status) << "] " << it.id << " (" << it.count
          << " evaluations)\n";
      if (it.status == Status::Fail) {
        out << "      witness: " << it.witness << "\n";
        out << "      replay:  " << replay_token(r.scenario, it.id) << "\n";
      }
    }
    for (const auto& n : r.report.notes) out << "  note: " << n << "\n";
  }
  out << "overall: " << to_string(rr.status()) << "\n";
  return out.str();
}

// Re-runs the single identity named by the token (deterministic seeds make
// the reproduction exact) and reports just that item.
inline RunReport run_replay(const std::string& token, std::optional<uint64_t> default_seed) {
  auto parts = split(token, '|');
  if (parts.size() != 5 || parts[0] != "v1") fail("ConfigError", "bad replay token");
  Scenario s;
  s.kind = decode_field(parts[1]);
  s.name = decode_field(parts[2]);
  s.origin = "replay";
  if (!parts[3].empty())
    for (const auto& kv : split(parts[3], ';')) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) fail("ConfigError", "bad replay token");
      s.params[decode_field(kv.substr(0, eq))] = decode_field(kv.substr(eq + 1));
    }
  std::string item_id = decode_field(parts[4]);
  CheckReport full = dispatch_scenario(s, default_seed);
  CheckReport one;
  one.name = full.name;
  for (const auto& it : full.items)
    if (it.id == item_id) one.items.push_back(it);
  if (one.items.empty()) fail("ConfigError", "replay token names an unknown identity '" + item_id + "'");
  RunReport rr;
  rr.results.push_back(RunResult{s, one, 0});
  return rr;
}

// ---- the bundled verification suite ----

inline const char* builtin_paper_suite() {
  return R"SCN(# bundled verification suite: the acceptance checks, runnable end to end
[steinberg:a3-m4-z2]
realization = linear
algebra = m4:z2
phi = A3
budget = 10000
seed = 1

[steinberg:a3-m4-z4]
realization = linear
algebra = m4:z4
phi = A3
budget = 10000
seed = 2

[steinberg:bc3-split-z2]
realization = unitary
K = z2
rank = 3
middle = 1
phi = BC3
budget = 10000
seed = 3

[oddform:z4-middle-1]
K = z4
rank = 3
middle = 1
budget = 10000
seed = 4

[oddform:z4-middle-0]
K = z4
rank = 3
middle = 0
budget = 10000
seed = 5

[cosheaf:linear-z12]
K = z12
s = 1
ks = 3,4
phi = A3
alpha = e1-e2
depth = 4

[cosheaf:ultrashort-z12]
K = z12
s = 1
ks = 3,4
phi = BC3
alpha = e1
middle = 1
depth = 4

[gluing:a3-z12]
algebra = m4:z12
phi = A3
s = 1
ks = 3,4
depth = 4
budget = 200
seed = 6

[crossed-square:m4-z4]
algebra = m4:z4
phi = A3
ideal = 2
budget = 10000
seed = 7

[relative:m4-z4]
algebra = m4:z4
phi = A3
ideal = 2
budget = 10000
seed = 8

[weak-action:root-element]
algebra = m4:z12
phi = A3
s = 1
ks = 3,4
g = t12:5
depth = 3
budget = 100
seed = 9

[weak-action:diagonal]
algebra = m4:z12
phi = A3
s = 1
ks = 3,4
g = diag:1,5,7,11
depth = 3
budget = 100
seed = 10

[enumerate:a3-f2]
phi = A3
algebra = m4:f2
limit = 1000000
eliminate = e1-e2
)SCN";
}

}  // namespace stw
