// Command line front end: scenario runner, single checks, coset enumeration,
// commutator extraction, and failure replay.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "stw/scenario.hpp"

using namespace stw;

namespace {

std::optional<uint64_t> env_seed() {
  const char* v = std::getenv("STW_SEED");
  if (!v || !*v) return std::nullopt;
  return static_cast<uint64_t>(std::strtoull(v, nullptr, 10));
}

int emit(const RunReport& rr, const std::string& machine_out, bool quiet) {
  if (!quiet) std::cout << human_format(rr);
  if (!machine_out.empty()) {
    if (machine_out == "-") {
      std::cout << machine_format(rr);
    } else {
      std::ofstream f(machine_out, std::ios::binary);
      f << machine_format(rr);
    }
  }
  return rr.exit_code();
}

// Single-check subcommands build a one-entry suite from their flags.
struct FlagBag {
  std::map<std::string, std::string> kv;
  void set(const std::string& k, const std::string& v) {
    if (!v.empty()) kv[k] = v;
  }
};

int run_single(const std::string& kind, const FlagBag& flags, const std::string& machine_out) {
  Scenario s;
  s.kind = kind;
  s.name = kind;
  s.origin = "command line";
  s.params = flags.kv;
  ScenarioSuite suite;
  suite.entries.push_back(s);
  try {
    RunReport rr = run_suite(suite, env_seed());
    return emit(rr, machine_out, false);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for Steinberg groups, odd form algebras, and their towers over finite rings"};
  app.require_subcommand(1);

  std::string machine_out;
  app.add_option("--machine-out", machine_out,
                 "write the machine-readable report to this file ('-' for stdout)");

  // run
  auto* run = app.add_subcommand("run", "run a scenario file (or the bundled 'paper-suite')");
  std::string scenario_path;
  run->add_option("file", scenario_path, "scenario file or 'paper-suite'")->required();

  // replay
  auto* replay = app.add_subcommand("replay", "re-evaluate one identity from a failure witness");
  std::string token;
  replay->add_option("--token", token, "replay token from a report")->required();

  // roots
  auto* roots = app.add_subcommand("roots", "root system operations");
  std::string r_phi, r_op, r_set, r_alpha, r_beta;
  roots->add_option("--phi", r_phi)->required();
  roots->add_option("--op", r_op, "special-closed|closure|thick-series|saturated|decompositions")
      ->required();
  roots->add_option("--set", r_set);
  roots->add_option("--alpha", r_alpha);
  roots->add_option("--beta", r_beta);

  // check <kind>
  auto* check = app.add_subcommand("check", "run one verifier");
  check->require_subcommand(1);
  std::string c_K, c_alg, c_phi, c_realization = "linear", c_s, c_ks, c_alpha, c_g, c_carrier,
              c_ideal, c_mutate;
  long long c_budget = -1, c_rank = -1, c_middle = -1, c_depth = -1, c_seed = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--budget", c_budget);
    sub->add_option("--seed", c_seed);
  };
  auto* c_odd = check->add_subcommand("oddform", "odd form algebra axioms");
  c_odd->add_option("--K", c_K)->required();
  c_odd->add_option("--rank", c_rank);
  c_odd->add_option("--middle", c_middle);
  c_odd->add_option("--mutate", c_mutate);
  add_common(c_odd);

  auto* c_st = check->add_subcommand("steinberg", "Steinberg relations and product injectivity");
  c_st->add_option("--realization", c_realization);
  c_st->add_option("--algebra", c_alg);
  c_st->add_option("--K", c_K);
  c_st->add_option("--rank", c_rank);
  c_st->add_option("--middle", c_middle);
  c_st->add_option("--phi", c_phi)->required();
  add_common(c_st);

  auto* c_rel = check->add_subcommand("relative", "relative presentation relations");
  c_rel->add_option("--algebra", c_alg)->required();
  c_rel->add_option("--phi", c_phi)->required();
  c_rel->add_option("--ideal", c_ideal);
  c_rel->add_option("--carrier", c_carrier);
  add_common(c_rel);

  auto* c_sq = check->add_subcommand("crossed-square", "crossed square identities");
  c_sq->add_option("--algebra", c_alg)->required();
  c_sq->add_option("--phi", c_phi)->required();
  c_sq->add_option("--ideal", c_ideal);
  c_sq->add_option("--carrier", c_carrier);
  add_common(c_sq);

  auto* c_co = check->add_subcommand("cosheaf", "glued parameter presentations with witnesses");
  c_co->add_option("--K", c_K)->required();
  c_co->add_option("--s", c_s)->required();
  c_co->add_option("--ks", c_ks)->required();
  c_co->add_option("--phi", c_phi)->required();
  c_co->add_option("--alpha", c_alpha)->required();
  c_co->add_option("--depth", c_depth);
  c_co->add_option("--middle", c_middle);

  auto* c_gl = check->add_subcommand("gluing", "gluing relations over a covering");
  c_gl->add_option("--algebra", c_alg)->required();
  c_gl->add_option("--phi", c_phi)->required();
  c_gl->add_option("--s", c_s);
  c_gl->add_option("--ks", c_ks)->required();
  c_gl->add_option("--depth", c_depth);
  add_common(c_gl);

  auto* c_wa = check->add_subcommand("weak-action", "localized action compatibility");
  c_wa->add_option("--algebra", c_alg)->required();
  c_wa->add_option("--phi", c_phi)->required();
  c_wa->add_option("--s", c_s);
  c_wa->add_option("--ks", c_ks)->required();
  c_wa->add_option("--g", c_g)->required();
  c_wa->add_option("--depth", c_depth);
  add_common(c_wa);

  // extract chevalley
  auto* extract = app.add_subcommand("extract", "extract structure maps");
  auto* e_ch = extract->add_subcommand("chevalley", "peel one commutator");
  std::string e_alg, e_phi, e_alpha, e_beta, e_p = "1", e_q = "1";
  e_ch->add_option("--algebra", e_alg)->required();
  e_ch->add_option("--phi", e_phi)->required();
  e_ch->add_option("--alpha", e_alpha)->required();
  e_ch->add_option("--beta", e_beta)->required();
  e_ch->add_option("--p", e_p);
  e_ch->add_option("--q", e_q);

  // enumerate
  auto* en = app.add_subcommand("enumerate", "coset enumeration of a Steinberg presentation");
  std::string en_phi, en_alg, en_elim, en_report = "table-stats";
  long long en_limit = 1000000;
  en->add_option("--phi", en_phi)->required();
  en->add_option("--algebra", en_alg)->required();
  en->add_option("--limit", en_limit);
  en->add_option("--eliminate", en_elim);
  en->add_option("--report", en_report);

  // allow app-level options (e.g. --machine-out) after a subcommand name
  for (CLI::App* s : app.get_subcommands([](CLI::App*) { return true; })) {
    s->fallthrough();
    for (CLI::App* s2 : s->get_subcommands([](CLI::App*) { return true; })) s2->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      std::string text;
      if (scenario_path == "paper-suite") {
        text = builtin_paper_suite();
      } else {
        std::ifstream f(scenario_path);
        if (!f) {
          std::cerr << "ConfigError: cannot open scenario file '" << scenario_path << "'\n";
          return 3;
        }
        std::stringstream ss;
        ss << f.rdbuf();
        text = ss.str();
      }
      ScenarioSuite suite = parse_scenario_text(text, scenario_path);
      RunReport rr = run_suite(suite, env_seed());
      return emit(rr, machine_out, false);
    }
    if (*replay) {
      RunReport rr = run_replay(token, env_seed());
      return emit(rr, machine_out, false);
    }
    if (*roots) {
      FlagBag f;
      f.set("phi", r_phi);
      f.set("op", r_op);
      f.set("set", r_set);
      f.set("alpha", r_alpha);
      f.set("beta", r_beta);
      return run_single("roots", f, machine_out);
    }
    auto num = [](long long v) { return std::to_string(v); };
    if (*c_odd || *c_st || *c_rel || *c_sq || *c_co || *c_gl || *c_wa) {
      FlagBag f;
      f.set("K", c_K);
      f.set("algebra", c_alg);
      f.set("phi", c_phi);
      f.set("s", c_s);
      f.set("ks", c_ks);
      f.set("alpha", c_alpha);
      f.set("g", c_g);
      f.set("carrier", c_carrier);
      f.set("ideal", c_ideal);
      f.set("mutate", c_mutate);
      if (c_budget >= 0) f.set("budget", num(c_budget));
      if (c_rank >= 0) f.set("rank", num(c_rank));
      if (c_middle >= 0) f.set("middle", num(c_middle));
      if (c_depth >= 0) f.set("depth", num(c_depth));
      if (c_seed >= 0) f.set("seed", num(c_seed));
      if (*c_st) f.set("realization", c_realization);
      std::string kind = *c_odd ? "oddform"
                         : *c_st ? "steinberg"
                         : *c_rel ? "relative"
                         : *c_sq ? "crossed-square"
                         : *c_co ? "cosheaf"
                         : *c_gl ? "gluing"
                                 : "weak-action";
      return run_single(kind, f, machine_out);
    }
    if (*e_ch) {
      FlagBag f;
      f.set("algebra", e_alg);
      f.set("phi", e_phi);
      f.set("alpha", e_alpha);
      f.set("beta", e_beta);
      f.set("p", e_p);
      f.set("q", e_q);
      return run_single("extract", f, machine_out);
    }
    if (*en) {
      FlagBag f;
      f.set("phi", en_phi);
      f.set("algebra", en_alg);
      f.set("limit", num(en_limit));
      f.set("eliminate", en_elim);
      f.set("report", en_report);
      return run_single("enumerate", f, machine_out);
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  return 0;
}
