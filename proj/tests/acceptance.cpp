// Acceptance suite: one pass/fail line per criterion, exact equalities on
// finite structures throughout. Exit status is nonzero when any criterion
// fails.

#include <cstdio>
#include <string>

#include "stw/scenario.hpp"

using namespace stw;

namespace {

int failures = 0;

void verdict(int n, const std::string& what, bool ok, const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s%s\n", ok ? "PASS" : "FAIL", n, what.c_str(),
              detail.empty() ? "" : (" — " + detail).c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string first_bad(const CheckReport& rep) {
  const Item* f = rep.first_failure();
  return f ? f->id + ": " + f->witness : "";
}

}  // namespace

// 1. Group-with-commutator-relations axioms for the three realizations:
// product-map injectivity on every special closed subset and all Steinberg
// relation families, exactly.
static void criterion1() {
  Rng rng(101);
  SampleBudget bud;
  bud.samples = 10000;
  bool ok = true;
  std::string detail;

  RootSystem a3 = root_system_from_tag("A3");
  for (const char* tag : {"z2", "z4"}) {
    MatrixAlgebra A = MatrixAlgebra::scalar_blocks(ring(tag), 4);
    auto real = linear_realization(a3, A);
    CheckReport rel = check_steinberg_relations(real, bud, rng);
    CheckReport inj = check_product_injectivity(real, bud, rng);
    if (!rel.passed() || !inj.passed()) {
      ok = false;
      detail = std::string("A3/") + tag + " " + first_bad(rel) + first_bad(inj);
    }
  }
  RootSystem bc3 = root_system_from_tag("BC3");
  auto [O, F] = build_split_oddform(ring("z2"), 3, 1);
  auto ureal = unitary_realization(bc3, O, F);
  CheckReport rel = check_steinberg_relations(ureal, bud, rng);
  CheckReport inj = check_product_injectivity(ureal, bud, rng);
  if (!rel.passed() || !inj.passed()) {
    ok = false;
    detail = "BC3/z2 " + first_bad(rel) + first_bad(inj);
  }
  verdict(1, "commutator-relation axioms for A3/M4(z2), A3/M4(z4), BC3/split(z2,3,1)", ok, detail);
}

// 2. Chevalley extraction: zero residue for every non-anti-parallel pair;
// adjacent linear maps equal p,q -> pq against the matrix oracle over z4,
// exhaustively.
static void criterion2() {
  Rng rng(102);
  bool ok = true;
  std::string detail;

  RootSystem a3 = root_system_from_tag("A3");
  for (const char* tag : {"z2", "z4"}) {
    if (!ok) break;
    MatrixAlgebra A = MatrixAlgebra::scalar_blocks(ring(tag), 4);
    auto real = linear_realization(a3, A);
    for (int a = 0; a < a3.size() && ok; ++a)
      for (int b = 0; b < a3.size() && ok; ++b) {
        if (a == b || anti_parallel(a3, a, b)) continue;
        for (const auto& p : real.enumerate_params(a)) {
          for (const auto& q : real.enumerate_params(b)) {
            try {
              auto terms = extract_chevalley_maps(real, a, b, p, q);
              int sum = a3.index_of(detail::vadd(a3.roots[a], a3.roots[b]));
              if (sum >= 0) {
                // adjacent: the extracted map is the matrix-product oracle,
                // p*q for chained blocks and -q*p for the reverse chain
                auto [abi, abj] = real.blocks_of(a);
                auto [bbi, bbj] = real.blocks_of(b);
                Mat expect = (abj == bbi) ? p * q : -(q * p);
                Mat got = A.zero();
                for (const auto& t : terms)
                  if (t.root == sum) got = t.param;
                if (!(got == expect)) {
                  ok = false;
                  detail = "adjacent map differs from the product oracle at " + a3.root_name(a) +
                           "," + a3.root_name(b);
                }
              }
            } catch (const Error& e) {
              ok = false;
              detail = e.what();
            }
            if (!ok) break;
          }
          if (!ok) break;
        }
      }
  }

  // unitary pairs: zero residue via sampled parameters
  RootSystem bc3 = root_system_from_tag("BC3");
  auto [O, F] = build_split_oddform(ring("z2"), 3, 1);
  auto ureal = unitary_realization(bc3, O, F);
  for (int a = 0; a < bc3.size() && ok; ++a)
    for (int b = 0; b < bc3.size() && ok; ++b) {
      if (a == b || anti_parallel(bc3, a, b)) continue;
      for (int t = 0; t < 6 && ok; ++t) {
        try {
          extract_chevalley_maps(ureal, a, b, ureal.random_param(a, rng),
                                 ureal.random_param(b, rng));
        } catch (const Error& e) {
          ok = false;
          detail = bc3.root_name(a) + "," + bc3.root_name(b) + ": " + e.what();
        }
      }
    }
  verdict(2, "zero peeling residue everywhere; adjacent linear maps equal pq over z4", ok, detail);
}

// 3. Odd form axioms for (z4, l=3, m0 in {0,1}), with failing mutation
// witnesses.
static void criterion3() {
  Rng rng(103);
  bool ok = true;
  std::string detail;
  for (int m0 : {0, 1}) {
    auto [O, F] = build_split_oddform(ring("z4"), 3, m0);
    OddFormBudget b;
    b.samples = 10000;
    b.phi_matrix_units = true;
    CheckReport rep = check_oddform_axioms(O, F, b, rng);
    if (!rep.passed()) {
      ok = false;
      detail = "m0=" + std::to_string(m0) + " " + first_bad(rep);
    }
  }
  {
    auto [O, F] = build_split_oddform(ring("z4"), 3, 1);
    O.inv_kind = OddFormAlgebra::Involution::PlainTranspose;
    OddFormBudget b;
    b.samples = 200;
    b.phi_matrix_units = false;
    CheckReport rep = check_oddform_axioms(O, F, b, rng);
    bool swap_fails = false;
    for (const auto& it : rep.items)
      if (it.id == "family/involution-swaps-indices" && it.status == Status::Fail &&
          !it.witness.empty())
        swap_fails = true;
    if (!swap_fails) {
      ok = false;
      detail = "transpose mutation did not fail with a witness";
    }
  }
  {
    auto [O, F] = build_split_oddform(ring("z4"), 3, 1);
    for (auto& [i, q] : F.q) q = phi(O, F.e.at(i));
    OddFormBudget b;
    b.samples = 200;
    CheckReport rep = check_oddform_axioms(O, F, b, rng);
    bool pi_fails = false;
    for (const auto& it : rep.items)
      if (it.id == "family/pi-of-q" && it.status == Status::Fail && !it.witness.empty())
        pi_fails = true;
    if (!pi_fails) {
      ok = false;
      detail = "phi-family mutation did not fail with a witness";
    }
  }
  verdict(3, "odd form algebra and family axioms over z4 (m0 = 0, 1), mutations fail", ok, detail);
}

// 4. Homotope crossed modules for every s in z12, exhaustively; transition
// functoriality exact to depth 4.
static void criterion4() {
  Rng rng(104);
  bool ok = true;
  std::string detail;
  const BaseRing* K = ring("z12");
  MatrixAlgebra A = MatrixAlgebra::scalar_blocks(K, 1);
  for (int s = 0; s < 12 && ok; ++s) {
    CheckReport rep = check_crossed_module(homotope(A, K->from_int(s)), 100000, rng);
    if (!rep.passed()) {
      ok = false;
      detail = "s=" + std::to_string(s) + " " + first_bad(rep);
    }
  }
  for (int k = 0; k < 12 && ok; ++k) {
    LabelTower T = colocalization(A, K->from_int(k), 4);
    for (int n = 0; n + 2 <= 4 && ok; ++n)
      for (int v = 0; v < 12; ++v) {
        Mat x = A.zero();
        x.at(0, 0) = K->from_int(v);
        if (!(T.down(n + 2, n, x) == T.down(n + 1, n, T.down(n + 2, n + 1, x)))) {
          ok = false;
          detail = "transition composition failed at k=" + std::to_string(k);
        }
      }
  }
  verdict(4, "homotopes over z12 are crossed modules; transitions compose to depth 4", ok, detail);
}

// 5. Covering witnesses at depth 4 for K = z12, s = 1, ks = (3,4): the
// partition of unity with m' = 2m-1 and the frozen level solutions, the
// witness for every root of A3 (linear), and for the ultrashort roots of
// BC3 with the correction terms.
static void criterion5() {
  bool ok = true;
  std::string detail;
  const BaseRing* K = ring("z12");
  std::vector<RingElement> ks{K->from_int(3), K->from_int(4)};

  for (int m = 1; m <= 4 && ok; ++m) {
    auto sol = partition_of_unity(*K, K->one(), ks, m);
    if (!sol || sol->m_prime != 2 * m - 1) {
      ok = false;
      detail = "partition of unity failed at level " + std::to_string(m);
      break;
    }
    if (m == 1 && !(sol->t[0] == K->from_int(3) && sol->t[1] == K->from_int(1))) {
      ok = false;
      detail = "level 1 solution is not (3,1)";
    }
    if (m == 2 && !(sol->t[0] == K->from_int(1) && sol->t[1] == K->from_int(1))) {
      ok = false;
      detail = "level 2 solution is not (1,1)";
    }
  }

  RootSystem a3 = root_system_from_tag("A3");
  MatrixAlgebra A = MatrixAlgebra::scalar_blocks(K, 4);
  auto real = linear_realization(a3, A);
  CosheafConfig cfg;
  cfg.s = K->one();
  cfg.ks = ks;
  cfg.depth = 4;
  for (int r = 0; r < a3.size() && ok; ++r) {
    auto [bi, bj] = real.blocks_of(r);
    CheckReport rep = check_cosheaf_linear(A, bi, bj, cfg);
    if (!rep.passed()) {
      ok = false;
      detail = "linear witness failed for " + a3.root_name(r) + ": " + first_bad(rep);
    }
  }

  auto [O, F] = build_split_oddform(K, 3, 1);
  for (int j : {1, 2, 3, -1, -2, -3}) {
    if (!ok) break;
    CheckReport rep = check_cosheaf_ultrashort(O, j, cfg);
    if (!rep.passed()) {
      ok = false;
      detail = "ultrashort witness failed for j=" + std::to_string(j) + ": " + first_bad(rep);
    }
  }
  verdict(5, "covering witnesses at depth 4 over z12 with frozen partition solutions", ok, detail);
}

// 6. Gluing relations, epimorphism witness, and the symbolic commutator
// expansion.
static void criterion6() {
  Rng rng(106);
  RootSystem a3 = root_system_from_tag("A3");
  MatrixAlgebra A = MatrixAlgebra::scalar_blocks(ring("z12"), 4);
  GluingConfig cfg;
  cfg.s = A.K->one();
  cfg.ks = {A.K->from_int(3), A.K->from_int(4)};
  cfg.depth = 4;
  cfg.budget = 400;
  CheckReport rep = check_gluing_relations(a3, A, cfg, rng);
  bool fg_ok = true;
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; m <= 3; ++m) fg_ok = fg_ok && freegroup::commutator_expansion_identity(n, m);
  verdict(6, "gluing relation families and epimorphism witness to level 4; word identity n,m <= 3",
          rep.passed() && fg_ok, first_bad(rep));
}

// 7. Crossed square identities for A = M4(z4), X = 2A on budget 10^4.
static void criterion7() {
  Rng rng(107);
  RootSystem a3 = root_system_from_tag("A3");
  static MatrixAlgebra A = MatrixAlgebra::scalar_blocks(ring("z4"), 4);
  AlgCrossedModule X = AlgCrossedModule::ideal(A, A.K->from_int(2));
  CheckReport rep = check_crossed_square(a3, A, X, 10000, rng);
  CheckReport rel = check_relative_presentation(a3, A, X, 10000, rng);
  verdict(7, "crossed-square axioms, the fifteen identities, uniqueness expansion, Peiffer",
          rep.passed() && rel.passed(), first_bad(rep) + first_bad(rel));
}

static const RootSystem& a3_ref() {
  static RootSystem a3 = root_system_from_tag("A3");
  return a3;
}

// 8. Gauss decomposition re-multiplies 10^3 random elements of GL4(z8);
// the localized-action identities hold for generator-type g at depth 3.
static void criterion8() {
  Rng rng(108);
  bool ok = true;
  std::string detail;
  const BaseRing* K8 = ring("z8");
  MatrixAlgebra A8 = MatrixAlgebra::scalar_blocks(K8, 4);
  for (int t = 0; t < 1000; ++t) {
    Mat g = random_invertible(K8, 4, rng);
    auto fs = gauss_decompose(A8, g);
    if (!(remultiply(A8, fs) == g)) {
      ok = false;
      detail = "re-multiplication failed";
      break;
    }
  }
  const BaseRing* K = ring("z12");
  MatrixAlgebra A = MatrixAlgebra::scalar_blocks(K, 4);
  WeakActionConfig cfg;
  cfg.s = K->one();
  cfg.ks = {K->from_int(3), K->from_int(4)};
  cfg.depth = 3;
  cfg.budget = 200;
  Mat g = A.one();
  g.at(0, 1) = K->from_int(7);
  CheckReport r1 = check_weak_action_identities(a3_ref(), A, g, cfg, rng);
  Mat d = A.zero();
  int units[4] = {1, 5, 7, 11};
  for (int i = 0; i < 4; ++i) d.at(i, i) = K->from_int(units[i]);
  CheckReport r2 = check_weak_action_identities(a3_ref(), A, d, cfg, rng);
  if (!r1.passed() || !r2.passed()) {
    ok = false;
    detail = first_bad(r1) + first_bad(r2);
  }
  verdict(8, "Gauss re-multiplication on 10^3 elements of GL4(z8); action identities at depth 3",
          ok, detail);
}

// 9. Coset enumeration of St(A3, M4(F2)) under the default limit with
// certification; elimination preserves the order; K2 reported.
static void criterion9() {
  bool ok = true;
  std::string detail;
  RootSystem a3 = root_system_from_tag("A3");
  static MatrixAlgebra A = MatrixAlgebra::scalar_blocks(ring("f2"), 4);
  auto real = linear_realization(a3, A);
  auto sp = steinberg_presentation(real);
  auto cert = certify_enumeration(sp);
  uint64_t gl4 = 1;
  for (int i = 0; i < 4; ++i) gl4 *= (16 - (1u << i));  // independent order formula
  if (cert.table.status != CosetTable::Status::Complete) {
    ok = false;
    detail = "enumeration overflow";
  } else {
    if (cert.image_order != gl4) {
      ok = false;
      detail = "image order " + std::to_string(cert.image_order) + " != " + std::to_string(gl4);
    }
    if (!cert.kernel_central) {
      ok = false;
      detail = "kernel not central";
    }
    if (!cert.counts_consistent) {
      ok = false;
      detail = "order != kernel * image";
    }
    int alpha = a3.index_of(parse_root(a3, "e1-e2"));
    auto elim = eliminate_root(sp, alpha);
    CosetTable t2 = todd_coxeter(elim.pres);
    if (t2.status != CosetTable::Status::Complete || t2.ncosets != cert.table.ncosets) {
      ok = false;
      detail = "elimination changed the enumerated order";
    }
    auto [d12, d21] = elimination_dictionaries(sp, elim, alpha);
    auto cmp = compare_presentations(sp.pres, elim.pres, d12, d21);
    if (!cmp.isomorphic) {
      ok = false;
      detail = "elimination comparison failed: " + cmp.detail;
    }
    std::printf("       (K2 order reported for St(A3, M4(F2)): %llu; group order %u)\n",
                static_cast<unsigned long long>(cert.kernel_order), cert.table.ncosets);
  }
  verdict(9, "enumeration terminates; image has order 20160; kernel central; elimination safe",
          ok, detail);
}

// 10. Byte-identical machine reports for the full bundled suite under a
// fixed seed.
static void criterion10() {
  auto suite = parse_scenario_text(builtin_paper_suite(), "paper-suite");
  std::string m1 = machine_format(run_suite(suite, 424242));
  std::string m2 = machine_format(run_suite(suite, 424242));
  bool ok = !m1.empty() && m1 == m2 && m1.find("overall status=pass") != std::string::npos;
  verdict(10, "re-running the bundled suite with a fixed seed is byte-identical and passes", ok,
          ok ? "" : "reports differ or suite failed");
}

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
