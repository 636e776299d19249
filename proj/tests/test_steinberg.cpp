#include <catch2/catch_amalgamated.hpp>

#include "stw/steinberg.hpp"

using namespace stw;

namespace {

struct LinearFixture {
  const BaseRing* K;
  RootSystem a3;
  MatrixAlgebra A;
  GlRealization<MatAlgObj> real;

  explicit LinearFixture(const char* tag)
      : K(ring(tag)),
        a3(root_system_from_tag("A3")),
        A(MatrixAlgebra::scalar_blocks(K, 4)),
        real(linear_realization(a3, A)) {}
};

}  // namespace

TEST_CASE("chevalley extraction in the linear realization") {
  LinearFixture F("z4");
  const RootSystem& s = F.a3;

  SECTION("adjacent roots: the extracted map is p,q -> pq") {
    int a = s.index_of(parse_root(s, "e1-e2"));
    int b = s.index_of(parse_root(s, "e2-e3"));
    int sum = s.index_of(parse_root(s, "e1-e3"));
    for (const auto& p : F.real.enumerate_params(a))
      for (const auto& q : F.real.enumerate_params(b)) {
        auto terms = extract_chevalley_maps(F.real, a, b, p, q);
        Mat pq = p * q;  // independent matrix-product oracle on orthogonal blocks
        if (pq.is_zero()) {
          REQUIRE(terms.empty());
        } else {
          REQUIRE(terms.size() == 1);
          REQUIRE(terms[0].root == sum);
          REQUIRE(terms[0].param == pq);
        }
      }
  }

  SECTION("disjoint blocks commute: empty product") {
    int a = s.index_of(parse_root(s, "e1-e2"));
    int b = s.index_of(parse_root(s, "e3-e4"));
    Rng rng(31);
    for (int t = 0; t < 40; ++t) {
      auto terms = extract_chevalley_maps(F.real, a, b, F.real.random_param(a, rng),
                                          F.real.random_param(b, rng));
      REQUIRE(terms.empty());
    }
  }

  SECTION("extracted adjacent map is bi-additive") {
    int a = s.index_of(parse_root(s, "e2-e3"));
    int b = s.index_of(parse_root(s, "e3-e4"));
    auto f = [&](const Mat& p, const Mat& q) {
      auto terms = extract_chevalley_maps(F.real, a, b, p, q);
      return terms.empty() ? F.real.pzero(0) : terms[0].param;
    };
    for (const auto& p : F.real.enumerate_params(a))
      for (const auto& p2 : F.real.enumerate_params(a))
        for (const auto& q : F.real.enumerate_params(b)) {
          REQUIRE(f(p + p2, q) == f(p, q) + f(p2, q));
        }
    for (const auto& p : F.real.enumerate_params(a))
      for (const auto& q : F.real.enumerate_params(b))
        for (const auto& q2 : F.real.enumerate_params(b)) {
          REQUIRE(f(p, q + q2) == f(p, q) + f(p, q2));
        }
  }

  SECTION("anti-parallel pairs are rejected") {
    int a = s.index_of(parse_root(s, "e1-e2"));
    int b = s.index_of(parse_root(s, "-e1+e2"));
    REQUIRE_THROWS_AS(
        extract_chevalley_maps(F.real, a, b, F.real.pzero(a), F.real.pzero(b)), Error);
  }
}

TEST_CASE("steinberg relations hold in the linear realizations") {
  Rng rng(32);
  for (const char* tag : {"z2", "z4"}) {
    LinearFixture F(tag);
    SampleBudget b;
    b.samples = 200;
    CheckReport rep = check_steinberg_relations(F.real, b, rng);
    INFO(tag << ": " << (rep.first_failure() ? rep.first_failure()->witness : ""));
    REQUIRE(rep.passed());
  }
}

TEST_CASE("steinberg relations hold in the unitary realization") {
  Rng rng(33);
  auto [O, F] = build_split_oddform(ring("z2"), 3, 1);
  RootSystem bc3 = root_system_from_tag("BC3");
  UnitaryRealization real = unitary_realization(bc3, O, F);
  SampleBudget b;
  b.samples = 60;
  CheckReport rep = check_steinberg_relations(real, b, rng);
  std::string why =
      rep.first_failure() ? rep.first_failure()->id + " " + rep.first_failure()->witness : "";
  INFO(why);
  REQUIRE(rep.passed());
}

TEST_CASE("unitary extraction produces the two-term pattern") {
  auto [O, F] = build_split_oddform(ring("z2"), 3, 1);
  RootSystem bc3 = root_system_from_tag("BC3");
  UnitaryRealization real = unitary_realization(bc3, O, F);

  // alpha = e1-e2 (so i=2, j=1), beta = e2 ultrashort
  int a = bc3.index_of(parse_root(bc3, "e1-e2"));
  int b = bc3.index_of(parse_root(bc3, "e2"));
  bool saw_two_terms = false;
  for (const auto& p : real.enumerate_params(a))
    for (const auto& q : real.enumerate_params(b)) {
      auto terms = extract_chevalley_maps(real, a, b, p, q);
      // re-multiplication residue is checked inside; verify the product again
      Mat prod = real.one();
      for (const auto& t : terms) prod = prod * real.t(t.root, t.param);
      REQUIRE(prod == real.commutator(real.t(a, p), real.t(b, q)));
      if (terms.size() == 2) saw_two_terms = true;
    }
  REQUIRE(saw_two_terms);
}

TEST_CASE("product map injectivity on thick series") {
  Rng rng(34);
  SampleBudget b;

  LinearFixture F("z4");
  const RootSystem& s = F.a3;
  int alpha = s.index_of(parse_root(s, "e1-e2"));
  for (int beta = 0; beta < s.size(); ++beta) {
    if (s.parallel_roots(alpha, beta)) continue;
    RootSubset series = thick_series(s, alpha, beta);
    std::string w;
    REQUIRE(product_map_injective(F.real, series.members, b, rng, &w));
  }

  auto [O, Fam] = build_split_oddform(ring("z2"), 3, 1);
  RootSystem bc3 = root_system_from_tag("BC3");
  UnitaryRealization ureal = unitary_realization(bc3, O, Fam);
  int ua = bc3.index_of(parse_root(bc3, "e1-e2"));
  int ub = bc3.index_of(parse_root(bc3, "e2"));
  RootSubset series = thick_series(bc3, ua, ub);
  std::string w;
  REQUIRE(product_map_injective(ureal, series.members, b, rng, &w));
}
