#include <catch2/catch_amalgamated.hpp>

#include "stw/oddform.hpp"
#include "stw/rootsys.hpp"

using namespace stw;

TEST_CASE("split construction satisfies the axioms") {
  Rng rng(21);
  for (auto [tag, l, m0] : {std::tuple{"z4", 3, 1}, {"z4", 3, 0}, {"z2", 3, 1}, {"z12", 2, 1}}) {
    auto [O, F] = build_split_oddform(ring(tag), l, m0);
    OddFormBudget b;
    b.samples = 300;
    CheckReport rep = check_oddform_axioms(O, F, b, rng);
    INFO(tag << " l=" << l << " m0=" << m0 << " first failure: "
             << (rep.first_failure() ? rep.first_failure()->id : "none"));
    REQUIRE(rep.passed());
  }
}

TEST_CASE("family values by construction") {
  auto [O, F] = build_split_oddform(ring("z4"), 3, 1);
  for (int i = -3; i <= 3; ++i) {
    if (i == 0) continue;
    REQUIRE(pi(F.q.at(i)) == F.e.at(i));
    REQUIRE(rho(F.q.at(i)).is_zero());
  }
}

TEST_CASE("mutated involution breaks the family") {
  Rng rng(22);
  auto [O, F] = build_split_oddform(ring("z4"), 3, 1);
  O.inv_kind = OddFormAlgebra::Involution::PlainTranspose;
  OddFormBudget b;
  b.samples = 50;
  b.phi_matrix_units = false;
  CheckReport rep = check_oddform_axioms(O, F, b, rng);
  REQUIRE(!rep.passed());
  bool swap_axiom_failed = false;
  for (const auto& it : rep.items)
    if (it.id == "family/involution-swaps-indices" && it.status == Status::Fail) {
      swap_axiom_failed = true;
      REQUIRE(!it.witness.empty());
    }
  REQUIRE(swap_axiom_failed);
}

TEST_CASE("phi-only parameter passes the algebra axioms but fails pi(q_i) = e_i") {
  Rng rng(23);
  auto [O, F] = build_split_oddform(ring("z4"), 3, 1);
  // restrict points to phi(R) and set q_i = phi(e_i), which has pi = 0
  std::vector<OddFormPoint> pool;
  for (int t = 0; t < 60; ++t) pool.push_back(phi(O, random_matrix(O.R.K, O.n(), O.n(), rng)));
  HyperbolicFamily F2 = F;
  for (auto& [i, q] : F2.q) q = phi(O, F2.e.at(i));
  OddFormBudget b;
  b.samples = 200;
  CheckReport rep = check_oddform_axioms(O, F2, b, rng, &pool);
  for (const auto& it : rep.items) {
    if (it.id.rfind("alg/", 0) == 0) {
      INFO(it.id);
      REQUIRE(it.status == Status::Pass);
    }
  }
  bool pi_failed = false;
  for (const auto& it : rep.items)
    if (it.id == "family/pi-of-q") pi_failed = it.status == Status::Fail;
  REQUIRE(pi_failed);
}

TEST_CASE("unitary root elements") {
  auto [O, F] = build_split_oddform(ring("z4"), 3, 1);
  RootSystem bc3 = root_system_from_tag("BC3");
  const BaseRing* K = O.R.K;
  Rng rng(24);

  auto medium = parse_root(bc3, "e1-e2");  // e_j - e_i with j=1, i=2
  auto ultra = parse_root(bc3, "e2");
  auto longr = parse_root(bc3, "2e2");

  SECTION("zero parameters map to the identity") {
    OddFormPoint z{O.R.zero(), O.R.zero()};
    REQUIRE(unitary_root_element(O, medium, z) == O.R.one());
    REQUIRE(unitary_root_element(O, ultra, z) == O.R.one());
    REQUIRE(unitary_root_element(O, longr, z) == O.R.one());
  }

  SECTION("medium additivity, exhaustively over the block") {
    BcRoot r = classify_bc_root(medium);
    auto params = O.R.enumerate_block(O.block_id(r.i), O.block_id(r.j));
    REQUIRE(params.size() == K->order());
    for (const auto& pa : params)
      for (const auto& pb : params) {
        OddFormPoint u{O.R.zero(), pa}, v{O.R.zero(), pb}, s{O.R.zero(), pa + pb};
        REQUIRE(unitary_root_element(O, medium, u) * unitary_root_element(O, medium, v) ==
                unitary_root_element(O, medium, s));
      }
  }

  SECTION("ultrashort additivity follows the Delta group law") {
    auto params = enumerate_ultrashort(O, 2);
    REQUIRE(params.size() >= 2);
    for (const auto& u : params)
      for (const auto& v : params)
        REQUIRE(unitary_root_element(O, ultra, u) * unitary_root_element(O, ultra, v) ==
                unitary_root_element(O, ultra, dadd(O, u, v)));
  }

  SECTION("unitarity: bar(g) g = g bar(g) = 1 for all root elements") {
    for (int id = 0; id < bc3.size(); ++id) {
      BcRoot r = classify_bc_root(bc3.roots[id]);
      std::vector<OddFormPoint> params;
      if (r.kind == BcRoot::Kind::Medium) {
        for (const auto& pa : O.R.enumerate_block(O.block_id(r.i), O.block_id(r.j)))
          params.push_back({O.R.zero(), pa});
      } else {
        for (const auto& u : enumerate_ultrashort(O, r.j))
          if (r.kind == BcRoot::Kind::Ultrashort || long_param_ok(O, r.j, u)) params.push_back(u);
      }
      for (const auto& p : params) {
        Mat g = unitary_root_element(O, bc3.roots[id], p);
        REQUIRE(O.bar(g) * g == O.R.one());
        REQUIRE(g * O.bar(g) == O.R.one());
      }
    }
  }

  SECTION("long parameters embed in the ultrashort set with the same element") {
    // P_{2a} <= P_a and t_{2a} = t_a there
    for (int j : {1, 2, 3, -1, -2, -3}) {
      RootVec lv(3, 0), uv(3, 0);
      lv[std::abs(j) - 1] = j > 0 ? 2 : -2;
      uv[std::abs(j) - 1] = j > 0 ? 1 : -1;
      for (const auto& u : enumerate_ultrashort(O, j)) {
        if (!long_param_ok(O, j, u)) continue;
        REQUIRE(ultrashort_param_ok(O, j, u));
        REQUIRE(unitary_root_element(O, lv, u) == unitary_root_element(O, uv, u));
      }
    }
  }

  SECTION("ultrashort commutators land in the long parameter set") {
    for (const auto& u : enumerate_ultrashort(O, 2))
      for (const auto& v : enumerate_ultrashort(O, 2)) {
        OddFormPoint c =
            dadd(O, dadd(O, u, v), dneg(O, dadd(O, v, u)));  // u+v-(v+u), the group commutator
        REQUIRE(long_param_ok(O, 2, c));
      }
  }

  SECTION("phi transforms covariantly: phi(a).b = phi(bar(b) a b)") {
    for (int t = 0; t < 100; ++t) {
      Mat a = random_matrix(K, O.n(), O.n(), rng), b = random_matrix(K, O.n(), O.n(), rng);
      REQUIRE(act(O, phi(O, a), b) == phi(O, O.bar(b) * a * b));
    }
  }
}

TEST_CASE("coordinate reader inverts the root map") {
  auto [O, F] = build_split_oddform(ring("z4"), 3, 1);
  RootSystem bc3 = root_system_from_tag("BC3");
  Rng rng(25);

  auto medium = parse_root(bc3, "e1+e2");
  auto ultra = parse_root(bc3, "e3");

  BcRoot rm = classify_bc_root(medium);
  for (const auto& pa : O.R.enumerate_block(O.block_id(rm.i), O.block_id(rm.j))) {
    OddFormPoint p{O.R.zero(), pa};
    Mat g = unitary_root_element(O, medium, p);
    REQUIRE(read_root_coordinate(O, medium, g) == p);
  }
  for (const auto& u : enumerate_ultrashort(O, 3)) {
    Mat g = unitary_root_element(O, ultra, u);
    REQUIRE(read_root_coordinate(O, ultra, g) == u);
  }
  // identity reads as the zero parameter
  OddFormPoint z = read_root_coordinate(O, medium, O.R.one());
  REQUIRE(z.a.is_zero());
  REQUIRE(z.m.is_zero());
  // a generic invertible matrix does not have the pattern
  Mat g = random_invertible(O.R.K, O.n(), rng);
  bool threw = false;
  try {
    read_root_coordinate(O, medium, g);
  } catch (const Error& e) {
    threw = e.kind() == "PatternMismatch";
  }
  REQUIRE(threw);
}
