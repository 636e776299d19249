#include <catch2/catch_amalgamated.hpp>

#include "stw/algebra.hpp"

using namespace stw;

namespace {

Mat scalar_mat(const MatrixAlgebra& A, int v) {
  Mat m = A.zero();
  m.at(0, 0) = A.K->from_int(v);
  return m;
}

}  // namespace

TEST_CASE("matrix algebra blocks and completeness") {
  const BaseRing* K = ring("z4");
  MatrixAlgebra A = MatrixAlgebra::scalar_blocks(K, 4);
  Mat s = A.zero();
  for (int b = 0; b < 4; ++b) {
    s = s + A.e(b);
    REQUIRE(A.completeness_witness(b));
  }
  REQUIRE(s == A.one());
  for (int b = 0; b < 4; ++b)
    for (int c = 0; c < 4; ++c)
      REQUIRE(A.e(b) * A.e(c) == (b == c ? A.e(b) : A.zero()));
}

TEST_CASE("homotope operations") {
  const BaseRing* K = ring("z12");
  MatrixAlgebra A = MatrixAlgebra::scalar_blocks(K, 1);

  SECTION("defining formulas at s = 3") {
    AlgCrossedModule H = homotope(A, K->from_int(3));
    REQUIRE(H.mul(scalar_mat(A, 2), scalar_mat(A, 5)) == scalar_mat(A, 6));
    REQUIRE(H.delta(scalar_mat(A, 2)) == scalar_mat(A, 6));
  }
  SECTION("degenerate homotope at s = 0") {
    AlgCrossedModule H = homotope(A, K->zero());
    for (int x = 0; x < 12; ++x)
      for (int y = 0; y < 12; ++y)
        REQUIRE(H.mul(scalar_mat(A, x), scalar_mat(A, y)) == A.zero());
    REQUIRE(H.delta(scalar_mat(A, 7)) == A.zero());
  }
  SECTION("crossed module identities hold for every s") {
    Rng rng(3);
    for (int s = 0; s < 12; ++s) {
      CheckReport rep = check_crossed_module(homotope(A, K->from_int(s)), 500, rng);
      INFO("s = " << s);
      REQUIRE(rep.passed());
    }
  }
}

TEST_CASE("homotope transitions") {
  const BaseRing* K = ring("z12");
  MatrixAlgebra A = MatrixAlgebra::scalar_blocks(K, 1);

  SECTION("a^(9) maps to (3a)^(3) along 3") {
    AlgCrossedModule from = homotope(A, K->from_int(9)), to = homotope(A, K->from_int(3));
    for (int a = 0; a < 12; ++a)
      REQUIRE(homotope_transition(from, to, K->from_int(3), scalar_mat(A, a)) ==
              scalar_mat(A, 3 * a));
  }
  SECTION("identity label gives the identity map") {
    AlgCrossedModule H = homotope(A, K->from_int(5));
    for (int a = 0; a < 12; ++a)
      REQUIRE(homotope_transition(H, H, K->one(), scalar_mat(A, a)) == scalar_mat(A, a));
  }
  SECTION("transitions compose multiplicatively") {
    // 2: 3 -> 6 then 2: 6 -> 12 = 0 equals 4: 3 -> 0
    AlgCrossedModule h3 = homotope(A, K->from_int(3));
    AlgCrossedModule h6 = homotope(A, K->from_int(6));
    AlgCrossedModule h0 = homotope(A, K->zero());
    for (int a = 0; a < 12; ++a) {
      Mat step1 = homotope_transition(h0, h6, K->from_int(2), scalar_mat(A, a));
      Mat step2 = homotope_transition(h6, h3, K->from_int(2), step1);
      Mat direct = homotope_transition(h0, h3, K->from_int(4), scalar_mat(A, a));
      REQUIRE(step2 == direct);
    }
  }
  SECTION("label mismatch is rejected") {
    AlgCrossedModule h3 = homotope(A, K->from_int(3)), h5 = homotope(A, K->from_int(5));
    REQUIRE_THROWS_AS(homotope_transition(h5, h3, K->from_int(2), scalar_mat(A, 1)), Error);
  }
  SECTION("transition is a morphism of crossed modules over A") {
    const BaseRing* K4 = ring("z4");
    MatrixAlgebra M2 = MatrixAlgebra::scalar_blocks(K4, 2);
    AlgCrossedModule from = homotope(M2, K4->from_int(2));  // 2 = 2*1? use 2 = 1*2: to label 1
    AlgCrossedModule to = homotope(M2, K4->one());
    Rng rng(9);
    for (int t = 0; t < 200; ++t) {
      Mat x = M2.random(rng), a = M2.random(rng);
      Mat tx = homotope_transition(from, to, K4->from_int(2), x);
      REQUIRE(to.delta(tx) == from.delta(x));
      REQUIRE(homotope_transition(from, to, K4->from_int(2), from.act_l(a, x)) == to.act_l(a, tx));
      REQUIRE(homotope_transition(from, to, K4->from_int(2), from.act_r(x, a)) == to.act_r(tx, a));
    }
  }
}

TEST_CASE("crossed module checker") {
  const BaseRing* K = ring("z4");
  MatrixAlgebra A = MatrixAlgebra::scalar_blocks(K, 2);
  Rng rng(5);

  SECTION("the ideal 2A is a crossed module") {
    CheckReport rep = check_crossed_module(AlgCrossedModule::ideal(A, K->from_int(2)), 2000, rng);
    REQUIRE(rep.passed());
  }
  SECTION("a zero-multiplication bimodule is a crossed module") {
    CheckReport rep = check_crossed_module(AlgCrossedModule::zero_mult(A), 2000, rng);
    REQUIRE(rep.passed());
  }
  SECTION("right multiplication by a non-central element fails equivariance") {
    Mat g = A.zero();
    g.at(0, 1) = K->one();  // E_{12} is not central
    CheckReport rep = check_crossed_module(AlgCrossedModule::twisted_test(A, g), 2000, rng);
    REQUIRE(!rep.passed());
    const Item* bad = rep.first_failure();
    REQUIRE(bad != nullptr);
    REQUIRE(!bad->witness.empty());
  }
}

TEST_CASE("semidirect product") {
  const BaseRing* K = ring("z4");
  MatrixAlgebra A = MatrixAlgebra::scalar_blocks(K, 2);
  AlgCrossedModule X = AlgCrossedModule::ideal(A, K->from_int(2));
  SemidirectAlgebra S = semidirect(X);
  Rng rng(13);

  SECTION("zero carrier gives a copy of A") {
    SemidirectAlgebra S0 = semidirect(AlgCrossedModule::ideal(A, K->zero()));
    for (int t = 0; t < 50; ++t) {
      Mat a = A.random(rng), b = A.random(rng);
      REQUIRE(S0.mul(S0.d(a), S0.d(b)) == S0.d(a * b));
    }
  }
  SECTION("p2 - p1 recovers delta") {
    for (int t = 0; t < 100; ++t) {
      PairElt u{X.scalar * A.random(rng), A.random(rng)};
      REQUIRE(S.p2(u) - S.p1(u) == X.delta(u.x));
    }
  }
  SECTION("associativity and ring axioms on random triples") {
    for (int t = 0; t < 300; ++t) {
      PairElt u{X.scalar * A.random(rng), A.random(rng)};
      PairElt v{X.scalar * A.random(rng), A.random(rng)};
      PairElt w{X.scalar * A.random(rng), A.random(rng)};
      REQUIRE(S.mul(S.mul(u, v), w) == S.mul(u, S.mul(v, w)));
      REQUIRE(S.mul(S.add(u, v), w) == S.add(S.mul(u, w), S.mul(v, w)));
      REQUIRE(S.mul(S.one(), u) == u);
      REQUIRE(S.mul(u, S.one()) == u);
    }
  }
  SECTION("p1 and p2 are algebra maps with common section d") {
    for (int t = 0; t < 200; ++t) {
      PairElt u{X.scalar * A.random(rng), A.random(rng)};
      PairElt v{X.scalar * A.random(rng), A.random(rng)};
      REQUIRE(S.p1(S.mul(u, v)) == S.p1(u) * S.p1(v));
      REQUIRE(S.p2(S.mul(u, v)) == S.p2(u) * S.p2(v));
      Mat a = A.random(rng);
      REQUIRE(S.p1(S.d(a)) == a);
      REQUIRE(S.p2(S.d(a)) == a);
    }
  }
  SECTION("the kernel of p1 is X with its own multiplication") {
    for (int t = 0; t < 200; ++t) {
      Mat x = X.scalar * A.random(rng), y = X.scalar * A.random(rng);
      PairElt u = S.from_x(x), v = S.from_x(y);
      PairElt uv = S.mul(u, v);
      REQUIRE(uv.a.is_zero());
      REQUIRE(uv.x == X.mul(x, y));
    }
  }
  SECTION("inverses in the pair algebra") {
    for (int t = 0; t < 200; ++t) {
      PairElt u{X.scalar * A.random(rng), A.random(rng)};
      auto ui = S.try_inv(u);
      if (!ui) continue;
      REQUIRE(S.mul(u, *ui) == S.one());
      REQUIRE(S.mul(*ui, u) == S.one());
    }
  }
  SECTION("idempotents transfer along d") {
    for (int b = 0; b < 2; ++b) REQUIRE(S.mul(S.d(A.e(b)), S.d(A.e(b))) == S.d(A.e(b)));
  }
  SECTION("invalid crossed module is rejected") {
    Mat g = A.zero();
    g.at(0, 1) = K->one();
    REQUIRE_THROWS_AS(semidirect(AlgCrossedModule::twisted_test(A, g)), Error);
  }
}
