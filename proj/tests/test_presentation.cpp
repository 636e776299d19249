#include <catch2/catch_amalgamated.hpp>

#include "stw/presentation.hpp"

using namespace stw;

namespace {

Presentation make_pres(int ngens, std::vector<std::vector<int>> rels) {
  Presentation p;
  p.ngens = ngens;
  for (int i = 0; i < ngens; ++i) p.names.push_back("g" + std::to_string(i + 1));
  for (auto& r : rels) p.add_relator(std::move(r));
  return p;
}

}  // namespace

TEST_CASE("coset enumeration on known groups") {
  SECTION("trivial presentation has index 1") {
    Presentation p = make_pres(1, {{1}});
    CosetTable t = todd_coxeter(p);
    REQUIRE(t.status == CosetTable::Status::Complete);
    REQUIRE(t.ncosets == 1);
  }
  SECTION("cyclic of order 5") {
    Presentation p = make_pres(1, {{1, 1, 1, 1, 1}});
    CosetTable t = todd_coxeter(p);
    REQUIRE(t.status == CosetTable::Status::Complete);
    REQUIRE(t.ncosets == 5);
  }
  SECTION("coxeter presentation of S4") {
    Presentation p = make_pres(3, {{1, 1},
                                   {2, 2},
                                   {3, 3},
                                   {1, 2, 1, 2, 1, 2},
                                   {2, 3, 2, 3, 2, 3},
                                   {1, 3, 1, 3}});
    CosetTable t = todd_coxeter(p);
    REQUIRE(t.status == CosetTable::Status::Complete);
    REQUIRE(t.ncosets == 24);
  }
  SECTION("quaternion group of order 8") {
    // a^4, a^2 b^-2, b^-1 a b a
    Presentation p = make_pres(2, {{1, 1, 1, 1}, {1, 1, -2, -2}, {-2, 1, 2, 1}});
    CosetTable t = todd_coxeter(p);
    REQUIRE(t.status == CosetTable::Status::Complete);
    REQUIRE(t.ncosets == 8);
  }
  SECTION("binary icosahedral vs icosahedral: central extensions do not collapse") {
    // SL(2,5): s^3 = t^5 = (st)^2, order 120
    Presentation bp = make_pres(2, {{1, 1, 1, -2, -2, -2, -2, -2}, {2, 2, 2, 2, 2, -1, -2, -1, -2}});
    CosetTable bt = todd_coxeter(bp);
    REQUIRE(bt.status == CosetTable::Status::Complete);
    REQUIRE(bt.ncosets == 120);
    // A5: s^3, t^5, (st)^2
    Presentation ap = make_pres(2, {{1, 1, 1}, {2, 2, 2, 2, 2}, {1, 2, 1, 2}});
    CosetTable at = todd_coxeter(ap);
    REQUIRE(at.status == CosetTable::Status::Complete);
    REQUIRE(at.ncosets == 60);
  }
  SECTION("nontrivial subgroup gives the index, not the order") {
    Presentation p = make_pres(1, {{1, 1, 1, 1, 1, 1}});  // C6
    CosetTable t = todd_coxeter(p, {{1, 1}});             // subgroup <g^2> of index 2
    REQUIRE(t.status == CosetTable::Status::Complete);
    REQUIRE(t.ncosets == 2);
  }
  SECTION("overflow is a value, not an answer") {
    Presentation p = make_pres(2, {});  // free of rank 2
    TCLimits lim;
    lim.max_cosets = 500;
    CosetTable t = todd_coxeter(p, {}, lim);
    REQUIRE(t.status == CosetTable::Status::Overflow);
  }
  SECTION("completed tables satisfy every relator at every coset") {
    Presentation p = make_pres(3, {{1, 1}, {2, 2}, {3, 3}, {1, 2, 1, 2, 1, 2},
                                   {2, 3, 2, 3, 2, 3}, {1, 3, 1, 3}});
    CosetTable t = todd_coxeter(p);
    for (uint32_t c = 0; c < t.ncosets; ++c)
      for (const auto& r : p.relators) REQUIRE(t.trace(c, r) == c);
  }
}

TEST_CASE("steinberg presentation of the linear realization") {
  RootSystem a3 = root_system_from_tag("A3");
  MatrixAlgebra A = MatrixAlgebra::scalar_blocks(ring("f2"), 4);
  auto real = linear_realization(a3, A);
  auto sp = steinberg_presentation(real);

  SECTION("generator count over F2 is one per root") { REQUIRE(sp.pres.ngens == 12); }

  SECTION("rank-2 smoke test: A2 over M3(F2) has 6 generators and enumerates") {
    RootSystem a2 = root_system_from_tag("A2");
    MatrixAlgebra A3x3 = MatrixAlgebra::scalar_blocks(ring("f2"), 3);
    auto real2 = linear_realization(a2, A3x3);
    auto sp2 = steinberg_presentation(real2);
    REQUIRE(sp2.pres.ngens == 6);
    auto cert = certify_enumeration(sp2);
    REQUIRE(cert.table.status == CosetTable::Status::Complete);
    REQUIRE(cert.image_order == 168);  // (2^3-1)(2^3-2)(2^3-4)
    REQUIRE(cert.counts_consistent);
    REQUIRE(cert.kernel_central);
  }

  SECTION("full enumeration with certification") {
    auto cert = certify_enumeration(sp);
    REQUIRE(cert.table.status == CosetTable::Status::Complete);
    uint64_t gl4 = (16 - 1) * (16 - 2) * (16 - 4) * (16 - 8);
    REQUIRE(gl4 == 20160);
    REQUIRE(cert.image_order == gl4);
    REQUIRE(cert.counts_consistent);
    REQUIRE(cert.kernel_central);
    // the kernel order is reported, not asserted against any expected value
    REQUIRE(cert.table.ncosets == cert.kernel_order * gl4);
  }

  SECTION("root elimination drops parallel generators and preserves the order") {
    int alpha = a3.index_of(parse_root(a3, "e1-e2"));
    auto elim = eliminate_root(sp, alpha);
    REQUIRE(elim.pres.ngens == sp.pres.ngens - 2);  // 2 * |P \ 0| symbols
    for (const auto& rel : elim.pres.relators) {
      std::set<std::vector<int>> orig(sp.pres.relators.begin(), sp.pres.relators.end());
      // retained relators are a subset of the originals after renaming; proxy:
      // every retained relator survives the elimination map on names
      REQUIRE(!rel.empty());
    }
    CosetTable t1 = todd_coxeter(sp.pres);
    CosetTable t2 = todd_coxeter(elim.pres);
    REQUIRE(t1.status == CosetTable::Status::Complete);
    REQUIRE(t2.status == CosetTable::Status::Complete);
    REQUIRE(t1.ncosets == t2.ncosets);
  }

  SECTION("comparison certifies the elimination isomorphism") {
    int alpha = a3.index_of(parse_root(a3, "e1-e2"));
    auto elim = eliminate_root(sp, alpha);
    auto [d12, d21] = elimination_dictionaries(sp, elim, alpha);
    auto cmp = compare_presentations(sp.pres, elim.pres, d12, d21);
    REQUIRE(cmp.isomorphic);
    REQUIRE(cmp.order1 == cmp.order2);
  }

  SECTION("a presentation compared with itself is isomorphic") {
    std::vector<std::vector<int>> id;
    for (int g = 1; g <= sp.pres.ngens; ++g) id.push_back({g});
    auto cmp = compare_presentations(sp.pres, sp.pres, id, id);
    REQUIRE(cmp.isomorphic);
  }
}

TEST_CASE("BC elimination drops both parallel families") {
  auto [O, F] = build_split_oddform(ring("z2"), 3, 1);
  RootSystem bc3 = root_system_from_tag("BC3");
  UnitaryRealization real = unitary_realization(bc3, O, F);
  auto sp = steinberg_presentation(real);
  int alpha = bc3.index_of(parse_root(bc3, "e1"));  // ultrashort
  auto elim = eliminate_root(sp, alpha);
  // dropped generators: all on e1, 2e1, -e1, -2e1
  int dropped = 0;
  for (int g = 0; g < sp.pres.ngens; ++g)
    if (bc3.parallel_roots(sp.gen_root[g], alpha)) ++dropped;
  REQUIRE(dropped > 0);
  REQUIRE(elim.pres.ngens == sp.pres.ngens - dropped);
  for (int g = 0; g < elim.pres.ngens; ++g)
    REQUIRE(!bc3.parallel_roots(elim.gen_root[g], alpha));
}
