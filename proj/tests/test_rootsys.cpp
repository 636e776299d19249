#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "stw/rootsys.hpp"

using namespace stw;

namespace {

RootSubset named(const RootSystem& s, std::initializer_list<const char*> names) {
  std::vector<std::string> v(names.begin(), names.end());
  return subset_from_names(s, v);
}

std::set<std::string> name_set(const RootSubset& S) {
  std::set<std::string> out;
  for (int id : S.members) out.insert(S.sys->root_name(id));
  return out;
}

}  // namespace

TEST_CASE("root counts match the classical formulas") {
  REQUIRE(make_root_system(RootType::A, 3).size() == 12);
  REQUIRE(make_root_system(RootType::A, 5).size() == 30);
  REQUIRE(make_root_system(RootType::B, 3).size() == 18);
  REQUIRE(make_root_system(RootType::C, 3).size() == 18);
  REQUIRE(make_root_system(RootType::D, 4).size() == 24);
  REQUIRE(make_root_system(RootType::BC, 3).size() == 24);
  REQUIRE(make_root_system(RootType::G2, 2).size() == 12);
  REQUIRE(make_root_system(RootType::F4, 4).size() == 48);
  REQUIRE(make_root_system(RootType::E6, 6).size() == 72);
  REQUIRE(make_root_system(RootType::E7, 7).size() == 126);
  REQUIRE(make_root_system(RootType::E8, 8).size() == 240);
}

TEST_CASE("roots close under negation; doubles exactly at BC ultrashort") {
  for (const char* tag : {"A3", "B3", "C3", "D4", "BC3", "G2", "F4", "E6", "E7", "E8"}) {
    RootSystem s = root_system_from_tag(tag);
    for (int i = 0; i < s.size(); ++i) {
      REQUIRE(s.negate(i) >= 0);
      if (s.type == RootType::BC) {
        bool ultrashort = true;
        for (int c : s.roots[i])
          if (std::abs(c) > 1) ultrashort = false;
        int nz = 0;
        for (int c : s.roots[i])
          if (c != 0) ++nz;
        ultrashort = ultrashort && nz == 1;
        REQUIRE(s.has_double(i) == ultrashort);
      } else {
        REQUIRE(!s.has_double(i));
      }
    }
  }
}

TEST_CASE("special closed subsets") {
  RootSystem a3 = root_system_from_tag("A3");
  RootSystem bc3 = root_system_from_tag("BC3");

  REQUIRE(is_special_closed(named(a3, {"e1-e2", "e2-e3", "e1-e3"})));
  REQUIRE(!is_special_closed(named(a3, {"e1-e2", "e2-e1"})));
  REQUIRE(is_special_closed(named(bc3, {"e1", "2e1", "e1+e2"})));
  // closed under sums but not in an open half-space
  REQUIRE(!in_open_halfspace(a3, named(a3, {"e1-e2", "e2-e1"}).members));
  // in a half-space but not sum-closed
  REQUIRE(!is_special_closed(named(a3, {"e1-e2", "e2-e3"})));
}

TEST_CASE("closure saturates sums") {
  RootSystem a3 = root_system_from_tag("A3");
  RootSystem bc3 = root_system_from_tag("BC3");

  REQUIRE(name_set(closure(named(a3, {"e1-e2", "e2-e3"}))) ==
          std::set<std::string>{"e1-e2", "e2-e3", "e1-e3"});
  REQUIRE(name_set(closure(named(a3, {"e1-e4"}))) == std::set<std::string>{"e1-e4"});
  REQUIRE(name_set(closure(named(bc3, {"e1"}))) == std::set<std::string>{"e1", "2e1"});
  REQUIRE_THROWS_AS(closure(named(a3, {"e1-e2", "e2-e1"})), Error);

  SECTION("monotone and idempotent") {
    RootSubset x = named(bc3, {"e1-e2", "e2"});
    RootSubset y = named(bc3, {"e1-e2", "e2", "e2-e3"});
    RootSubset cx = closure(x), cy = closure(y);
    for (int id : cx.members) REQUIRE(cy.contains(id));
    RootSubset ccx = closure(cx);
    REQUIRE(ccx.members == cx.members);
  }
}

TEST_CASE("thick series") {
  RootSystem a3 = root_system_from_tag("A3");
  RootSystem bc3 = root_system_from_tag("BC3");

  auto ts = [&](const RootSystem& s, const char* a, const char* b) {
    return thick_series(s, s.index_of(parse_root(s, a)), s.index_of(parse_root(s, b)));
  };

  REQUIRE(name_set(ts(a3, "e1-e2", "e2-e3")) == std::set<std::string>{"e2-e3", "e1-e3"});
  REQUIRE(name_set(ts(a3, "e1-e2", "e3-e4")) == std::set<std::string>{"e3-e4"});
  REQUIRE(name_set(ts(bc3, "e1-e2", "e2")) ==
          std::set<std::string>{"e2", "2e2", "e1", "2e1", "e1+e2"});
  REQUIRE_THROWS_AS(ts(a3, "e1-e2", "e2-e1"), Error);

  SECTION("series are special closed and partition the complement of the line") {
    for (const char* tag : {"A3", "BC3", "B3", "G2"}) {
      RootSystem s = root_system_from_tag(tag);
      for (int alpha = 0; alpha < s.size(); ++alpha) {
        std::map<int, int> covered;  // root -> series tag (first beta)
        for (int beta = 0; beta < s.size(); ++beta) {
          if (s.parallel_roots(alpha, beta)) continue;
          RootSubset series = thick_series(s, alpha, beta);
          REQUIRE(is_special_closed(series));
          REQUIRE(series.contains(beta));
          for (int id : series.members) {
            auto it = covered.find(id);
            if (it == covered.end()) {
              covered[id] = series.members.front();
            } else {
              REQUIRE(it->second == series.members.front());  // same series each time
            }
          }
        }
        int offline = 0;
        for (int id = 0; id < s.size(); ++id)
          if (!s.parallel_roots(alpha, id)) ++offline;
        REQUIRE(static_cast<int>(covered.size()) == offline);
      }
    }
  }
}

TEST_CASE("saturated subsystems") {
  RootSystem a3 = root_system_from_tag("A3");
  RootSystem bc3 = root_system_from_tag("BC3");

  REQUIRE(name_set(saturated_subsystem(named(a3, {"e1-e2"}))) ==
          std::set<std::string>{"e1-e2", "-e1+e2"});
  REQUIRE(saturated_subsystem(named(a3, {"e1-e2", "e2-e3"})).size() == 6);
  RootSubset bc2 = saturated_subsystem(named(bc3, {"e1", "e2"}));
  REQUIRE(bc2.size() == 12);  // BC2 on the first two coordinates
  for (int id : bc2.members) REQUIRE(bc3.roots[id][2] == 0);
}

TEST_CASE("root decompositions into independent pairs") {
  RootSystem a3 = root_system_from_tag("A3");
  RootSystem bc3 = root_system_from_tag("BC3");

  auto decs = [&](const RootSystem& s, const char* a) {
    auto ds = root_decompositions(s, s.index_of(parse_root(s, a)));
    std::set<std::set<std::string>> out;
    for (auto [b, c] : ds) out.insert({s.root_name(b), s.root_name(c)});
    return out;
  };

  REQUIRE(decs(a3, "e1-e3") ==
          std::set<std::set<std::string>>{{"e1-e2", "e2-e3"}, {"e1-e4", "-e3+e4"}});
  REQUIRE(decs(a3, "e1-e2") ==
          std::set<std::set<std::string>>{{"e1-e3", "-e2+e3"}, {"e1-e4", "-e2+e4"}});
  auto d2e1 = decs(bc3, "2e1");
  REQUIRE(d2e1.count({"e1-e2", "e1+e2"}) == 1);
  for (const auto& pr : d2e1) REQUIRE(pr.size() == 2);  // never (e1, e1)

  SECTION("nonempty for every non-doubled root at rank >= 3") {
    for (const char* tag : {"A3", "B3", "C3", "D4", "BC3", "F4"}) {
      RootSystem s = root_system_from_tag(tag);
      for (int id = 0; id < s.size(); ++id) {
        if (s.has_half(id)) continue;  // doubled roots excluded
        REQUIRE(!root_decompositions(s, id).empty());
      }
    }
  }
}

TEST_CASE("enumeration of all special closed subsets") {
  RootSystem a3 = root_system_from_tag("A3");
  auto all = all_special_closed(a3);
  // every enumerated set passes the direct definition
  for (const auto& ids : all) REQUIRE(is_special_closed(subset_of(a3, ids)));
  // cross-check against brute force over all 2^12 subsets
  size_t brute = 0;
  for (int mask = 0; mask < (1 << 12); ++mask) {
    std::vector<int> ids;
    for (int i = 0; i < 12; ++i)
      if (mask >> i & 1) ids.push_back(i);
    if (is_special_closed(subset_of(a3, ids))) ++brute;
  }
  REQUIRE(all.size() == brute);

  RootSystem bc3 = root_system_from_tag("BC3");
  auto allbc = all_special_closed(bc3);
  REQUIRE(allbc.size() > 100);
  for (size_t i = 0; i < allbc.size(); i += 97)
    REQUIRE(is_special_closed(subset_of(bc3, allbc[i])));
}
