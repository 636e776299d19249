#include <catch2/catch_amalgamated.hpp>

#include "stw/scenario.hpp"

using namespace stw;

TEST_CASE("scenario parsing") {
  SECTION("sections and keys") {
    auto suite = parse_scenario_text("# comment\n[roots:a]\nphi = A3\nop = closure\nset = e1-e2\n",
                                     "t.scn");
    REQUIRE(suite.entries.size() == 1);
    REQUIRE(suite.entries[0].kind == "roots");
    REQUIRE(suite.entries[0].name == "a");
    REQUIRE(suite.entries[0].params.at("phi") == "A3");
  }
  SECTION("errors carry locations") {
    try {
      parse_scenario_text("[roots\n", "bad.scn");
      FAIL("expected ConfigError");
    } catch (const Error& e) {
      REQUIRE(std::string(e.what()).find("bad.scn:1") != std::string::npos);
    }
    try {
      parse_scenario_text("x = 1\n", "bad2.scn");
      FAIL("expected ConfigError");
    } catch (const Error& e) {
      REQUIRE(std::string(e.what()).find("bad2.scn:1") != std::string::npos);
    }
  }
  SECTION("unknown ring tags are named in the error") {
    auto suite = parse_scenario_text("[oddform]\nK = z13x\nseed = 1\n", "t.scn");
    try {
      run_suite(suite, std::nullopt);
      FAIL("expected ConfigError");
    } catch (const Error& e) {
      REQUIRE(std::string(e.what()).find("z13x") != std::string::npos);
    }
  }
  SECTION("unknown keys are rejected") {
    auto suite = parse_scenario_text("[roots]\nphi = A3\nop = closure\nset = e1-e2\nwat = 1\n",
                                     "t.scn");
    REQUIRE_THROWS_AS(run_suite(suite, std::nullopt), Error);
  }
  SECTION("sampled checks demand a seed") {
    auto suite = parse_scenario_text("[oddform]\nK = z4\n", "t.scn");
    REQUIRE_THROWS_AS(run_suite(suite, std::nullopt), Error);
    REQUIRE(run_suite(suite, 7).status() == Status::Pass);
  }
}

TEST_CASE("empty scenario runs to an empty passing report") {
  auto suite = parse_scenario_text("", "empty.scn");
  RunReport rr = run_suite(suite, std::nullopt);
  REQUIRE(rr.status() == Status::Pass);
  REQUIRE(rr.exit_code() == 0);
  REQUIRE(machine_format(rr) == "overall status=pass\n");
}

TEST_CASE("single check dispatch") {
  SECTION("roots") {
    auto suite = parse_scenario_text(
        "[roots]\nphi = BC3\nop = thick-series\nalpha = e1-e2\nbeta = e2\n", "t.scn");
    RunReport rr = run_suite(suite, std::nullopt);
    REQUIRE(rr.status() == Status::Pass);
    REQUIRE(rr.results[0].report.notes[0].find("2e1") != std::string::npos);
  }
  SECTION("extract") {
    auto suite = parse_scenario_text(
        "[extract]\nalgebra = m4:z4\nphi = A3\nalpha = e1-e2\nbeta = e2-e3\np = 3\nq = 1\n",
        "t.scn");
    RunReport rr = run_suite(suite, std::nullopt);
    REQUIRE(rr.status() == Status::Pass);
    REQUIRE(rr.results[0].report.notes[0].find("e1-e3") != std::string::npos);
  }
  SECTION("small steinberg run") {
    auto suite = parse_scenario_text(
        "[steinberg]\nrealization = linear\nalgebra = m4:z2\nphi = A3\nbudget = 50\nseed = 3\n",
        "t.scn");
    RunReport rr = run_suite(suite, std::nullopt);
    REQUIRE(rr.status() == Status::Pass);
  }
  SECTION("oddform mutations fail as designed") {
    auto suite = parse_scenario_text(
        "[oddform]\nK = z4\nrank = 2\nmiddle = 1\nbudget = 50\nseed = 4\nmutate = phi-family\n",
        "t.scn");
    RunReport rr = run_suite(suite, std::nullopt);
    REQUIRE(rr.status() == Status::Fail);
    REQUIRE(rr.exit_code() == 2);
  }
}

TEST_CASE("machine reports are byte-identical across runs") {
  std::string text =
      "[oddform:a]\nK = z4\nrank = 2\nmiddle = 1\nbudget = 60\nseed = 11\n"
      "[steinberg:b]\nrealization = linear\nalgebra = m4:z2\nphi = A3\nbudget = 40\nseed = 12\n"
      "[enumerate:c]\nphi = A2\nalgebra = m3:f2\nlimit = 100000\n";
  auto suite = parse_scenario_text(text, "t.scn");
  std::string m1 = machine_format(run_suite(suite, std::nullopt));
  std::string m2 = machine_format(run_suite(suite, std::nullopt));
  REQUIRE(m1 == m2);
  REQUIRE(m1.find("status=fail") == std::string::npos);
  // different seed changes the sampling but must stay deterministic
  auto suite2 = parse_scenario_text(text, "t.scn");
  suite2.entries[0].params["seed"] = "99";
  std::string m3 = machine_format(run_suite(suite2, std::nullopt));
  REQUIRE(m3 == machine_format(run_suite(suite2, std::nullopt)));
}

TEST_CASE("failures embed replay tokens that reproduce the identity") {
  auto suite = parse_scenario_text("[selftest:boom]\noutcome = fail\n", "t.scn");
  RunReport rr = run_suite(suite, std::nullopt);
  REQUIRE(rr.status() == Status::Fail);
  std::string machine = machine_format(rr);
  REQUIRE(machine.find("replay=") != std::string::npos);
  // extract the token from the report line
  size_t p = machine.find("replay=");
  std::string token = machine.substr(p + 7);
  token = token.substr(0, token.find_first_of(" \n"));
  RunReport again = run_replay(decode_field(token), std::nullopt);
  REQUIRE(again.results.size() == 1);
  REQUIRE(again.results[0].report.items.size() == 1);
  REQUIRE(again.results[0].report.items[0].status == Status::Fail);
  REQUIRE(again.results[0].report.items[0].witness.find("deliberately") != std::string::npos);
}

TEST_CASE("the bundled suite parses and the light entries run") {
  auto suite = parse_scenario_text(builtin_paper_suite(), "paper-suite");
  REQUIRE(suite.entries.size() >= 10);
  // run only the cheap entries here; the acceptance binary runs everything
  ScenarioSuite light;
  for (const auto& s : suite.entries)
    if (s.kind == "cosheaf" || s.kind == "enumerate") light.entries.push_back(s);
  RunReport rr = run_suite(light, std::nullopt);
  REQUIRE(rr.status() == Status::Pass);
}
