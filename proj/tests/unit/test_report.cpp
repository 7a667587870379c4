#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "test_support.hpp"
#include "wlspec/errors.hpp"
#include "wlspec/fixtures.hpp"
#include "wlspec/report.hpp"

using namespace wlspec;

namespace {

CompareConfig with_tests(std::vector<std::string> tests) {
  CompareConfig c;
  c.tests = std::move(tests);
  return c;
}

RelationResult rel(const std::string& name, Verdict v) { return {name, v, {}, {}}; }

}  // namespace

TEST_CASE("test list parsing and aliases") {
  CHECK(split_test_list("wl1,wlk(2,1),cospectral(sum(adjacency,degree))") ==
        std::vector<std::string>{"wl1", "wlk(2,1)", "cospectral(sum(adjacency,degree))"});
  CHECK(expand_tests(with_tests({"wl2", "wlk(2,inf)", "cospectral"})) ==
        std::vector<std::string>{"wlk(2,inf)", "cospectral(adjacency)"});
  CompareConfig c = with_tests({"wlk", "wordSoe", "pseudoStochastic", "homTplus"});
  c.k = 1;
  c.d = Depth::rounds(2);
  c.word_bound = 3;
  c.pattern_bound = 5;
  CHECK(expand_tests(c) == std::vector<std::string>{"wlk(1,2)", "wordSoe(1,2,3)", "pseudoStochastic(1,2)", "homTplus(5)"});
  CHECK(expand_tests(with_tests({"cospectral(scale(seidel,2/4))"})) ==
        std::vector<std::string>{"cospectral(scale(seidel,1/2))"});
  CHECK(expand_tests(with_tests({"all"})).size() == 14u);
  CHECK(expand_tests(CompareConfig{}) == default_tests());
}

TEST_CASE("test list errors") {
  CHECK_THROWS_AS(expand_tests(with_tests({"wl3"})), ArgumentError);
  CHECK_THROWS_AS(expand_tests(with_tests({"wl1(2)"})), ArgumentError);
  CHECK_THROWS_AS(expand_tests(with_tests({"wlk(0,1)"})), ArgumentError);
  CHECK_THROWS_AS(expand_tests(with_tests({"wlk(2,-1)"})), ArgumentError);
  CHECK_THROWS_AS(expand_tests(with_tests({"wlk(2"})), ArgumentError);
  CHECK_THROWS_AS(expand_tests(with_tests({"cospectral(nope)"})), ParseError);
}

TEST_CASE("compare C6 with two triangles") {
  auto report = run_compare(load_graph("fixture:C6"), load_graph("fixture:2C3"), with_tests({"wl1", "wl11"}));
  REQUIRE(report.relations.size() == 2u);
  CHECK(report.relations[0].verdict == Verdict::Equal);
  CHECK(report.relations[1].verdict == Verdict::Distinguished);
  CHECK(report.exit_code() == 1);
  CHECK(report.contradictions.empty());
  auto j = report.to_json();
  CHECK(j["schemaVersion"] == 1);
  CHECK(j["tool"]["name"] == "wlspec");
  CHECK(j["exitCode"] == 1);
  CHECK(j["lattice"]["consistent"] == true);
  CHECK(j["relations"][1]["verdict"] == "distinguished");
  CHECK(j["relations"][1]["witness"].contains("colour"));
  auto text = report.to_text();
  CHECK(text.find("wl11  distinguished") != std::string::npos);
  CHECK(text.find("lattice: consistent") != std::string::npos);
}

TEST_CASE("reports are deterministic") {
  CompareConfig c = with_tests({"all"});
  c.k = 1;
  c.d = Depth::rounds(1);
  c.word_bound = 2;
  c.pattern_bound = 4;
  auto a = run_compare(load_graph("fixture:C4"), load_graph("fixture:K1_4"), c).to_json().dump();
  auto b = run_compare(load_graph("fixture:C4"), load_graph("fixture:K1_4"), c).to_json().dump();
  CHECK(a == b);
}

TEST_CASE("skipped relations") {
  CompareConfig c = with_tests({"wordSoe", "pseudoStochastic(2,1)"});
  auto report = run_compare(load_graph("fixture:C6"), load_graph("fixture:2C3"), c);
  CHECK(report.relations[0].verdict == Verdict::Skipped);
  CHECK(report.relations[1].verdict == Verdict::Skipped);
  CHECK(report.relations[1].reason.rfind("size cap: ", 0) == 0);
  CHECK(report.exit_code() == 0);
  auto iso = evaluate_relation("cospectral(rwLaplacian)", fixture("C4+K1"), fixture("K1_4"), CompareConfig{});
  CHECK(iso.verdict == Verdict::Skipped);
  CHECK(iso.reason.rfind("numeric failure: ", 0) == 0);
}

TEST_CASE("the implication lattice holds on fixture pairs") {
  CompareConfig c = with_tests({"all"});
  c.k = 1;
  c.d = Depth::rounds(1);
  c.word_bound = 2;
  c.pattern_bound = 5;
  const std::vector<std::string> names = {"K1", "K2", "2K1", "K3", "P3", "C4", "C4+K1", "K1_4", "C6", "2C3"};
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i; j < names.size(); ++j) {
      auto report = run_compare(load_graph("fixture:" + names[i]), load_graph("fixture:" + names[j]), c);
      CHECK_MESSAGE(report.contradictions.empty(), names[i] << " vs " << names[j]);
    }
}

TEST_CASE("synthetic contradictions are reported") {
  CHECK(lattice_contradictions({rel("wl11", Verdict::Equal), rel("wl1", Verdict::Distinguished)}).size() == 1u);
  CHECK(lattice_contradictions({rel("fuerer", Verdict::Equal), rel("cospectral(adjacency)", Verdict::Distinguished)})
            .size() == 1u);
  CHECK(lattice_contradictions({rel("wlk(2,3)", Verdict::Equal), rel("wlk(1,1)", Verdict::Distinguished)}).size() ==
        1u);
  CHECK(lattice_contradictions(
            {rel("pseudoStochastic(1,1)", Verdict::Equal), rel("wlk(1,1)", Verdict::Distinguished)})
            .size() == 1u);
  CHECK(lattice_contradictions({rel("wl1", Verdict::Equal), rel("wl11", Verdict::Distinguished)}).empty());
  CHECK(lattice_contradictions({rel("wl11", Verdict::EqualUpToBound), rel("wl1", Verdict::Distinguished)}).empty());
  auto lines = lattice_contradictions({rel("wlk(2,inf)", Verdict::Equal), rel("commute", Verdict::Distinguished)});
  REQUIRE(lines.size() == 1u);
  CHECK(lines[0] == "CONTRADICTION: wlk(2,inf) equal but commute distinguished");
  CHECK(lattice_contradictions({rel("wl11", Verdict::Equal), rel("commute", Verdict::Distinguished)}).empty());
}

TEST_CASE("the gadget pair is consistent with the lattice") {
  auto report = run_compare(load_graph("fixture:gadget-G"), load_graph("fixture:gadget-H"),
                            with_tests({"wl1", "wl11", "wl2", "fuerer", "cospectral", "commute"}));
  CHECK(report.relations[1].verdict == Verdict::Equal);
  CHECK(report.relations[2].verdict == Verdict::Distinguished);
  CHECK(report.relations[5].verdict == Verdict::Distinguished);
  CHECK(report.contradictions.empty());
}

TEST_CASE("graph loading") {
  CHECK(load_graph("fixture:C6").graph == cycle_graph(6));
  CHECK(load_graph("fixture:C6").id == "fixture:C6");
  CHECK_THROWS(load_graph("fixture:nope"));
  std::string path = "wlspec_report_test_edges.txt";
  {
    std::ofstream out(path);
    out << "# square\n0 1\n1 2\n2 3\n3 0\n";
  }
  CHECK(load_graph(path, "edgelist").graph == cycle_graph(4));
  CHECK(load_graph(path).graph == cycle_graph(4));
  std::remove(path.c_str());
  CHECK_THROWS(load_graph("no/such/file.g6"));
}

TEST_CASE("command line exit codes") {
  auto equal = testsupport::run_cli("compare fixture:C6 fixture:C6");
  CHECK(equal.code == 0);
  CHECK(equal.out.find("lattice: consistent") != std::string::npos);
  auto differ = testsupport::run_cli("compare fixture:C6 fixture:2C3 --tests wl1,wl11");
  CHECK(differ.code == 1);
  auto json = testsupport::run_cli("compare fixture:C6 fixture:2C3 --tests wl1,wl11 --json -");
  CHECK(json.code == 1);
  auto parsed = nlohmann::json::parse(json.out);
  CHECK(parsed["exitCode"] == 1);
  CHECK(testsupport::run_cli("compare fixture:C6").code == 2);
  CHECK(testsupport::run_cli("compare fixture:C6 fixture:2C3 --tests bogus").code == 2);
  CHECK(testsupport::run_cli("compare fixture:C6 fixture:2C3 --d minus").code == 2);
  CHECK(testsupport::run_cli("compare fixture:C6 fixture:2C3 --tol 0").code == 2);
  CHECK(testsupport::run_cli("--help").code == 0);
  auto list = testsupport::run_cli("fixtures list");
  CHECK(list.code == 0);
  CHECK(list.out.find("C6\t6\t6\t") != std::string::npos);
}
