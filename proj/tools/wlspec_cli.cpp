#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "wlspec/errors.hpp"
#include "wlspec/fixtures.hpp"
#include "wlspec/graph6.hpp"
#include "wlspec/report.hpp"

namespace {

int run_compare_command(const std::string& a, const std::string& b, const std::string& format,
                        const std::string& tests, const std::string& d_text, const std::string& json_path,
                        wlspec::CompareConfig cfg) {
  if (!tests.empty()) cfg.tests = wlspec::split_test_list(tests);
  if (d_text == "inf") {
    cfg.d = wlspec::Depth::infinite();
  } else {
    std::size_t used = 0;
    int d = std::stoi(d_text, &used);
    if (used != d_text.size() || d < 0) throw wlspec::ArgumentError("--d expects a non-negative integer or inf");
    cfg.d = wlspec::Depth::rounds(d);
  }
  if (cfg.k < 1) throw wlspec::ArgumentError("--k must be at least 1");
  auto ga = wlspec::load_graph(a, format);
  auto gb = wlspec::load_graph(b, format);
  auto report = wlspec::run_compare(ga, gb, cfg);
  std::string json = report.to_json().dump(2) + "\n";
  if (json_path == "-") {
    std::cout << json;
  } else {
    std::cout << report.to_text();
    if (!json_path.empty()) {
      std::ofstream out(json_path, std::ios::binary);
      if (!out) throw wlspec::Error("cannot write " + json_path);
      out << json;
    }
  }
  return report.exit_code();
}

void list_fixtures() {
  for (const auto& f : wlspec::fixtures())
    std::cout << f.name << "\t" << f.graph.order() << "\t" << f.graph.edge_count() << "\t"
              << wlspec::serialize_graph6(f.graph) << "\t" << f.description << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Place a pair of graphs in the lattice of indistinguishability relations"};
  app.require_subcommand(1);

  auto* compare = app.add_subcommand("compare", "Compare two graphs under the requested relations");
  std::string a, b, format, tests, d_text = "inf", json_path;
  wlspec::CompareConfig cfg;
  double tol = 0;
  compare->add_option("A", a, "First graph: file path or fixture:NAME")->required();
  compare->add_option("B", b, "Second graph: file path or fixture:NAME")->required();
  compare->add_option("--format", format, "Input format")->check(CLI::IsMember({"graph6", "edgelist"}));
  compare->add_option("--tests", tests,
                      "Comma-separated relations (default wl1,wl11,cospectral(adjacency),cospectral(laplacian),commute; "
                      "also wl2, wlk, wlk(k,d), fuerer, homTplus, wordSoe, pseudoStochastic, all)");
  compare->add_option("--k", cfg.k, "k for wlk, wordSoe and pseudoStochastic")->capture_default_str();
  compare->add_option("--d", d_text, "Iterations: integer or inf")->capture_default_str();
  compare->add_option("--word-bound", cfg.word_bound, "Maximal word length for wordSoe")->capture_default_str();
  compare->add_option("--pattern-bound", cfg.pattern_bound, "Maximal forest size for homTplus")->capture_default_str();
  auto* tol_opt = compare->add_option("--tol", tol, "Tolerance for float-layer comparisons");
  compare->add_option("--json", json_path, "Write the JSON report to PATH ('-' for stdout instead of text)");

  auto* fixtures_cmd = app.add_subcommand("fixtures", "Shipped fixture graphs");
  fixtures_cmd->require_subcommand(1);
  auto* list = fixtures_cmd->add_subcommand("list", "List fixture names, sizes and graph6 strings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (list->parsed()) {
      list_fixtures();
      return 0;
    }
    if (*tol_opt) {
      if (!(tol > 0)) throw wlspec::ArgumentError("--tol must be positive");
      cfg.tolerance = tol;
    }
    return run_compare_command(a, b, format, tests, d_text, json_path, cfg);
  } catch (const std::invalid_argument&) {
    std::cerr << "error: --d expects a non-negative integer or inf\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
