#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "wlspec/graph.hpp"
#include "wlspec/wl.hpp"

namespace wlspec {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

struct GraphInput {
  std::string id;
  Graph graph;
};

/// "fixture:NAME" or a file path. Format "graph6", "edgelist", or empty to
/// pick graph6 for *.g6 files and files starting with the graph6 header.
GraphInput load_graph(const std::string& source, const std::string& format = {});

struct CompareConfig {
  std::vector<std::string> tests;  // raw names, aliases allowed
  int k = 2;
  Depth d = Depth::infinite();
  int word_bound = 4;
  int pattern_bound = 6;
  std::optional<double> tolerance;  // overrides float-layer tolerances when set
};

enum class Verdict { Equal, Distinguished, EqualUpToBound, Skipped };

std::string to_string(Verdict v);

struct RelationResult {
  std::string relation;
  Verdict verdict = Verdict::Skipped;
  std::string reason;  // skipped only
  nlohmann::json witness;
};

/// Canonical relation names for the requested tests, duplicates removed,
/// order kept. Expands wl2, wlk, cospectral, homTplus, wordSoe,
/// pseudoStochastic and all from the config. Throws ArgumentError.
std::vector<std::string> expand_tests(const CompareConfig& config);

std::vector<std::string> default_tests();

/// Splits "wl1,wlk(2,1),cospectral(sum(adjacency,degree))" at top-level commas.
std::vector<std::string> split_test_list(std::string_view text);

struct CertificateReport {
  std::vector<GraphInput> inputs;
  CompareConfig config;
  std::vector<std::string> tests;
  std::vector<RelationResult> relations;
  std::vector<std::string> contradictions;

  /// 1 if any relation distinguishes, else 0.
  int exit_code() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

RelationResult evaluate_relation(const std::string& relation, const Graph& g, const Graph& h,
                                 const CompareConfig& config);

/// Implications between relations that an equal verdict forces; each
/// violated one yields a "CONTRADICTION: ..." line.
std::vector<std::string> lattice_contradictions(const std::vector<RelationResult>& relations);

CertificateReport run_compare(const GraphInput& a, const GraphInput& b, const CompareConfig& config);

}  // namespace wlspec
