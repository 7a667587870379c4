#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wlspec/graph.hpp"

namespace wlspec {

/// Iteration budget for k-WL: a finite round count or "until stable".
class Depth {
 public:
  static Depth rounds(int d);
  static Depth infinite() { return Depth(); }
  bool is_infinite() const noexcept { return !value_; }
  int value() const;  // throws for infinite
  std::string to_string() const;
  friend bool operator==(const Depth&, const Depth&) = default;

 private:
  Depth() = default;
  std::optional<int> value_;
};

/// Atomic type of a tuple: equality pattern as a restricted growth string
/// (position i gets the block id of its first equal position) and the sorted
/// list of 0-based position pairs (i<j) whose vertices are adjacent.
struct AtomicType {
  std::vector<int> equality;
  std::vector<std::pair<int, int>> edges;

  std::vector<std::vector<int>> blocks() const;
  auto operator<=>(const AtomicType&) const = default;
};

AtomicType atp(const Graph& g, std::span<const int> tuple);

/// Partition of V^k into classes 0..num_classes-1. Tuples are indexed
/// lexicographically with position 0 most significant.
struct Colouring {
  int arity = 1;
  int n = 0;
  int num_classes = 0;
  std::vector<int> colour;

  int at(std::span<const int> tuple) const;
  std::vector<std::int64_t> histogram(int classes) const;
};

struct RefinementResult {
  Colouring colouring;
  int iterations = 0;
  bool stable = false;
  std::vector<int> classes_per_round;  // entry 0 is the initial colouring
};

/// Colour refinement from the given vertex colours until stable or until
/// max_iters rounds have run. A round that produces no split still counts.
RefinementResult wl1_refine(const VertexColouredGraph& g, std::optional<int> max_iters = std::nullopt);

struct WlOptions {
  std::uint64_t max_tuples = 1'000'000;
};

struct WlkResult {
  Colouring colouring;
  int iterations = 0;
  std::vector<int> classes_per_round;
};

WlkResult wlk_refine(const Graph& g, int k, Depth d, const WlOptions& opts = {});
Colouring wlk_colour(const Graph& g, int k, Depth d, const WlOptions& opts = {});

struct Witness {
  int colour = 0;
  std::int64_t count_g = 0;
  std::int64_t count_h = 0;
};

struct WlVerdict {
  bool indistinguishable = false;
  int iterations_used = 0;
  std::optional<Witness> witness;
  /// Filled by wl11_indistinguishable on equal verdicts: v in G maps to
  /// bijection[v] in H.
  std::vector<int> bijection;
};

WlVerdict wlk_indistinguishable(const Graph& g, const Graph& h, int k, Depth d, const WlOptions& opts = {});

/// 1-WL on uncoloured graphs, refined jointly.
WlVerdict wl1_indistinguishable(const Graph& g, const Graph& h);

WlVerdict wl11_indistinguishable(const Graph& g, const Graph& h);

/// Pairs (v,w) coloured by the stable colour of w in the graph with v
/// individualised, refined jointly over all n individualised copies.
Colouring wl11_colour_classes(const Graph& g);

/// Same colouring computed over the copies of both graphs, so ids compare.
std::pair<Colouring, Colouring> wl11_joint_pair_colours(const Graph& g, const Graph& h);

/// Number of stable 2-WL classes on V^2.
int adjacency_algebra_dimension(const Graph& g, const WlOptions& opts = {});

}  // namespace wlspec
