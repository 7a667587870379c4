#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wlspec/graph.hpp"

namespace wlspec {

/// A forest T with a non-empty vertex set B contracted to a single vertex
/// (loops and parallel edges removed).
struct TPlusPattern {
  Graph forest;
  std::vector<int> contracted;
  Graph pattern;
};

Graph contract(const Graph& forest, const std::vector<int>& b);

/// All free trees on exactly `vertices` vertices, one per isomorphism class.
std::vector<Graph> free_trees(int vertices);

/// All forests with at most `max_vertices` vertices, up to isomorphism.
std::vector<Graph> forests_up_to(int max_vertices);

/// Every pattern T/B with |V(T)| <= max_vertices, one per isomorphism class
/// of the contracted graph, ordered by first appearance (forests by size,
/// then B by bitmask). max_vertices <= 8.
std::vector<TPlusPattern> enumerate_tplus(int max_vertices);

struct TPlusVerdict {
  bool distinguished = false;  // false means equal up to the bound
  int bound = 0;
  int patterns_checked = 0;
  std::optional<TPlusPattern> witness;
  std::int64_t hom_g = 0;
  std::int64_t hom_h = 0;
};

TPlusVerdict hom_indist_tplus(const Graph& g, const Graph& h, int max_vertices);

struct AffineProbe {
  bool feasible = false;
  int variables = 0;
  std::size_t equations = 0;
};

/// Affine relaxation of the doubly-stochastic intertwiner for the five
/// (2,2)-generators: X B_G = B_H X with unit row and column sums, signs
/// ignored. Infeasible means no doubly-stochastic X exists. n <= 6.
AffineProbe pair_affine_probe(const Graph& g, const Graph& h);

}  // namespace wlspec
