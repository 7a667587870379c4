#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wlspec {

using Edge = std::pair<int, int>;

/// Simple undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  /// Edges are normalised to u < v and deduplicated. Loops and out-of-range
  /// endpoints throw ArgumentError.
  Graph(int n, std::vector<Edge> edges);

  int order() const noexcept { return n_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<int>& neighbours(int v) const { return nbrs_[v]; }
  int degree(int v) const { return static_cast<int>(nbrs_[v].size()); }
  bool adjacent(int u, int v) const { return adj_[static_cast<std::size_t>(u) * n_ + v] != 0; }

  /// Vertex v of this graph becomes perm[v].
  Graph relabelled(std::span<const int> perm) const;
  Graph complement() const;
  /// Subgraph induced on `vertices`, renumbered in the given order.
  Graph induced(std::span<const int> vertices) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> nbrs_;
  std::vector<std::uint8_t> adj_;
};

struct VertexColouredGraph {
  Graph graph;
  std::vector<int> colour;
};

VertexColouredGraph individualise(const Graph& g, int v);

struct DisjointUnion {
  Graph graph;
  int offset;  // first vertex of the second operand
};

DisjointUnion disjoint_union(const Graph& a, const Graph& b);

/// The 28-vertex pair separating (1,1)-WL from 2-WL. Vertices 0..3 form the
/// backbone 4-cycle; gadgets follow in attachment order, six vertices each.
std::pair<Graph, Graph> build_counterexample_pair();

std::vector<int> connected_components(const Graph& g);  // component id per vertex
int component_count(const Graph& g);
std::vector<std::vector<int>> bfs_distances(const Graph& g);  // -1 when unreachable
bool is_forest(const Graph& g);

/// Parses "u v" lines. An optional first line holding a single integer fixes
/// n (needed for isolated vertices); otherwise n = max id + 1. Lines starting
/// with '#' and blank lines are ignored.
Graph parse_edge_list(const std::string& text);
std::string serialize_edge_list(const Graph& g);

// Small named graphs.
Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph star_graph(int leaves);
Graph edgeless_graph(int n);

}  // namespace wlspec
