#pragma once

#include <cstdint>
#include <vector>

#include "wlspec/graph.hpp"

namespace wlspec {

/// Graph with in-label and out-label vertex tuples; repeats allowed.
struct BilabelledGraph {
  Graph graph;
  std::vector<int> in_labels;
  std::vector<int> out_labels;
};

struct LabelledGraph {
  Graph graph;
  std::vector<int> labels;
};

/// Integer matrix indexed by V(G)^rows x V(G)^cols, tuples in lexicographic
/// order (label position 0 most significant). Arithmetic is overflow-checked.
class HomMatrix {
 public:
  HomMatrix() = default;
  HomMatrix(int n, int row_arity, int col_arity);

  int n() const noexcept { return n_; }
  int row_arity() const noexcept { return row_arity_; }
  int col_arity() const noexcept { return col_arity_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::int64_t soe() const;
  HomMatrix transpose() const;
  HomMatrix operator*(const HomMatrix& o) const;
  HomMatrix hadamard(const HomMatrix& o) const;
  bool is_zero() const;

  friend bool operator==(const HomMatrix&, const HomMatrix&) = default;

 private:
  int n_ = 0;
  int row_arity_ = 0;
  int col_arity_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

struct HomOptions {
  int max_pattern_vertices = 10;     // hom_count
  int max_labelled_vertices = 40;    // hom_matrix patterns
  std::uint64_t max_entries = 1u << 26;
};

/// Number of homomorphisms f -> g. Forest components use the tree DP, others
/// backtracking.
std::int64_t hom_count(const Graph& f, const Graph& g, const HomOptions& opts = {});
/// Plain backtracking, no fast path.
std::int64_t hom_count_backtracking(const Graph& f, const Graph& g, const HomOptions& opts = {});
/// Tree DP; throws ArgumentError when f is not a forest.
std::int64_t hom_count_forest(const Graph& f, const Graph& g);

HomMatrix hom_matrix(const BilabelledGraph& f, const Graph& g, const HomOptions& opts = {});
/// Column vector over V(G)^labels.
std::vector<std::int64_t> hom_vector(const LabelledGraph& f, const Graph& g, const HomOptions& opts = {});

/// Glues out-labels of a to in-labels of b position by position. Throws
/// CompositionError when an edge would become a loop.
BilabelledGraph series_compose(const BilabelledGraph& a, const BilabelledGraph& b);
BilabelledGraph reverse(const BilabelledGraph& f);
/// Identifies labels position by position.
LabelledGraph gluing_product(const LabelledGraph& a, const LabelledGraph& b);

/// Graph with `arity` vertices, each carrying the same in- and out-label.
BilabelledGraph identity_bigraph(int arity);
/// K2 with in-label on one end and out-label on the other.
BilabelledGraph edge_bigraph();

/// Exact isomorphism by permutation search (n <= 10).
bool brute_isomorphic(const Graph& g, const Graph& h);

/// The (2,2)-bilabelled graphs identity, connect, forget, edge, merge.
struct PairGenerators {
  BilabelledGraph identity;
  BilabelledGraph connect;
  BilabelledGraph forget;
  BilabelledGraph edge;
  BilabelledGraph merge;
  std::vector<const BilabelledGraph*> all() const { return {&identity, &connect, &forget, &edge, &merge}; }
};

PairGenerators pair_generators();

}  // namespace wlspec
