#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "wlspec/graph.hpp"
#include "wlspec/hom.hpp"
#include "wlspec/rational.hpp"

namespace wlspec {

/// Bilabelled graph with k+d in- and out-labels together with a tree cover
/// (parent map), a pebbling into 1..k+1 and the pebble tags of both label
/// tuples; or the absorbing element.
struct WlkdElement {
  int k = 1;
  int d = 0;
  bool bottom = false;
  BilabelledGraph bigraph;
  std::vector<int> parent;  // -1 at the root
  std::vector<int> pebble;  // values 1..k+1
  std::vector<int> p_in;    // length k+d, values 1..k+1
  std::vector<int> p_out;

  static WlkdElement make_bottom(int k, int d);
  int size() const { return bigraph.graph.order(); }
};

struct AxiomCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool ok() const;
  bool passed(std::string_view name) const;
  std::vector<std::string> failed() const;
};

/// Checks "shape", "tree", "cover", "pebbling", and B1..B8 independently.
/// When shape or tree fails the remaining checks are reported as failed with
/// detail "not evaluated". The absorbing element passes vacuously.
AxiomReport validate(const WlkdElement& e);

WlkdElement reverse(const WlkdElement& e);

/// Absorbing on mismatched tags; otherwise glues out-labels of a to
/// in-labels of b and merges the tree covers along the glued chains.
WlkdElement series_compose(const WlkdElement& a, const WlkdElement& b);

struct GeneratorId {
  enum class Kind { Identity, Adjacency, Join };
  Kind kind = Kind::Identity;
  int k = 1;
  int d = 0;
  /// Non-decreasing, onto 1..|H|.
  std::vector<int> h;
  /// Adjacency endpoints, i < j. Names 1..|H| are vertices of H, names
  /// k+1..k+d the chain positions.
  int i = 0;
  int j = 0;
  /// Join branching position, k <= ell < k+d.
  int ell = 0;
  std::vector<int> p_in;
  std::vector<int> p_out;

  std::string to_string() const;
  auto operator<=>(const GeneratorId&) const = default;
};

/// k^k (k+d)^2 (k+1)^(2(k+d)), the order of magnitude of the generator count.
std::uint64_t generator_count_bound(int k, int d);

/// Nested loops over H, h, p_H and the remaining tags, deduplicated by the
/// materialised structure. Throws SizeError when the bound exceeds `cap`.
std::vector<GeneratorId> enumerate_generators(int k, int d, std::uint64_t cap = 1'000'000);

/// The generator as an element: H in ascending order as the top of the
/// chain, then positions k+1..k+d, then the primed branch of a join.
WlkdElement materialise(const GeneratorId& g);

/// Generator matrix from its closed form, without homomorphism search.
HomMatrix generator_matrix(const GeneratorId& gen, const Graph& g);

/// Block form of F_G (x) e_in e_out^T.
struct AugmentedMatrix {
  bool zero = false;
  HomMatrix matrix;
  std::vector<int> p_in;
  std::vector<int> p_out;

  static AugmentedMatrix zero_element();
  AugmentedMatrix operator*(const AugmentedMatrix& o) const;
  AugmentedMatrix transpose() const;
  std::int64_t soe() const;
  friend bool operator==(const AugmentedMatrix& a, const AugmentedMatrix& b);
};

AugmentedMatrix augmented_matrix(const WlkdElement& e, const Graph& g, const HomOptions& opts = {});
AugmentedMatrix augmented_matrix(const GeneratorId& gen, const Graph& g);

/// Generators whose series composition is e. Throws ContractError for the
/// absorbing element or invalid input.
std::vector<GeneratorId> decompose(const WlkdElement& e);

/// Series composition of the materialised generators, left to right.
WlkdElement recompose(const std::vector<GeneratorId>& word);

/// Random valid element with at most about `max_vertices` vertices.
WlkdElement random_wlkd_element(int k, int d, int max_vertices, std::mt19937_64& rng);

struct Letter {
  GeneratorId generator;
  bool starred = false;
};

struct WordSoeOptions {
  int max_length = 4;
  std::uint64_t max_words = 50'000'000;
  std::uint64_t max_tuples = 200'000;  // n^(k+d)
};

struct WordSoeVerdict {
  bool witness_found = false;
  std::vector<Letter> word;
  std::int64_t soe_g = 0;
  std::int64_t soe_h = 0;
  std::uint64_t words_checked = 0;
  int max_length = 0;
  int alphabet_size = 0;
};

/// Breadth-first by length over words of generators (starred letters only
/// where the reverse is not itself a generator), skipping words with a tag
/// mismatch. Reports the first word whose sum of entries differs.
WordSoeVerdict word_soe_test(const Graph& g, const Graph& h, int k, int d, const WordSoeOptions& opts = {});

struct PseudoStochasticOptions {
  std::uint64_t max_side = 200;  // n^(k+d) (k+1)^(k+d)
};

struct PseudoStochasticVerdict {
  bool feasible = false;
  std::optional<RationalMatrix> x;  // rows (H-tuple, tag), cols (G-tuple, tag)
  int variables = 0;
  std::size_t equations = 0;
  int rank = 0;
};

/// Decides exactly whether some X with unit row and column sums satisfies
/// X A_G = A_H X for every generator A.
PseudoStochasticVerdict pseudo_stochastic_feasible(const Graph& g, const Graph& h, int k, int d,
                                                   const PseudoStochasticOptions& opts = {});

/// Index of a tag function [k+d] -> [k+1] in lexicographic order.
int tag_index(const std::vector<int>& tag, int k);

}  // namespace wlspec
