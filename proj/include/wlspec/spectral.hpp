#pragma once

#include <Eigen/Dense>
#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wlspec/graph.hpp"
#include "wlspec/matrix_map.hpp"

namespace wlspec {

struct Eigenvalue {
  double value = 0;
  int multiplicity = 0;
};

struct SpectrumSummary {
  std::vector<Eigenvalue> eigenvalues;  // ascending, grouped
  double tolerance = 0;
  /// Present for maps evaluated in the exact layer.
  std::optional<std::vector<mpq_class>> characteristic_polynomial;

  /// Same groups, multiplicities, and values within tolerance.
  bool equivalent(const SpectrumSummary& other) const;
};

/// Multiplicities are geometric. Evaluation only succeeds for diagonalisable
/// matrices, so they coincide with algebraic multiplicities and sum to n.
SpectrumSummary spectrum(const MatrixMapId& id, const Graph& g, const SpectralOptions& opts = {});

bool cospectral(const MatrixMapId& id, const Graph& g, const Graph& h, const SpectralOptions& opts = {});

/// Adjacency spectrum plus per-vertex eigenprojection profiles. Reals are
/// stored as integer multiples of the rounding grid so comparison is exact.
struct FuererInvariant {
  struct VertexProfile {
    std::vector<std::int64_t> diagonal;                   // p_vv, one entry per eigenvalue
    std::vector<std::vector<std::int64_t>> off_diagonal;  // sorted multiset over all w of p_vw
    auto operator<=>(const VertexProfile&) const = default;
  };

  std::vector<std::int64_t> eigenvalues;
  std::vector<int> multiplicities;
  std::vector<VertexProfile> per_vertex;  // sorted
  double grid = 0;

  friend bool operator==(const FuererInvariant& a, const FuererInvariant& b) {
    return a.eigenvalues == b.eigenvalues && a.multiplicities == b.multiplicities && a.per_vertex == b.per_vertex;
  }
};

FuererInvariant fuerer_invariant(const Graph& g, const SpectralOptions& opts = {});

struct MapDeviation {
  std::string map;
  bool exact = false;
  double max_deviation = 0;
};

/// For each map, the largest disagreement between entries (v,w) of phi(G)
/// and (x,y) of phi(H) whose pairs share a (1,1)-WL colour. Throws
/// ContractError unless the graphs are (1,1)-WL indistinguishable.
std::vector<MapDeviation> entry_colour_consistency_check(const Graph& g, const Graph& h,
                                                         const std::vector<MatrixMapId>& ids,
                                                         const SpectralOptions& opts = {});

/// Averaging matrix of the stable colouring of g with v individualised.
RationalMatrix averaging_matrix(const Graph& g, int v);

/// max |M^v phi(G) - phi(G) M^v|, exact zero for exact maps that commute.
double e1_commutation_defect(const MatrixMapId& id, const Graph& g, int v, const SpectralOptions& opts = {});

/// dist(s,t) = least i with A^i(s,t) != 0, -1 if none.
std::vector<std::vector<int>> power_distances(const Graph& g);

struct CommuteResult {
  Eigen::MatrixXd kappa;    // +inf across components
  Eigen::MatrixXd hitting;  // H(s,t), +inf across components
  double oracle_deviation = 0;
};

/// Commute distances from the fundamental-matrix formula, per component,
/// cross-checked against hitting times solved directly from the first-step
/// equations. Disagreement beyond 1e-8 relative throws NumericError.
CommuteResult commute_distances(const Graph& g);

/// Hitting times of a connected graph from the first-step equations.
Eigen::MatrixXd hitting_times(const Graph& connected);

/// Sorted multiset {kappa(s,t) : s < t}.
std::vector<double> commute_multiset(const Graph& g);

bool commute_multiset_equal(const Graph& g, const Graph& h, double tolerance = 1e-8);

}  // namespace wlspec
