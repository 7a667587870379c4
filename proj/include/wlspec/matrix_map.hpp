#pragma once

#include <Eigen/Dense>
#include <gmpxx.h>

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wlspec/graph.hpp"
#include "wlspec/rational.hpp"

namespace wlspec {

struct SpectralOptions {
  double eigen_tolerance = 1e-7;  // relative grouping tolerance
  double rounding_grid = 1e-6;    // canonical grid for invariant multisets
};

/// Identifier of a graph-to-matrix map. Leaves are the named graph matrices;
/// inner nodes combine them. Value semantics, cheap to copy.
class MatrixMapId {
 public:
  enum class Kind {
    Adjacency,
    Degree,
    Laplacian,
    SignlessLaplacian,
    ComplementAdjacency,
    Seidel,
    RandomWalk,          // D^-1 A
    SymmetricLaplacian,  // D^-1/2 L D^-1/2
    Identity,
    AllOnes,
    EdgeCount,  // m I
    HeatKernel,
    Projection,
    Sum,
    Product,
    Transpose,
    Scale,
    Inverse,
  };

  static MatrixMapId leaf(Kind kind);
  static MatrixMapId adjacency() { return leaf(Kind::Adjacency); }
  static MatrixMapId laplacian() { return leaf(Kind::Laplacian); }
  static MatrixMapId heat_kernel(double t);
  static MatrixMapId projection(MatrixMapId base, double lambda);
  static MatrixMapId sum(MatrixMapId a, MatrixMapId b);
  static MatrixMapId product(MatrixMapId a, MatrixMapId b);
  static MatrixMapId transpose(MatrixMapId a);
  static MatrixMapId scale(MatrixMapId a, mpq_class factor);
  static MatrixMapId inverse(MatrixMapId a);

  /// Inverse of name(): "laplacian", "projection(adjacency,1)", "scale(seidel,1/2)".
  static MatrixMapId parse(std::string_view text);

  /// The integer-valued leaves A, D, L, |L|, A^c, S.
  static std::vector<MatrixMapId> integer_maps();

  Kind kind() const { return node_->kind; }
  const std::vector<MatrixMapId>& children() const { return node_->children; }
  double parameter() const { return node_->parameter; }
  const mpq_class& factor() const { return node_->factor; }
  std::string name() const;
  /// True when evaluation stays in exact rational arithmetic.
  bool exact() const;

 private:
  struct Node {
    Kind kind;
    std::vector<MatrixMapId> children;
    double parameter = 0;
    mpq_class factor;
  };
  explicit MatrixMapId(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct MatrixValue {
  enum class Layer { Exact, Float };
  Layer layer = Layer::Exact;
  RationalMatrix exact;
  Eigen::MatrixXd real;

  int size() const;
  Eigen::MatrixXd to_double() const;
};

/// Throws NumericError naming the vertex when a D^-1 map meets an isolated
/// vertex. A projection onto a value that is not an eigenvalue is zero; so is
/// the inverse of a singular matrix.
MatrixValue evaluate(const MatrixMapId& id, const Graph& g, const SpectralOptions& opts = {});

RationalMatrix adjacency_matrix(const Graph& g);
RationalMatrix degree_matrix(const Graph& g);

}  // namespace wlspec
