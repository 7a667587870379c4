#pragma once

#include <Eigen/Dense>

#include <vector>

#include "wlspec/graph.hpp"
#include "wlspec/matrix_map.hpp"

namespace wlspec::detail {

/// M = V diag(values) V^-1 with real eigenvalues in ascending order.
struct RealEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  Eigen::MatrixXd inverse_vectors;
  bool symmetric = false;
};

struct EigenGroup {
  double value = 0;
  std::vector<int> indices;
};

bool numerically_symmetric(const Eigen::MatrixXd& m);

/// Symmetric inputs use the self-adjoint solver; D^-1 A goes through its
/// symmetric similarity; other inputs need real eigenvalues and a
/// well-conditioned eigenbasis. Failures throw NumericError.
RealEigen real_eigendecomposition(const MatrixMapId& id, const MatrixValue& value, const Graph& g);

std::vector<EigenGroup> group_eigenvalues(const Eigen::VectorXd& sorted_values, double tolerance);

Eigen::MatrixXd group_projection(const RealEigen& e, const EigenGroup& group);

Eigen::MatrixXd to_eigen(const RationalMatrix& m);

}  // namespace wlspec::detail
