#include "eigen_util.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wlspec/errors.hpp"

namespace wlspec::detail {

Eigen::MatrixXd to_eigen(const RationalMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).get_d();
  return out;
}

bool numerically_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) return false;
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

namespace {

RealEigen symmetric_eigen(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) throw NumericError("symmetric eigensolver did not converge");
  RealEigen e;
  e.values = es.eigenvalues();
  e.vectors = es.eigenvectors();
  e.inverse_vectors = es.eigenvectors().transpose();
  e.symmetric = true;
  double residual = (m * e.vectors - e.vectors * e.values.asDiagonal()).cwiseAbs().maxCoeff();
  if (residual > 1e-8 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    throw NumericError("symmetric eigensolver residual " + std::to_string(residual) + " too large");
  }
  return e;
}

}  // namespace

RealEigen real_eigendecomposition(const MatrixMapId& id, const MatrixValue& value, const Graph& g) {
  Eigen::MatrixXd m = value.to_double();
  int n = static_cast<int>(m.rows());
  if (n == 0) return RealEigen{Eigen::VectorXd(0), Eigen::MatrixXd(0, 0), Eigen::MatrixXd(0, 0), true};
  if (value.layer == MatrixValue::Layer::Exact ? value.exact.is_symmetric() : numerically_symmetric(m)) {
    return symmetric_eigen(m);
  }
  if (id.kind() == MatrixMapId::Kind::RandomWalk) {
    // D^-1 A = D^-1/2 N D^1/2 with N = D^-1/2 A D^-1/2 symmetric.
    Eigen::VectorXd s(n);
    for (int v = 0; v < n; ++v) s(v) = std::sqrt(static_cast<double>(g.degree(v)));
    Eigen::MatrixXd nmat = s.asDiagonal() * m * s.cwiseInverse().asDiagonal();
    RealEigen e = symmetric_eigen(0.5 * (nmat + nmat.transpose()));
    e.vectors = s.cwiseInverse().asDiagonal() * e.vectors;
    e.inverse_vectors = e.inverse_vectors * s.asDiagonal();
    e.symmetric = false;
    return e;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) throw NumericError("general eigensolver did not converge");
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < n; ++i) {
    if (std::abs(es.eigenvalues()(i).imag()) > 1e-9 * scale) {
      throw NumericError("matrix has non-real eigenvalue " + std::to_string(es.eigenvalues()(i).real()) + "+" +
                         std::to_string(es.eigenvalues()(i).imag()) + "i");
    }
  }
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return es.eigenvalues()(a).real() < es.eigenvalues()(b).real(); });
  RealEigen e;
  e.values.resize(n);
  e.vectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    e.values(i) = es.eigenvalues()(order[i]).real();
    e.vectors.col(i) = es.eigenvectors().col(order[i]).real();
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(e.vectors);
  if (!lu.isInvertible()) throw NumericError("matrix is not diagonalisable over the reals");
  e.inverse_vectors = lu.inverse();
  double residual = (m * e.vectors - e.vectors * e.values.asDiagonal()).cwiseAbs().maxCoeff();
  if (residual > 1e-8 * scale) throw NumericError("eigendecomposition residual " + std::to_string(residual) + " too large");
  return e;
}

std::vector<EigenGroup> group_eigenvalues(const Eigen::VectorXd& values, double tolerance) {
  std::vector<EigenGroup> groups;
  for (int i = 0; i < values.size(); ++i) {
    double x = values(i);
    if (!groups.empty()) {
      double prev = values(groups.back().indices.back());
      if (std::abs(x - prev) <= tolerance * std::max(1.0, std::abs(x))) {
        groups.back().indices.push_back(i);
        continue;
      }
    }
    groups.push_back({x, {i}});
  }
  for (auto& g : groups) {
    double s = 0;
    for (int i : g.indices) s += values(i);
    g.value = s / static_cast<double>(g.indices.size());
  }
  return groups;
}

Eigen::MatrixXd group_projection(const RealEigen& e, const EigenGroup& group) {
  int n = static_cast<int>(e.values.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int i : group.indices) p += e.vectors.col(i) * e.inverse_vectors.row(i);
  return p;
}

}  // namespace wlspec::detail
