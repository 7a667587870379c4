#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wlspec {

/// Dense matrix over the rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols);
  static RationalMatrix identity(int n);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  mpq_class& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const mpq_class& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  RationalMatrix transpose() const;
  RationalMatrix operator+(const RationalMatrix& o) const;
  RationalMatrix operator-(const RationalMatrix& o) const;
  RationalMatrix operator*(const RationalMatrix& o) const;
  RationalMatrix scaled(const mpq_class& s) const;
  bool is_symmetric() const;
  bool is_zero() const;
  mpq_class trace() const;

  /// Gauss-Jordan inverse; nullopt when singular.
  std::optional<RationalMatrix> inverse() const;
  int rank() const;

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<mpq_class> data_;
};

/// Coefficients c_0..c_n of det(xI - M), c_n = 1 (Faddeev-LeVerrier).
std::vector<mpq_class> characteristic_polynomial(const RationalMatrix& m);

std::string polynomial_to_string(const std::vector<mpq_class>& coeffs);

/// Sparse affine system sum_j a_ij x_j = b_i over Q.
class SparseRationalSystem {
 public:
  using Term = std::pair<int, mpq_class>;

  explicit SparseRationalSystem(int variables);
  int variables() const noexcept { return variables_; }
  std::size_t equations() const noexcept { return rows_.size(); }

  /// Duplicate variables are merged; zero coefficients dropped.
  void add_equation(std::vector<Term> terms, mpq_class rhs);

  struct Solution {
    bool consistent = false;
    int rank = 0;
    std::vector<mpq_class> values;  // free variables set to zero
  };

  /// Exact elimination. Short equations are processed first and pivots are
  /// chosen by fewest occurrences, keeping fill-in low.
  Solution solve() const;

  /// Residual check of a candidate assignment.
  bool satisfied_by(const std::vector<mpq_class>& x) const;

 private:
  struct Row {
    std::vector<Term> terms;  // sorted by variable
    mpq_class rhs;
  };
  int variables_;
  std::vector<Row> rows_;
};

}  // namespace wlspec
