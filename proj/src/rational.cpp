#include "wlspec/rational.hpp"

#include <sstream>

#include "wlspec/errors.hpp"

namespace wlspec {

RationalMatrix::RationalMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ArgumentError("matrix shapes differ");
  RationalMatrix s(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] + o.data_[i];
  return s;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ArgumentError("matrix shapes differ");
  RationalMatrix s(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] - o.data_[i];
  return s;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (cols_ != o.rows_) throw ArgumentError("matrix shapes do not compose");
  RationalMatrix p(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k < cols_; ++k) {
      const mpq_class& a = (*this)(r, k);
      if (sgn(a) == 0) continue;
      for (int c = 0; c < o.cols_; ++c) p(r, c) += a * o(k, c);
    }
  return p;
}

RationalMatrix RationalMatrix::scaled(const mpq_class& s) const {
  RationalMatrix m = *this;
  for (auto& x : m.data_) x *= s;
  return m;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = r + 1; c < cols_; ++c)
      if ((*this)(r, c) != (*this)(c, r)) return false;
  return true;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : data_)
    if (sgn(x) != 0) return false;
  return true;
}

mpq_class RationalMatrix::trace() const {
  mpq_class t = 0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

std::optional<RationalMatrix> RationalMatrix::inverse() const {
  if (rows_ != cols_) throw ArgumentError("inverse of a non-square matrix");
  int n = rows_;
  RationalMatrix a = *this;
  RationalMatrix inv = identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (sgn(a(r, col)) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return std::nullopt;
    if (pivot != col)
      for (int c = 0; c < n; ++c) {
        std::swap(a(pivot, c), a(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    mpq_class p = a(col, col);
    for (int c = 0; c < n; ++c) {
      a(col, c) /= p;
      inv(col, c) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || sgn(a(r, col)) == 0) continue;
      mpq_class f = a(r, col);
      for (int c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

int RationalMatrix::rank() const {
  RationalMatrix a = *this;
  int rank = 0;
  for (int col = 0; col < cols_ && rank < rows_; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows_; ++r)
      if (sgn(a(r, col)) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    for (int c = 0; c < cols_; ++c) std::swap(a(pivot, c), a(rank, c));
    for (int r = rank + 1; r < rows_; ++r) {
      if (sgn(a(r, col)) == 0) continue;
      mpq_class f = a(r, col) / a(rank, col);
      for (int c = col; c < cols_; ++c) a(r, c) -= f * a(rank, c);
    }
    ++rank;
  }
  return rank;
}

std::vector<mpq_class> characteristic_polynomial(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw ArgumentError("characteristic polynomial of a non-square matrix");
  int n = m.rows();
  std::vector<mpq_class> c(n + 1);
  c[n] = 1;
  RationalMatrix mk(n, n);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    RationalMatrix next = m * mk;
    for (int i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    c[n - k] = -(m * mk).trace() / k;
  }
  return c;
}

std::string polynomial_to_string(const std::vector<mpq_class>& coeffs) {
  std::ostringstream out;
  bool first = true;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    const mpq_class& c = coeffs[i];
    if (sgn(c) == 0) continue;
    mpq_class mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) out << mag.get_str();
    if (i >= 1) out << "x";
    if (i >= 2) out << "^" << i;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

}  // namespace wlspec
