#include "parind/matrix.hpp"

#include <sstream>

#include "parind/errors.hpp"

namespace parind {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    PARIND_ASSERT(rows[r].size() == cols, "Matrix::from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::column(const std::vector<Rational>& v) {
  Matrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != Rational(r == c ? 1 : 0)) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  PARIND_ASSERT(r0 + nr <= rows_ && c0 + nc <= cols_, "Matrix::block out of range");
  Matrix b(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  PARIND_ASSERT(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, "Matrix::set_block out of range");
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
}

std::vector<Rational> Matrix::col_vector(std::size_t c) const {
  std::vector<Rational> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& idx) const {
  Matrix m(rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < idx.size(); ++j) m(r, j) = (*this)(r, idx[j]);
  return m;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(idx[i], c);
  return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  PARIND_ASSERT(rows_ == o.rows_ && cols_ == o.cols_, "Matrix +=: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!o.data_[i].is_zero()) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  PARIND_ASSERT(rows_ == o.rows_ && cols_ == o.cols_, "Matrix -=: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!o.data_[i].is_zero()) data_[i] -= o.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(const Rational& s) {
  for (auto& x : data_)
    if (!x.is_zero()) x *= s;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  PARIND_ASSERT(a.cols_ == b.rows_, "Matrix *: shape mismatch");
  Matrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Rational& bkj = b(k, j);
        if (bkj.is_zero()) continue;
        p(i, j) += aik * bkj;
      }
    }
  }
  return p;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? "; " : "");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
  }
  os << "]";
  return os.str();
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  PARIND_ASSERT(a.rows() == b.rows(), "hstack: row mismatch");
  Matrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  PARIND_ASSERT(a.cols() == b.cols(), "vstack: column mismatch");
  Matrix m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

Matrix vstack(const std::vector<Matrix>& parts, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    PARIND_ASSERT(p.cols() == cols, "vstack: column mismatch");
    rows += p.rows();
  }
  Matrix m(rows, cols);
  std::size_t r = 0;
  for (const auto& p : parts) {
    m.set_block(r, 0, p);
    r += p.rows();
  }
  return m;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t prow = 0;
  std::vector<std::size_t> support;
  for (std::size_t c = 0; c < cols && prow < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t r = prow; r < rows; ++r) {
      if (!m(r, c).is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel == rows) continue;
    if (sel != prow)
      for (std::size_t k = c; k < cols; ++k) std::swap(m(sel, k), m(prow, k));
    Rational inv = Rational(1) / m(prow, c);
    support.clear();
    for (std::size_t k = c; k < cols; ++k) {
      if (m(prow, k).is_zero()) continue;
      m(prow, k) *= inv;
      support.push_back(k);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == prow) continue;
      if (m(r, c).is_zero()) continue;
      Rational f = m(r, c);
      for (std::size_t k : support) m(r, k) -= f * m(prow, k);
    }
    pivots.push_back(c);
    ++prow;
  }
  return pivots;
}

std::size_t rank(Matrix m) { return rref(m).size(); }

Matrix nullspace(const Matrix& m) {
  Matrix r = m;
  auto pivots = rref(r);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix basis(n, free.size());
  for (std::size_t j = 0; j < free.size(); ++j) {
    basis(free[j], j) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      const Rational& v = r(i, free[j]);
      if (!v.is_zero()) basis(pivots[i], j) = -v;
    }
  }
  return basis;
}

std::vector<std::size_t> independent_columns(const Matrix& m) {
  Matrix r = m;
  return rref(r);
}

Matrix inverse(const Matrix& m) {
  PARIND_ASSERT(m.is_square(), "inverse: non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug = hstack(m, Matrix::identity(n));
  auto piv = rref(aug);
  if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) throw InternalError("inverse: singular matrix");
  return aug.block(0, n, n, n);
}

bool is_invertible(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

bool solve(const Matrix& a, const Matrix& b, Matrix& x) {
  PARIND_ASSERT(a.rows() == b.rows(), "solve: shape mismatch");
  const std::size_t n = a.cols();
  Matrix aug = hstack(a, b);
  auto piv = rref(aug);
  x = Matrix(n, b.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] >= n) return false;
    for (std::size_t j = 0; j < b.cols(); ++j) x(piv[i], j) = aug(i, n + j);
  }
  return true;
}

Rational trace(const Matrix& m) {
  PARIND_ASSERT(m.is_square(), "trace: non-square matrix");
  Rational t;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

}  // namespace parind
