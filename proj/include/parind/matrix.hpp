#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "parind/rational.hpp"

namespace parind {

/// Dense row-major matrix over the rationals.
///
/// Zero-sized matrices are legal and common: a graded piece of dimension
/// zero produces 0 x n or n x 0 blocks, and every operation below accepts
/// them.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols);
  static Matrix column(const std::vector<Rational>& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const;
  bool is_identity() const;
  bool is_square() const { return rows_ == cols_; }

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  Matrix col(std::size_t c) const { return block(0, c, rows_, 1); }
  std::vector<Rational> col_vector(std::size_t c) const;
  Matrix select_cols(const std::vector<std::size_t>& idx) const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(const Rational& s);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix vstack(const std::vector<Matrix>& parts, std::size_t cols);
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// In-place reduced row echelon form; returns pivot columns in order.
std::vector<std::size_t> rref(Matrix& m);
std::size_t rank(Matrix m);
/// Columns form a basis of {x : m x = 0}. Basis vectors are the standard
/// RREF ones: free variable set to 1, other free variables 0.
Matrix nullspace(const Matrix& m);
/// Columns of m that form a basis of its column space (leftmost choice).
std::vector<std::size_t> independent_columns(const Matrix& m);
/// Throws InternalError when m is singular.
Matrix inverse(const Matrix& m);
bool is_invertible(const Matrix& m);
/// Some x with a x = b, or false when the system is inconsistent.
bool solve(const Matrix& a, const Matrix& b, Matrix& x);
Rational trace(const Matrix& m);

}  // namespace parind
