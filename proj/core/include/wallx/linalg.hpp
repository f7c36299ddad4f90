#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace wallx {

using Rational = mpq_class;

// Canonical text form: "p/q" in lowest terms, or "p" when q = 1.
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& s);

// Dense row-major matrix over Q. Shapes with zero rows or columns are
// legal and keep their other dimension.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows);
  static Matrix from_ints(std::size_t rows, std::size_t cols,
                          const std::vector<long>& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix scaled(const Rational& c) const;
  Matrix transpose() const;

  bool is_zero() const;
  bool operator==(const Matrix& rhs) const;
  bool operator!=(const Matrix& rhs) const { return !(*this == rhs); }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m);
  Matrix select_columns(const std::vector<std::size_t>& idx) const;
  Matrix select_rows(const std::vector<std::size_t>& idx) const;

  static Matrix hcat(const Matrix& a, const Matrix& b);
  static Matrix vcat(const Matrix& a, const Matrix& b);
  static Matrix kron(const Matrix& a, const Matrix& b);
  static Matrix block_diag(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct Echelon {
  Matrix reduced;                   // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

Echelon rref(Matrix a);
std::size_t rank(const Matrix& a);
// Columns form a basis of {x : a x = 0}.
Matrix kernel(const Matrix& a);
// Independent columns of a spanning its column space.
Matrix image(const Matrix& a);
// Rows form a basis of {y : y a = 0}.
Matrix left_kernel(const Matrix& a);
// Some X with a X = b, if one exists.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
Matrix inverse(const Matrix& a);
Rational determinant(const Matrix& a);
bool is_invertible(const Matrix& a);
Matrix power(const Matrix& a, std::size_t k);

// Subspaces of Q^n are passed as n x k matrices whose columns span them.
Matrix subspace_sum(const Matrix& u, const Matrix& v);
Matrix subspace_intersection(const Matrix& u, const Matrix& v);
bool subspace_contains(const Matrix& u, const Matrix& v);
bool subspace_equal(const Matrix& u, const Matrix& v);
// A matrix q with ker q = span(u); q has n - dim(u) rows.
Matrix quotient_map(const Matrix& u, std::size_t n);

}  // namespace wallx
