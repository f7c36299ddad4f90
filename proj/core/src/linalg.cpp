#include "wallx/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace wallx {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  bool slash = false;
  bool digit = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c == '/' && !slash && digit) {
      slash = true;
      digit = false;
    } else {
      throw std::invalid_argument("malformed rational: " + s);
    }
  }
  if (!digit) throw std::invalid_argument("malformed rational: " + s);
  Rational q;
  std::string body = (s[0] == '+') ? s.substr(1) : s;
  if (q.set_str(body, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows[0].size() : 0;
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::from_ints(std::size_t rows, std::size_t cols, const std::vector<long>& entries) {
  if (entries.size() != rows * cols) throw std::invalid_argument("entry count mismatch");
  Matrix m(rows, cols);
  for (std::size_t k = 0; k < entries.size(); ++k) m.data_[k] = entries[k];
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Matrix out(rows_, rhs.cols_);
  Rational t;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        const Rational& b = rhs(k, j);
        if (sgn(b) == 0) continue;
        t = a * b;
        out(i, j) += t;
      }
    }
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("sum shape mismatch");
  Matrix out(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] += rhs.data_[k];
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("difference shape mismatch");
  Matrix out(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] -= rhs.data_[k];
  return out;
}

Matrix Matrix::scaled(const Rational& c) const {
  Matrix out(*this);
  for (auto& x : out.data_) x *= c;
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (sgn(x) != 0) return false;
  return true;
}

bool Matrix::operator==(const Matrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block out of range");
  Matrix out(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
  return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw std::out_of_range("set_block out of range");
  for (std::size_t i = 0; i < m.rows_; ++i)
    for (std::size_t j = 0; j < m.cols_; ++j) (*this)(r0 + i, c0 + j) = m(i, j);
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
  Matrix out(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = (*this)(i, idx[j]);
  return out;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& idx) const {
  Matrix out(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(idx[i], j);
  return out;
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_) throw std::invalid_argument("hcat row mismatch");
  Matrix out(a.rows_, a.cols_ + b.cols_);
  out.set_block(0, 0, a);
  out.set_block(0, a.cols_, b);
  return out;
}

Matrix Matrix::vcat(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("vcat column mismatch");
  Matrix out(a.rows_ + b.rows_, a.cols_);
  out.set_block(0, 0, a);
  out.set_block(a.rows_, 0, b);
  return out;
}

Matrix Matrix::kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) {
      const Rational& x = a(i, j);
      if (sgn(x) == 0) continue;
      for (std::size_t k = 0; k < b.rows_; ++k)
        for (std::size_t l = 0; l < b.cols_; ++l) out(i * b.rows_ + k, j * b.cols_ + l) = x * b(k, l);
    }
  return out;
}

Matrix Matrix::block_diag(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows_ + b.rows_, a.cols_ + b.cols_);
  out.set_block(0, 0, a);
  out.set_block(a.rows_, a.cols_, b);
  return out;
}

Echelon rref(Matrix a) {
  Echelon e;
  std::size_t m = a.rows(), n = a.cols();
  std::size_t row = 0;
  Rational f;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t piv = m;
    for (std::size_t i = row; i < m; ++i)
      if (sgn(a(i, col)) != 0) {
        piv = i;
        break;
      }
    if (piv == m) continue;
    if (piv != row)
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(row, j));
    Rational inv = 1 / a(row, col);
    for (std::size_t j = col; j < n; ++j)
      if (sgn(a(row, j)) != 0) a(row, j) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || sgn(a(i, col)) == 0) continue;
      f = a(i, col);
      for (std::size_t j = col; j < n; ++j) {
        if (sgn(a(row, j)) == 0) continue;
        a(i, j) -= f * a(row, j);
      }
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.reduced = std::move(a);
  return e;
}

std::size_t rank(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  return rref(a).pivots.size();
}

Matrix kernel(const Matrix& a) {
  std::size_t n = a.cols();
  if (a.rows() == 0) return Matrix::identity(n);
  Echelon e = rref(a);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free.push_back(j);
  Matrix k(n, free.size());
  for (std::size_t c = 0; c < free.size(); ++c) {
    std::size_t fj = free[c];
    k(fj, c) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], c) = -e.reduced(r, fj);
  }
  return k;
}

Matrix image(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return Matrix(a.rows(), 0);
  Echelon e = rref(a);
  return a.select_columns(e.pivots);
}

Matrix left_kernel(const Matrix& a) { return kernel(a.transpose()).transpose(); }

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve shape mismatch");
  std::size_t n = a.cols(), k = b.cols();
  Echelon e = rref(Matrix::hcat(a, b));
  Matrix x(n, k);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    std::size_t p = e.pivots[r];
    if (p >= n) return std::nullopt;
    for (std::size_t j = 0; j < k; ++j) x(p, j) = e.reduced(r, n + j);
  }
  return x;
}

Matrix inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  std::size_t n = a.rows();
  Echelon e = rref(Matrix::hcat(a, Matrix::identity(n)));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] >= n))
    throw std::domain_error("singular matrix");
  return e.reduced.block(0, n, n, n);
}

Rational determinant(const Matrix& a0) {
  if (a0.rows() != a0.cols()) throw std::invalid_argument("determinant of non-square matrix");
  Matrix a = a0;
  std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (sgn(a(i, c)) != 0) {
        piv = i;
        break;
      }
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

bool is_invertible(const Matrix& a) { return a.rows() == a.cols() && rank(a) == a.rows(); }

Matrix power(const Matrix& a, std::size_t k) {
  Matrix out = Matrix::identity(a.rows());
  Matrix base = a;
  while (k) {
    if (k & 1) out = out * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return out;
}

Matrix subspace_sum(const Matrix& u, const Matrix& v) { return image(Matrix::hcat(u, v)); }

Matrix subspace_intersection(const Matrix& u, const Matrix& v) {
  std::size_t n = u.rows();
  if (u.cols() == 0 || v.cols() == 0) return Matrix(n, 0);
  Matrix ub = image(u), vb = image(v);
  Matrix k = kernel(Matrix::hcat(ub, vb.scaled(-1)));
  Matrix coeff = k.block(0, 0, ub.cols(), k.cols());
  return image(ub * coeff);
}

bool subspace_contains(const Matrix& u, const Matrix& v) {
  if (v.cols() == 0) return true;
  return rank(Matrix::hcat(u, v)) == rank(u);
}

bool subspace_equal(const Matrix& u, const Matrix& v) {
  std::size_t ru = rank(u);
  return ru == rank(v) && rank(Matrix::hcat(u, v)) == ru;
}

Matrix quotient_map(const Matrix& u, std::size_t n) {
  if (u.cols() == 0) return Matrix::identity(n);
  return left_kernel(u);
}

}  // namespace wallx
