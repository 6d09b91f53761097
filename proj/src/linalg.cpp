#include "qsl21/linalg.hpp"

#include <numeric>
#include <stdexcept>

namespace qsl21 {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = CycloScalar(1L);
  return m;
}

Matrix Matrix::diagonal(const Vector& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw std::invalid_argument("from_columns: length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector Matrix::diagonal_entries() const {
  Vector v(std::min(rows_, cols_));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (*this)(i, i);
  return v;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

bool Matrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i != j && !(*this)(i, j).is_zero()) return false;
    }
  }
  return true;
}

std::optional<CycloScalar> Matrix::scalar_value() const {
  if (rows_ != cols_) return std::nullopt;
  if (rows_ == 0) return CycloScalar();
  if (!is_diagonal()) return std::nullopt;
  const CycloScalar& c = (*this)(0, 0);
  for (std::size_t i = 1; i < rows_; ++i) {
    if ((*this)(i, i) != c) return std::nullopt;
  }
  return c;
}

std::size_t Matrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& x : data_) n += x.is_zero() ? 0 : 1;
  return n;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
  Vector out(rows_);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (v[j].is_zero()) continue;
    for (std::size_t i = 0; i < rows_; ++i) {
      const auto& a = (*this)(i, j);
      if (!a.is_zero()) out[i] += a * v[j];
    }
  }
  return out;
}

Matrix Matrix::select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  Matrix m(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(rows[i], cols[j]);
  }
  return m;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!rhs.data_[k].is_zero()) data_[k] += rhs.data_[k];
  }
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) {
    if (!rhs.data_[k].is_zero()) data_[k] -= rhs.data_[k];
  }
  return *this;
}

Matrix& Matrix::operator*=(const CycloScalar& c) {
  for (auto& x : data_) {
    if (!x.is_zero()) x *= c;
  }
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const auto& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const auto& bkj = b(k, j);
        if (!bkj.is_zero()) c(i, j) += aik * bkj;
      }
    }
  }
  return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

int Matrix::conductor() const {
  int n = 1;
  for (const auto& x : data_) n = conductor_lcm(n, x.conductor());
  return n;
}

Matrix vstack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) return {};
  std::size_t rows = 0;
  const std::size_t cols = blocks.front().cols();
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw std::invalid_argument("vstack: column mismatch");
    rows += b.rows();
  }
  Matrix out(rows, cols);
  std::size_t r = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i, ++r) {
      for (std::size_t j = 0; j < cols; ++j) out(r, j) = b(i, j);
    }
  }
  return out;
}

RrefResult rref(Matrix a) {
  RrefResult out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && a(piv, col).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row) {
      for (std::size_t j = col; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
    }
    const CycloScalar inv = a(row, col).inverse();
    for (std::size_t j = col; j < a.cols(); ++j) {
      if (!a(row, j).is_zero()) a(row, j) *= inv;
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const CycloScalar f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) {
        if (!a(row, j).is_zero()) a(i, j) -= f * a(row, j);
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.r = std::move(a);
  return out;
}

std::size_t rank(const Matrix& a) { return rref(a).pivots.size(); }

std::vector<Vector> nullspace(const Matrix& a) {
  const RrefResult red = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : red.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(a.cols());
    v[free] = CycloScalar(1L);
    for (std::size_t r = 0; r < red.pivots.size(); ++r) {
      const auto& x = red.r(r, free);
      if (!x.is_zero()) v[red.pivots[r]] = -x;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: dimension mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const RrefResult red = rref(std::move(aug));
  if (!red.pivots.empty() && red.pivots.back() == a.cols()) return std::nullopt;
  Vector x(a.cols());
  for (std::size_t r = 0; r < red.pivots.size(); ++r) x[red.pivots[r]] = red.r(r, a.cols());
  return x;
}

CycloScalar determinant(Matrix a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  CycloScalar det(1L);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col).is_zero()) ++piv;
    if (piv == n) return CycloScalar();
    if (piv != col) {
      for (std::size_t j = col; j < n; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    const CycloScalar inv = a(col, col).inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col).is_zero()) continue;
      const CycloScalar f = a(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) {
        if (!a(col, j).is_zero()) a(i, j) -= f * a(col, j);
      }
    }
  }
  return det;
}

Matrix inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = CycloScalar(1L);
  }
  const RrefResult red = rref(std::move(aug));
  if (red.pivots.size() < n || red.pivots[n - 1] != n - 1) throw DivisionByZero("matrix is singular");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = red.r(i, n + j);
  }
  return inv;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Vector EchelonBasis::reduce(Vector v) const {
  if (v.size() != dim_) throw std::invalid_argument("EchelonBasis: dimension mismatch");
  for (const auto& [pivot, row] : rows_) {
    if (v[pivot].is_zero()) continue;
    const CycloScalar f = v[pivot];
    for (const auto& [j, x] : row) v[j] -= f * x;
  }
  return v;
}

bool EchelonBasis::contains(const Vector& v) const { return is_zero(reduce(v)); }

bool EchelonBasis::insert(const Vector& v) {
  Vector r = reduce(v);
  std::size_t pivot = 0;
  while (pivot < dim_ && r[pivot].is_zero()) ++pivot;
  if (pivot == dim_) return false;
  const CycloScalar inv = r[pivot].inverse();
  SparseRow row;
  for (std::size_t j = pivot; j < dim_; ++j) {
    if (!r[j].is_zero()) row.emplace_back(j, j == pivot ? CycloScalar(1L) : r[j] * inv);
  }
  rows_.emplace(pivot, std::move(row));
  return true;
}

// ---------------------------------------------------------------------------

namespace modp {

std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t power(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1U) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1U;
  }
  return r;
}

std::uint64_t inverse(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw DivisionByZero("inverse of zero mod p");
  return power(a, p - 2, p);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // Deterministic for 64-bit inputs with these bases.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = power(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> f;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      f.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) f.push_back(n);
  return f;
}

}  // namespace

PrimeField choose_prime(int n, int index) {
  if (n < 1) throw std::invalid_argument("choose_prime: n must be positive");
  const auto nn = static_cast<std::uint64_t>(n);
  std::uint64_t p = ((1ULL << 31) - 1) / nn * nn + 1;
  if (p >= (1ULL << 31)) p -= nn;
  int found = -1;
  for (; p > nn; p -= nn) {
    if (is_prime(p) && ++found == index) break;
  }
  // A primitive n-th root: g^((p-1)/n) for a generator g of (Z/p)^*.
  const auto factors = prime_factors(p - 1);
  for (std::uint64_t g = 2;; ++g) {
    bool generator = true;
    for (auto f : factors) {
      if (power(g, (p - 1) / f, p) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return PrimeField{p, n, power(g, (p - 1) / nn, p)};
  }
}

std::optional<std::uint64_t> reduce(const CycloScalar& x, const PrimeField& field) {
  const int c = x.conductor();
  if (field.n % c != 0) throw std::invalid_argument("modp::reduce: conductor does not divide the field order");
  const std::uint64_t p = field.p;
  auto to_mod = [p](const Integer& z) {
    Integer r = z % Integer(static_cast<unsigned long>(p));
    if (sgn(r) < 0) r += static_cast<unsigned long>(p);
    return static_cast<std::uint64_t>(r.get_ui());
  };
  const std::uint64_t den = to_mod(x.denominator());
  if (den == 0) return std::nullopt;
  const std::uint64_t r = power(field.root, static_cast<std::uint64_t>(field.n / c), p);
  std::uint64_t acc = 0;
  std::uint64_t rp = 1;
  for (const auto& a : x.numerators()) {
    acc = (acc + mul(to_mod(a), rp, p)) % p;
    rp = mul(rp, r, p);
  }
  return mul(acc, inverse(den, p), p);
}

std::size_t rank(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const std::uint64_t inv = inverse(rows[r][c], p);
    for (std::size_t j = c; j < cols; ++j) rows[r][j] = mul(rows[r][j], inv, p);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      const std::uint64_t f = rows[i][c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        if (rows[r][j] != 0) rows[i][j] = (rows[i][j] + p - mul(f, rows[r][j], p)) % p;
      }
    }
    ++r;
  }
  return r;
}

bool EchelonBasis::insert(std::vector<std::uint64_t> v) {
  if (v.size() != dim_) throw std::invalid_argument("modp::EchelonBasis: dimension mismatch");
  for (const auto& [pivot, row] : rows_) {
    const std::uint64_t f = v[pivot];
    if (f == 0) continue;
    for (std::size_t j = pivot; j < dim_; ++j) {
      if (row[j] != 0) v[j] = (v[j] + p_ - mul(f, row[j], p_)) % p_;
    }
  }
  std::size_t pivot = 0;
  while (pivot < dim_ && v[pivot] == 0) ++pivot;
  if (pivot == dim_) return false;
  const std::uint64_t inv = inverse(v[pivot], p_);
  for (std::size_t j = pivot; j < dim_; ++j) v[j] = mul(v[j], inv, p_);
  rows_.emplace(pivot, std::move(v));
  return true;
}

}  // namespace modp

}  // namespace qsl21
