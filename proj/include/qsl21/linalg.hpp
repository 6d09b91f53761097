#pragma once

// Dense exact matrices over cyclotomic fields, Gaussian elimination, and a
// word-size prime field image used for fast rank certificates.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qsl21/cyclo.hpp"

namespace qsl21 {

using Vector = std::vector<CycloScalar>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vector& d);
  /// Matrix whose columns are the given vectors (all of length rows).
  static Matrix from_columns(const std::vector<Vector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  CycloScalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const CycloScalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const;
  Vector row(std::size_t i) const;
  Vector diagonal_entries() const;

  bool is_zero() const;
  bool is_diagonal() const;
  /// c when the matrix equals c times the identity.
  std::optional<CycloScalar> scalar_value() const;
  std::size_t nonzeros() const;

  Matrix transpose() const;
  Vector apply(const Vector& v) const;
  /// Submatrix on the given row and column index lists.
  Matrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(const CycloScalar& c);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const CycloScalar& c) { return a *= c; }
  friend Matrix operator*(const CycloScalar& c, Matrix a) { return a *= c; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);

  /// Largest conductor-compatible field size n such that all entries lie
  /// in Q(zeta_n) (the lcm of the entry conductors).
  int conductor() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<CycloScalar> data_;
};

/// Vertical concatenation (all blocks share the column count).
Matrix vstack(const std::vector<Matrix>& blocks);

struct RrefResult {
  Matrix r;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form.
RrefResult rref(Matrix a);
std::size_t rank(const Matrix& a);
/// Basis of { x : a x = 0 }.
std::vector<Vector> nullspace(const Matrix& a);
/// Some solution of a x = b, or nullopt if inconsistent.
std::optional<Vector> solve(const Matrix& a, const Vector& b);
CycloScalar determinant(Matrix a);
/// Throws DivisionByZero when a is singular.
Matrix inverse(const Matrix& a);

bool is_zero(const Vector& v);

/// Incrementally maintained row-echelon basis of a subspace of K^dim with
/// sparse rows. Used for closure computations.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  /// v minus its projection along the stored pivots.
  Vector reduce(Vector v) const;
  bool contains(const Vector& v) const;
  /// Adds v if it is independent; returns whether it was added.
  bool insert(const Vector& v);

 private:
  using SparseRow = std::vector<std::pair<std::size_t, CycloScalar>>;
  std::size_t dim_;
  std::map<std::size_t, SparseRow> rows_;  // pivot -> row, pivot entry 1
};

namespace modp {

/// Z/p with a chosen primitive n-th root of unity, p = 1 mod n.
struct PrimeField {
  std::uint64_t p = 0;
  int n = 1;
  std::uint64_t root = 1;
};

std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t power(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inverse(std::uint64_t a, std::uint64_t p);
bool is_prime(std::uint64_t n);

/// The index-th prime p = 1 mod n below 2^31 (counting downwards), with a
/// primitive n-th root of unity.
PrimeField choose_prime(int n, int index = 0);

/// Image of x under zeta_n -> root; nullopt when a denominator vanishes
/// mod p. The conductor of x must divide field.n.
std::optional<std::uint64_t> reduce(const CycloScalar& x, const PrimeField& field);

/// Rank of a dense matrix over Z/p (rows are consumed).
std::size_t rank(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p);

/// Row-echelon basis over Z/p with dense rows.
class EchelonBasis {
 public:
  EchelonBasis(std::size_t dim, std::uint64_t p) : dim_(dim), p_(p) {}
  std::size_t rank() const { return rows_.size(); }
  bool insert(std::vector<std::uint64_t> v);

 private:
  std::size_t dim_;
  std::uint64_t p_;
  std::map<std::size_t, std::vector<std::uint64_t>> rows_;
};

}  // namespace modp

}  // namespace qsl21
