#include <numeric>
#include <random>

#include "doctest.h"
#include "qsl21/linalg.hpp"
#include "qsl21/qkernel.hpp"

using namespace qsl21;

namespace {

CycloScalar random_entry(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4), k(0, n - 1);
  return CycloScalar(Rational(num(rng), den(rng))) * CycloScalar::root_of_unity(n, k(rng));
}

Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int n) {
  Matrix a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = random_entry(rng, n);
  return a;
}

// [I_r; X] [I_r Y] has rank exactly r whatever X and Y are.
Matrix rank_r_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, std::size_t r, int n) {
  Matrix left(rows, r), right(r, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < r; ++j) left(i, j) = i < r ? CycloScalar(i == j ? 1L : 0L) : random_entry(rng, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) right(i, j) = j < r ? CycloScalar(i == j ? 1L : 0L) : random_entry(rng, n);
  return left * right;
}

CycloScalar leibniz(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  CycloScalar total;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j] ? 1 : 0;
    CycloScalar term(inversions % 2 == 0 ? 1L : -1L);
    for (std::size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("rank and nullspace of constructed low-rank matrices") {
  std::mt19937 rng(11);
  for (int n : {3, 5, 12}) {
    for (std::size_t r = 0; r <= 4; ++r) {
      const Matrix a = rank_r_matrix(rng, 5, 6, r, n);
      CHECK(rank(a) == r);
      const auto ker = nullspace(a);
      CHECK(ker.size() == 6 - r);
      for (const auto& v : ker) CHECK(is_zero(a.apply(v)));
    }
  }
}

TEST_CASE("determinant agrees with the Leibniz expansion") {
  std::mt19937 rng(5);
  for (int n : {3, 7}) {
    for (int trial = 0; trial < 5; ++trial) {
      const Matrix a = random_matrix(rng, 4, 4, n);
      CHECK(determinant(a) == leibniz(a));
    }
  }
  CHECK(determinant(rank_r_matrix(rng, 4, 4, 3, 5)).is_zero());
}

TEST_CASE("inverse and solve") {
  std::mt19937 rng(8);
  const Matrix a = random_matrix(rng, 5, 5, 5);
  REQUIRE_FALSE(determinant(a).is_zero());
  CHECK(a * inverse(a) == Matrix::identity(5));
  CHECK(inverse(a) * a == Matrix::identity(5));

  Vector x(5);
  for (auto& e : x) e = random_entry(rng, 5);
  const auto sol = solve(a, a.apply(x));
  REQUIRE(sol);
  CHECK(*sol == x);

  const Matrix singular = rank_r_matrix(rng, 3, 3, 2, 3);
  CHECK_THROWS_AS(inverse(singular), DivisionByZero);
  // column space of singular has dimension 2; one standard vector escapes it
  bool inconsistent = false;
  for (std::size_t k = 0; k < 3; ++k) {
    Vector e(3);
    e[k] = CycloScalar(1L);
    inconsistent = inconsistent || !solve(singular, e);
  }
  CHECK(inconsistent);
}

TEST_CASE("incremental echelon basis matches rank") {
  std::mt19937 rng(21);
  const Matrix a = rank_r_matrix(rng, 7, 5, 3, 7);
  EchelonBasis basis(5);
  for (std::size_t i = 0; i < a.rows(); ++i) basis.insert(a.row(i));
  CHECK(basis.rank() == 3);
  for (std::size_t i = 0; i < a.rows(); ++i) CHECK(basis.contains(a.row(i)));
}

TEST_CASE("reduction modulo a prime is a ring homomorphism") {
  std::mt19937 rng(2);
  for (int n : {3, 4, 5, 7, 12}) {
    const auto field = modp::choose_prime(n);
    CHECK(modp::is_prime(field.p));
    CHECK(field.p % static_cast<std::uint64_t>(n) == 1);
    CHECK(modp::power(field.root, static_cast<std::uint64_t>(n), field.p) == 1);
    for (int d = 1; d < n; ++d) {
      if (n % d == 0) CHECK(modp::power(field.root, static_cast<std::uint64_t>(d), field.p) != 1);
    }
    for (int trial = 0; trial < 20; ++trial) {
      const CycloScalar x = random_entry(rng, n) + random_entry(rng, n);
      const CycloScalar y = random_entry(rng, n);
      const auto rx = modp::reduce(x, field), ry = modp::reduce(y, field), rxy = modp::reduce(x * y, field);
      REQUIRE((rx && ry && rxy));
      CHECK(*rxy == modp::mul(*rx, *ry, field.p));
    }
  }
}

TEST_CASE("rank modulo a prime agrees with the exact rank") {
  std::mt19937 rng(4);
  for (std::size_t r : {1u, 3u, 5u}) {
    const Matrix a = rank_r_matrix(rng, 6, 6, r, 5);
    const auto field = modp::choose_prime(5);
    std::vector<std::vector<std::uint64_t>> rows(6, std::vector<std::uint64_t>(6));
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) rows[i][j] = *modp::reduce(a(i, j), field);
    CHECK(modp::rank(rows, field.p) == r);
    modp::EchelonBasis basis(6, field.p);
    for (auto& row : rows) basis.insert(row);
    CHECK(basis.rank() == r);
  }
}
