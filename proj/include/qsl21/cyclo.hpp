#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_n), represented as
// Q[x]/(Phi_n(x)) with x -> zeta_n = exp(2 pi i / n).

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace qsl21 {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised on division by an exact zero.
class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Euler's totient, which is also deg(Phi_n).
int euler_phi(int n);

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
/// Computed by exact division of x^n - 1 by Phi_d for the proper divisors d.
const std::vector<long>& cyclotomic_polynomial(int n);

namespace detail {
struct CycloField;
const CycloField& cyclo_field(int n);
}  // namespace detail

/// An element of Q(zeta_n). Stored as integer numerators over one positive
/// common denominator; gcd(content, den) == 1 and the numerator vector has
/// exactly deg(Phi_n) entries, so equal elements of the same conductor have
/// identical representations.
class CycloScalar {
 public:
  CycloScalar();
  CycloScalar(long value);  // NOLINT: rationals embed implicitly
  CycloScalar(const Integer& value);  // NOLINT
  CycloScalar(const Rational& value);  // NOLINT

  /// zeta_n^k.
  static CycloScalar root_of_unity(int n, long k);

  /// Element of Q(zeta_n) with the given coefficients on 1, x, ..., reduced
  /// modulo Phi_n (any length is accepted).
  static CycloScalar from_coefficients(int n, const std::vector<Rational>& coeffs);

  /// Parses the "n; c0,c1,..." serialization.
  static CycloScalar parse(std::string_view text);

  int conductor() const;
  int degree() const;
  Rational coeff(int i) const;
  std::vector<Rational> coefficients() const;
  const std::vector<Integer>& numerators() const { return num_; }
  const Integer& denominator() const { return den_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  /// Throws std::domain_error if the element is not rational.
  Rational to_rational() const;

  /// The same element expressed in Q(zeta_m); m must be a multiple of the
  /// conductor.
  CycloScalar lifted(int m) const;

  CycloScalar inverse() const;
  CycloScalar pow(long exponent) const;

  /// The same value in the smallest cyclotomic field containing it.
  CycloScalar canonical() const;

  std::complex<double> to_complex() const;
  /// Canonical "n; c0,c1,..." form: n is the minimal conductor, so equal
  /// values always print identically.
  std::string to_string() const;
  /// The same format in the current conductor, without reduction.
  std::string raw_string() const;

  CycloScalar& operator+=(const CycloScalar& rhs);
  CycloScalar& operator-=(const CycloScalar& rhs);
  CycloScalar& operator*=(const CycloScalar& rhs);
  CycloScalar& operator/=(const CycloScalar& rhs);

  friend CycloScalar operator+(CycloScalar a, const CycloScalar& b) { return a += b; }
  friend CycloScalar operator-(CycloScalar a, const CycloScalar& b) { return a -= b; }
  friend CycloScalar operator*(const CycloScalar& a, const CycloScalar& b);
  friend CycloScalar operator/(const CycloScalar& a, const CycloScalar& b) {
    return a * b.inverse();
  }
  friend CycloScalar operator-(CycloScalar a);

  friend bool operator==(const CycloScalar& a, const CycloScalar& b);
  friend bool operator!=(const CycloScalar& a, const CycloScalar& b) { return !(a == b); }

 private:
  CycloScalar(const detail::CycloField* field, std::vector<Integer> num, Integer den);

  void normalize();
  void add_scaled(const CycloScalar& rhs, int sign);

  const detail::CycloField* field_;
  std::vector<Integer> num_;
  Integer den_;
};

/// Least common multiple of two conductors.
int conductor_lcm(int a, int b);

std::ostream& operator<<(std::ostream& os, const CycloScalar& x);

}  // namespace qsl21
