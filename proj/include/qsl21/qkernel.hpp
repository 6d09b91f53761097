#pragma once

// Root-of-unity context and the q-combinatorics shared by the algebra and
// module code: q-integers, q-brackets over k-eigenvalues, first-kind
// Chebyshev polynomials, and the centre polynomial P_l.

#include <span>
#include <stdexcept>
#include <vector>

#include "qsl21/cyclo.hpp"

namespace qsl21 {

/// Raised when an operation is called outside the domain it is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// q = zeta_l, a primitive l-th root of unity, l >= 3.
class QContext {
 public:
  explicit QContext(int l);

  int l() const { return l_; }
  /// l if l is odd, l/2 if l is even.
  int lprime() const { return lprime_; }
  const CycloScalar& q() const { return q_; }
  const CycloScalar& qinv() const { return qinv_; }
  /// q^k for any integer k.
  CycloScalar qpow(long k) const;
  /// q - q^{-1}
  const CycloScalar& qdiff() const { return qdiff_; }
  const CycloScalar& qdiff_inv() const { return qdiff_inv_; }
  bool is_odd() const { return (l_ % 2) != 0; }

  friend bool operator==(const QContext& a, const QContext& b) { return a.l_ == b.l_; }
  friend bool operator!=(const QContext& a, const QContext& b) { return a.l_ != b.l_; }

 private:
  int l_;
  int lprime_;
  CycloScalar q_;
  CycloScalar qinv_;
  CycloScalar qdiff_;
  CycloScalar qdiff_inv_;
  std::vector<CycloScalar> powers_;
};

/// [m] = (q^m - q^{-m}) / (q - q^{-1}).
CycloScalar qint(const QContext& ctx, long m);

/// [mu + s] where q^mu = lam:  (lam q^s - lam^{-1} q^{-s}) / (q - q^{-1}).
/// lam must be nonzero.
CycloScalar qbracket(const QContext& ctx, const CycloScalar& lam, long s);

/// First-kind Chebyshev polynomial P_l evaluated at t (P_0 = 1, P_1 = t,
/// P_{n+1} = 2 t P_n - P_{n-1}).
CycloScalar chebyshev1(int l, const CycloScalar& t);

/// Integer coefficients of P_l, lowest degree first.
std::vector<Integer> chebyshev1_coefficients(int l);

/// Exact binomial coefficient; zero when k < 0 or k > n.
Integer binomial(long n, long k);

/// One term C_m C_1^n * weight of the centre polynomial sum (m >= 2).
struct CentrePolyTerm {
  int m;
  int n;
  Rational weight;  // l/(m-1) * binom(m+n-1, n+1) * binom(l-m, n)
};

/// The (m, n) terms of the sum part of P_l, in increasing (m, n) order.
std::vector<CentrePolyTerm> centre_poly_terms(int l);

/// P_l(C_1, ..., C_l) = (C_1 + 1)^l - 1 + sum_{m>=2, n>=0, m+n<=l}
/// C_m C_1^n l/(m-1) binom(m+n-1, n+1) binom(l-m, n).
/// c[p-1] holds C_p. Only odd l is accepted unless allow_even is set.
CycloScalar centre_poly(const QContext& ctx, std::span<const CycloScalar> c, bool allow_even = false);

}  // namespace qsl21
