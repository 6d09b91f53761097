#include "qsl21/qkernel.hpp"

#include <string>

namespace qsl21 {

QContext::QContext(int l) : l_(l) {
  if (l < 3) throw DomainError("root of unity order l must be >= 3, got " + std::to_string(l));
  lprime_ = (l % 2 == 0) ? l / 2 : l;
  powers_.reserve(static_cast<std::size_t>(l));
  for (int k = 0; k < l; ++k) powers_.push_back(CycloScalar::root_of_unity(l, k));
  q_ = powers_[1];
  qinv_ = powers_[static_cast<std::size_t>(l - 1)];
  qdiff_ = q_ - qinv_;
  qdiff_inv_ = qdiff_.inverse();
}

CycloScalar QContext::qpow(long k) const {
  long e = k % l_;
  if (e < 0) e += l_;
  return powers_[static_cast<std::size_t>(e)];
}

CycloScalar qint(const QContext& ctx, long m) {
  return (ctx.qpow(m) - ctx.qpow(-m)) * ctx.qdiff_inv();
}

CycloScalar qbracket(const QContext& ctx, const CycloScalar& lam, long s) {
  if (lam.is_zero()) throw DomainError("qbracket: eigenvalue must be nonzero");
  return (lam * ctx.qpow(s) - lam.inverse() * ctx.qpow(-s)) * ctx.qdiff_inv();
}

CycloScalar chebyshev1(int l, const CycloScalar& t) {
  if (l < 0) throw DomainError("chebyshev1: degree must be nonnegative");
  if (l == 0) return CycloScalar(1L);
  CycloScalar prev(1L);
  CycloScalar cur = t;
  const CycloScalar two_t = t * CycloScalar(2L);
  for (int n = 1; n < l; ++n) {
    CycloScalar next = two_t * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<Integer> chebyshev1_coefficients(int l) {
  std::vector<Integer> prev{1};
  if (l == 0) return prev;
  std::vector<Integer> cur{0, 1};
  for (int n = 1; n < l; ++n) {
    std::vector<Integer> next(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

std::vector<CentrePolyTerm> centre_poly_terms(int l) {
  std::vector<CentrePolyTerm> terms;
  for (int m = 2; m <= l; ++m) {
    for (int n = 0; m + n <= l; ++n) {
      Rational w(Integer(l) * binomial(m + n - 1, n + 1) * binomial(l - m, n), Integer(m - 1));
      w.canonicalize();
      if (sgn(w) != 0) terms.push_back({m, n, w});
    }
  }
  return terms;
}

CycloScalar centre_poly(const QContext& ctx, std::span<const CycloScalar> c, bool allow_even) {
  const int l = ctx.l();
  if (!ctx.is_odd() && !allow_even) {
    throw DomainError("centre polynomial relation requires odd l, got l = " + std::to_string(l));
  }
  if (static_cast<int>(c.size()) != l) {
    throw DomainError("centre_poly expects exactly l Casimir values");
  }
  const CycloScalar& c1 = c[0];
  CycloScalar out = (c1 + CycloScalar(1L)).pow(l) - CycloScalar(1L);
  std::vector<CycloScalar> c1_pow{CycloScalar(1L)};
  for (int n = 1; n <= l; ++n) c1_pow.push_back(c1_pow.back() * c1);
  for (const auto& term : centre_poly_terms(l)) {
    out += c[static_cast<std::size_t>(term.m - 1)] * c1_pow[static_cast<std::size_t>(term.n)] * CycloScalar(term.weight);
  }
  return out;
}

}  // namespace qsl21
