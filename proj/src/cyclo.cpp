#include "qsl21/cyclo.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace qsl21 {

int euler_phi(int n) {
  if (n < 1) throw std::invalid_argument("euler_phi: n must be positive");
  int result = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

// Exact quotient of monic integer polynomials (lowest degree first).
std::vector<long> divide_exact(std::vector<long> num, const std::vector<long>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<long> quot(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const long c = num[k];
    quot[k - dn] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
  }
  for (std::size_t i = 0; i < dn; ++i) {
    if (num[i] != 0) throw std::logic_error("cyclotomic division is not exact");
  }
  return quot;
}

std::vector<long> compute_cyclotomic(int n) {
  std::vector<long> poly(static_cast<std::size_t>(n) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) poly = divide_exact(poly, cyclotomic_polynomial(d));
  }
  return poly;
}

}  // namespace

namespace detail {

struct CycloField {
  int n = 1;
  int deg = 1;
  std::vector<long> phi;
  // high[k] = x^(deg + k) mod Phi_n for 0 <= k <= deg - 2.
  std::vector<std::vector<long>> high;

  // Reduces an integer polynomial of arbitrary length modulo Phi_n in place.
  void reduce(std::vector<Integer>& poly) const {
    const auto d = static_cast<std::size_t>(deg);
    for (std::size_t k = poly.size(); k-- > d;) {
      if (sgn(poly[k]) == 0) continue;
      const Integer c = poly[k];
      for (std::size_t i = 0; i <= d; ++i) {
        if (phi[i] != 0) poly[k - d + i] -= c * phi[i];
      }
    }
    poly.resize(d);
  }
};

const CycloField& cyclo_field(int n) {
  if (n < 1) throw std::invalid_argument("conductor must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<CycloField>> cache;
  std::unique_lock lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return *it->second;
  lock.unlock();

  // Phi_n needs Phi_d for d | n, which re-enters this function.
  auto field = std::make_unique<CycloField>();
  field->n = n;
  field->phi = (n == 1) ? std::vector<long>{-1, 1} : compute_cyclotomic(n);
  field->deg = static_cast<int>(field->phi.size()) - 1;
  const int d = field->deg;
  std::vector<long> cur(static_cast<std::size_t>(d), 0);
  // x^d = -sum phi_i x^i, then repeatedly multiply by x.
  for (int i = 0; i < d; ++i) cur[static_cast<std::size_t>(i)] = -field->phi[static_cast<std::size_t>(i)];
  for (int k = d; k <= 2 * d - 2; ++k) {
    field->high.push_back(cur);
    // multiply by x and reduce
    const long top = cur[static_cast<std::size_t>(d - 1)];
    for (int i = d - 1; i > 0; --i) cur[static_cast<std::size_t>(i)] = cur[static_cast<std::size_t>(i - 1)];
    cur[0] = 0;
    for (int i = 0; i < d; ++i) cur[static_cast<std::size_t>(i)] -= top * field->phi[static_cast<std::size_t>(i)];
  }

  lock.lock();
  auto [it, inserted] = cache.emplace(n, std::move(field));
  return *it->second;
}

}  // namespace detail

const std::vector<long>& cyclotomic_polynomial(int n) {
  return detail::cyclo_field(n).phi;
}

int conductor_lcm(int a, int b) { return std::lcm(a, b); }

namespace {

using RatPoly = std::vector<Rational>;

void trim(RatPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Polynomial long division over Q: returns quotient, leaves remainder in a.
RatPoly divmod(RatPoly& a, const RatPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  const std::size_t db = b.size() - 1;
  RatPoly quot(a.size() - db);
  const Rational lead_inv = 1 / b.back();
  for (std::size_t k = a.size(); k > db;) {
    --k;
    const Rational c = a[k] * lead_inv;
    quot[k - db] = c;
    if (sgn(c) != 0) {
      for (std::size_t i = 0; i <= db; ++i) a[k - db + i] -= c * b[i];
    }
  }
  trim(a);
  return quot;
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

RatPoly poly_sub(const RatPoly& a, const RatPoly& b) {
  RatPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

}  // namespace

CycloScalar::CycloScalar() : CycloScalar(0L) {}

CycloScalar::CycloScalar(long value)
    : field_(&detail::cyclo_field(1)), num_{Integer(value)}, den_(1) {}

CycloScalar::CycloScalar(const Integer& value)
    : field_(&detail::cyclo_field(1)), num_{value}, den_(1) {}

CycloScalar::CycloScalar(const Rational& value)
    : field_(&detail::cyclo_field(1)), num_{value.get_num()}, den_(value.get_den()) {}

CycloScalar::CycloScalar(const detail::CycloField* field, std::vector<Integer> num, Integer den)
    : field_(field), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

CycloScalar CycloScalar::root_of_unity(int n, long k) {
  const auto& field = detail::cyclo_field(n);
  long e = k % n;
  if (e < 0) e += n;
  std::vector<Integer> poly(static_cast<std::size_t>(std::max<long>(e + 1, field.deg)), 0);
  poly[static_cast<std::size_t>(e)] = 1;
  field.reduce(poly);
  return CycloScalar(&field, std::move(poly), Integer(1));
}

CycloScalar CycloScalar::from_coefficients(int n, const std::vector<Rational>& coeffs) {
  const auto& field = detail::cyclo_field(n);
  Integer den = 1;
  for (const auto& c : coeffs) den = lcm(den, Integer(c.get_den()));
  std::vector<Integer> poly(std::max<std::size_t>(coeffs.size(), static_cast<std::size_t>(field.deg)), 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    poly[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
  }
  field.reduce(poly);
  return CycloScalar(&field, std::move(poly), std::move(den));
}

CycloScalar CycloScalar::parse(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) {
    throw std::invalid_argument("scalar must have the form 'n; c0,c1,...'");
  }
  const int n = std::stoi(std::string(text.substr(0, semi)));
  std::vector<Rational> coeffs;
  std::string rest(text.substr(semi + 1));
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty coefficient in scalar");
    Rational r(item.substr(b, e - b + 1), 10);
    r.canonicalize();
    coeffs.push_back(r);
  }
  if (static_cast<int>(coeffs.size()) != euler_phi(n)) {
    throw std::invalid_argument("scalar coefficient count does not match deg(Phi_n)");
  }
  return from_coefficients(n, coeffs);
}

int CycloScalar::conductor() const { return field_->n; }
int CycloScalar::degree() const { return field_->deg; }

Rational CycloScalar::coeff(int i) const {
  Rational r(num_.at(static_cast<std::size_t>(i)), den_);
  r.canonicalize();
  return r;
}

std::vector<Rational> CycloScalar::coefficients() const {
  std::vector<Rational> out;
  out.reserve(num_.size());
  for (int i = 0; i < degree(); ++i) out.push_back(coeff(i));
  return out;
}

bool CycloScalar::is_zero() const {
  for (const auto& c : num_)
    if (sgn(c) != 0) return false;
  return true;
}

bool CycloScalar::is_one() const {
  if (den_ != 1 || num_[0] != 1) return false;
  for (std::size_t i = 1; i < num_.size(); ++i)
    if (sgn(num_[i]) != 0) return false;
  return true;
}

bool CycloScalar::is_rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i)
    if (sgn(num_[i]) != 0) return false;
  return true;
}

Rational CycloScalar::to_rational() const {
  if (!is_rational()) throw std::domain_error("scalar is not rational: " + to_string());
  return coeff(0);
}

void CycloScalar::normalize() {
  if (is_zero()) {
    den_ = 1;
    return;
  }
  if (sgn(den_) < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  if (den_ == 1) return;
  Integer g = den_;
  for (const auto& c : num_) {
    if (sgn(c) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
}

CycloScalar CycloScalar::lifted(int m) const {
  const int n = conductor();
  if (m == n) return *this;
  if (m % n != 0) throw std::invalid_argument("lift target must be a multiple of the conductor");
  const auto& target = detail::cyclo_field(m);
  const int step = m / n;
  std::vector<Integer> poly(static_cast<std::size_t>(std::max((degree() - 1) * step + 1, target.deg)), 0);
  for (int k = 0; k < degree(); ++k) poly[static_cast<std::size_t>(k * step)] = num_[static_cast<std::size_t>(k)];
  target.reduce(poly);
  return CycloScalar(&target, std::move(poly), den_);
}

void CycloScalar::add_scaled(const CycloScalar& rhs, int sign) {
  if (field_ != rhs.field_) {
    if (rhs.conductor() == 1 || conductor() % rhs.conductor() == 0) {
      add_scaled(rhs.lifted(conductor()), sign);
      return;
    }
    const int m = conductor_lcm(conductor(), rhs.conductor());
    *this = lifted(m);
    add_scaled(rhs.lifted(m), sign);
    return;
  }
  if (rhs.is_zero()) return;
  if (den_ == rhs.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) {
      if (sign > 0) num_[i] += rhs.num_[i];
      else num_[i] -= rhs.num_[i];
    }
  } else {
    Integer g;
    mpz_gcd(g.get_mpz_t(), den_.get_mpz_t(), rhs.den_.get_mpz_t());
    const Integer mine = rhs.den_ / g;
    const Integer theirs = den_ / g;
    for (std::size_t i = 0; i < num_.size(); ++i) {
      num_[i] *= mine;
      if (sign > 0) mpz_addmul(num_[i].get_mpz_t(), rhs.num_[i].get_mpz_t(), theirs.get_mpz_t());
      else mpz_submul(num_[i].get_mpz_t(), rhs.num_[i].get_mpz_t(), theirs.get_mpz_t());
    }
    den_ *= mine;
  }
  normalize();
}

CycloScalar& CycloScalar::operator+=(const CycloScalar& rhs) {
  add_scaled(rhs, +1);
  return *this;
}

CycloScalar& CycloScalar::operator-=(const CycloScalar& rhs) {
  add_scaled(rhs, -1);
  return *this;
}

CycloScalar operator*(const CycloScalar& a, const CycloScalar& b) {
  if (a.field_ != b.field_) {
    if (b.conductor() == 1) {
      if (b.is_zero()) return CycloScalar();
      std::vector<Integer> num = a.num_;
      for (auto& c : num) c *= b.num_[0];
      return CycloScalar(a.field_, std::move(num), a.den_ * b.den_);
    }
    if (a.conductor() == 1) return b * a;
    const int m = conductor_lcm(a.conductor(), b.conductor());
    return a.lifted(m) * b.lifted(m);
  }
  if (a.is_zero() || b.is_zero()) return CycloScalar(a.field_, std::vector<Integer>(a.num_.size(), 0), Integer(1));
  const auto& field = *a.field_;
  const auto d = static_cast<std::size_t>(field.deg);
  std::vector<Integer> prod(2 * d - 1, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (sgn(a.num_[i]) == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (sgn(b.num_[j]) == 0) continue;
      mpz_addmul(prod[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
    }
  }
  for (std::size_t k = d; k < prod.size(); ++k) {
    if (sgn(prod[k]) == 0) continue;
    const auto& row = field.high[k - d];
    for (std::size_t i = 0; i < d; ++i) {
      if (row[i] > 0) mpz_addmul_ui(prod[i].get_mpz_t(), prod[k].get_mpz_t(), static_cast<unsigned long>(row[i]));
      else if (row[i] < 0) mpz_submul_ui(prod[i].get_mpz_t(), prod[k].get_mpz_t(), static_cast<unsigned long>(-row[i]));
    }
  }
  prod.resize(d);
  return CycloScalar(a.field_, std::move(prod), a.den_ * b.den_);
}

CycloScalar& CycloScalar::operator*=(const CycloScalar& rhs) {
  *this = *this * rhs;
  return *this;
}

CycloScalar& CycloScalar::operator/=(const CycloScalar& rhs) {
  *this = *this / rhs;
  return *this;
}

CycloScalar operator-(CycloScalar a) {
  for (auto& c : a.num_) c = -c;
  return a;
}

CycloScalar CycloScalar::inverse() const {
  if (is_zero()) throw DivisionByZero("division by zero in Q(zeta_" + std::to_string(conductor()) + ")");
  if (degree() == 1) {
    return CycloScalar(field_, {den_}, num_[0]);
  }
  // Extended Euclid: find s with s * a == 1 mod Phi_n.
  RatPoly r0;
  for (long c : field_->phi) r0.emplace_back(c);
  RatPoly r1 = coefficients();
  trim(r1);
  RatPoly s0;           // coefficient of a in r0
  RatPoly s1{Rational(1)};
  while (!(r1.size() == 1)) {
    RatPoly rem = r0;
    RatPoly quot = divmod(rem, r1);
    RatPoly s2 = poly_sub(s0, poly_mul(quot, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) throw std::logic_error("cyclotomic polynomial is not irreducible?");
  }
  const Rational scale = 1 / r1[0];
  for (auto& c : s1) c *= scale;
  return from_coefficients(conductor(), s1);
}

CycloScalar CycloScalar::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  CycloScalar result = CycloScalar(1L);
  CycloScalar base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

std::complex<double> CycloScalar::to_complex() const {
  const double two_pi = 2.0 * std::acos(-1.0);
  std::complex<double> out = 0.0;
  const double den = den_.get_d();
  for (int k = 0; k < degree(); ++k) {
    const double angle = two_pi * k / conductor();
    out += (num_[static_cast<std::size_t>(k)].get_d() / den) * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return out;
}

namespace {

// Data for recognising elements of Q(zeta_m) inside Q(zeta_n): the images
// of zeta_m^j = x^(j n/m), j < phi(m), in the power basis of Q(zeta_n), a set
// of pivot coordinates, and the inverse of the square block on them.
struct Descent {
  std::vector<std::vector<Rational>> image;  // image[j][k]
  std::vector<std::size_t> pivots;
  std::vector<std::vector<Rational>> block_inverse;
};

const Descent& descent(int n, int m) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<Descent>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, m}];
  if (slot) return *slot;
  auto d = std::make_unique<Descent>();
  const int dn = euler_phi(n);
  const int dm = euler_phi(m);
  for (int j = 0; j < dm; ++j) {
    const CycloScalar z = CycloScalar::root_of_unity(m, j).lifted(n);
    d->image.push_back(z.coefficients());
  }
  // Column-pivoted elimination on the dm x dn matrix of images.
  std::vector<std::vector<Rational>> a = d->image;
  std::vector<std::vector<Rational>> inv(static_cast<std::size_t>(dm), std::vector<Rational>(static_cast<std::size_t>(dm), 0));
  for (int j = 0; j < dm; ++j) inv[j][j] = 1;
  for (int r = 0; r < dm; ++r) {
    std::size_t col = 0;
    while (col < static_cast<std::size_t>(dn) && sgn(a[r][col]) == 0) ++col;
    d->pivots.push_back(col);
    const Rational pivot = a[r][col];
    for (auto& x : a[r]) x /= pivot;
    for (auto& x : inv[r]) x /= pivot;
    for (int s = 0; s < dm; ++s) {
      if (s == r || sgn(a[s][col]) == 0) continue;
      const Rational f = a[s][col];
      for (int k = 0; k < dn; ++k) a[s][k] -= f * a[r][k];
      for (int k = 0; k < dm; ++k) inv[s][k] -= f * inv[r][k];
    }
  }
  d->block_inverse = std::move(inv);
  slot = std::move(d);
  return *slot;
}

std::vector<int> proper_divisors(int n) {
  std::vector<int> out;
  for (int m = 2; m < n; ++m) {
    if (n % m == 0 && m % 4 != 2) out.push_back(m);
  }
  return out;
}

}  // namespace

CycloScalar CycloScalar::canonical() const {
  if (is_rational()) return CycloScalar(coeff(0));
  const int n = conductor();
  const std::vector<Rational> v = coefficients();
  for (int m : proper_divisors(n)) {
    const Descent& d = descent(n, m);
    const std::size_t dm = d.pivots.size();
    // x = sum_j c_j image_j; row reduction gave rows of inv * images with
    // unit pivots, so c = v restricted to pivots, mapped back through inv.
    std::vector<Rational> c(dm, 0);
    for (std::size_t r = 0; r < dm; ++r) {
      for (std::size_t j = 0; j < dm; ++j) c[j] += v[d.pivots[r]] * d.block_inverse[r][j];
    }
    std::vector<Rational> back(v.size(), 0);
    for (std::size_t j = 0; j < dm; ++j) {
      if (sgn(c[j]) == 0) continue;
      for (std::size_t k = 0; k < v.size(); ++k) back[k] += c[j] * d.image[j][k];
    }
    if (back == v) return from_coefficients(m, c);
  }
  return *this;
}

std::string CycloScalar::to_string() const { return canonical().raw_string(); }

std::string CycloScalar::raw_string() const {
  std::string out = std::to_string(conductor()) + "; ";
  for (int k = 0; k < degree(); ++k) {
    if (k > 0) out += ",";
    out += coeff(k).get_str();
  }
  return out;
}

bool operator==(const CycloScalar& a, const CycloScalar& b) {
  if (a.field_ == b.field_) return a.den_ == b.den_ && a.num_ == b.num_;
  const int m = conductor_lcm(a.conductor(), b.conductor());
  return a.lifted(m) == b.lifted(m);
}

std::ostream& operator<<(std::ostream& os, const CycloScalar& x) { return os << x.to_string(); }

}  // namespace qsl21
