#pragma once

// The quantum superalgebra U_q(sl(2|1)) at a root of unity, in the PBW basis
//   f2^rho f3^sigma f1^p k1^a1 k2^a2 e1^t e3^sigma' e2^rho'
// with rho, sigma, sigma', rho' in {0, 1}. Products are brought to normal
// order by a fixed oriented rewrite system on adjacent generator pairs.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsl21/cyclo.hpp"
#include "qsl21/qkernel.hpp"

namespace qsl21 {

class ContextMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Shared, immutable root-of-unity context for order l.
std::shared_ptr<const QContext> make_context(int l);

/// Letters of the normal-order alphabet, listed in normal order.
enum class Gen : std::uint8_t { F2, F3, F1, K, E1, E3, E2 };

/// One letter of a word; a and b are the k1, k2 exponents when g == K.
struct Letter {
  Gen g = Gen::K;
  int a = 0;
  int b = 0;
  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

bool is_odd(Gen g);

/// Distinguished Cartan matrix of sl(2|1).
inline constexpr int kCartan[2][2] = {{2, -1}, {-1, 0}};

/// Exponent w_i with k_i g k_i^{-1} = q^{w_i} g for a root-vector letter.
int root_weight(Gen g, int i);

struct PBWMonomial {
  int rho = 0;
  int sigma = 0;
  int p = 0;
  int a1 = 0;
  int a2 = 0;
  int t = 0;
  int sigmap = 0;
  int rhop = 0;

  auto operator<=>(const PBWMonomial&) const = default;

  int parity() const { return (rho + sigma + sigmap + rhop) % 2; }
  /// Exponents (w1, w2) with k_i m k_i^{-1} = q^{w_i} m.
  std::pair<int, int> grading() const;
  Word word() const;
  std::string to_string() const;
  bool valid() const;
};

/// Input symbols for from_word; e3 and f3 are expanded on input.
enum class Symbol : std::uint8_t { E1, E2, E3, F1, F2, F3, K1, K2 };

struct SymbolPower {
  Symbol symbol;
  int exponent = 1;  // may be negative only for K1, K2
};

/// Parses words such as "e1 f2^2 k1^-1 e3".
std::vector<SymbolPower> parse_word(std::string_view text);

class AlgebraElement {
 public:
  using TermMap = std::map<PBWMonomial, CycloScalar>;

  explicit AlgebraElement(std::shared_ptr<const QContext> ctx);

  static AlgebraElement scalar(std::shared_ptr<const QContext> ctx, const CycloScalar& c);
  static AlgebraElement monomial(std::shared_ptr<const QContext> ctx, const PBWMonomial& m,
                                 const CycloScalar& c = CycloScalar(1L));

  const QContext& ctx() const { return *ctx_; }
  const std::shared_ptr<const QContext>& ctx_ptr() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of m (zero if absent).
  CycloScalar coefficient(const PBWMonomial& m) const;
  /// 0 or 1 when every term has the same parity, -1 otherwise (or for 0).
  int parity() const;

  void add_term(const PBWMonomial& m, const CycloScalar& c);

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);
  AlgebraElement& operator*=(const CycloScalar& c);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, const CycloScalar& c) { return a *= c; }
  friend AlgebraElement operator*(const CycloScalar& c, AlgebraElement a) { return a *= c; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

  /// "coeff * f2^r f3^s f1^p k1^a k2^b e1^t e3^s' e2^r'" terms joined by " + ".
  std::string to_string() const;

 private:
  std::shared_ptr<const QContext> ctx_;
  TermMap terms_;
};

/// The oriented straightening rules. Stateless apart from the context.
class RewriteSystem {
 public:
  explicit RewriteSystem(std::shared_ptr<const QContext> ctx);

  /// Rewrites the out-of-order adjacent pair (left, right) into a linear
  /// combination of words closer to normal order. Requires left > right in
  /// the letter order, or left == right for an odd letter (which gives 0).
  std::vector<std::pair<CycloScalar, Word>> rewrite(const Letter& left, const Letter& right) const;

  /// Normal form of m * x for a normal monomial m and a single letter x.
  AlgebraElement right_multiply(const PBWMonomial& m, const Letter& x) const;

  /// Normal form of an arbitrary word over the normal-order alphabet.
  AlgebraElement normal_form(const Word& word, const CycloScalar& coeff = CycloScalar(1L)) const;

  /// Normal form of a * x.
  AlgebraElement right_multiply(const AlgebraElement& a, const Letter& x) const;

  const std::shared_ptr<const QContext>& ctx_ptr() const { return ctx_; }

 private:
  std::shared_ptr<const QContext> ctx_;
};

/// PBW normal form of a product of generator powers; e3 and f3 are first
/// expanded through e3 = e1 e2 - q^{-1} e2 e1 and f3 = f2 f1 - q f1 f2.
AlgebraElement from_word(std::shared_ptr<const QContext> ctx, const std::vector<SymbolPower>& word);
AlgebraElement from_word(std::shared_ptr<const QContext> ctx, std::string_view text);

/// PBW normal form of a * b.
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);

/// a b - b a
AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b);

/// The Casimir element C_p, with every Cartan bracket expanded as a Laurent
/// polynomial in k1, k2.
AlgebraElement casimir_element(std::shared_ptr<const QContext> ctx, int p);

struct CentralPowers {
  AlgebraElement z1;  // k1^l
  AlgebraElement z2;  // k2^l
  AlgebraElement x1;  // e1^l
  AlgebraElement y1;  // f1^l
};

CentralPowers central_powers(std::shared_ptr<const QContext> ctx);

/// Image under psi: e_i <-> f_i, k1 -> k1^{-1}, k2 -> -k2^{-1}, extended
/// multiplicatively in word order.
AlgebraElement apply_psi(const AlgebraElement& a);

/// The defining relations and their derived consequences as algebra
/// elements that must normal-form to zero: name -> lhs - rhs.
std::vector<std::pair<std::string, AlgebraElement>> relation_elements(std::shared_ptr<const QContext> ctx);

}  // namespace qsl21
