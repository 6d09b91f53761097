#include "qsl21/pbw.hpp"

#include <cctype>
#include <mutex>
#include <optional>
#include <sstream>
#include <tuple>

namespace qsl21 {

std::shared_ptr<const QContext> make_context(int l) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const QContext>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[l];
  if (!slot) slot = std::make_shared<const QContext>(l);
  return slot;
}

bool is_odd(Gen g) { return g == Gen::F2 || g == Gen::F3 || g == Gen::E3 || g == Gen::E2; }

namespace {

// Column of the Cartan matrix for the root of a letter (f3/e3 carry the
// sum of the two simple roots).
int cartan_entry(Gen g, int i) {
  const int row = i - 1;
  switch (g) {
    case Gen::F1:
    case Gen::E1:
      return kCartan[row][0];
    case Gen::F2:
    case Gen::E2:
      return kCartan[row][1];
    case Gen::F3:
    case Gen::E3:
      return kCartan[row][0] + kCartan[row][1];
    case Gen::K:
      return 0;
  }
  return 0;
}

bool is_f(Gen g) { return g == Gen::F1 || g == Gen::F2 || g == Gen::F3; }

int order(Gen g) { return static_cast<int>(g); }

std::optional<Letter> last_letter(const PBWMonomial& m) {
  if (m.rhop) return Letter{Gen::E2};
  if (m.sigmap) return Letter{Gen::E3};
  if (m.t > 0) return Letter{Gen::E1};
  if (m.a1 != 0 || m.a2 != 0) return Letter{Gen::K, m.a1, m.a2};
  if (m.p > 0) return Letter{Gen::F1};
  if (m.sigma) return Letter{Gen::F3};
  if (m.rho) return Letter{Gen::F2};
  return std::nullopt;
}

PBWMonomial drop_last(PBWMonomial m, Gen g) {
  switch (g) {
    case Gen::E2: m.rhop = 0; break;
    case Gen::E3: m.sigmap = 0; break;
    case Gen::E1: --m.t; break;
    case Gen::K: m.a1 = 0; m.a2 = 0; break;
    case Gen::F1: --m.p; break;
    case Gen::F3: m.sigma = 0; break;
    case Gen::F2: m.rho = 0; break;
  }
  return m;
}

// Appends x to m assuming the result is still in normal order.
PBWMonomial append(PBWMonomial m, const Letter& x) {
  switch (x.g) {
    case Gen::E2: m.rhop = 1; break;
    case Gen::E3: m.sigmap = 1; break;
    case Gen::E1: ++m.t; break;
    case Gen::K: m.a1 += x.a; m.a2 += x.b; break;
    case Gen::F1: ++m.p; break;
    case Gen::F3: m.sigma = 1; break;
    case Gen::F2: m.rho = 1; break;
  }
  return m;
}

using MemoKey = std::tuple<int, PBWMonomial, Letter>;

std::map<MemoKey, AlgebraElement>& memo() {
  thread_local std::map<MemoKey, AlgebraElement> table;
  return table;
}

}  // namespace

int root_weight(Gen g, int i) {
  if (g == Gen::K) return 0;
  return is_f(g) ? -cartan_entry(g, i) : cartan_entry(g, i);
}

std::pair<int, int> PBWMonomial::grading() const {
  int w1 = 0;
  int w2 = 0;
  auto add = [&](Gen g, int count) {
    w1 += count * root_weight(g, 1);
    w2 += count * root_weight(g, 2);
  };
  add(Gen::F2, rho);
  add(Gen::F3, sigma);
  add(Gen::F1, p);
  add(Gen::E1, t);
  add(Gen::E3, sigmap);
  add(Gen::E2, rhop);
  return {w1, w2};
}

Word PBWMonomial::word() const {
  Word w;
  if (rho) w.push_back({Gen::F2});
  if (sigma) w.push_back({Gen::F3});
  for (int i = 0; i < p; ++i) w.push_back({Gen::F1});
  if (a1 != 0 || a2 != 0) w.push_back({Gen::K, a1, a2});
  for (int i = 0; i < t; ++i) w.push_back({Gen::E1});
  if (sigmap) w.push_back({Gen::E3});
  if (rhop) w.push_back({Gen::E2});
  return w;
}

bool PBWMonomial::valid() const {
  auto bit = [](int v) { return v == 0 || v == 1; };
  return bit(rho) && bit(sigma) && bit(sigmap) && bit(rhop) && p >= 0 && t >= 0;
}

std::string PBWMonomial::to_string() const {
  std::ostringstream os;
  os << "f2^" << rho << " f3^" << sigma << " f1^" << p << " k1^" << a1 << " k2^" << a2 << " e1^" << t
     << " e3^" << sigmap << " e2^" << rhop;
  return os.str();
}

std::vector<SymbolPower> parse_word(std::string_view text) {
  std::vector<SymbolPower> out;
  std::istringstream is{std::string(text)};
  std::string token;
  while (is >> token) {
    const auto caret = token.find('^');
    const std::string name = token.substr(0, caret);
    int exponent = 1;
    if (caret != std::string::npos) exponent = std::stoi(token.substr(caret + 1));
    static const std::map<std::string, Symbol> names = {
        {"e1", Symbol::E1}, {"e2", Symbol::E2}, {"e3", Symbol::E3}, {"f1", Symbol::F1},
        {"f2", Symbol::F2}, {"f3", Symbol::F3}, {"k1", Symbol::K1}, {"k2", Symbol::K2}};
    auto it = names.find(name);
    if (it == names.end()) throw std::invalid_argument("unknown generator '" + name + "'");
    if (exponent < 0 && it->second != Symbol::K1 && it->second != Symbol::K2) {
      throw std::invalid_argument("negative exponent on non-Cartan generator '" + name + "'");
    }
    out.push_back({it->second, exponent});
  }
  return out;
}

// ---------------------------------------------------------------------------
// AlgebraElement

AlgebraElement::AlgebraElement(std::shared_ptr<const QContext> ctx) : ctx_(std::move(ctx)) {}

AlgebraElement AlgebraElement::scalar(std::shared_ptr<const QContext> ctx, const CycloScalar& c) {
  return monomial(std::move(ctx), PBWMonomial{}, c);
}

AlgebraElement AlgebraElement::monomial(std::shared_ptr<const QContext> ctx, const PBWMonomial& m,
                                        const CycloScalar& c) {
  if (!m.valid()) throw std::invalid_argument("invalid PBW monomial " + m.to_string());
  AlgebraElement out(std::move(ctx));
  out.add_term(m, c);
  return out;
}

CycloScalar AlgebraElement::coefficient(const PBWMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? CycloScalar() : it->second;
}

int AlgebraElement::parity() const {
  int parity = -1;
  for (const auto& [m, c] : terms_) {
    if (parity < 0) parity = m.parity();
    else if (parity != m.parity()) return -1;
  }
  return parity;
}

void AlgebraElement::add_term(const PBWMonomial& m, const CycloScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

namespace {
void check_same(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.ctx() != b.ctx()) throw ContextMismatch("algebra elements live at different roots of unity");
}
}  // namespace

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  check_same(*this, rhs);
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  check_same(*this, rhs);
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(const CycloScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return multiply(a, b); }

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
  return a.ctx() == b.ctx() && a.terms_ == b.terms_;
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "[" + c.to_string() + "] * " + m.to_string();
  }
  return out;
}

// ---------------------------------------------------------------------------
// RewriteSystem

RewriteSystem::RewriteSystem(std::shared_ptr<const QContext> ctx) : ctx_(std::move(ctx)) {}

std::vector<std::pair<CycloScalar, Word>> RewriteSystem::rewrite(const Letter& left, const Letter& right) const {
  const QContext& c = *ctx_;
  const CycloScalar one(1L);
  const CycloScalar minus_one(-1L);
  const CycloScalar& q = c.q();
  const CycloScalar& qi = c.qinv();
  const CycloScalar& dinv = c.qdiff_inv();
  const Letter f1{Gen::F1}, f2{Gen::F2}, f3{Gen::F3}, e1{Gen::E1}, e2{Gen::E2}, e3{Gen::E3};
  auto k = [](int a, int b) { return Letter{Gen::K, a, b}; };

  if (left.g == right.g && is_odd(left.g)) return {};  // odd squares vanish

  // Cartan letters move through root vectors with a q-power.
  if (left.g == Gen::K && is_f(right.g)) {
    const int w = left.a * root_weight(right.g, 1) + left.b * root_weight(right.g, 2);
    return {{c.qpow(w), {right, left}}};
  }
  if (right.g == Gen::K && !is_f(left.g) && left.g != Gen::K) {
    const int w = right.a * root_weight(left.g, 1) + right.b * root_weight(left.g, 2);
    return {{c.qpow(-w), {right, left}}};
  }

  using P = std::pair<Gen, Gen>;
  const P pair{left.g, right.g};
  // f-block
  if (pair == P{Gen::F3, Gen::F2}) return {{-qi, {f2, f3}}};
  if (pair == P{Gen::F1, Gen::F2}) return {{qi, {f2, f1}}, {-qi, {f3}}};
  if (pair == P{Gen::F1, Gen::F3}) return {{q, {f3, f1}}};
  // e-block
  if (pair == P{Gen::E3, Gen::E1}) return {{qi, {e1, e3}}};
  if (pair == P{Gen::E2, Gen::E1}) return {{q, {e1, e2}}, {-q, {e3}}};
  if (pair == P{Gen::E2, Gen::E3}) return {{-q, {e3, e2}}};
  // mixed e/f exchanges
  if (pair == P{Gen::E1, Gen::F2}) return {{one, {f2, e1}}};
  if (pair == P{Gen::E1, Gen::F3}) return {{one, {f3, e1}}, {-q, {f2, k(1, 0)}}};
  if (pair == P{Gen::E1, Gen::F1}) return {{one, {f1, e1}}, {dinv, {k(1, 0)}}, {-dinv, {k(-1, 0)}}};
  if (pair == P{Gen::E3, Gen::F2}) return {{minus_one, {f2, e3}}, {one, {k(0, 1), e1}}};
  if (pair == P{Gen::E3, Gen::F3}) return {{minus_one, {f3, e3}}, {dinv, {k(1, 1)}}, {-dinv, {k(-1, -1)}}};
  if (pair == P{Gen::E3, Gen::F1}) return {{one, {f1, e3}}, {-qi, {k(-1, 0), e2}}};
  if (pair == P{Gen::E2, Gen::F2}) return {{minus_one, {f2, e2}}, {dinv, {k(0, 1)}}, {-dinv, {k(0, -1)}}};
  if (pair == P{Gen::E2, Gen::F3}) return {{minus_one, {f3, e2}}, {one, {f1, k(0, -1)}}};
  if (pair == P{Gen::E2, Gen::F1}) return {{one, {f1, e2}}};

  throw std::logic_error("rewrite called on a pair that is already in normal order");
}

AlgebraElement RewriteSystem::right_multiply(const PBWMonomial& m, const Letter& x) const {
  if (x.g == Gen::K && x.a == 0 && x.b == 0) return AlgebraElement::monomial(ctx_, m);
  const auto last = last_letter(m);
  if (!last || order(last->g) < order(x.g) ||
      (last->g == x.g && (x.g == Gen::F1 || x.g == Gen::E1 || x.g == Gen::K))) {
    return AlgebraElement::monomial(ctx_, append(m, x));
  }
  if (last->g == x.g) return AlgebraElement(ctx_);  // odd square

  const MemoKey key{ctx_->l(), m, x};
  auto& table = memo();
  if (auto it = table.find(key); it != table.end()) return it->second;

  const PBWMonomial head = drop_last(m, last->g);
  AlgebraElement out(ctx_);
  for (const auto& [coeff, word] : rewrite(*last, x)) {
    AlgebraElement partial = AlgebraElement::monomial(ctx_, head, coeff);
    for (const auto& letter : word) partial = right_multiply(partial, letter);
    out += partial;
  }
  table.emplace(key, out);
  return out;
}

AlgebraElement RewriteSystem::right_multiply(const AlgebraElement& a, const Letter& x) const {
  AlgebraElement out(ctx_);
  for (const auto& [m, c] : a.terms()) {
    const AlgebraElement image = right_multiply(m, x);
    for (const auto& [m2, c2] : image.terms()) out.add_term(m2, c * c2);
  }
  return out;
}

AlgebraElement RewriteSystem::normal_form(const Word& word, const CycloScalar& coeff) const {
  AlgebraElement out = AlgebraElement::scalar(ctx_, coeff);
  for (const auto& letter : word) out = right_multiply(out, letter);
  return out;
}

// ---------------------------------------------------------------------------
// Free operations

namespace {

AlgebraElement times_symbol(const RewriteSystem& rs, const AlgebraElement& a, Symbol s) {
  const QContext& ctx = *rs.ctx_ptr();
  switch (s) {
    case Symbol::E1: return rs.right_multiply(a, Letter{Gen::E1});
    case Symbol::E2: return rs.right_multiply(a, Letter{Gen::E2});
    case Symbol::F1: return rs.right_multiply(a, Letter{Gen::F1});
    case Symbol::F2: return rs.right_multiply(a, Letter{Gen::F2});
    case Symbol::K1: return rs.right_multiply(a, Letter{Gen::K, 1, 0});
    case Symbol::K2: return rs.right_multiply(a, Letter{Gen::K, 0, 1});
    case Symbol::E3: {
      // e3 = e1 e2 - q^{-1} e2 e1
      AlgebraElement x = rs.right_multiply(rs.right_multiply(a, Letter{Gen::E1}), Letter{Gen::E2});
      AlgebraElement y = rs.right_multiply(rs.right_multiply(a, Letter{Gen::E2}), Letter{Gen::E1});
      return x - y * ctx.qinv();
    }
    case Symbol::F3: {
      // f3 = f2 f1 - q f1 f2
      AlgebraElement x = rs.right_multiply(rs.right_multiply(a, Letter{Gen::F2}), Letter{Gen::F1});
      AlgebraElement y = rs.right_multiply(rs.right_multiply(a, Letter{Gen::F1}), Letter{Gen::F2});
      return x - y * ctx.q();
    }
  }
  return a;
}

}  // namespace

AlgebraElement from_word(std::shared_ptr<const QContext> ctx, const std::vector<SymbolPower>& word) {
  RewriteSystem rs(ctx);
  AlgebraElement out = AlgebraElement::scalar(ctx, CycloScalar(1L));
  for (const auto& [symbol, exponent] : word) {
    if (symbol == Symbol::K1) {
      out = rs.right_multiply(out, Letter{Gen::K, exponent, 0});
      continue;
    }
    if (symbol == Symbol::K2) {
      out = rs.right_multiply(out, Letter{Gen::K, 0, exponent});
      continue;
    }
    if (exponent < 0) throw std::invalid_argument("negative power of a root vector");
    for (int i = 0; i < exponent; ++i) out = times_symbol(rs, out, symbol);
  }
  return out;
}

AlgebraElement from_word(std::shared_ptr<const QContext> ctx, std::string_view text) {
  return from_word(std::move(ctx), parse_word(text));
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
  check_same(a, b);
  RewriteSystem rs(a.ctx_ptr());
  AlgebraElement out(a.ctx_ptr());
  for (const auto& [m, c] : b.terms()) {
    AlgebraElement partial = a;
    for (const auto& letter : m.word()) partial = rs.right_multiply(partial, letter);
    partial *= c;
    out += partial;
  }
  return out;
}

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) {
  return multiply(a, b) - multiply(b, a);
}

AlgebraElement casimir_element(std::shared_ptr<const QContext> ctx, int p) {
  const QContext& c = *ctx;
  auto K = [&](int a, int b, const CycloScalar& coeff) {
    return AlgebraElement::monomial(ctx, PBWMonomial{.a1 = a, .a2 = b}, coeff);
  };
  auto W = [&](std::string_view w) { return from_word(ctx, w); };
  const CycloScalar one(1L);
  const CycloScalar& d = c.qdiff();
  const CycloScalar d2 = d * d;

  // (q-q^-1)^2 [h1+h2+1][h2] = (q k1 k2 - q^-1 k1^-1 k2^-1)(k2 - k2^-1)
  AlgebraElement inner = multiply(K(1, 1, c.q()) - K(-1, -1, c.qinv()), K(0, 1, one) - K(0, -1, one));
  // - (q-q^-1)^2 f1 e1
  inner -= W("f1 e1") * d2;
  // (q-q^-1)^2 f2 e2 ([h1+h2] q^{1-2p} - [h1+h2+1])
  {
    AlgebraElement cartan = (K(1, 1, one) - K(-1, -1, one)) * c.qpow(1 - 2 * p) - (K(1, 1, c.q()) - K(-1, -1, c.qinv()));
    inner += multiply(W("f2 e2"), cartan) * d;
  }
  // (q-q^-1)^2 f3 e3 ([h2-2] q^{1-2p} - [h2-1])
  {
    AlgebraElement cartan = (K(0, 1, c.qpow(-2)) - K(0, -1, c.qpow(2))) * c.qpow(1 - 2 * p) -
                            (K(0, 1, c.qinv()) - K(0, -1, c.q()));
    inner += multiply(W("f3 e3"), cartan) * d;
  }
  // (q-q^-1)^3 q^{-1-p} [p] f3 e2 e1 k2
  inner += W("f3 e2 e1 k2") * (d2 * d * c.qpow(-1 - p) * qint(c, p));
  // (q-q^-1)^3 q^{2-p} [p-1] f1 f2 e3 k2^-1
  inner += W("f1 f2 e3 k2^-1") * (d2 * d * c.qpow(2 - p) * qint(c, p - 1));
  // (q-q^-1)^4 q^{1-2p} [p][p-1] f2 f3 e3 e2
  inner += W("f2 f3 e3 e2") * (d2 * d2 * c.qpow(1 - 2 * p) * qint(c, p) * qint(c, p - 1));

  return multiply(K(2 * p - 1, 4 * p - 2, one), inner);
}

CentralPowers central_powers(std::shared_ptr<const QContext> ctx) {
  const int l = ctx->l();
  return {AlgebraElement::monomial(ctx, PBWMonomial{.a1 = l}), AlgebraElement::monomial(ctx, PBWMonomial{.a2 = l}),
          AlgebraElement::monomial(ctx, PBWMonomial{.t = l}), AlgebraElement::monomial(ctx, PBWMonomial{.p = l})};
}

AlgebraElement apply_psi(const AlgebraElement& a) {
  const auto& ctx = a.ctx_ptr();
  const QContext& c = *ctx;
  RewriteSystem rs(ctx);
  AlgebraElement out(ctx);
  for (const auto& [m, coeff] : a.terms()) {
    AlgebraElement image = AlgebraElement::scalar(ctx, coeff);
    for (const auto& letter : m.word()) {
      switch (letter.g) {
        case Gen::F1: image = rs.right_multiply(image, Letter{Gen::E1}); break;
        case Gen::E1: image = rs.right_multiply(image, Letter{Gen::F1}); break;
        case Gen::F2: image = rs.right_multiply(image, Letter{Gen::E2}); break;
        case Gen::E2: image = rs.right_multiply(image, Letter{Gen::F2}); break;
        case Gen::K: {
          image = rs.right_multiply(image, Letter{Gen::K, -letter.a, -letter.b});
          if (letter.b % 2 != 0) image *= CycloScalar(-1L);
          break;
        }
        case Gen::F3: {
          // psi(f3) = psi(f2 f1 - q f1 f2) = e2 e1 - q e1 e2
          AlgebraElement x = rs.right_multiply(rs.right_multiply(image, Letter{Gen::E2}), Letter{Gen::E1});
          AlgebraElement y = rs.right_multiply(rs.right_multiply(image, Letter{Gen::E1}), Letter{Gen::E2});
          image = x - y * c.q();
          break;
        }
        case Gen::E3: {
          // psi(e3) = psi(e1 e2 - q^-1 e2 e1) = f1 f2 - q^-1 f2 f1
          AlgebraElement x = rs.right_multiply(rs.right_multiply(image, Letter{Gen::F1}), Letter{Gen::F2});
          AlgebraElement y = rs.right_multiply(rs.right_multiply(image, Letter{Gen::F2}), Letter{Gen::F1});
          image = x - y * c.qinv();
          break;
        }
      }
    }
    out += image;
  }
  return out;
}

std::vector<std::pair<std::string, AlgebraElement>> relation_elements(std::shared_ptr<const QContext> ctx) {
  const QContext& c = *ctx;
  auto W = [&](std::string_view w) { return from_word(ctx, w); };
  auto bracket = [&](int a, int b) {
    // (k1^a k2^b - k1^-a k2^-b) / (q - q^-1)
    return (AlgebraElement::monomial(ctx, PBWMonomial{.a1 = a, .a2 = b}) -
            AlgebraElement::monomial(ctx, PBWMonomial{.a1 = -a, .a2 = -b})) *
           c.qdiff_inv();
  };
  const CycloScalar qq = c.q() + c.qinv();
  const AlgebraElement one = AlgebraElement::scalar(ctx, CycloScalar(1L));

  std::vector<std::pair<std::string, AlgebraElement>> out;
  out.emplace_back("k1 k2 = k2 k1", W("k1 k2") - W("k2 k1"));
  out.emplace_back("k1 k1^-1 = 1", W("k1 k1^-1") - one);
  out.emplace_back("k2 k2^-1 = 1", W("k2 k2^-1") - one);
  const char* names[2] = {"k1", "k2"};
  const char* roots[2] = {"1", "2"};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const std::string ki = names[i];
      const std::string ej = std::string("e") + roots[j];
      const std::string fj = std::string("f") + roots[j];
      const int a = kCartan[i][j];
      out.emplace_back(ki + " " + ej + " " + ki + "^-1 = q^a " + ej,
                       W(ki + " " + ej + " " + ki + "^-1") - W(ej) * c.qpow(a));
      out.emplace_back(ki + " " + fj + " " + ki + "^-1 = q^-a " + fj,
                       W(ki + " " + fj + " " + ki + "^-1") - W(fj) * c.qpow(-a));
    }
  }
  out.emplace_back("e1 f1 - f1 e1 = [k1]", W("e1 f1") - W("f1 e1") - bracket(1, 0));
  out.emplace_back("e2 f2 + f2 e2 = [k2]", W("e2 f2") + W("f2 e2") - bracket(0, 1));
  out.emplace_back("e1 f2 = f2 e1", W("e1 f2") - W("f2 e1"));
  out.emplace_back("e2 f1 = f1 e2", W("e2 f1") - W("f1 e2"));
  out.emplace_back("e2^2 = 0", W("e2 e2"));
  out.emplace_back("f2^2 = 0", W("f2 f2"));
  out.emplace_back("serre e", W("e1 e1 e2") - W("e1 e2 e1") * qq + W("e2 e1 e1"));
  out.emplace_back("serre f", W("f1 f1 f2") - W("f1 f2 f1") * qq + W("f2 f1 f1"));
  out.emplace_back("e1 e3 = q e3 e1", W("e1 e3") - W("e3 e1") * c.q());
  out.emplace_back("f3 f1 = q^-1 f1 f3", W("f3 f1") - W("f1 f3") * c.qinv());
  out.emplace_back("e2 e3 = -q e3 e2", W("e2 e3") + W("e3 e2") * c.q());
  out.emplace_back("f3 f2 = -q^-1 f2 f3", W("f3 f2") + W("f2 f3") * c.qinv());
  out.emplace_back("e3 f3 + f3 e3 = [k1 k2]", W("e3 f3") + W("f3 e3") - bracket(1, 1));
  out.emplace_back("e3^2 = 0", W("e3 e3"));
  out.emplace_back("f3^2 = 0", W("f3 f3"));
  return out;
}

}  // namespace qsl21
