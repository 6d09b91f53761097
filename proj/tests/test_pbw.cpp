#include <random>

#include "doctest.h"
#include "qsl21/pbw.hpp"

using namespace qsl21;

namespace {

AlgebraElement W(const std::shared_ptr<const QContext>& ctx, std::string_view w) { return from_word(ctx, w); }

PBWMonomial random_monomial(std::mt19937& rng) {
  std::uniform_int_distribution<int> bit(0, 1), small(0, 3), k(-2, 2);
  return PBWMonomial{bit(rng), bit(rng), small(rng), k(rng), k(rng), small(rng), bit(rng), bit(rng)};
}

AlgebraElement random_element(std::mt19937& rng, const std::shared_ptr<const QContext>& ctx, int terms) {
  std::uniform_int_distribution<int> coeff(-4, 4), qp(0, ctx->l() - 1);
  AlgebraElement out(ctx);
  for (int i = 0; i < terms; ++i) {
    out.add_term(random_monomial(rng), CycloScalar(static_cast<long>(coeff(rng))) * ctx->qpow(qp(rng)));
  }
  return out;
}

}  // namespace

TEST_CASE("basic normal forms") {
  auto ctx = make_context(3);
  CHECK(W(ctx, "e2 e2").is_zero());
  CHECK(W(ctx, "f2 f2").is_zero());
  CHECK(W(ctx, "e1 f2") == AlgebraElement::monomial(ctx, PBWMonomial{.rho = 1, .t = 1}));
  const AlgebraElement bracket = (AlgebraElement::monomial(ctx, PBWMonomial{.a2 = 1}) -
                                  AlgebraElement::monomial(ctx, PBWMonomial{.a2 = -1})) *
                                 ctx->qdiff_inv();
  CHECK(W(ctx, "e2 f2") == AlgebraElement::monomial(ctx, PBWMonomial{.rho = 1, .rhop = 1}, CycloScalar(-1L)) + bracket);
  CHECK(W(ctx, "k1 k1^-1") == AlgebraElement::scalar(ctx, CycloScalar(1L)));
  CHECK(W(ctx, "e3 e1") == W(ctx, "e1 e3") * ctx->qinv());
  CHECK(W(ctx, "e2 e3") == W(ctx, "e3 e2") * (-ctx->q()));
  CHECK(W(ctx, "e3") == AlgebraElement::monomial(ctx, PBWMonomial{.sigmap = 1}));
  CHECK(W(ctx, "f3") == AlgebraElement::monomial(ctx, PBWMonomial{.sigma = 1}));
  CHECK_THROWS(parse_word("e4"));
  CHECK_THROWS(parse_word("e1^-1"));
}

TEST_CASE("unit law and context mismatch") {
  auto c3 = make_context(3);
  auto c5 = make_context(5);
  std::mt19937 rng(3);
  AlgebraElement b = random_element(rng, c3, 4);
  CHECK(multiply(AlgebraElement::scalar(c3, CycloScalar(1L)), b) == b);
  CHECK(multiply(b, AlgebraElement::scalar(c3, CycloScalar(1L))) == b);
  CHECK_THROWS_AS(multiply(b, AlgebraElement::scalar(c5, CycloScalar(1L))), ContextMismatch);
}

TEST_CASE("defining relations normal-form to zero") {
  for (int l : {3, 4, 5, 6, 7}) {
    auto ctx = make_context(l);
    for (const auto& [name, element] : relation_elements(ctx)) {
      INFO("l = " << l << ", relation " << name << " -> " << element.to_string());
      CHECK(element.is_zero());
    }
  }
}

TEST_CASE("associativity on random monomial triples") {
  std::mt19937 rng(77);
  for (int l : {3, 4, 5}) {
    auto ctx = make_context(l);
    const int trials = l == 3 ? 120 : 40;
    for (int trial = 0; trial < trials; ++trial) {
      auto a = AlgebraElement::monomial(ctx, random_monomial(rng));
      auto b = AlgebraElement::monomial(ctx, random_monomial(rng));
      auto c = AlgebraElement::monomial(ctx, random_monomial(rng));
      CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    }
  }
}

TEST_CASE("straightening identities for f-words") {
  // f1^p f2 = q^-p f2 f1^p - q^-1 [p] f3 f1^{p-1}
  // f1^p f3 = q^p f3 f1^p
  // f1^p f2 f3 = f2 f3 f1^p
  for (int l : {3, 5}) {
    auto ctx = make_context(l);
    const QContext& c = *ctx;
    for (int p = 0; p <= 4; ++p) {
      auto f1p = AlgebraElement::monomial(ctx, PBWMonomial{.p = p});
      auto f2 = W(ctx, "f2");
      auto f3 = W(ctx, "f3");
      auto f2f3 = W(ctx, "f2 f3");
      AlgebraElement rhs1 = multiply(f2, f1p) * c.qpow(-p);
      if (p > 0) rhs1 -= multiply(f3, AlgebraElement::monomial(ctx, PBWMonomial{.p = p - 1})) * (c.qinv() * qint(c, p));
      CHECK(multiply(f1p, f2) == rhs1);
      CHECK(multiply(f1p, f3) == multiply(f3, f1p) * c.qpow(p));
      CHECK(multiply(f1p, f2f3) == multiply(f2f3, f1p));
    }
  }
}

TEST_CASE("Casimir elements") {
  for (int l : {3, 4, 5}) {
    auto ctx = make_context(l);
    const auto gens = {W(ctx, "e1"), W(ctx, "e2"), W(ctx, "f1"), W(ctx, "f2"), W(ctx, "k1"), W(ctx, "k2")};
    for (int p = 1; p <= 3; ++p) {
      auto cp = casimir_element(ctx, p);
      CHECK(cp.parity() == 0);
      for (const auto& [m, coeff] : cp.terms()) CHECK(m.grading() == std::pair{0, 0});
      for (const auto& g : gens) {
        INFO("l = " << l << " p = " << p);
        CHECK(commutator(cp, g).is_zero());
      }
    }
  }
  auto ctx = make_context(3);
  auto c1 = casimir_element(ctx, 1);
  for (const auto& [m, coeff] : c1.terms()) CHECK_FALSE((m.p == 1 && m.rho == 1 && m.sigmap == 1));
  const CycloScalar d = ctx->qdiff();
  CHECK(c1.coefficient(PBWMonomial{.p = 1, .a1 = 1, .a2 = 2, .t = 1}) == -(d * d));
}

TEST_CASE("central powers") {
  for (int l : {3, 4, 5}) {
    auto ctx = make_context(l);
    auto [z1, z2, x1, y1] = central_powers(ctx);
    CHECK(multiply(z1, AlgebraElement::monomial(ctx, PBWMonomial{.a1 = -l})) == AlgebraElement::scalar(ctx, CycloScalar(1L)));
    for (const char* g : {"e1", "e2", "f1", "f2", "k1", "k2"}) {
      CHECK(commutator(x1, W(ctx, g)).is_zero());
      CHECK(commutator(y1, W(ctx, g)).is_zero());
      CHECK(commutator(z1, W(ctx, g)).is_zero());
      CHECK(commutator(z2, W(ctx, g)).is_zero());
    }
  }
}

TEST_CASE("psi is an involutive automorphism") {
  for (int l : {3, 4, 5}) {
    auto ctx = make_context(l);
    CHECK(apply_psi(W(ctx, "k2")) == AlgebraElement::monomial(ctx, PBWMonomial{.a2 = -1}, CycloScalar(-1L)));
    CHECK(apply_psi(apply_psi(W(ctx, "k2"))) == W(ctx, "k2"));
    CHECK(apply_psi(central_powers(ctx).y1) == central_powers(ctx).x1);
    CHECK(apply_psi(W(ctx, "f3")) == W(ctx, "e3") * (-ctx->q()));
    for (const auto& [name, element] : relation_elements(ctx)) {
      INFO(name);
      CHECK(apply_psi(element).is_zero());
    }
    // images of the relation words themselves, before normal-forming
    CHECK((apply_psi(W(ctx, "e2 f2")) + apply_psi(W(ctx, "f2 e2")) -
           apply_psi((W(ctx, "k2") - W(ctx, "k2^-1")) * ctx->qdiff_inv()))
              .is_zero());
    std::mt19937 rng(l);
    for (int trial = 0; trial < 50; ++trial) {
      auto a = random_element(rng, ctx, 3);
      CHECK(apply_psi(apply_psi(a)) == a);
    }
    for (int trial = 0; trial < 20; ++trial) {
      auto a = random_element(rng, ctx, 2);
      auto b = random_element(rng, ctx, 2);
      CHECK(apply_psi(multiply(a, b)) == multiply(apply_psi(a), apply_psi(b)));
    }
  }
}
