#include <random>

#include "doctest.h"
#include "qsl21/families.hpp"

using namespace qsl21;

namespace {

Matrix power(const Matrix& a, int n) {
  Matrix out = Matrix::identity(a.rows());
  for (int i = 0; i < n; ++i) out = out * a;
  return out;
}

bool commutes_with_generators(const Matrix& c, const ModuleRep& m) {
  for (const Matrix* g : m.algebra_generators()) {
    if (!(c * *g == *g * c)) return false;
  }
  return true;
}

std::size_t index_of(const ModuleRep& m, int rho, int sigma, int p) {
  for (std::size_t i = 0; i < m.dim(); ++i) {
    const auto& w = m.basis()[i];
    if (w.rho == rho && w.sigma == sigma && w.p == p) return i;
  }
  FAIL("no basis vector w_" << rho << sigma << p);
  return 0;
}

Vector unit(const ModuleRep& m, int rho, int sigma, int p) {
  Vector v(m.dim());
  v[index_of(m, rho, sigma, p)] = CycloScalar(1L);
  return v;
}

bool singular(const ModuleRep& m, const Vector& v) {
  return !is_zero(v) && is_zero(m.e1().apply(v)) && is_zero(m.e2().apply(v));
}

bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  for (const auto& v : a)
    if (!in_span(b, v)) return false;
  for (const auto& v : b)
    if (!in_span(a, v)) return false;
  return true;
}

std::vector<Vector> proper_singular(const ModuleRep& m) {
  std::vector<Vector> out;
  for (const auto& s : singular_vectors(m))
    if (s.proper) out.push_back(s.v);
  return out;
}

ModuleRep direct_sum(const ModuleRep& a, const ModuleRep& b) {
  const std::size_t n = a.dim() + b.dim();
  auto block = [&](const Matrix& x, const Matrix& y) {
    Matrix out(n, n);
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = x(i, j);
    for (std::size_t i = 0; i < b.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j) out(a.dim() + i, a.dim() + j) = y(i, j);
    return out;
  };
  const auto& x = a.mats();
  const auto& y = b.mats();
  GeneratorMatrices g{block(x.k1, y.k1), block(x.k1inv, y.k1inv), block(x.k2, y.k2), block(x.k2inv, y.k2inv),
                      block(x.e1, y.e1),   block(x.f1, y.f1),       block(x.e2, y.e2), block(x.f2, y.f2)};
  auto basis = a.basis();
  basis.insert(basis.end(), b.basis().begin(), b.basis().end());
  return ModuleRep(a.ctx_ptr(), a.spec(), a.kind(), basis, g);
}

ModuleRep conjugated(const ModuleRep& m, const Matrix& p) {
  const Matrix pinv = inverse(p);
  auto c = [&](const Matrix& x) { return p * x * pinv; };
  const auto& g = m.mats();
  return ModuleRep(m.ctx_ptr(), m.spec(), m.kind(), m.basis(),
                   GeneratorMatrices{c(g.k1), c(g.k1inv), c(g.k2), c(g.k2inv), c(g.e1), c(g.f1), c(g.e2), c(g.f2)});
}

// Both sides of the centre relation computed straight from the matrices.
struct CentreSides {
  CycloScalar lhs, rhs, lhs_rescaled, rhs_rescaled;
};

CentreSides centre_sides(const ModuleRep& m) {
  const QContext& ctx = m.ctx();
  const int l = ctx.l();
  std::vector<CycloScalar> c, c_rescaled;
  for (int p = 1; p <= l; ++p) {
    c.push_back(casimir_scalar(m, p));
    c_rescaled.push_back(-ctx.qpow(2 * p - 1) * c.back());
  }
  const CycloScalar z1 = *power(m.k1(), l).scalar_value();
  const CycloScalar z2 = *power(m.k2(), l).scalar_value();
  const CycloScalar x1 = *power(m.e1(), l).scalar_value();
  const CycloScalar y1 = *power(m.f1(), l).scalar_value();
  const CycloScalar d = ctx.qdiff().pow(2 * l);
  const CycloScalar one(1L);
  const CycloScalar base = (one - z1 * z1 * z2 * z2) * (z2 * z2 - one);
  return {centre_poly(ctx, c), base - d * z1 * z1 * z2.pow(4) * y1 * x1, centre_poly(ctx, c_rescaled),
          base + d * z1 * z2 * z2 * y1 * x1};
}

}  // namespace

TEST_CASE("eval agrees with matrix products") {
  auto ctx = make_context(5);
  ParameterSampler sampler(3);
  const ModuleRep m = build(sampler.draw(*ctx, Family::Sl21TypicalPeriodic));
  CHECK(eval(from_word(ctx, "e1 f2 k1"), m) == m.e1() * m.f2() * m.k1());
  CHECK(eval(from_word(ctx, "f3"), m) == m.f3());
  CHECK(eval(from_word(ctx, "e3 e1 k2^-1"), m) == m.e3() * m.e1() * m.k2inv());
  CHECK(m.e3() == m.e1() * m.e2() - ctx->qinv() * m.e2() * m.e1());
}

TEST_CASE("Casimir centrality and eigenvalues") {
  for (int l = 3; l <= 7; ++l) {
    auto ctx = make_context(l);
    ParameterSampler sampler(13 * l);
    std::vector<RepSpec> specs;
    for (Family f : {Family::Sl21TypicalNilpotent, Family::Sl21AtypicalMu2, Family::Sl21AtypicalSum}) {
      specs.push_back(sampler.draw(*ctx, f));
      specs.push_back(sampler.draw(*ctx, f, std::nullopt, true));
    }
    specs.push_back(sampler.draw(*ctx, Family::Sl21TypicalPeriodic));
    specs.push_back(sampler.draw(*ctx, Family::Sl21AtypicalPeriodic));
    for (const auto& s : specs) {
      const ModuleRep m = build(s);
      INFO("l = " << l << " " << family_name(s.family));
      for (int p = 1; p <= l; ++p) {
        const Matrix c = eval(cached_casimir(ctx, p), m);
        CHECK(commutes_with_generators(c, m));
        const auto value = c.scalar_value();
        REQUIRE(value.has_value());
        CHECK(*value == expected_casimir(*ctx, s, p));
      }
      for (const Matrix* g : {&m.k1(), &m.k2(), &m.e1(), &m.f1()}) {
        CHECK(commutes_with_generators(power(*g, l), m));
      }
    }
  }
}

TEST_CASE("casimir_scalar rejects non-scalar operators") {
  auto ctx = make_context(3);
  ParameterSampler sampler(1);
  const ModuleRep a = build(sampler.draw(*ctx, Family::Sl21TypicalPeriodic));
  const ModuleRep b = build(sampler.draw(*ctx, Family::Sl21TypicalPeriodic));
  CHECK_THROWS_AS(casimir_scalar(direct_sum(a, b), 1), NotScalar);
  CHECK_THROWS_AS(central_scalar(from_word(ctx, "e1"), a, "e1"), NotScalar);
}

TEST_CASE("relation audit detects corruption") {
  auto ctx = make_context(5);
  ParameterSampler sampler(2);
  const ModuleRep m = build(sampler.draw(*ctx, Family::Sl21TypicalNilpotent));
  const auto good = audit_relations(m);
  REQUIRE(good.size() == 13);
  CHECK(audit_passes(good));
  for (const auto& c : good) CHECK(c.residual_max == 0.0);
  const auto bad = audit_relations(corrupted(m));
  CHECK_FALSE(audit_passes(bad));
  std::size_t failing = 0;
  for (const auto& c : bad) failing += c.holds ? 0 : 1;
  CHECK(failing > 0);

  const ModuleRep v0 = build(base_spec(m.spec()));
  const auto gl2 = audit_relations(v0);
  REQUIRE(gl2.size() == 13);
  for (std::size_t i = 0; i < gl2.size(); ++i) CHECK(gl2[i].applicable == (i < 3));
}

TEST_CASE("Burnside closure") {
  auto ctx = make_context(3);
  ParameterSampler sampler(6);
  const ModuleRep a = build(sampler.draw(*ctx, Family::Sl21TypicalPeriodic));
  const ModuleRep b = build(sampler.draw(*ctx, Family::Sl21TypicalNilpotent, 2));
  const auto ra = burnside(a);
  CHECK(ra.full);
  CHECK(ra.dim == 144);
  CHECK(ra.method == "modp");
  // inequivalent simple summands: End(a) x End(b)
  const auto rs = burnside(direct_sum(a, b));
  CHECK_FALSE(rs.full);
  CHECK(rs.dim == 144 + 64);
  // equivalent summands: the diagonal copy of End(a)
  CHECK(burnside_dim(direct_sum(a, a)) == 144);
}

TEST_CASE("intertwiners") {
  auto ctx = make_context(3);
  ParameterSampler sampler(8);
  const ModuleRep a = build(sampler.draw(*ctx, Family::Sl21AtypicalSum, 2));
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> entry(-3, 3);
  Matrix p(a.dim(), a.dim());
  do {
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) p(i, j) = CycloScalar(static_cast<long>(entry(rng)));
  } while (determinant(p).is_zero());
  const ModuleRep b = conjugated(a, p);
  const auto x = find_intertwiner(a, b);
  REQUIRE(x.has_value());
  CHECK_FALSE(determinant(*x).is_zero());
  for (auto [ga, gb] : {std::pair{&a.e1(), &b.e1()}, {&a.f2(), &b.f2()}, {&a.k1(), &b.k1()}}) {
    CHECK(*x * *ga == *gb * *x);
  }
  const ModuleRep other = build(sampler.draw(*ctx, Family::Sl21AtypicalSum, 2));
  if (!(*other.spec().epsilon == *a.spec().epsilon && *other.spec().omega == *a.spec().omega)) {
    CHECK_FALSE(find_intertwiner(a, other).has_value());
  }
}

TEST_CASE("singular vectors and quotients of induced modules") {
  for (int l = 3; l <= 7; ++l) {
    auto ctx = make_context(l);
    const int lp = ctx->lprime();
    ParameterSampler sampler(23 * l);
    auto check_quotient = [&](const RepSpec& s, const ModuleRep& mp, const std::vector<Vector>& sub) {
      const auto maximal = maximal_submodule(mp);
      CHECK(same_span(maximal, sub));
      const ModuleRep q = quotient(mp, maximal);
      CHECK(audit_passes(audit_relations(q)));
      const ModuleRep closed = build(s);
      CHECK(q.dim() == closed.dim());
      const auto x = find_intertwiner(q, closed);
      REQUIRE(x.has_value());
      CHECK_FALSE(determinant(*x).is_zero());
    };

    {  // [mu2] = 0, type A
      for (int N = 1; N <= lp; ++N) {
        INFO("l = " << l << " N = " << N);
        const RepSpec s = complete_spec(*ctx, sampler.draw(*ctx, Family::Sl21AtypicalMu2, N));
        const ModuleRep mp = induce(build(base_spec(s)));
        const Vector w100 = unit(mp, 1, 0, 0);
        CHECK(singular(mp, w100));
        const auto generated = submodule_generated(mp, w100);
        std::vector<Vector> expected_singular{w100};
        std::vector<Vector> sub = generated;
        if (N < lp) {
          CHECK(generated.size() == static_cast<std::size_t>(2 * N + 1));
        } else {
          CHECK(generated.size() == static_cast<std::size_t>(2 * lp));
          const Vector f1w = mp.f1().apply(w100);
          CHECK(singular(mp, f1w));
          expected_singular.push_back(f1w);
          const Vector w = unit(mp, 0, 1, lp - 1);
          CHECK_FALSE(in_span(generated, w));
          CHECK(in_span(generated, mp.e1().apply(w)));
          CHECK(in_span(generated, mp.e2().apply(w)));
          auto with_generated = subsingular_vectors(mp, generated);
          with_generated.insert(with_generated.end(), generated.begin(), generated.end());
          CHECK(in_span(with_generated, w));
          sub = submodule_generated(mp, std::vector<Vector>{w100, w});
          CHECK(sub.size() == static_cast<std::size_t>(2 * lp + 1));
        }
        CHECK(same_span(proper_singular(mp), expected_singular));
        check_quotient(s, mp, sub);
      }
    }

    {  // [mu1 + mu2 + 1] = 0, type A
      for (int N = 1; N < lp; ++N) {
        INFO("l = " << l << " N = " << N);
        const RepSpec s = complete_spec(*ctx, sampler.draw(*ctx, Family::Sl21AtypicalSum, N));
        const ModuleRep mp = induce(build(base_spec(s)));
        Vector v;
        if (N == 1) {
          v = unit(mp, 1, 1, 0);
        } else {
          v = Vector(mp.dim());
          v[index_of(mp, 1, 0, 1)] = *s.lambda1 * ctx->q();
          v[index_of(mp, 0, 1, 0)] = qbracket(*ctx, *s.lambda1, 0);
        }
        CHECK(singular(mp, v));
        CHECK(same_span(proper_singular(mp), {v}));
        const auto sub = submodule_generated(mp, v);
        CHECK(sub.size() == static_cast<std::size_t>(2 * N - 1));
        check_quotient(s, mp, sub);
      }
    }

    {  // type B
      for (Family f : {Family::Sl21AtypicalMu2, Family::Sl21AtypicalSum}) {
        INFO("l = " << l << " " << family_name(f));
        const RepSpec s = complete_spec(*ctx, sampler.draw(*ctx, f, std::nullopt, true));
        const ModuleRep mp = induce(build(base_spec(s)));
        Vector v;
        if (f == Family::Sl21AtypicalMu2) {
          v = unit(mp, 1, 0, 0);
        } else {
          v = Vector(mp.dim());
          v[index_of(mp, 1, 0, 1)] = *s.lambda1 * ctx->q();
          v[index_of(mp, 0, 1, 0)] = qbracket(*ctx, *s.lambda1, 0);
        }
        CHECK(singular(mp, v));
        CHECK(same_span(proper_singular(mp), {v}));
        const auto sub = submodule_generated(mp, v);
        CHECK(sub.size() == static_cast<std::size_t>(2 * lp));
        check_quotient(s, mp, sub);
      }
    }

    {  // atypical periodic
      const RepSpec s = complete_spec(*ctx, sampler.draw(*ctx, Family::Sl21AtypicalPeriodic));
      const ModuleRep mp = induce(build(base_spec(s)));
      CHECK(proper_singular(mp).empty());
      const auto maximal = maximal_submodule(mp);
      CHECK(maximal.size() == static_cast<std::size_t>(2 * l));
      check_quotient(s, mp, maximal);
    }

    {  // typical modules have no proper singular vector
      for (bool type_b : {false, true}) {
        const RepSpec s = sampler.draw(*ctx, Family::Sl21TypicalNilpotent, std::nullopt, type_b);
        const ModuleRep mp = induce(build(base_spec(s)));
        CHECK(proper_singular(mp).empty());
        CHECK(maximal_submodule(mp).empty());
      }
    }
  }
}

TEST_CASE("centre relations on a typical periodic module") {
  auto ctx = make_context(3);
  RepSpec s{.family = Family::Sl21TypicalPeriodic, .l = 3, .lambda1 = CycloScalar(2L), .lambda2 = CycloScalar(3L),
            .phi = CycloScalar(5L), .beta = CycloScalar(7L)};
  const ModuleRep m = build(s);
  const CentreReport r = centre_identity(m);
  const CentreSides sides = centre_sides(m);
  CHECK(r.lhs == sides.lhs);
  CHECK(r.rhs == sides.rhs);
  CHECK(r.lhs_rescaled == sides.lhs_rescaled);
  CHECK(r.rhs_rescaled == sides.rhs_rescaled);
  // the relation as literally stated does not hold; the rescaled one does
  CHECK(sides.lhs != sides.rhs);
  CHECK(sides.lhs_rescaled == sides.rhs_rescaled);
  CHECK_FALSE(r.verdicts.at("centre_polynomial"));
  for (const char* v : {"centre_polynomial_rescaled", "gl2_chebyshev", "gl2_chebyshev_v0", "casimir_shift",
                        "casimir_power_shift", "casimir_products"}) {
    INFO(v);
    CHECK(r.verdicts.at(v));
  }
  CHECK(r.cp_scalars.size() == 3);
  CHECK(r.cp_shift_scalars.size() == 3);
  CHECK(r.y1 == CycloScalar(125L));
}

TEST_CASE("centre relations across families") {
  for (int l : {3, 5, 7}) {
    auto ctx = make_context(l);
    ParameterSampler sampler(41 * l);
    for (Family f : {Family::Sl21TypicalPeriodic, Family::Sl21AtypicalPeriodic, Family::Sl21TypicalNilpotent,
                     Family::Sl21AtypicalMu2, Family::Sl21AtypicalSum}) {
      const ModuleRep m = build(sampler.draw(*ctx, f, std::nullopt, true));
      const CentreReport r = centre_identity(m);
      const CentreSides sides = centre_sides(m);
      INFO("l = " << l << " " << family_name(f));
      CHECK(sides.lhs_rescaled == sides.rhs_rescaled);
      CHECK(r.verdicts.at("centre_polynomial_rescaled"));
      CHECK(r.verdicts.at("casimir_shift"));
      CHECK(r.verdicts.at("casimir_power_shift"));
      CHECK(r.verdicts.at("casimir_products"));
      CHECK(r.verdicts.at("gl2_chebyshev"));
      const bool atypical = f != Family::Sl21TypicalPeriodic && f != Family::Sl21TypicalNilpotent;
      if (atypical) {
        for (const auto& c : r.cp_scalars) CHECK(c.is_zero());
        CHECK(r.lhs.is_zero());
      }
    }
  }
}

TEST_CASE("centre identity scope") {
  auto c4 = make_context(4);
  ParameterSampler sampler(4);
  const ModuleRep m = build(sampler.draw(*c4, Family::Sl21TypicalPeriodic));
  CHECK_THROWS_AS(centre_identity(m), DomainError);
  CHECK_NOTHROW(centre_identity(m, true));
  const ModuleRep v0 = build(base_spec(m.spec()));
  CHECK_THROWS_AS(centre_identity(v0, true), std::invalid_argument);
}

TEST_CASE("psi-twisted modules") {
  for (int l : {3, 5}) {
    auto ctx = make_context(l);
    ParameterSampler sampler(61 * l);
    const ModuleRep m = build(sampler.draw(*ctx, Family::Sl21TypicalPeriodic));
    const ModuleRep t = psi_image(m);
    CHECK(audit_passes(audit_relations(t)));
    // e1^l on the twisted module is f1^l on the original
    CHECK(*power(t.e1(), l).scalar_value() == m.spec().phi->pow(l));
    CHECK(power(t.f1(), l) == power(m.e1(), l));
    const ModuleRep back = psi_image(t);
    CHECK(back.e1() == m.e1());
    CHECK(back.k2() == m.k2());
    std::mt19937 rng(l);
    std::uniform_int_distribution<int> bit(0, 1), small(0, 2), k(-1, 1);
    for (int trial = 0; trial < 10; ++trial) {
      AlgebraElement a(ctx);
      for (int term = 0; term < 3; ++term) {
        a.add_term(PBWMonomial{bit(rng), bit(rng), small(rng), k(rng), k(rng), small(rng), bit(rng), bit(rng)},
                   CycloScalar(static_cast<long>(term + 1)));
      }
      CHECK(eval(a, t) == eval(apply_psi(a), m));
    }
    const CentreReport r = centre_identity(t);
    CHECK(r.verdicts.at("centre_polynomial_rescaled"));
    CHECK(r.verdicts.at("casimir_power_shift"));
    CHECK(r.verdicts.at("casimir_products"));
  }
}

TEST_CASE("complete set rank separates periodic from nilpotent samples") {
  auto ctx = make_context(3);
  ParameterSampler sampler(12);
  std::vector<AlgebraElement> elements{AlgebraElement::scalar(ctx, CycloScalar(1L)), from_word(ctx, "e1^3 f1^3")};
  std::vector<ModuleRep> periodic, nilpotent;
  for (int i = 0; i < 3; ++i) {
    periodic.push_back(build(sampler.draw(*ctx, Family::Sl21TypicalPeriodic)));
    nilpotent.push_back(build(sampler.draw(*ctx, Family::Sl21TypicalNilpotent)));
  }
  CHECK(complete_set_rank(elements, periodic).rank == 2);
  const auto r = complete_set_rank(elements, nilpotent);
  CHECK(r.rank == 1);
  CHECK(r.certified);

  std::vector<PBWMonomial> monomials;
  for (int p = 0; p <= 1; ++p)
    for (int t = 0; t <= 1; ++t)
      for (int a1 = -1; a1 <= 1; ++a1) monomials.push_back(PBWMonomial{.p = p, .a1 = a1, .t = t});
  const auto small = complete_set_rank(ctx, monomials, periodic);
  CHECK(small.count == monomials.size());
  CHECK(small.rank == monomials.size());
}
