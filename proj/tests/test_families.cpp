#include <random>

#include "doctest.h"
#include "qsl21/families.hpp"

using namespace qsl21;

namespace {

const Family kSl21Nilpotent[] = {Family::Sl21TypicalNilpotent, Family::Sl21AtypicalMu2, Family::Sl21AtypicalSum};

int admissible_max_n(Family f, int lprime) { return f == Family::Sl21AtypicalSum ? lprime - 1 : lprime; }

// Dimension of the simple module of a nilpotent family.
std::size_t expected_dim(Family f, int N, bool type_b, int lprime) {
  if (type_b) return f == Family::Sl21TypicalNilpotent ? 4 * lprime : 2 * lprime;
  switch (f) {
    case Family::Sl21TypicalNilpotent:
      return 4 * N;
    case Family::Sl21AtypicalMu2:
      return 2 * N - 1;
    default:
      return 2 * N + 1;
  }
}

bool same_action(const ModuleRep& a, const ModuleRep& b) {
  return a.e1() == b.e1() && a.f1() == b.f1() && a.e2() == b.e2() && a.f2() == b.f2() && a.k1() == b.k1() &&
         a.k2() == b.k2();
}

}  // namespace

TEST_CASE("gl(2) nilpotent modules") {
  auto ctx = make_context(5);
  SUBCASE("one-dimensional") {
    RepSpec s{.family = Family::Gl2NilpotentA, .l = 5, .N = 1, .lambda2 = CycloScalar(3L), .omega = 1};
    const ModuleRep m = build(s);
    REQUIRE(m.dim() == 1);
    CHECK(m.e1().is_zero());
    CHECK(m.f1().is_zero());
    CHECK(m.k1() == Matrix::identity(1));
  }
  SUBCASE("commutator is diagonal with [mu1 - 2p]") {
    RepSpec s{.family = Family::Gl2NilpotentA, .l = 5, .N = 3, .lambda2 = CycloScalar(2L), .omega = 1};
    const ModuleRep m = build(s);
    const CycloScalar lambda1 = ctx->qpow(2);
    const Matrix c = m.e1() * m.f1() - m.f1() * m.e1();
    for (int p = 0; p < 3; ++p) CHECK(c(p, p) == qbracket(*ctx, lambda1, -2 * p));
    CHECK(c.is_diagonal());
    CHECK(audit_passes(audit_relations(m)));
  }
  SUBCASE("N = l' with lambda1 = +-q^-1 has q-dimension zero") {
    for (int omega : {1, -1}) {
      RepSpec s{.family = Family::Gl2NilpotentA, .l = 5, .N = 5, .lambda2 = CycloScalar(7L), .omega = omega};
      const RepSpec done = complete_spec(*ctx, s);
      CHECK(*done.lambda1 == CycloScalar(static_cast<long>(omega)) * ctx->qinv());
      const ModuleRep m = build(s);
      CHECK(m.dim() == 5);
      CHECK(qint(*ctx, 5).is_zero());
      CHECK(audit_passes(audit_relations(m)));
    }
    RepSpec b{.family = Family::Gl2NilpotentB, .l = 5, .lambda1 = ctx->qinv(), .lambda2 = CycloScalar(7L)};
    CHECK_THROWS_AS(build(b), SpecError);
  }
  SUBCASE("inconsistent data is rejected") {
    RepSpec s{.family = Family::Gl2NilpotentA, .l = 5, .N = 6, .lambda2 = CycloScalar(2L), .omega = 1};
    CHECK_THROWS_AS(build(s), SpecError);
    RepSpec b{.family = Family::Gl2NilpotentB, .l = 5, .lambda1 = ctx->qpow(2), .lambda2 = CycloScalar(2L)};
    CHECK_THROWS_AS(build(b), SpecError);
  }
}

TEST_CASE("gl(2) periodic modules") {
  for (int l : {3, 4, 5, 6, 7}) {
    auto ctx = make_context(l);
    ParameterSampler sampler(100 + l);
    for (int draw = 0; draw < 3; ++draw) {
      const ModuleRep m = build(sampler.draw(*ctx, Family::Gl2Periodic));
      INFO("l = " << l);
      CHECK(m.dim() == static_cast<std::size_t>(l));
      CHECK(audit_passes(audit_relations(m)));
      Matrix f1l = Matrix::identity(m.dim()), e1l = Matrix::identity(m.dim());
      for (int i = 0; i < l; ++i) {
        f1l = f1l * m.f1();
        e1l = e1l * m.e1();
      }
      CHECK(f1l == Matrix::identity(m.dim()) * m.spec().phi->pow(l));
      CHECK(e1l.scalar_value().has_value());
    }
  }
  SUBCASE("semi-periodic: beta = 0 kills e1 on v_0") {
    auto ctx = make_context(5);
    RepSpec s{.family = Family::Gl2Periodic, .l = 5, .lambda1 = CycloScalar(2L), .lambda2 = CycloScalar(3L),
              .phi = CycloScalar(5L), .beta = CycloScalar(0L)};
    const ModuleRep m = build(s);
    Matrix e1l = Matrix::identity(5);
    for (int i = 0; i < 5; ++i) e1l = e1l * m.e1();
    CHECK(e1l.is_zero());
    CHECK(audit_passes(audit_relations(m)));
  }
  CHECK_THROWS_AS(build(RepSpec{.family = Family::Gl2Periodic, .l = 3, .lambda1 = CycloScalar(2L),
                                .lambda2 = CycloScalar(3L), .phi = CycloScalar(0L)}),
                  SpecError);
}

TEST_CASE("every family passes the relation audit for l = 3..7") {
  for (int l = 3; l <= 7; ++l) {
    auto ctx = make_context(l);
    const int lp = ctx->lprime();
    ParameterSampler sampler(7 * l);
    for (Family f : kSl21Nilpotent) {
      for (int N = 1; N <= admissible_max_n(f, lp); ++N) {
        for (int draw = 0; draw < 3; ++draw) {
          const RepSpec s = sampler.draw(*ctx, f, N);
          const ModuleRep m = build(s);
          INFO("l = " << l << " " << family_name(f) << " N = " << N);
          CHECK(m.dim() == expected_dim(f, N, false, lp));
          CHECK(audit_passes(audit_relations(m)));
        }
      }
      for (int draw = 0; draw < 3; ++draw) {
        const ModuleRep m = build(sampler.draw(*ctx, f, std::nullopt, true));
        INFO("l = " << l << " " << family_name(f) << " type B");
        CHECK(m.dim() == expected_dim(f, lp, true, lp));
        CHECK(audit_passes(audit_relations(m)));
      }
    }
    for (Family f : {Family::Sl21TypicalPeriodic, Family::Sl21AtypicalPeriodic}) {
      for (int draw = 0; draw < 3; ++draw) {
        const ModuleRep m = build(sampler.draw(*ctx, f));
        INFO("l = " << l << " " << family_name(f));
        CHECK(m.dim() == static_cast<std::size_t>(f == Family::Sl21TypicalPeriodic ? 4 * l : 2 * l));
        CHECK(audit_passes(audit_relations(m)));
      }
    }
  }
}

TEST_CASE("induced modules coincide with the typical closed forms") {
  for (int l = 3; l <= 7; ++l) {
    auto ctx = make_context(l);
    ParameterSampler sampler(31 * l);
    std::vector<RepSpec> specs;
    for (int N = 1; N <= ctx->lprime(); ++N) specs.push_back(sampler.draw(*ctx, Family::Sl21TypicalNilpotent, N));
    specs.push_back(sampler.draw(*ctx, Family::Sl21TypicalNilpotent, std::nullopt, true));
    specs.push_back(sampler.draw(*ctx, Family::Sl21TypicalPeriodic));
    for (const auto& s : specs) {
      const ModuleRep v0 = build(base_spec(s));
      const ModuleRep mp = induce(v0);
      INFO("l = " << l << " " << family_name(s.family));
      CHECK(mp.dim() == 4 * v0.dim());
      CHECK(audit_passes(audit_relations(mp)));
      CHECK(same_action(mp, build(s)));
    }
  }
}

TEST_CASE("induced spec builds through the base family") {
  RepSpec induced{.family = Family::InducedMPrime, .l = 3, .N = 2, .lambda2 = CycloScalar(1L), .omega = 1,
                  .base = Family::Gl2NilpotentA};
  const ModuleRep m = build(induced);
  CHECK(m.dim() == 8);
  CHECK(audit_passes(audit_relations(m)));
  CHECK_THROWS_AS(build(RepSpec{.family = Family::InducedMPrime, .l = 3}), SpecError);
}

TEST_CASE("atypical conditions are enforced") {
  auto ctx = make_context(5);
  // atypical lambda2 handed to the typical constructor
  RepSpec typical{.family = Family::Sl21TypicalNilpotent, .l = 5, .N = 2, .lambda2 = CycloScalar(1L), .omega = 1};
  CHECK_THROWS_AS(build(typical), SpecError);
  RepSpec bad_beta{.family = Family::Sl21AtypicalPeriodic, .l = 5, .lambda1 = CycloScalar(2L),
                   .lambda2 = CycloScalar(3L), .phi = CycloScalar(5L), .beta = CycloScalar(7L)};
  CHECK_THROWS_AS(build(bad_beta), SpecError);
  RepSpec sum_at_top{.family = Family::Sl21AtypicalSum, .l = 5, .N = 5, .omega = 1, .epsilon = 1};
  CHECK_THROWS_AS(build(sum_at_top), SpecError);
  RepSpec bad_sign{.family = Family::Sl21AtypicalMu2, .l = 5, .N = 2, .omega = 2, .epsilon = 1};
  CHECK_THROWS_AS(build(bad_sign), SpecError);
}

TEST_CASE("small atypical modules") {
  auto ctx = make_context(3);
  SUBCASE("trivial module") {
    const ModuleRep m = build(RepSpec{.family = Family::Sl21AtypicalMu2, .l = 3, .N = 1, .omega = 1, .epsilon = 1});
    REQUIRE(m.dim() == 1);
    CHECK(m.e1().is_zero());
    CHECK(m.f2().is_zero());
    CHECK(m.k1() == Matrix::identity(1));
    CHECK(m.k2() == Matrix::identity(1));
  }
  SUBCASE("three-dimensional fundamental") {
    const ModuleRep m = build(RepSpec{.family = Family::Sl21AtypicalSum, .l = 5, .N = 1, .omega = 1, .epsilon = 1});
    CHECK(m.dim() == 3);
    CHECK(audit_passes(audit_relations(m)));
    CHECK(burnside(m).full);
  }
}

TEST_CASE("typical periodic example module") {
  RepSpec s{.family = Family::Sl21TypicalPeriodic, .l = 3, .lambda1 = CycloScalar(2L), .lambda2 = CycloScalar(3L),
            .phi = CycloScalar(5L), .beta = CycloScalar(7L)};
  const ModuleRep m = build(s);
  CHECK(m.dim() == 12);
  CHECK(burnside_dim(m) == 144);
}

TEST_CASE("dimension ledger with Burnside certificates at l = 3 and l = 5") {
  for (int l : {3, 5}) {
    auto ctx = make_context(l);
    const int lp = ctx->lprime();
    ParameterSampler sampler(17 * l);
    auto check_pair = [&](const RepSpec& s, std::size_t dim) {
      const ModuleRep m = build(s);
      const ModuleRep mp = induce(build(base_spec(s)));
      const bool typical = s.family == Family::Sl21TypicalNilpotent || s.family == Family::Sl21TypicalPeriodic;
      INFO("l = " << l << " " << family_name(s.family) << " dim " << dim);
      CHECK(m.dim() == dim);
      const auto bm = burnside(m);
      CHECK(bm.full);
      CHECK(bm.dim == dim * dim);
      const auto bp = burnside(mp);
      CHECK(bp.full == typical);
      if (!typical) CHECK(bp.dim < mp.dim() * mp.dim());
    };
    for (Family f : kSl21Nilpotent) {
      const int upper = l == 3 ? admissible_max_n(f, lp) : 1;
      for (int N = 1; N <= upper; ++N) check_pair(sampler.draw(*ctx, f, N), expected_dim(f, N, false, lp));
      check_pair(sampler.draw(*ctx, f, std::nullopt, true), expected_dim(f, lp, true, lp));
    }
    check_pair(sampler.draw(*ctx, Family::Sl21TypicalPeriodic), 4 * l);
    check_pair(sampler.draw(*ctx, Family::Sl21AtypicalPeriodic), 2 * l);
  }
}

TEST_CASE("classification") {
  auto ctx = make_context(5);
  const int lp = ctx->lprime();
  SUBCASE("atypical mu2 below l'") {
    for (int N = 1; N < lp; ++N) {
      const auto c = classify(*ctx, RawParams{ctx->qpow(N - 1), CycloScalar(1L), std::nullopt, std::nullopt, N});
      CHECK(c.family == Family::Sl21AtypicalMu2);
      CHECK_FALSE(c.typical);
      CHECK(c.dim == static_cast<std::size_t>(2 * N - 1));
      CHECK(build(c.spec).dim() == c.dim);
    }
  }
  SUBCASE("both atypical conditions at N = l'") {
    const auto c = classify(*ctx, RawParams{ctx->qpow(lp - 1), CycloScalar(-1L), std::nullopt, std::nullopt, lp});
    CHECK_FALSE(c.typical);
    CHECK(c.dim == static_cast<std::size_t>(2 * lp - 1));
  }
  SUBCASE("N is derived when absent and checked when given") {
    const auto c = classify(*ctx, RawParams{ctx->qpow(2), CycloScalar(3L), std::nullopt, std::nullopt, std::nullopt});
    CHECK(c.N == 3);
    CHECK(c.typical);
    CHECK(c.dim == 12);
    CHECK_THROWS_AS(classify(*ctx, RawParams{ctx->qpow(2), CycloScalar(3L), std::nullopt, std::nullopt, 2}),
                    SpecError);
  }
  SUBCASE("type B") {
    const auto t = classify(*ctx, RawParams{CycloScalar(2L), CycloScalar(3L), std::nullopt, std::nullopt, std::nullopt});
    CHECK(t.type == 'B');
    CHECK(t.dim == static_cast<std::size_t>(4 * lp));
    const auto a = classify(*ctx, RawParams{CycloScalar(2L), CycloScalar(1L), std::nullopt, std::nullopt, std::nullopt});
    CHECK(a.family == Family::Sl21AtypicalMu2);
    CHECK(a.dim == static_cast<std::size_t>(2 * lp));
  }
  SUBCASE("periodic") {
    const auto t = classify(*ctx, RawParams{CycloScalar(2L), CycloScalar(3L), CycloScalar(5L), CycloScalar(7L), {}});
    CHECK(t.family == Family::Sl21TypicalPeriodic);
    CHECK(t.dim == 20);
    const CycloScalar beta = qbracket(*ctx, CycloScalar(3L), 0) * qbracket(*ctx, CycloScalar(6L), 1);
    const auto a = classify(*ctx, RawParams{CycloScalar(2L), CycloScalar(3L), CycloScalar(5L), beta, {}});
    CHECK(a.family == Family::Sl21AtypicalPeriodic);
    CHECK(a.dim == 10);
  }
  SUBCASE("f-nilpotent e-periodic data must be twisted first") {
    CHECK_THROWS_AS(classify(*ctx, RawParams{CycloScalar(2L), CycloScalar(3L), CycloScalar(0L), CycloScalar(7L), {}}),
                    DomainError);
  }
}

TEST_CASE("typicality criteria agree") {
  for (int l : {3, 4, 5}) {
    auto ctx = make_context(l);
    ParameterSampler sampler(59 * l);
    for (Family f : {Family::Sl21TypicalNilpotent, Family::Sl21AtypicalMu2, Family::Sl21AtypicalSum,
                     Family::Sl21TypicalPeriodic, Family::Sl21AtypicalPeriodic}) {
      for (bool type_b : {false, true}) {
        if (type_b && is_periodic_family(f)) continue;
        const RepSpec s = complete_spec(*ctx, sampler.draw(*ctx, f, std::nullopt, type_b));
        const ModuleRep mp = induce(build(base_spec(s)));
        const bool casimir_nonzero = !casimir_scalar(mp, 1).is_zero();
        const auto c = classify(*ctx, RawParams{*s.lambda1, *s.lambda2, s.phi, s.beta, std::nullopt});
        INFO("l = " << l << " " << family_name(f));
        CHECK(c.family == f);
        CHECK(c.typical == casimir_nonzero);
        CHECK(burnside(mp).full == casimir_nonzero);
      }
    }
  }
}

TEST_CASE("sampler is reproducible and reads the environment seed") {
  auto ctx = make_context(5);
  ParameterSampler a(42), b(42);
  for (int i = 0; i < 5; ++i) {
    const RepSpec x = a.draw(*ctx, Family::Sl21TypicalPeriodic);
    const RepSpec y = b.draw(*ctx, Family::Sl21TypicalPeriodic);
    CHECK(*x.lambda1 == *y.lambda1);
    CHECK(*x.phi == *y.phi);
  }
  ParameterSampler c(42);
  for (int i = 0; i < 50; ++i) {
    const CycloScalar r = c.rational();
    CHECK(r.is_rational());
    CHECK_FALSE(r.is_zero());
    CHECK(r != CycloScalar(1L));
    CHECK(r != CycloScalar(-1L));
  }
}
