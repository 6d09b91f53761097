#include "qsl21/families.hpp"

#include <array>
#include <cstdlib>
#include <functional>
#include <map>
#include <tuple>

namespace qsl21 {

namespace {

const CycloScalar kOne(1L);

bool is_sign(const CycloScalar& x) { return x == kOne || x == -kOne; }

int to_sign(const CycloScalar& x) { return x == kOne ? 1 : -1; }

CycloScalar require(const std::optional<CycloScalar>& x, const char* name, const RepSpec& spec) {
  if (!x) throw SpecError(family_name(spec.family) + ": parameter " + name + " is required");
  return *x;
}

int require(const std::optional<int>& x, const char* name, const RepSpec& spec) {
  if (!x) throw SpecError(family_name(spec.family) + ": parameter " + name + " is required");
  return *x;
}

void check(bool ok, const RepSpec& spec, const std::string& condition) {
  if (!ok) throw SpecError(family_name(spec.family) + ": condition violated: " + condition);
}

// [mu1 + 1 - p] != 0 for p = 0..l'-1 is what separates a type B nilpotent
// V0 from the type A ones.
bool type_b_lambda1(const QContext& ctx, const CycloScalar& lambda1) {
  for (int p = 0; p < ctx.lprime(); ++p) {
    if (qbracket(ctx, lambda1, 1 - p).is_zero()) return false;
  }
  return true;
}

bool is_nilpotent_sl21(Family f) {
  return f == Family::Sl21TypicalNilpotent || f == Family::Sl21AtypicalMu2 || f == Family::Sl21AtypicalSum;
}

// Sparse matrix assembly over labelled basis vectors.
class Assembler {
 public:
  Assembler(std::vector<WeightLabel> basis, int wrap) : basis_(std::move(basis)), wrap_(wrap) {
    for (std::size_t i = 0; i < basis_.size(); ++i) index_[{basis_[i].rho, basis_[i].sigma, basis_[i].p}] = i;
    const std::size_t d = basis_.size();
    for (auto& m : mats_) m = Matrix(d, d);
  }

  enum Gen { E1 = 0, F1 = 1, E2 = 2, F2 = 3 };

  // g w_source += c w_{rho,sigma,p}; targets outside the basis are zero.
  void add(Gen g, std::size_t source, int rho, int sigma, int p, const CycloScalar& c) {
    if (c.is_zero()) return;
    if (wrap_ > 0) p = ((p % wrap_) + wrap_) % wrap_;
    auto it = index_.find({rho, sigma, p});
    if (it == index_.end()) return;
    mats_[g](it->second, source) += c;
  }

  const std::vector<WeightLabel>& basis() const { return basis_; }

  ModuleRep finish(std::shared_ptr<const QContext> ctx, RepSpec spec, RepKind kind) {
    return ModuleRep::from_weights(std::move(ctx), std::move(spec), kind, basis_, std::move(mats_[E1]),
                                   std::move(mats_[F1]), std::move(mats_[E2]), std::move(mats_[F2]));
  }

 private:
  std::vector<WeightLabel> basis_;
  int wrap_;
  std::map<std::tuple<int, int, int>, std::size_t> index_;
  std::array<Matrix, 4> mats_;
};

WeightLabel label(int rho, int sigma, int p, CycloScalar k1, CycloScalar k2) {
  return WeightLabel{rho, sigma, p, std::move(k1), std::move(k2)};
}

}  // namespace

bool is_type_a(const RepSpec& spec) {
  if (spec.family == Family::Gl2NilpotentA) return true;
  if (spec.family == Family::Gl2NilpotentB) return false;
  return spec.omega.has_value();
}

// ---------------------------------------------------------------------------
// Spec completion

RepSpec complete_spec(const QContext& ctx, const RepSpec& in) {
  RepSpec s = in;
  if (s.l != ctx.l()) throw SpecError("spec l does not match the context");
  const int lp = ctx.lprime();
  auto sign_ok = [&](const std::optional<int>& x, const char* name) {
    if (x && *x != 1 && *x != -1) throw SpecError(family_name(s.family) + ": " + name + " must be +1 or -1");
  };
  sign_ok(s.omega, "omega");
  sign_ok(s.epsilon, "epsilon");

  auto nilpotent_lambda1 = [&]() {
    if (is_type_a(s)) {
      const int N = require(s.N, "N", s);
      check(N >= 1 && N <= lp, s, "1 <= N <= l'");
      const CycloScalar lambda1 = ctx.qpow(N - 1) * CycloScalar(static_cast<long>(*s.omega));
      if (s.lambda1) check(*s.lambda1 == lambda1, s, "lambda1 = omega q^(N-1)");
      s.lambda1 = lambda1;
    } else {
      const CycloScalar lambda1 = require(s.lambda1, "lambda1", s);
      check(!lambda1.is_zero(), s, "lambda1 != 0");
      check(type_b_lambda1(ctx, lambda1), s, "[mu1+1-p] != 0 for p = 0..l'-1 (type B)");
      if (s.N) check(*s.N == lp, s, "N = l' for type B");
      s.N = lp;
    }
  };
  auto periodic_common = [&]() {
    const CycloScalar lambda1 = require(s.lambda1, "lambda1", s);
    const CycloScalar lambda2 = require(s.lambda2, "lambda2", s);
    const CycloScalar phi = require(s.phi, "phi", s);
    check(!lambda1.is_zero() && !lambda2.is_zero(), s, "lambda1, lambda2 != 0");
    check(!phi.is_zero(), s, "phi != 0");
    s.N.reset();
  };

  switch (s.family) {
    case Family::Gl2NilpotentA:
    case Family::Gl2NilpotentB: {
      nilpotent_lambda1();
      const CycloScalar lambda2 = require(s.lambda2, "lambda2", s);
      check(!lambda2.is_zero(), s, "lambda2 != 0");
      break;
    }
    case Family::Gl2Periodic:
      periodic_common();
      if (!s.beta) s.beta = CycloScalar(0L);
      break;
    case Family::Sl21TypicalNilpotent: {
      nilpotent_lambda1();
      const CycloScalar lambda2 = require(s.lambda2, "lambda2", s);
      check(!lambda2.is_zero(), s, "lambda2 != 0");
      check(!qbracket(ctx, lambda2, 0).is_zero(), s, "[mu2] != 0");
      if (is_type_a(s)) {
        check(!qbracket(ctx, lambda2, *s.N).is_zero(), s, "[N+mu2] != 0");
      } else {
        check(!qbracket(ctx, *s.lambda1 * lambda2, 1).is_zero(), s, "[mu1+mu2+1] != 0");
      }
      break;
    }
    case Family::Sl21AtypicalMu2: {
      nilpotent_lambda1();
      const int eps = require(s.epsilon, "epsilon", s);
      const CycloScalar lambda2(static_cast<long>(eps));
      if (s.lambda2) check(*s.lambda2 == lambda2, s, "lambda2 = epsilon");
      s.lambda2 = lambda2;
      break;
    }
    case Family::Sl21AtypicalSum: {
      nilpotent_lambda1();
      if (is_type_a(s)) check(*s.N < lp, s, "N < l' (otherwise [mu2] = 0 as well)");
      const int eps = require(s.epsilon, "epsilon", s);
      const CycloScalar lambda2 = CycloScalar(static_cast<long>(eps)) * (*s.lambda1 * ctx.q()).inverse();
      if (s.lambda2) check(*s.lambda2 == lambda2, s, "lambda2 = epsilon lambda1^-1 q^-1");
      s.lambda2 = lambda2;
      check(!qbracket(ctx, lambda2, 0).is_zero(), s, "[mu2] != 0");
      break;
    }
    case Family::Sl21TypicalPeriodic: {
      periodic_common();
      const CycloScalar beta = require(s.beta, "beta", s);
      const CycloScalar c = qbracket(ctx, *s.lambda2, 0) * qbracket(ctx, *s.lambda1 * *s.lambda2, 1) - beta;
      check(!c.is_zero(), s, "[mu2][mu1+mu2+1] - beta != 0");
      break;
    }
    case Family::Sl21AtypicalPeriodic: {
      periodic_common();
      const CycloScalar beta = qbracket(ctx, *s.lambda2, 0) * qbracket(ctx, *s.lambda1 * *s.lambda2, 1);
      if (s.beta) check(*s.beta == beta, s, "beta = [mu2][mu1+mu2+1]");
      s.beta = beta;
      break;
    }
    case Family::InducedMPrime: {
      if (!s.base) throw SpecError("induced: base family is required");
      check(is_gl2_family(*s.base), s, "base is a gl(2) family");
      RepSpec b = s;
      b.family = *s.base;
      b.base.reset();
      b = complete_spec(ctx, b);
      s.N = b.N;
      s.lambda1 = b.lambda1;
      s.lambda2 = b.lambda2;
      s.beta = b.beta;
      break;
    }
  }
  return s;
}

RepSpec base_spec(const RepSpec& in) {
  const RepSpec spec = complete_spec(*make_context(in.l), in);
  RepSpec b = spec;
  b.transforms.clear();
  b.base.reset();
  if (spec.family == Family::InducedMPrime) {
    b.family = *spec.base;
  } else if (is_periodic_family(spec.family)) {
    b.family = Family::Gl2Periodic;
  } else if (is_gl2_family(spec.family)) {
    return b;
  } else {
    b.family = is_type_a(spec) ? Family::Gl2NilpotentA : Family::Gl2NilpotentB;
    b.epsilon.reset();
  }
  return b;
}

// ---------------------------------------------------------------------------
// gl(2) modules

ModuleRep gl2_nilpotent(const std::shared_ptr<const QContext>& ctx, const RepSpec& in) {
  const RepSpec s = complete_spec(*ctx, in);
  if (s.family != Family::Gl2NilpotentA && s.family != Family::Gl2NilpotentB) {
    throw SpecError("gl2_nilpotent: wrong family " + family_name(s.family));
  }
  const QContext& c = *ctx;
  const int N = *s.N;
  const CycloScalar& l1 = *s.lambda1;
  const CycloScalar& l2 = *s.lambda2;
  std::vector<WeightLabel> basis;
  for (int p = 0; p < N; ++p) basis.push_back(label(0, 0, p, l1 * c.qpow(-2 * p), l2 * c.qpow(p)));
  Assembler a(std::move(basis), 0);
  for (int p = 0; p < N; ++p) {
    const auto src = static_cast<std::size_t>(p);
    a.add(Assembler::F1, src, 0, 0, p + 1, kOne);
    a.add(Assembler::E1, src, 0, 0, p - 1, qint(c, p) * qbracket(c, l1, 1 - p));
  }
  return a.finish(ctx, s, RepKind::Gl2);
}

ModuleRep gl2_periodic(const std::shared_ptr<const QContext>& ctx, const RepSpec& in) {
  const RepSpec s = complete_spec(*ctx, in);
  if (s.family != Family::Gl2Periodic) throw SpecError("gl2_periodic: wrong family " + family_name(s.family));
  const QContext& c = *ctx;
  const int l = c.l();
  const CycloScalar& l1 = *s.lambda1;
  const CycloScalar& l2 = *s.lambda2;
  const CycloScalar& phi = *s.phi;
  const CycloScalar phiinv = phi.inverse();
  std::vector<WeightLabel> basis;
  for (int p = 0; p < l; ++p) basis.push_back(label(0, 0, p, l1 * c.qpow(-2 * p), l2 * c.qpow(p)));
  Assembler a(std::move(basis), l);
  for (int p = 0; p < l; ++p) {
    const auto src = static_cast<std::size_t>(p);
    a.add(Assembler::F1, src, 0, 0, p + 1, phi);
    a.add(Assembler::E1, src, 0, 0, p - 1, phiinv * (qint(c, p) * qbracket(c, l1, 1 - p) + *s.beta));
  }
  return a.finish(ctx, s, RepKind::Gl2);
}

// ---------------------------------------------------------------------------
// Induced module

ModuleRep induce(const ModuleRep& v0) {
  if (v0.kind() != RepKind::Gl2) throw std::invalid_argument("induce: V0 must be a gl(2) module");
  if (!v0.k1().is_diagonal() || !v0.k2().is_diagonal()) throw std::invalid_argument("induce: V0 needs diagonal k");
  const auto& ctxp = v0.ctx_ptr();
  const QContext& c = *ctxp;
  const std::size_t N = v0.dim();
  const bool periodic = v0.spec().family == Family::Gl2Periodic;
  const CycloScalar s = periodic ? require(v0.spec().phi, "phi", v0.spec()).inverse() : kOne;
  const CycloScalar sinv = periodic ? *v0.spec().phi : kOne;

  static constexpr std::array<std::pair<int, int>, 4> kLayers = {{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};
  auto layer_of = [](int rho, int sigma) {
    for (std::size_t k = 0; k < kLayers.size(); ++k) {
      if (kLayers[k].first == rho && kLayers[k].second == sigma) return k;
    }
    throw std::logic_error("bad layer");
  };

  std::vector<WeightLabel> basis;
  for (const auto& [rho, sigma] : kLayers) {
    for (std::size_t j = 0; j < N; ++j) {
      const auto& w = v0.basis()[j];
      basis.push_back(label(rho, sigma, w.p, w.kappa1 * c.qpow(rho - sigma), w.kappa2 * c.qpow(sigma)));
    }
  }
  const std::size_t d = 4 * N;

  // V0 operators f1^p k1^a k2^b e1^t, with cached powers.
  std::map<int, Matrix> f1pow, e1pow;
  std::function<const Matrix&(std::map<int, Matrix>&, const Matrix&, int)> power =
      [&](std::map<int, Matrix>& cache, const Matrix& base, int e) -> const Matrix& {
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    Matrix value = e == 0 ? Matrix::identity(N) : power(cache, base, e - 1) * base;
    return cache.emplace(e, std::move(value)).first->second;
  };
  const Vector k1 = v0.k1().diagonal_entries();
  const Vector k2 = v0.k2().diagonal_entries();

  std::array<Matrix, 4> mats;
  const std::array<Symbol, 4> gens = {Symbol::E1, Symbol::F1, Symbol::E2, Symbol::F2};
  for (std::size_t g = 0; g < gens.size(); ++g) {
    Matrix out(d, d);
    const AlgebraElement generator = from_word(ctxp, std::vector<SymbolPower>{{gens[g], 1}});
    for (const auto& [rho, sigma] : kLayers) {
      PBWMonomial layer;
      layer.rho = rho;
      layer.sigma = sigma;
      const AlgebraElement product = multiply(generator, AlgebraElement::monomial(ctxp, layer));
      const std::size_t src_layer = layer_of(rho, sigma);
      for (const auto& [m, coeff] : product.terms()) {
        if (m.sigmap != 0 || m.rhop != 0) continue;  // e2 and e3 kill V0
        const std::size_t dst_layer = layer_of(m.rho, m.sigma);
        CycloScalar scale = coeff;
        if (sigma > m.sigma) scale *= s;
        if (sigma < m.sigma) scale *= sinv;
        const Matrix& left = power(f1pow, v0.f1(), m.p);
        const Matrix& right = power(e1pow, v0.e1(), m.t);
        for (std::size_t j = 0; j < N; ++j) {
          // column j of f1^p K e1^t
          Vector col = right.column(j);
          for (std::size_t i = 0; i < N; ++i) {
            if (!col[i].is_zero()) col[i] *= k1[i].pow(m.a1) * k2[i].pow(m.a2);
          }
          col = left.apply(col);
          for (std::size_t i = 0; i < N; ++i) {
            if (!col[i].is_zero()) out(dst_layer * N + i, src_layer * N + j) += scale * col[i];
          }
        }
      }
    }
    mats[g] = std::move(out);
  }
  RepSpec spec = v0.spec();
  spec.base = spec.family;
  spec.family = Family::InducedMPrime;
  spec.transforms.clear();
  return ModuleRep::from_weights(ctxp, std::move(spec), RepKind::Sl21, std::move(basis), std::move(mats[0]),
                                 std::move(mats[1]), std::move(mats[2]), std::move(mats[3]));
}

// ---------------------------------------------------------------------------
// Closed forms

namespace {

// Typical modules: nilpotent (phi = 1, beta = 0, no wrap) or periodic.
ModuleRep typical_module(const std::shared_ptr<const QContext>& ctx, const RepSpec& s, int n, bool periodic) {
  const QContext& c = *ctx;
  const CycloScalar& l1 = *s.lambda1;
  const CycloScalar& l2 = *s.lambda2;
  const CycloScalar phi = periodic ? *s.phi : kOne;
  const CycloScalar phiinv = phi.inverse();
  const CycloScalar beta = periodic ? *s.beta : CycloScalar(0L);
  const CycloScalar l2inv = l2.inverse();
  static constexpr std::array<std::pair<int, int>, 4> kLayers = {{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};
  std::vector<WeightLabel> basis;
  for (const auto& [rho, sigma] : kLayers) {
    for (int p = 0; p < n; ++p) {
      basis.push_back(label(rho, sigma, p, l1 * c.qpow(rho - sigma - 2 * p), l2 * c.qpow(sigma + p)));
    }
  }
  Assembler a(basis, periodic ? n : 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const int rho = basis[i].rho;
    const int sigma = basis[i].sigma;
    const int p = basis[i].p;
    a.add(Assembler::F1, i, rho, sigma, p + 1, phi * c.qpow(sigma - rho));
    if (rho == 1 && sigma == 0) a.add(Assembler::F1, i, 0, 1, p, -phi * c.qpow(-1));
    if (rho == 0) a.add(Assembler::F2, i, 1, sigma, p, kOne);
    if (sigma == 1 && rho == 0) a.add(Assembler::E1, i, 1, 0, p, -phiinv * l1 * c.qpow(1 - 2 * p));
    a.add(Assembler::E1, i, rho, sigma, p - 1, phiinv * (qint(c, p) * qbracket(c, l1, 1 - p) + beta));
    if (rho == 1) a.add(Assembler::E2, i, 0, sigma, p, qbracket(c, l2, p + sigma));
    if (sigma == 1) a.add(Assembler::E2, i, rho, 0, p + 1, CycloScalar(rho ? -1L : 1L) * l2inv * c.qpow(-p));
  }
  return a.finish(ctx, s, RepKind::Sl21);
}

// Two-layer atypical nilpotent module, [mu2] = 0.
ModuleRep atypical_mu2(const std::shared_ptr<const QContext>& ctx, const RepSpec& s) {
  const QContext& c = *ctx;
  const CycloScalar& l1 = *s.lambda1;
  const CycloScalar eps(static_cast<long>(*s.epsilon));
  const bool type_a = is_type_a(s);
  const int N = *s.N;
  std::vector<WeightLabel> basis;
  for (int sigma = 0; sigma < 2; ++sigma) {
    const int last = type_a ? N - 1 - sigma : c.lprime() - 1;
    for (int p = 0; p <= last; ++p) {
      basis.push_back(label(0, sigma, p, l1 * c.qpow(-sigma - 2 * p), eps * c.qpow(sigma + p)));
    }
  }
  Assembler a(basis, 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const int sigma = basis[i].sigma;
    const int p = basis[i].p;
    a.add(Assembler::F1, i, 0, sigma, p + 1, c.qpow(sigma));
    if (sigma == 0) a.add(Assembler::F2, i, 0, 1, p - 1, c.qpow(p - 1) * qint(c, p));
    a.add(Assembler::E1, i, 0, sigma, p - 1, c.qpow(-sigma) * qint(c, p) * qbracket(c, l1, 1 - p - sigma));
    if (sigma == 1) a.add(Assembler::E2, i, 0, 0, p + 1, eps * c.qpow(-p));
  }
  return a.finish(ctx, s, RepKind::Sl21);
}

// Two-layer atypical nilpotent module, [mu1+mu2+1] = 0. The sigma = 1 layer
// starts at p = -1: its lowest vector is the image of w_{0,0,0} under f2.
ModuleRep atypical_sum(const std::shared_ptr<const QContext>& ctx, const RepSpec& s) {
  const QContext& c = *ctx;
  const CycloScalar& l1 = *s.lambda1;
  const CycloScalar l1inv = l1.inverse();
  const CycloScalar eps(static_cast<long>(*s.epsilon));
  const bool type_a = is_type_a(s);
  const int N = *s.N;
  std::vector<WeightLabel> basis;
  for (int sigma = 0; sigma < 2; ++sigma) {
    const int first = -sigma;
    const int last = type_a ? N - 1 : c.lprime() - 1 - sigma;
    for (int p = first; p <= last; ++p) {
      basis.push_back(label(0, sigma, p, l1 * c.qpow(-sigma - 2 * p), eps * l1inv * c.qpow(sigma + p - 1)));
    }
  }
  Assembler a(basis, 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const int sigma = basis[i].sigma;
    const int p = basis[i].p;
    a.add(Assembler::F1, i, 0, sigma, p + 1, c.qpow(sigma));
    if (sigma == 0) a.add(Assembler::F2, i, 0, 1, p - 1, -l1inv * c.qpow(p - 2) * qbracket(c, l1, 1 - p));
    a.add(Assembler::E1, i, 0, sigma, p - 1, c.qpow(-sigma) * qint(c, p + sigma) * qbracket(c, l1, 1 - p));
    if (sigma == 1) a.add(Assembler::E2, i, 0, 0, p + 1, eps * l1 * c.qpow(1 - p));
  }
  return a.finish(ctx, s, RepKind::Sl21);
}

ModuleRep atypical_periodic(const std::shared_ptr<const QContext>& ctx, const RepSpec& s) {
  const QContext& c = *ctx;
  const int l = c.l();
  const CycloScalar& l1 = *s.lambda1;
  const CycloScalar& l2 = *s.lambda2;
  const CycloScalar& phi = *s.phi;
  const CycloScalar phiinv = phi.inverse();
  const CycloScalar l2inv = l2.inverse();
  const CycloScalar l12 = l1 * l2;
  std::vector<WeightLabel> basis;
  for (int sigma = 0; sigma < 2; ++sigma) {
    for (int p = 0; p < l; ++p) basis.push_back(label(0, sigma, p, l1 * c.qpow(-sigma - 2 * p), l2 * c.qpow(sigma + p)));
  }
  Assembler a(basis, l);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const int sigma = basis[i].sigma;
    const int p = basis[i].p;
    a.add(Assembler::F1, i, 0, sigma, p + 1, phi * c.qpow(sigma));
    if (sigma == 0) a.add(Assembler::F2, i, 0, 1, p - 1, l2 * c.qpow(p - 1) * qbracket(c, l2, p));
    a.add(Assembler::E1, i, 0, sigma, p - 1,
          phiinv * c.qpow(-sigma) * qbracket(c, l2, p) * qbracket(c, l12, 1 - p - sigma));
    if (sigma == 1) a.add(Assembler::E2, i, 0, 0, p + 1, l2inv * c.qpow(-p));
  }
  return a.finish(ctx, s, RepKind::Sl21);
}

}  // namespace

ModuleRep sl21_family(const std::shared_ptr<const QContext>& ctx, const RepSpec& in) {
  const RepSpec s = complete_spec(*ctx, in);
  switch (s.family) {
    case Family::Sl21TypicalNilpotent:
      return typical_module(ctx, s, *s.N, false);
    case Family::Sl21TypicalPeriodic:
      return typical_module(ctx, s, ctx->l(), true);
    case Family::Sl21AtypicalMu2:
      return atypical_mu2(ctx, s);
    case Family::Sl21AtypicalSum:
      return atypical_sum(ctx, s);
    case Family::Sl21AtypicalPeriodic:
      return atypical_periodic(ctx, s);
    default:
      throw SpecError("sl21_family: " + family_name(s.family) + " is not an sl(2|1) closed form");
  }
}

ModuleRep build(const RepSpec& spec) {
  const auto ctx = make_context(spec.l);
  RepSpec plain = spec;
  plain.transforms.clear();
  std::optional<ModuleRep> m;
  switch (plain.family) {
    case Family::Gl2NilpotentA:
    case Family::Gl2NilpotentB:
      m = gl2_nilpotent(ctx, plain);
      break;
    case Family::Gl2Periodic:
      m = gl2_periodic(ctx, plain);
      break;
    case Family::InducedMPrime: {
      const RepSpec full = complete_spec(*ctx, plain);
      m = induce(build(base_spec(full)));
      m = m->with_spec(full);
      break;
    }
    default:
      m = sl21_family(ctx, plain);
  }
  for (const auto& t : spec.transforms) {
    if (t == "psi") {
      m = psi_image(*m);
    } else if (t == "quotient") {
      m = quotient(*m, maximal_submodule(*m));
    } else if (t == "corrupted") {
      m = corrupted(*m);
    } else {
      throw SpecError("unknown transform '" + t + "'");
    }
  }
  return *m;
}

CycloScalar expected_casimir(const QContext& ctx, const RepSpec& in, int p) {
  const RepSpec s = complete_spec(ctx, in);
  if (is_gl2_family(s.family)) throw std::invalid_argument("expected_casimir: gl(2) spec");
  switch (s.family) {
    case Family::Sl21AtypicalMu2:
    case Family::Sl21AtypicalSum:
    case Family::Sl21AtypicalPeriodic:
      return CycloScalar(0L);
    default:
      break;
  }
  const CycloScalar& l1 = *s.lambda1;
  const CycloScalar& l2 = *s.lambda2;
  CycloScalar core = qbracket(ctx, l2, 0) * qbracket(ctx, l1 * l2, 1);
  const bool periodic = s.family == Family::Sl21TypicalPeriodic ||
                        (s.family == Family::InducedMPrime && *s.base == Family::Gl2Periodic);
  if (periodic) core -= *s.beta;
  return ctx.qdiff() * ctx.qdiff() * l1.pow(2L * p - 1) * l2.pow(4L * p - 2) * core;
}

// ---------------------------------------------------------------------------
// Classification

Classification classify(const QContext& ctx, const RawParams& raw) {
  const CycloScalar& l1 = raw.lambda1;
  const CycloScalar& l2 = raw.lambda2;
  if (l1.is_zero() || l2.is_zero()) throw SpecError("classify: lambda1 and lambda2 must be nonzero");
  const int lp = ctx.lprime();
  Classification out;
  RepSpec& spec = out.spec;
  spec.l = ctx.l();
  const bool periodic = raw.phi && !raw.phi->is_zero();
  if (raw.phi && raw.phi->is_zero() && raw.beta && !raw.beta->is_zero()) {
    throw DomainError("f1^l = 0 with e1 acting periodically: apply psi first");
  }
  if (periodic) {
    const CycloScalar beta = raw.beta.value_or(CycloScalar(0L));
    const CycloScalar c = qbracket(ctx, l2, 0) * qbracket(ctx, l1 * l2, 1) - beta;
    out.type = 'B';
    out.N = ctx.l();
    spec.lambda1 = l1;
    spec.lambda2 = l2;
    spec.phi = raw.phi;
    spec.beta = beta;
    if (!c.is_zero()) {
      out.family = Family::Sl21TypicalPeriodic;
      out.typical = true;
      out.dim = 4 * static_cast<std::size_t>(ctx.l());
      out.reason = "periodic, [mu2][mu1+mu2+1] - beta != 0";
    } else {
      out.family = Family::Sl21AtypicalPeriodic;
      out.typical = false;
      out.dim = 2 * static_cast<std::size_t>(ctx.l());
      out.reason = "periodic, [mu2][mu1+mu2+1] = beta";
    }
    spec.family = out.family;
    return out;
  }

  // Nilpotent: N is the least N >= 1 with [N][mu1-N+1] = 0.
  int N = lp;
  for (int n = 1; n < lp; ++n) {
    if (qbracket(ctx, l1, 1 - n).is_zero()) {
      N = n;
      break;
    }
  }
  const bool type_a = N < lp || !type_b_lambda1(ctx, l1);
  if (raw.N && *raw.N != N) {
    throw SpecError("classify: N = " + std::to_string(*raw.N) + " is inconsistent with lambda1 (expected " +
                    std::to_string(N) + ")");
  }
  out.N = N;
  out.type = type_a ? 'A' : 'B';
  if (type_a) {
    spec.N = N;
    spec.omega = to_sign(l1 * ctx.qpow(1 - N));
  } else {
    spec.lambda1 = l1;
  }
  const bool mu2_zero = qbracket(ctx, l2, 0).is_zero();
  const bool sum_zero = type_a ? qbracket(ctx, l2, N).is_zero() : qbracket(ctx, l1 * l2, 1).is_zero();
  const std::size_t n = static_cast<std::size_t>(N);
  if (!mu2_zero && !sum_zero) {
    out.family = Family::Sl21TypicalNilpotent;
    out.typical = true;
    out.dim = 4 * n;
    out.reason = type_a ? "type A, [mu2][N+mu2] != 0" : "type B, [mu2][mu1+mu2+1] != 0";
    spec.lambda2 = l2;
  } else if (mu2_zero) {
    out.family = Family::Sl21AtypicalMu2;
    out.typical = false;
    if (!type_a) {
      out.dim = 2 * n;
      out.reason = "type B, [mu2] = 0";
    } else if (sum_zero) {
      out.dim = 2 * n - 1;
      out.reason = "type A, [mu2] = 0 and [N+mu2] = 0 (N = l')";
    } else {
      out.dim = 2 * n - 1;
      out.reason = "type A, [mu2] = 0";
    }
    spec.epsilon = to_sign(l2);
  } else {
    out.family = Family::Sl21AtypicalSum;
    out.typical = false;
    out.dim = type_a ? 2 * n + 1 : 2 * n;
    out.reason = type_a ? "type A, [N+mu2] = 0" : "type B, [mu1+mu2+1] = 0";
    spec.epsilon = to_sign(l1 * l2 * ctx.q());
  }
  spec.family = out.family;
  return out;
}

// ---------------------------------------------------------------------------
// Sampler

ParameterSampler::ParameterSampler(std::uint64_t seed) : rng_(seed) {}

ParameterSampler ParameterSampler::from_env() {
  std::uint64_t seed = 20240601;
  if (const char* env = std::getenv("QSL21_SEED"); env != nullptr && *env != '\0') {
    seed = std::strtoull(env, nullptr, 10);
  }
  return ParameterSampler(seed);
}

CycloScalar ParameterSampler::rational() {
  static constexpr std::array<long, 6> kPrimes = {2, 3, 5, 7, 11, 13};
  std::uniform_int_distribution<std::size_t> pick(0, kPrimes.size() - 1);
  std::uniform_int_distribution<int> count(0, 2);
  for (;;) {
    long num = 1;
    long den = 1;
    for (int k = count(rng_); k > 0; --k) num *= kPrimes[pick(rng_)];
    for (int k = count(rng_); k > 0; --k) den *= kPrimes[pick(rng_)];
    if (num == den) continue;
    const CycloScalar value = CycloScalar(Rational(num, den)) * CycloScalar(static_cast<long>(sign()));
    if (!is_sign(value)) return value;
  }
}

int ParameterSampler::sign() { return std::uniform_int_distribution<int>(0, 1)(rng_) == 0 ? 1 : -1; }

CycloScalar parse_parameter(const QContext& ctx, std::string_view text) {
  auto trim = [](std::string_view t) {
    const auto b = t.find_first_not_of(" \t");
    if (b == std::string_view::npos) return std::string_view{};
    return t.substr(b, t.find_last_not_of(" \t") - b + 1);
  };
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty parameter");
  if (text.find(';') != std::string_view::npos) return CycloScalar::parse(text);
  auto rational = [&](std::string_view t) {
    Rational r{std::string(t), 10};
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    r.canonicalize();
    return CycloScalar(r);
  };
  const auto qpos = text.find('q');
  if (qpos == std::string_view::npos) return rational(text);
  CycloScalar coefficient(1L);
  std::string_view head = trim(text.substr(0, qpos));
  if (!head.empty() && head.back() == '*') head = trim(head.substr(0, head.size() - 1));
  if (head == "-") {
    coefficient = CycloScalar(-1L);
  } else if (!head.empty() && head != "+") {
    coefficient = rational(head);
  }
  std::string_view tail = trim(text.substr(qpos + 1));
  long exponent = 1;
  if (!tail.empty()) {
    if (tail.front() != '^') throw std::invalid_argument("malformed parameter '" + std::string(text) + "'");
    std::size_t used = 0;
    const std::string digits(trim(tail.substr(1)));
    exponent = std::stol(digits, &used);
    if (used != digits.size()) throw std::invalid_argument("malformed parameter '" + std::string(text) + "'");
  }
  return coefficient * ctx.qpow(exponent);
}

RepSpec ParameterSampler::draw(const QContext& ctx, Family family, std::optional<int> N, bool type_b) {
  const int lp = ctx.lprime();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    RepSpec s;
    s.family = family;
    s.l = ctx.l();
    if (family == Family::InducedMPrime) throw std::invalid_argument("draw: sample the base family instead");
    const bool nilpotent =
        family == Family::Gl2NilpotentA || family == Family::Gl2NilpotentB || is_nilpotent_sl21(family);
    if (nilpotent) {
      const bool b = family == Family::Gl2NilpotentB || (family != Family::Gl2NilpotentA && type_b);
      if (b) {
        s.lambda1 = rational();
      } else {
        const int upper = family == Family::Sl21AtypicalSum ? lp - 1 : lp;
        s.N = N ? *N : std::uniform_int_distribution<int>(1, upper)(rng_);
        s.omega = sign();
      }
      if (family == Family::Sl21AtypicalMu2 || family == Family::Sl21AtypicalSum) {
        s.epsilon = sign();
      } else {
        s.lambda2 = rational();
      }
    } else {
      s.lambda1 = rational();
      s.lambda2 = rational();
      s.phi = rational();
      if (family != Family::Sl21AtypicalPeriodic) s.beta = rational();
    }
    try {
      RepSpec done = complete_spec(ctx, s);
      // generic periodic gl(2) data: e1 never vanishes on the cycle
      if (is_periodic_family(family)) {
        bool degenerate = false;
        for (int p = 0; p < ctx.l() && !degenerate; ++p) {
          degenerate = (qint(ctx, p) * qbracket(ctx, *done.lambda1, 1 - p) + *done.beta).is_zero();
        }
        if (family == Family::Sl21AtypicalPeriodic) {
          for (int p = 0; p < ctx.l() && !degenerate; ++p) {
            degenerate = qbracket(ctx, *done.lambda2, p).is_zero() ||
                         qbracket(ctx, *done.lambda1 * *done.lambda2, 1 - p).is_zero() ||
                         qbracket(ctx, *done.lambda1 * *done.lambda2, -p).is_zero();
          }
        }
        if (degenerate) continue;
      }
      return s;
    } catch (const SpecError&) {
      continue;
    }
  }
  throw std::runtime_error("sampler: no generic parameters found for " + family_name(family));
}

}  // namespace qsl21
