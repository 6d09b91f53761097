#include "qsl21/module.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>
#include <tuple>

namespace qsl21 {

// ---------------------------------------------------------------------------
// Families and specs

namespace {

const std::vector<std::pair<Family, std::string>>& family_names() {
  static const std::vector<std::pair<Family, std::string>> names = {
      {Family::Gl2NilpotentA, "gl2-nilpotent-a"},
      {Family::Gl2NilpotentB, "gl2-nilpotent-b"},
      {Family::Gl2Periodic, "gl2-periodic"},
      {Family::Sl21TypicalNilpotent, "typical-nilpotent"},
      {Family::Sl21AtypicalMu2, "atypical-mu2"},
      {Family::Sl21AtypicalSum, "atypical-sum"},
      {Family::Sl21TypicalPeriodic, "typical-periodic"},
      {Family::Sl21AtypicalPeriodic, "atypical-periodic"},
      {Family::InducedMPrime, "induced"},
  };
  return names;
}

}  // namespace

std::string family_name(Family f) {
  for (const auto& [fam, name] : family_names()) {
    if (fam == f) return name;
  }
  throw std::logic_error("unnamed family");
}

Family family_from_name(const std::string& name) {
  for (const auto& [fam, n] : family_names()) {
    if (n == name) return fam;
  }
  throw std::invalid_argument("unknown family '" + name + "'");
}

bool is_gl2_family(Family f) {
  return f == Family::Gl2NilpotentA || f == Family::Gl2NilpotentB || f == Family::Gl2Periodic;
}

bool is_periodic_family(Family f) {
  return f == Family::Gl2Periodic || f == Family::Sl21TypicalPeriodic || f == Family::Sl21AtypicalPeriodic;
}

// ---------------------------------------------------------------------------
// ModuleRep

namespace {

Matrix derived_e3(const std::shared_ptr<const QContext>& ctx, const Matrix& e1, const Matrix& e2) {
  return e1 * e2 - (e2 * e1) * ctx->qinv();
}

Matrix derived_f3(const std::shared_ptr<const QContext>& ctx, const Matrix& f1, const Matrix& f2) {
  return f2 * f1 - (f1 * f2) * ctx->q();
}

}  // namespace

ModuleRep::ModuleRep(std::shared_ptr<const QContext> ctx, RepSpec spec, RepKind kind, std::vector<WeightLabel> basis,
                     GeneratorMatrices mats)
    : ctx_(std::move(ctx)), spec_(std::move(spec)), kind_(kind), basis_(std::move(basis)), mats_(std::move(mats)) {
  const std::size_t d = basis_.size();
  for (const Matrix* m : {&mats_.k1, &mats_.k1inv, &mats_.k2, &mats_.k2inv, &mats_.e1, &mats_.f1, &mats_.e2, &mats_.f2}) {
    if (m->rows() != d || m->cols() != d) throw std::invalid_argument("generator matrix has the wrong shape");
  }
  e3_ = derived_e3(ctx_, mats_.e1, mats_.e2);
  f3_ = derived_f3(ctx_, mats_.f1, mats_.f2);
}

ModuleRep ModuleRep::from_weights(std::shared_ptr<const QContext> ctx, RepSpec spec, RepKind kind,
                                  std::vector<WeightLabel> basis, Matrix e1, Matrix f1, Matrix e2, Matrix f2) {
  Vector k1, k1inv, k2, k2inv;
  for (const auto& w : basis) {
    k1.push_back(w.kappa1);
    k1inv.push_back(w.kappa1.inverse());
    k2.push_back(w.kappa2);
    k2inv.push_back(w.kappa2.inverse());
  }
  GeneratorMatrices mats{Matrix::diagonal(k1), Matrix::diagonal(k1inv), Matrix::diagonal(k2), Matrix::diagonal(k2inv),
                         std::move(e1),        std::move(f1),           std::move(e2),        std::move(f2)};
  return ModuleRep(std::move(ctx), std::move(spec), kind, std::move(basis), std::move(mats));
}

std::vector<const Matrix*> ModuleRep::algebra_generators() const {
  if (kind_ == RepKind::Gl2) return {&mats_.e1, &mats_.f1, &mats_.k1, &mats_.k2};
  return {&mats_.e1, &mats_.e2, &mats_.f1, &mats_.f2, &mats_.k1, &mats_.k2};
}

ModuleRep ModuleRep::with_spec(RepSpec spec) const {
  ModuleRep out = *this;
  out.spec_ = std::move(spec);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

class Evaluator {
 public:
  explicit Evaluator(const ModuleRep& m) : m_(m) {}

  Matrix monomial(const PBWMonomial& mono) {
    const Matrix& left = left_part(mono.rho, mono.sigma, mono.p);
    const Matrix& right = right_part(mono.t, mono.sigmap, mono.rhop);
    Matrix middle = k_power(1, mono.a1) * k_power(2, mono.a2);
    return left * (middle * right);
  }

 private:
  const Matrix& power(std::map<int, Matrix>& cache, const Matrix& base, const Matrix& inv, int e) {
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    Matrix value;
    if (e == 0) value = Matrix::identity(m_.dim());
    else if (e > 0) value = power(cache, base, inv, e - 1) * base;
    else value = power(cache, base, inv, e + 1) * inv;
    return cache.emplace(e, std::move(value)).first->second;
  }

  const Matrix& k_power(int which, int e) {
    return which == 1 ? power(k1_, m_.k1(), m_.k1inv(), e) : power(k2_, m_.k2(), m_.k2inv(), e);
  }

  const Matrix& left_part(int rho, int sigma, int p) {
    const auto key = std::make_tuple(rho, sigma, p);
    if (auto it = left_.find(key); it != left_.end()) return it->second;
    Matrix value = power(f1_, m_.f1(), m_.f1(), p);
    if (sigma) value = m_.f3() * value;
    if (rho) value = m_.f2() * value;
    return left_.emplace(key, std::move(value)).first->second;
  }

  const Matrix& right_part(int t, int sigmap, int rhop) {
    const auto key = std::make_tuple(t, sigmap, rhop);
    if (auto it = right_.find(key); it != right_.end()) return it->second;
    Matrix value = power(e1_, m_.e1(), m_.e1(), t);
    if (sigmap) value = value * m_.e3();
    if (rhop) value = value * m_.e2();
    return right_.emplace(key, std::move(value)).first->second;
  }

  const ModuleRep& m_;
  std::map<int, Matrix> k1_, k2_, f1_, e1_;
  std::map<std::tuple<int, int, int>, Matrix> left_, right_;
};

}  // namespace

Matrix eval(const AlgebraElement& a, const ModuleRep& m) {
  if (a.ctx() != m.ctx()) throw ContextMismatch("element and module live at different roots of unity");
  Evaluator ev(m);
  Matrix out(m.dim(), m.dim());
  for (const auto& [mono, c] : a.terms()) out += ev.monomial(mono) * c;
  return out;
}

// ---------------------------------------------------------------------------
// Relation audit

namespace {

struct Residuals {
  std::vector<Matrix> parts;
};

RelationCheck summarize(std::string name, const std::vector<Matrix>& parts) {
  RelationCheck check;
  check.name = std::move(name);
  check.holds = true;
  for (const auto& r : parts) {
    for (std::size_t i = 0; i < r.rows(); ++i) {
      for (std::size_t j = 0; j < r.cols(); ++j) {
        const auto& x = r(i, j);
        if (x.is_zero()) continue;
        check.holds = false;
        ++check.nonzero_entries;
        check.residual_max = std::max(check.residual_max, std::abs(x.to_complex()));
      }
    }
  }
  return check;
}

RelationCheck not_applicable(std::string name) {
  RelationCheck check;
  check.name = std::move(name);
  check.applicable = false;
  check.holds = true;
  return check;
}

}  // namespace

std::vector<RelationCheck> audit_relations(const ModuleRep& m) {
  const QContext& c = m.ctx();
  const std::size_t d = m.dim();
  const Matrix id = Matrix::identity(d);
  const CycloScalar& q = c.q();
  const CycloScalar& qi = c.qinv();
  const CycloScalar& dinv = c.qdiff_inv();
  const Matrix &k1 = m.k1(), &k1i = m.k1inv(), &k2 = m.k2(), &k2i = m.k2inv();
  const Matrix &e1 = m.e1(), &f1 = m.f1(), &e2 = m.e2(), &f2 = m.f2(), &e3 = m.e3(), &f3 = m.f3();
  const bool super = m.kind() == RepKind::Sl21;

  std::vector<RelationCheck> out;
  out.push_back(summarize("k-commute", {k1 * k2 - k2 * k1, k1 * k1i - id, k1i * k1 - id, k2 * k2i - id, k2i * k2 - id}));

  {
    std::vector<Matrix> parts;
    const Matrix* ks[2][2] = {{&k1, &k1i}, {&k2, &k2i}};
    const Matrix* es[2] = {&e1, &e2};
    const Matrix* fs[2] = {&f1, &f2};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < (super ? 2 : 1); ++j) {
        const int a = kCartan[i][j];
        parts.push_back(*ks[i][0] * *es[j] * *ks[i][1] - *es[j] * c.qpow(a));
        parts.push_back(*ks[i][0] * *fs[j] * *ks[i][1] - *fs[j] * c.qpow(-a));
      }
    }
    out.push_back(summarize("k-conjugation", parts));
  }
  out.push_back(summarize("e1f1-commutator", {e1 * f1 - f1 * e1 - (k1 - k1i) * dinv}));
  if (!super) {
    for (const char* name : {"e2f2-anticommutator", "e1f2-commute", "e2f1-commute", "e2-square", "f2-square",
                             "serre-e", "serre-f", "e1e3-f3f1", "e2e3-f3f2", "e3f3-anticommutator"}) {
      out.push_back(not_applicable(name));
    }
    return out;
  }
  out.push_back(summarize("e2f2-anticommutator", {e2 * f2 + f2 * e2 - (k2 - k2i) * dinv}));
  out.push_back(summarize("e1f2-commute", {e1 * f2 - f2 * e1}));
  out.push_back(summarize("e2f1-commute", {e2 * f1 - f1 * e2}));
  out.push_back(summarize("e2-square", {e2 * e2}));
  out.push_back(summarize("f2-square", {f2 * f2}));
  const CycloScalar q2 = q + qi;
  out.push_back(summarize("serre-e", {e1 * e1 * e2 - e1 * e2 * e1 * q2 + e2 * e1 * e1}));
  out.push_back(summarize("serre-f", {f1 * f1 * f2 - f1 * f2 * f1 * q2 + f2 * f1 * f1}));
  out.push_back(summarize("e1e3-f3f1", {e1 * e3 - e3 * e1 * q, f3 * f1 - f1 * f3 * qi}));
  out.push_back(summarize("e2e3-f3f2", {e2 * e3 + e3 * e2 * q, f3 * f2 + f2 * f3 * qi}));
  out.push_back(summarize("e3f3-anticommutator", {e3 * f3 + f3 * e3 - (k1 * k2 - k1i * k2i) * dinv, e3 * e3, f3 * f3}));
  return out;
}

bool audit_passes(const std::vector<RelationCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.holds; });
}

// ---------------------------------------------------------------------------
// Central values

const AlgebraElement& cached_casimir(const std::shared_ptr<const QContext>& ctx, int p) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<AlgebraElement>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({ctx->l(), p});
    if (it != cache.end()) return *it->second;
  }
  auto value = std::make_unique<AlgebraElement>(casimir_element(make_context(ctx->l()), p));
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(std::make_pair(ctx->l(), p), std::move(value));
  return *it->second;
}

CycloScalar central_scalar(const AlgebraElement& a, const ModuleRep& m, const std::string& what) {
  const auto value = eval(a, m).scalar_value();
  if (!value) throw NotScalar(what + " does not act as a scalar on this module");
  return *value;
}

CycloScalar casimir_scalar(const ModuleRep& m, int p) {
  if (m.kind() != RepKind::Sl21) throw std::invalid_argument("Casimir C_p needs an sl(2|1) module");
  return central_scalar(cached_casimir(m.ctx_ptr(), p), m, "C_" + std::to_string(p));
}

// ---------------------------------------------------------------------------
// Burnside closure

namespace {

// Partition of matrix positions by the ratio of the k-eigenvalues of row
// and column; products of generator matrices never mix classes.
struct PositionClasses {
  std::size_t d = 0;
  std::vector<int> class_of;                   // position -> class
  std::vector<std::vector<std::size_t>> positions;  // class -> positions
  std::vector<std::size_t> slot;               // position -> index inside its class
};

PositionClasses position_classes(const ModuleRep& m) {
  PositionClasses pc;
  const std::size_t d = m.dim();
  pc.d = d;
  pc.class_of.assign(d * d, 0);
  pc.slot.assign(d * d, 0);
  const bool diagonal = m.k1().is_diagonal() && m.k2().is_diagonal();
  if (!diagonal) {
    pc.positions.emplace_back(d * d);
    std::iota(pc.positions[0].begin(), pc.positions[0].end(), 0);
    std::iota(pc.slot.begin(), pc.slot.end(), 0);
    return pc;
  }
  std::map<std::pair<std::string, std::string>, int> ids;
  const Vector k1 = m.k1().diagonal_entries();
  const Vector k2 = m.k2().diagonal_entries();
  Vector k1i, k2i;
  for (std::size_t i = 0; i < d; ++i) {
    k1i.push_back(k1[i].inverse());
    k2i.push_back(k2[i].inverse());
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      auto key = std::make_pair((k1[i] * k1i[j]).to_string(), (k2[i] * k2i[j]).to_string());
      auto [it, inserted] = ids.emplace(key, static_cast<int>(ids.size()));
      if (inserted) pc.positions.emplace_back();
      const std::size_t pos = i * d + j;
      pc.class_of[pos] = it->second;
      pc.slot[pos] = pc.positions[static_cast<std::size_t>(it->second)].size();
      pc.positions[static_cast<std::size_t>(it->second)].push_back(pos);
    }
  }
  return pc;
}

using ModMatrix = std::vector<std::uint64_t>;

ModMatrix mod_product(const ModMatrix& a, const ModMatrix& b, std::size_t d, std::uint64_t p) {
  ModMatrix c(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const std::uint64_t aik = a[i * d + k];
      if (aik == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        const std::uint64_t bkj = b[k * d + j];
        if (bkj != 0) c[i * d + j] = (c[i * d + j] + modp::mul(aik, bkj, p)) % p;
      }
    }
  }
  return c;
}

std::optional<ModMatrix> reduce_matrix(const Matrix& m, const modp::PrimeField& field) {
  ModMatrix out(m.rows() * m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).is_zero()) continue;
      auto r = modp::reduce(m(i, j), field);
      if (!r) return std::nullopt;
      out[i * m.cols() + j] = *r;
    }
  }
  return out;
}

int module_conductor(const ModuleRep& m) {
  int n = m.ctx().l();
  for (const Matrix* g : m.algebra_generators()) n = conductor_lcm(n, g->conductor());
  for (const Matrix* g : {&m.k1inv(), &m.k2inv()}) n = conductor_lcm(n, g->conductor());
  return n;
}

// Closure dimension over Z/p, or nullopt if the module does not reduce.
std::optional<std::size_t> burnside_modp(const ModuleRep& m, const PositionClasses& pc, int prime_index) {
  const auto field = modp::choose_prime(module_conductor(m), prime_index);
  const std::size_t d = m.dim();
  std::vector<ModMatrix> gens;
  for (const Matrix* g : m.algebra_generators()) {
    auto r = reduce_matrix(*g, field);
    if (!r) return std::nullopt;
    gens.push_back(std::move(*r));
  }
  std::vector<modp::EchelonBasis> bases;
  for (const auto& pos : pc.positions) bases.emplace_back(pos.size(), field.p);
  std::deque<ModMatrix> queue;
  ModMatrix id(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) id[i * d + i] = 1;
  auto try_insert = [&](const ModMatrix& x) {
    std::size_t first = 0;
    while (first < x.size() && x[first] == 0) ++first;
    if (first == x.size()) return false;
    const auto cls = static_cast<std::size_t>(pc.class_of[first]);
    std::vector<std::uint64_t> v(pc.positions[cls].size(), 0);
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k] == 0) continue;
      if (static_cast<std::size_t>(pc.class_of[k]) != cls) throw std::logic_error("matrix word mixes weight classes");
      v[pc.slot[k]] = x[k];
    }
    return bases[cls].insert(std::move(v));
  };
  if (try_insert(id)) queue.push_back(id);
  std::size_t total = queue.size();
  while (!queue.empty() && total < d * d) {
    ModMatrix b = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      ModMatrix x = mod_product(g, b, d, field.p);
      if (try_insert(x)) {
        ++total;
        queue.push_back(std::move(x));
      }
    }
  }
  return total;
}

std::size_t burnside_exact(const ModuleRep& m, const PositionClasses& pc) {
  const std::size_t d = m.dim();
  std::vector<EchelonBasis> bases;
  for (const auto& pos : pc.positions) bases.emplace_back(pos.size());
  std::deque<Matrix> queue;
  auto try_insert = [&](const Matrix& x) {
    std::size_t first = 0;
    while (first < d * d && x(first / d, first % d).is_zero()) ++first;
    if (first == d * d) return false;
    const auto cls = static_cast<std::size_t>(pc.class_of[first]);
    Vector v(pc.positions[cls].size());
    for (std::size_t k = 0; k < d * d; ++k) {
      const auto& entry = x(k / d, k % d);
      if (entry.is_zero()) continue;
      if (static_cast<std::size_t>(pc.class_of[k]) != cls) throw std::logic_error("matrix word mixes weight classes");
      v[pc.slot[k]] = entry;
    }
    return bases[cls].insert(v);
  };
  const Matrix id = Matrix::identity(d);
  if (try_insert(id)) queue.push_back(id);
  std::size_t total = queue.size();
  const auto gens = m.algebra_generators();
  while (!queue.empty() && total < d * d) {
    Matrix b = std::move(queue.front());
    queue.pop_front();
    for (const Matrix* g : gens) {
      Matrix x = *g * b;
      if (try_insert(x)) {
        ++total;
        queue.push_back(std::move(x));
      }
    }
  }
  return total;
}

}  // namespace

namespace {

// Smallest block-triangular algebra containing the closure, from a chain of
// invariant subspaces assembled out of the submodules generated by singular
// vectors (and the maximal submodule of an induced module).
std::size_t flag_upper_bound(const ModuleRep& m) {
  const std::size_t d = m.dim();
  std::vector<std::vector<Vector>> subs;
  for (const auto& s : singular_vectors(m)) {
    if (s.proper) subs.push_back(submodule_generated(m, s.v));
  }
  if (m.spec().family == Family::InducedMPrime) {
    auto top = maximal_submodule(m);
    if (!top.empty()) subs.push_back(std::move(top));
  }
  std::sort(subs.begin(), subs.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<std::size_t> chain;  // dimensions of a nested chain
  const std::vector<Vector>* last = nullptr;
  for (const auto& sub : subs) {
    if (last != nullptr) {
      if (sub.size() == last->size()) continue;
      bool nested = true;
      for (const auto& v : *last) nested = nested && in_span(sub, v);
      if (!nested) continue;
    }
    chain.push_back(sub.size());
    last = &sub;
  }
  std::size_t squares = 0;
  std::size_t prev = 0;
  chain.push_back(d);
  for (auto k : chain) {
    squares += (k - prev) * (k - prev);
    prev = k;
  }
  return (d * d + squares) / 2;
}

}  // namespace

BurnsideResult burnside(const ModuleRep& m) {
  const std::size_t d = m.dim();
  BurnsideResult out;
  if (d == 0) return out;
  const PositionClasses pc = position_classes(m);
  for (int index = 0; index < 3; ++index) {
    const auto dim = burnside_modp(m, pc, index);
    if (!dim) continue;
    if (*dim == d * d) {
      out.dim = d * d;
      out.full = true;
      out.method = "modp";
      return out;
    }
    // The prime image gives a lower bound; a flag of submodules gives an
    // upper bound. When they meet the dimension is exact.
    if (*dim == flag_upper_bound(m)) {
      out.dim = *dim;
      out.full = false;
      out.method = "modp+flag";
      return out;
    }
    break;
  }
  out.dim = burnside_exact(m, pc);
  out.full = out.dim == d * d;
  out.method = "exact";
  return out;
}

std::size_t burnside_dim(const ModuleRep& m) { return burnside(m).dim; }

// ---------------------------------------------------------------------------
// Submodules, quotients, singular vectors

std::vector<Vector> submodule_generated(const ModuleRep& m, const std::vector<Vector>& seeds) {
  const std::size_t d = m.dim();
  EchelonBasis basis(d);
  std::vector<Vector> out;
  std::deque<Vector> queue;
  for (const auto& s : seeds) {
    if (basis.insert(s)) {
      out.push_back(s);
      queue.push_back(s);
    }
  }
  const auto gens = m.algebra_generators();
  while (!queue.empty() && out.size() < d) {
    Vector v = std::move(queue.front());
    queue.pop_front();
    for (const Matrix* g : gens) {
      Vector w = g->apply(v);
      if (basis.insert(w)) {
        out.push_back(w);
        queue.push_back(std::move(w));
      }
    }
  }
  return out;
}

std::vector<Vector> submodule_generated(const ModuleRep& m, const Vector& v) {
  if (is_zero(v)) throw std::invalid_argument("submodule_generated: zero vector");
  return submodule_generated(m, std::vector<Vector>{v});
}

bool in_span(const std::vector<Vector>& span, const Vector& v) {
  if (span.empty()) return is_zero(v);
  EchelonBasis basis(v.size());
  for (const auto& s : span) basis.insert(s);
  return basis.contains(v);
}

ModuleRep quotient(const ModuleRep& m, const std::vector<Vector>& sub) {
  const std::size_t d = m.dim();
  EchelonBasis sub_basis(d);
  std::vector<Vector> independent;
  for (const auto& s : sub) {
    if (sub_basis.insert(s)) independent.push_back(s);
  }
  for (const Matrix* g : {&m.k1(), &m.k1inv(), &m.k2(), &m.k2inv(), &m.e1(), &m.f1(), &m.e2(), &m.f2()}) {
    for (const auto& s : independent) {
      if (!sub_basis.contains(g->apply(s))) throw NotInvariant("quotient: subspace is not invariant");
    }
  }
  const std::size_t s = independent.size();
  std::vector<std::size_t> complement;
  if (s == 0) {
    complement.resize(d);
    std::iota(complement.begin(), complement.end(), 0);
  } else {
    const RrefResult red = rref(Matrix::from_columns(independent, d).transpose());
    std::vector<bool> pivot(d, false);
    for (auto c : red.pivots) pivot[c] = true;
    for (std::size_t j = 0; j < d; ++j) {
      if (!pivot[j]) complement.push_back(j);
    }
  }
  std::vector<Vector> columns = independent;
  for (auto j : complement) {
    Vector e(d);
    e[j] = CycloScalar(1L);
    columns.push_back(std::move(e));
  }
  const Matrix binv = inverse(Matrix::from_columns(columns, d));
  std::vector<std::size_t> bottom(d - s);
  std::iota(bottom.begin(), bottom.end(), s);
  std::vector<std::size_t> all(d);
  std::iota(all.begin(), all.end(), 0);
  const Matrix projector = binv.select(bottom, all);
  auto induced = [&](const Matrix& g) {
    return projector * g.select(all, complement);
  };
  GeneratorMatrices mats{induced(m.k1()), induced(m.k1inv()), induced(m.k2()), induced(m.k2inv()),
                         induced(m.e1()), induced(m.f1()),    induced(m.e2()), induced(m.f2())};
  std::vector<WeightLabel> labels;
  for (auto j : complement) labels.push_back(m.basis()[j]);
  RepSpec spec = m.spec();
  spec.transforms.push_back("quotient");
  return ModuleRep(m.ctx_ptr(), std::move(spec), m.kind(), std::move(labels), std::move(mats));
}

namespace {

// Groups basis indices by joint (k1, k2) eigenvalue; falls back to a single
// group when the k-matrices are not diagonal.
std::vector<std::vector<std::size_t>> weight_groups(const ModuleRep& m) {
  const std::size_t d = m.dim();
  std::vector<std::vector<std::size_t>> groups;
  if (!(m.k1().is_diagonal() && m.k2().is_diagonal())) {
    groups.emplace_back(d);
    std::iota(groups[0].begin(), groups[0].end(), 0);
    return groups;
  }
  std::map<std::pair<std::string, std::string>, std::size_t> ids;
  for (std::size_t i = 0; i < d; ++i) {
    auto key = std::make_pair(m.k1()(i, i).to_string(), m.k2()(i, i).to_string());
    auto [it, inserted] = ids.emplace(key, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(i);
  }
  return groups;
}

Vector embed(const Vector& x, const std::vector<std::size_t>& idx, std::size_t d) {
  Vector v(d);
  for (std::size_t k = 0; k < idx.size(); ++k) v[idx[k]] = x[k];
  return v;
}

// Rows y with y . s = 0 for every s in sub.
Matrix annihilator(const std::vector<Vector>& sub, std::size_t d) {
  if (sub.empty()) return Matrix::identity(d);
  const auto rows = nullspace(Matrix::from_columns(sub, d).transpose());
  Matrix out(rows.size(), d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

}  // namespace

std::vector<SingularVector> singular_vectors(const ModuleRep& m) {
  const std::size_t d = m.dim();
  std::vector<SingularVector> out;
  std::vector<std::size_t> all(d);
  std::iota(all.begin(), all.end(), 0);
  for (const auto& idx : weight_groups(m)) {
    const Matrix a = vstack({m.e1().select(all, idx), m.e2().select(all, idx)});
    for (const auto& x : nullspace(a)) {
      SingularVector s;
      s.v = embed(x, idx, d);
      s.weight_index = idx.front();
      s.generated_dim = submodule_generated(m, s.v).size();
      s.proper = s.generated_dim < d;
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<Vector> subsingular_vectors(const ModuleRep& m, const std::vector<Vector>& sub) {
  const std::size_t d = m.dim();
  const Matrix ann = annihilator(sub, d);
  std::vector<std::size_t> all(d);
  std::iota(all.begin(), all.end(), 0);
  EchelonBasis basis(d);
  for (const auto& s : sub) basis.insert(s);
  std::vector<Vector> out;
  for (const auto& idx : weight_groups(m)) {
    const Matrix a = vstack({ann * m.e1().select(all, idx), ann * m.e2().select(all, idx)});
    for (const auto& x : nullspace(a)) {
      Vector v = embed(x, idx, d);
      if (basis.insert(v)) out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<Vector> maximal_submodule(const ModuleRep& induced) {
  if (induced.spec().family != Family::InducedMPrime) {
    throw std::invalid_argument("maximal_submodule expects an induced module");
  }
  const std::size_t d = induced.dim();
  std::vector<Vector> current;
  for (std::size_t i = 0; i < d; ++i) {
    const auto& w = induced.basis()[i];
    if (w.rho == 0 && w.sigma == 0) continue;
    Vector e(d);
    e[i] = CycloScalar(1L);
    current.push_back(std::move(e));
  }
  const auto gens = induced.algebra_generators();
  while (!current.empty()) {
    const Matrix basis = Matrix::from_columns(current, d);
    const Matrix ann = annihilator(current, d);
    std::vector<Matrix> blocks;
    for (const Matrix* g : gens) blocks.push_back(ann * (*g * basis));
    const auto kernel = nullspace(vstack(blocks));
    if (kernel.size() == current.size()) break;
    std::vector<Vector> next;
    for (const auto& x : kernel) next.push_back(basis.apply(x));
    current = std::move(next);
  }
  return current;
}

std::optional<Matrix> find_intertwiner(const ModuleRep& a, const ModuleRep& b) {
  const std::size_t d = a.dim();
  if (b.dim() != d || a.kind() != b.kind()) return std::nullopt;
  const bool diagonal = a.k1().is_diagonal() && a.k2().is_diagonal() && b.k1().is_diagonal() && b.k2().is_diagonal();
  // unknown X(r, c) allowed only between equal weights
  std::vector<std::vector<int>> var(d, std::vector<int>(d, -1));
  int nvars = 0;
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      if (!diagonal || (b.k1()(r, r) == a.k1()(c, c) && b.k2()(r, r) == a.k2()(c, c))) var[r][c] = nvars++;
    }
  }
  if (nvars == 0) return std::nullopt;
  std::vector<std::pair<const Matrix*, const Matrix*>> pairs;
  const auto ga = a.algebra_generators();
  const auto gb = b.algebra_generators();
  for (std::size_t k = 0; k < ga.size(); ++k) {
    if (diagonal && (ga[k] == &a.k1() || ga[k] == &a.k2())) continue;
    pairs.emplace_back(ga[k], gb[k]);
  }
  std::vector<Vector> rows;
  for (const auto& [A, B] : pairs) {
    // (X A - B X)(r, c) = sum_k X(r,k) A(k,c) - sum_k B(r,k) X(k,c)
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        Vector row(static_cast<std::size_t>(nvars));
        bool any = false;
        for (std::size_t k = 0; k < d; ++k) {
          if (var[r][k] >= 0 && !(*A)(k, c).is_zero()) {
            row[static_cast<std::size_t>(var[r][k])] += (*A)(k, c);
            any = true;
          }
          if (var[k][c] >= 0 && !(*B)(r, k).is_zero()) {
            row[static_cast<std::size_t>(var[k][c])] -= (*B)(r, k);
            any = true;
          }
        }
        if (any && !is_zero(row)) rows.push_back(std::move(row));
      }
    }
  }
  std::vector<Vector> kernel;
  if (rows.empty()) {
    for (int v = 0; v < nvars; ++v) {
      Vector e(static_cast<std::size_t>(nvars));
      e[static_cast<std::size_t>(v)] = CycloScalar(1L);
      kernel.push_back(std::move(e));
    }
  } else {
    Matrix system(rows.size(), static_cast<std::size_t>(nvars));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < static_cast<std::size_t>(nvars); ++j) system(i, j) = rows[i][j];
    }
    kernel = nullspace(system);
  }
  if (kernel.empty()) return std::nullopt;
  auto assemble = [&](const std::vector<long>& weights) {
    Vector x(static_cast<std::size_t>(nvars));
    for (std::size_t k = 0; k < kernel.size(); ++k) {
      for (std::size_t j = 0; j < x.size(); ++j) {
        if (!kernel[k][j].is_zero()) x[j] += kernel[k][j] * CycloScalar(weights[k]);
      }
    }
    Matrix X(d, d);
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = 0; c < d; ++c) {
        if (var[r][c] >= 0) X(r, c) = x[static_cast<std::size_t>(var[r][c])];
      }
    }
    return X;
  };
  for (long attempt = 0; attempt < 8; ++attempt) {
    std::vector<long> weights(kernel.size());
    for (std::size_t k = 0; k < weights.size(); ++k) {
      weights[k] = 1 + static_cast<long>((k * 7 + static_cast<std::size_t>(attempt) * 13) % 17);
    }
    Matrix X = assemble(weights);
    if (!determinant(X).is_zero()) return X;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Complete-set rank

namespace {

RankResult rank_exact(const std::vector<AlgebraElement>& elements, const std::vector<ModuleRep>& sample) {
  std::size_t rows = 0;
  for (const auto& m : sample) rows += m.dim() * m.dim();
  Matrix big(rows, elements.size());
  for (std::size_t col = 0; col < elements.size(); ++col) {
    std::size_t offset = 0;
    for (const auto& m : sample) {
      const Matrix image = eval(elements[col], m);
      for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) big(offset + i * m.dim() + j, col) = image(i, j);
      }
      offset += m.dim() * m.dim();
    }
  }
  return RankResult{rank(big), elements.size(), true, "exact"};
}

struct ModModule {
  std::size_t d = 0;
  ModMatrix k1, k1inv, k2, k2inv, e1, f1, e2, f2, e3, f3;
  std::map<int, ModMatrix> k1pow, k2pow, f1pow, e1pow;
  std::map<std::tuple<int, int, int>, ModMatrix> left, right;
};

ModMatrix mod_identity(std::size_t d) {
  ModMatrix id(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) id[i * d + i] = 1;
  return id;
}

const ModMatrix& mod_power(std::map<int, ModMatrix>& cache, const ModMatrix& base, const ModMatrix& inv, int e,
                           std::size_t d, std::uint64_t p) {
  auto it = cache.find(e);
  if (it != cache.end()) return it->second;
  ModMatrix value;
  if (e == 0) value = mod_identity(d);
  else if (e > 0) value = mod_product(mod_power(cache, base, inv, e - 1, d, p), base, d, p);
  else value = mod_product(mod_power(cache, base, inv, e + 1, d, p), inv, d, p);
  return cache.emplace(e, std::move(value)).first->second;
}

ModMatrix mod_monomial(ModModule& mm, const PBWMonomial& mono, std::uint64_t p) {
  const std::size_t d = mm.d;
  const auto lkey = std::make_tuple(mono.rho, mono.sigma, mono.p);
  auto lit = mm.left.find(lkey);
  if (lit == mm.left.end()) {
    ModMatrix v = mod_power(mm.f1pow, mm.f1, mm.f1, mono.p, d, p);
    if (mono.sigma) v = mod_product(mm.f3, v, d, p);
    if (mono.rho) v = mod_product(mm.f2, v, d, p);
    lit = mm.left.emplace(lkey, std::move(v)).first;
  }
  const auto rkey = std::make_tuple(mono.t, mono.sigmap, mono.rhop);
  auto rit = mm.right.find(rkey);
  if (rit == mm.right.end()) {
    ModMatrix v = mod_power(mm.e1pow, mm.e1, mm.e1, mono.t, d, p);
    if (mono.sigmap) v = mod_product(v, mm.e3, d, p);
    if (mono.rhop) v = mod_product(v, mm.e2, d, p);
    rit = mm.right.emplace(rkey, std::move(v)).first;
  }
  const ModMatrix& ka = mod_power(mm.k1pow, mm.k1, mm.k1inv, mono.a1, d, p);
  const ModMatrix& kb = mod_power(mm.k2pow, mm.k2, mm.k2inv, mono.a2, d, p);
  return mod_product(lit->second, mod_product(mod_product(ka, kb, d, p), rit->second, d, p), d, p);
}

std::optional<RankResult> rank_modp(const std::vector<AlgebraElement>& elements, const std::vector<ModuleRep>& sample,
                                    int prime_index) {
  int n = elements.front().ctx().l();
  for (const auto& m : sample) n = conductor_lcm(n, module_conductor(m));
  for (const auto& e : elements) {
    for (const auto& [mono, c] : e.terms()) n = conductor_lcm(n, c.conductor());
  }
  const auto field = modp::choose_prime(n, prime_index);
  const std::uint64_t p = field.p;
  std::vector<ModModule> mods;
  for (const auto& m : sample) {
    ModModule mm;
    mm.d = m.dim();
    ModMatrix* slots[] = {&mm.k1, &mm.k1inv, &mm.k2, &mm.k2inv, &mm.e1, &mm.f1, &mm.e2, &mm.f2, &mm.e3, &mm.f3};
    const Matrix* src[] = {&m.k1(), &m.k1inv(), &m.k2(), &m.k2inv(), &m.e1(), &m.f1(), &m.e2(), &m.f2(), &m.e3(), &m.f3()};
    for (std::size_t k = 0; k < 10; ++k) {
      auto r = reduce_matrix(*src[k], field);
      if (!r) return std::nullopt;
      *slots[k] = std::move(*r);
    }
    mods.push_back(std::move(mm));
  }
  // Sparse columns: global row index -> value.
  std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> columns;
  for (const auto& e : elements) {
    std::vector<std::pair<std::size_t, std::uint64_t>> col;
    std::size_t offset = 0;
    for (auto& mm : mods) {
      ModMatrix acc(mm.d * mm.d, 0);
      for (const auto& [mono, c] : e.terms()) {
        auto cr = modp::reduce(c, field);
        if (!cr) return std::nullopt;
        const ModMatrix mat = mod_monomial(mm, mono, p);
        for (std::size_t k = 0; k < acc.size(); ++k) {
          if (mat[k] != 0) acc[k] = (acc[k] + modp::mul(*cr, mat[k], p)) % p;
        }
      }
      for (std::size_t k = 0; k < acc.size(); ++k) {
        if (acc[k] != 0) col.emplace_back(offset + k, acc[k]);
      }
      offset += mm.d * mm.d;
    }
    columns.push_back(std::move(col));
  }
  // Columns with disjoint row supports contribute independently; split the
  // problem into connected components of the shared-row relation.
  std::vector<std::size_t> parent(columns.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<std::size_t, std::size_t> owner;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const auto& [row, value] : columns[c]) {
      auto [it, inserted] = owner.emplace(row, c);
      if (!inserted) parent[find(c)] = find(it->second);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t c = 0; c < columns.size(); ++c) components[find(c)].push_back(c);
  std::size_t total = 0;
  for (const auto& [root, cols] : components) {
    std::map<std::size_t, std::size_t> row_index;
    for (auto c : cols) {
      for (const auto& [row, value] : columns[c]) row_index.emplace(row, row_index.size());
    }
    if (row_index.empty()) continue;
    // one dense row per element: rank is invariant under transposition
    std::vector<std::vector<std::uint64_t>> dense;
    for (auto c : cols) {
      std::vector<std::uint64_t> r(row_index.size(), 0);
      for (const auto& [row, value] : columns[c]) r[row_index[row]] = value;
      dense.push_back(std::move(r));
    }
    total += modp::rank(std::move(dense), p);
  }
  RankResult out;
  out.rank = total;
  out.count = elements.size();
  out.certified = total == elements.size();
  out.method = "modp";
  return out;
}

}  // namespace

RankResult complete_set_rank(const std::vector<AlgebraElement>& elements, const std::vector<ModuleRep>& sample) {
  if (elements.empty()) return RankResult{0, 0, true, "exact"};
  for (const auto& m : sample) {
    if (m.ctx() != elements.front().ctx()) throw ContextMismatch("sample module at a different root of unity");
  }
  std::size_t rows = 0;
  for (const auto& m : sample) rows += m.dim() * m.dim();
  if (elements.size() <= 64 && rows * elements.size() <= 400000) return rank_exact(elements, sample);
  std::optional<RankResult> best;
  for (int index = 0; index < 3; ++index) {
    auto r = rank_modp(elements, sample, index);
    if (!r) continue;
    if (!best || r->rank > best->rank) best = r;
    if (best->certified) break;
  }
  if (!best) throw std::runtime_error("complete_set_rank: no usable prime");
  return *best;
}

RankResult complete_set_rank(const std::shared_ptr<const QContext>& ctx, const std::vector<PBWMonomial>& monomials,
                             const std::vector<ModuleRep>& sample) {
  std::vector<AlgebraElement> elements;
  elements.reserve(monomials.size());
  for (const auto& m : monomials) elements.push_back(AlgebraElement::monomial(ctx, m));
  return complete_set_rank(elements, sample);
}

// ---------------------------------------------------------------------------
// Centre report

bool CentreReport::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& kv) { return kv.second; });
}

namespace {

// 2 P_l(C/2) for a matrix C via the Chebyshev recurrence on T_n = 2 P_n(C/2):
// T_0 = 2, T_1 = C, T_{n+1} = C T_n - T_{n-1}.
Matrix doubled_chebyshev(int l, const Matrix& c) {
  const Matrix id = Matrix::identity(c.rows());
  Matrix prev = id * CycloScalar(2L);
  if (l == 0) return prev;
  Matrix cur = c;
  for (int n = 1; n < l; ++n) {
    Matrix next = c * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Matrix gl2_casimir(const ModuleRep& m) {
  const QContext& c = m.ctx();
  const CycloScalar d2 = c.qdiff() * c.qdiff();
  return m.k1() * c.q() + m.k1inv() * c.qinv() + (m.f1() * m.e1()) * d2;
}

Matrix matrix_power(const Matrix& a, int n) {
  Matrix out = Matrix::identity(a.rows());
  for (int i = 0; i < n; ++i) out = out * a;
  return out;
}

}  // namespace

bool gl2_chebyshev_holds(const ModuleRep& m) {
  const QContext& c = m.ctx();
  const int l = c.l();
  const Matrix rhs = matrix_power(m.k1(), l) + matrix_power(m.k1inv(), l) +
                     matrix_power(m.f1(), l) * matrix_power(m.e1(), l) * c.qdiff().pow(2 * l);
  return doubled_chebyshev(l, gl2_casimir(m)) == rhs;
}

CentreReport centre_identity(const ModuleRep& m, bool allow_even) {
  const QContext& c = m.ctx();
  const int l = c.l();
  if (!c.is_odd() && !allow_even) throw DomainError("odd l required for the centre relations (got l = " + std::to_string(l) + ")");
  if (m.kind() != RepKind::Sl21) throw std::invalid_argument("centre_identity needs an sl(2|1) module");

  CentreReport r;
  r.l = l;
  for (int p = 1; p <= l; ++p) r.cp_scalars.push_back(casimir_scalar(m, p));
  for (int p = 1; p <= l; ++p) r.cp_shift_scalars.push_back(casimir_scalar(m, p + l));
  const auto powers = central_powers(m.ctx_ptr());
  r.z1 = central_scalar(powers.z1, m, "k1^l");
  r.z2 = central_scalar(powers.z2, m, "k2^l");
  r.x1 = central_scalar(powers.x1, m, "e1^l");
  r.y1 = central_scalar(powers.y1, m, "f1^l");

  const CycloScalar one(1L);
  const CycloScalar d2l = c.qdiff().pow(2 * l);
  const CycloScalar z1sq = r.z1 * r.z1;
  const CycloScalar z2sq = r.z2 * r.z2;
  const CycloScalar factor = z1sq * z2sq * z2sq;  // z1^2 z2^4
  r.lhs = centre_poly(c, r.cp_scalars, allow_even);
  r.rhs = (one - z1sq * z2sq) * (z2sq - one) - d2l * factor * r.y1 * r.x1;
  r.verdicts["centre_polynomial"] = r.lhs == r.rhs;

  std::vector<CycloScalar> rescaled;
  for (int p = 1; p <= l; ++p) rescaled.push_back(-c.qpow(2 * p - 1) * r.cp_scalars[static_cast<std::size_t>(p - 1)]);
  r.lhs_rescaled = centre_poly(c, rescaled, allow_even);
  r.rhs_rescaled = (one - z1sq * z2sq) * (z2sq - one) + d2l * r.z1 * z2sq * r.y1 * r.x1;
  r.verdicts["centre_polynomial_rescaled"] = r.lhs_rescaled == r.rhs_rescaled;

  // Chebyshev relation of the even subalgebra, as a matrix identity.
  const Matrix cgl2 = gl2_casimir(m);
  const CycloScalar gl2_rhs = r.z1 + r.z1.inverse() + d2l * r.y1 * r.x1;
  r.verdicts["gl2_chebyshev"] = doubled_chebyshev(l, cgl2) == Matrix::identity(m.dim()) * gl2_rhs;

  // xi + 1/xi on the e2, e3 kernel.
  {
    const auto kernel = nullspace(vstack({m.e2(), m.e3()}));
    std::optional<CycloScalar> value;
    bool scalar = !kernel.empty();
    for (const auto& v : kernel) {
      const Vector w = cgl2.apply(v);
      std::size_t i = 0;
      while (v[i].is_zero()) ++i;
      const CycloScalar ratio = w[i] / v[i];
      Vector diff = w;
      for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= ratio * v[k];
      if (!is_zero(diff) || (value && *value != ratio)) {
        scalar = false;
        break;
      }
      value = ratio;
    }
    if (scalar && value) {
      r.xi_plus_xiinv = *value;
      const Matrix one_by_one = Matrix::diagonal({*value});
      r.verdicts["gl2_chebyshev_v0"] = doubled_chebyshev(l, one_by_one)(0, 0) == gl2_rhs;
    }
  }

  bool shift = true;
  for (int p = 0; p < l; ++p) shift = shift && r.cp_shift_scalars[static_cast<std::size_t>(p)] == factor * r.cp_scalars[static_cast<std::size_t>(p)];
  r.verdicts["casimir_shift"] = shift;

  std::vector<CycloScalar> all = r.cp_scalars;
  all.insert(all.end(), r.cp_shift_scalars.begin(), r.cp_shift_scalars.end());  // C_1 .. C_2l
  bool power_shift = true;
  for (int p = 1; p < 2 * l; ++p) {
    power_shift = power_shift && all[static_cast<std::size_t>(p)].pow(l) == factor * all[static_cast<std::size_t>(p - 1)].pow(l);
  }
  r.verdicts["casimir_power_shift"] = power_shift;

  bool products = true;
  const int n = 2 * l;
  for (int p1 = 1; p1 <= n && products; ++p1) {
    for (int p2 = p1; p2 <= n && products; ++p2) {
      for (int p3 = 1; p3 <= n; ++p3) {
        const int p4 = p1 + p2 - p3;
        if (p4 < 1 || p4 > n || p4 < p3) continue;
        if (all[static_cast<std::size_t>(p1 - 1)] * all[static_cast<std::size_t>(p2 - 1)] !=
            all[static_cast<std::size_t>(p3 - 1)] * all[static_cast<std::size_t>(p4 - 1)]) {
          products = false;
          break;
        }
      }
    }
  }
  r.verdicts["casimir_products"] = products;
  return r;
}

// ---------------------------------------------------------------------------
// Twists and controls

ModuleRep psi_image(const ModuleRep& m) {
  std::vector<WeightLabel> basis = m.basis();
  for (auto& w : basis) {
    w.kappa1 = w.kappa1.inverse();
    w.kappa2 = -w.kappa2.inverse();
  }
  const CycloScalar minus_one(-1L);
  GeneratorMatrices mats{m.k1inv(), m.k1(), m.k2inv() * minus_one, m.k2() * minus_one,
                         m.f1(),    m.e1(), m.f2(),                m.e2()};
  RepSpec spec = m.spec();
  spec.transforms.push_back("psi");
  return ModuleRep(m.ctx_ptr(), std::move(spec), m.kind(), std::move(basis), std::move(mats));
}

ModuleRep corrupted(const ModuleRep& m) {
  GeneratorMatrices mats = m.mats();
  bool done = false;
  for (std::size_t i = 0; i < m.dim() && !done; ++i) {
    for (std::size_t j = 0; j < m.dim() && !done; ++j) {
      if (!mats.e1(i, j).is_zero()) {
        mats.e1(i, j) += CycloScalar(1L);
        done = true;
      }
    }
  }
  if (!done) mats.e1(0, m.dim() - 1) = CycloScalar(1L);
  RepSpec spec = m.spec();
  spec.transforms.push_back("corrupted");
  return ModuleRep(m.ctx_ptr(), std::move(spec), m.kind(), m.basis(), std::move(mats));
}

}  // namespace qsl21
