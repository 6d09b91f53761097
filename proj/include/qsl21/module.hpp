#pragma once

// Finite-dimensional modules realised by exact matrices: evaluation of
// algebra elements, relation audits, Casimir values, irreducibility
// certificates, submodules and quotients.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsl21/linalg.hpp"
#include "qsl21/pbw.hpp"
#include "qsl21/qkernel.hpp"

namespace qsl21 {

enum class Family : std::uint8_t {
  Gl2NilpotentA,
  Gl2NilpotentB,
  Gl2Periodic,
  Sl21TypicalNilpotent,
  Sl21AtypicalMu2,
  Sl21AtypicalSum,
  Sl21TypicalPeriodic,
  Sl21AtypicalPeriodic,
  InducedMPrime,
};

/// Stable lower-case names used on the command line and in JSON
/// ("typical-periodic", "atypical-mu2", ...).
std::string family_name(Family f);
Family family_from_name(const std::string& name);
bool is_gl2_family(Family f);
bool is_periodic_family(Family f);

/// Symbolic description of a module. Unused parameters stay empty.
struct RepSpec {
  Family family = Family::Sl21TypicalPeriodic;
  int l = 3;
  std::optional<int> N;
  std::optional<CycloScalar> lambda1;
  std::optional<CycloScalar> lambda2;
  std::optional<CycloScalar> phi;
  std::optional<CycloScalar> beta;
  std::optional<int> omega;
  std::optional<int> epsilon;
  /// Family of V0 for an induced module.
  std::optional<Family> base;
  /// Transformations applied after construction, e.g. "psi" or "quotient".
  std::vector<std::string> transforms;
};

/// Basis vector w_{rho,sigma,p} with its k1, k2 eigenvalues.
struct WeightLabel {
  int rho = 0;
  int sigma = 0;
  int p = 0;
  CycloScalar kappa1;
  CycloScalar kappa2;
};

enum class RepKind : std::uint8_t { Gl2, Sl21 };

struct GeneratorMatrices {
  Matrix k1, k1inv, k2, k2inv, e1, f1, e2, f2;
};

class ModuleRep {
 public:
  /// Generic constructor; e3 and f3 are derived from e1, e2, f1, f2.
  ModuleRep(std::shared_ptr<const QContext> ctx, RepSpec spec, RepKind kind, std::vector<WeightLabel> basis,
            GeneratorMatrices mats);

  /// Builds the diagonal k-matrices from the basis eigenvalues.
  static ModuleRep from_weights(std::shared_ptr<const QContext> ctx, RepSpec spec, RepKind kind,
                                std::vector<WeightLabel> basis, Matrix e1, Matrix f1, Matrix e2, Matrix f2);

  const QContext& ctx() const { return *ctx_; }
  const std::shared_ptr<const QContext>& ctx_ptr() const { return ctx_; }
  const RepSpec& spec() const { return spec_; }
  RepKind kind() const { return kind_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<WeightLabel>& basis() const { return basis_; }
  const GeneratorMatrices& mats() const { return mats_; }

  const Matrix& k1() const { return mats_.k1; }
  const Matrix& k1inv() const { return mats_.k1inv; }
  const Matrix& k2() const { return mats_.k2; }
  const Matrix& k2inv() const { return mats_.k2inv; }
  const Matrix& e1() const { return mats_.e1; }
  const Matrix& f1() const { return mats_.f1; }
  const Matrix& e2() const { return mats_.e2; }
  const Matrix& f2() const { return mats_.f2; }
  const Matrix& e3() const { return e3_; }
  const Matrix& f3() const { return f3_; }

  /// e1, e2, f1, f2, k1, k2 in that order (for gl(2) modules: e1, f1, k1, k2).
  std::vector<const Matrix*> algebra_generators() const;

  /// Copy with a replaced spec (used to tag derived modules).
  ModuleRep with_spec(RepSpec spec) const;

 private:
  std::shared_ptr<const QContext> ctx_;
  RepSpec spec_;
  RepKind kind_;
  std::vector<WeightLabel> basis_;
  GeneratorMatrices mats_;
  Matrix e3_;
  Matrix f3_;
};

class NotScalar : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotInvariant : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Matrix of an algebra element on a module.
Matrix eval(const AlgebraElement& a, const ModuleRep& m);

struct RelationCheck {
  std::string name;
  bool applicable = true;
  bool holds = false;
  std::size_t nonzero_entries = 0;
  double residual_max = 0.0;  // max |entry| of the residual under the complex embedding
};

/// The thirteen audited relation groups, in a fixed order. For gl(2)
/// modules only the first three apply; the rest are reported as not
/// applicable.
std::vector<RelationCheck> audit_relations(const ModuleRep& m);
bool audit_passes(const std::vector<RelationCheck>& checks);

/// Value of C_p on m; throws NotScalar unless eval(C_p) is a multiple of
/// the identity.
CycloScalar casimir_scalar(const ModuleRep& m, int p);

/// Scalar value of a central element; throws NotScalar otherwise.
CycloScalar central_scalar(const AlgebraElement& a, const ModuleRep& m, const std::string& what);

/// Cached C_p as an algebra element.
const AlgebraElement& cached_casimir(const std::shared_ptr<const QContext>& ctx, int p);

struct BurnsideResult {
  std::size_t dim = 0;
  bool full = false;
  /// "modp" when full rank was certified through a prime field image,
  /// "modp+flag" when the prime image met the upper bound given by a chain
  /// of submodules, "exact" when the closure was computed over the
  /// cyclotomic field.
  std::string method;
};

/// Dimension of the associative algebra generated by the module matrices.
BurnsideResult burnside(const ModuleRep& m);
std::size_t burnside_dim(const ModuleRep& m);

/// Basis (columns as vectors) of the smallest invariant subspace containing
/// the given vectors.
std::vector<Vector> submodule_generated(const ModuleRep& m, const std::vector<Vector>& seeds);
std::vector<Vector> submodule_generated(const ModuleRep& m, const Vector& v);

/// Action induced on a complement of an invariant subspace. The complement
/// consists of standard basis vectors; their labels are kept.
ModuleRep quotient(const ModuleRep& m, const std::vector<Vector>& sub);

struct SingularVector {
  Vector v;
  std::size_t weight_index = 0;  // index of a basis vector of the same weight
  bool proper = false;           // generates a proper submodule
  std::size_t generated_dim = 0;
};

/// Basis of ker e1 n ker e2, one weight space at a time.
std::vector<SingularVector> singular_vectors(const ModuleRep& m);

/// Weight vectors outside sub whose images under e1 and e2 lie in sub
/// (sub must be invariant). One basis of the quotient kernel per weight.
std::vector<Vector> subsingular_vectors(const ModuleRep& m, const std::vector<Vector>& sub);

/// Largest proper submodule of an induced module M', found as the largest
/// invariant subspace avoiding the V0 layer.
std::vector<Vector> maximal_submodule(const ModuleRep& induced);

/// Invertible X with X A_g = B_g X for every generator, if one exists.
std::optional<Matrix> find_intertwiner(const ModuleRep& a, const ModuleRep& b);

/// Whether v lies in the span of the given vectors.
bool in_span(const std::vector<Vector>& span, const Vector& v);

struct RankResult {
  std::size_t rank = 0;
  std::size_t count = 0;
  /// True when the value is exact (computed exactly, or full rank certified
  /// through a prime field image).
  bool certified = false;
  std::string method;
};

/// Rank of the evaluation map from span(elements) to the direct sum of the
/// endomorphism algebras of the sample modules.
RankResult complete_set_rank(const std::vector<AlgebraElement>& elements, const std::vector<ModuleRep>& sample);
RankResult complete_set_rank(const std::shared_ptr<const QContext>& ctx, const std::vector<PBWMonomial>& monomials,
                             const std::vector<ModuleRep>& sample);

struct CentreReport {
  int l = 0;
  std::vector<CycloScalar> cp_scalars;        // C_1 .. C_l
  std::vector<CycloScalar> cp_shift_scalars;  // C_{1+l} .. C_{2l}
  CycloScalar z1, z2, x1, y1;
  std::optional<CycloScalar> xi_plus_xiinv;
  /// P_l(C_1, ..., C_l) and (1 - z1^2 z2^2)(z2^2 - 1) - (q - q^-1)^{2l} z1^2 z2^4 y1 x1.
  CycloScalar lhs, rhs;
  /// P_l evaluated at C'_p = -q^{2p-1} C_p, and
  /// (1 - z1^2 z2^2)(z2^2 - 1) + (q - q^-1)^{2l} z1 z2^2 y1 x1.
  CycloScalar lhs_rescaled, rhs_rescaled;
  std::map<std::string, bool> verdicts;
  bool all_pass() const;
};

/// Evaluates every central quantity on m and checks the centre relations.
/// Requires odd l unless allow_even is set (then verdicts are reported but
/// nothing is asserted by callers).
///
/// Verdicts: centre_polynomial (lhs == rhs), centre_polynomial_rescaled,
/// gl2_chebyshev (2 P_l(C/2) = k1^l + k1^-l + (q-q^-1)^{2l} f1^l e1^l as a
/// matrix identity), gl2_chebyshev_v0 (the same on ker e2 n ker e3, when
/// the gl(2) Casimir is scalar there), casimir_shift (C_{p+l} = z1^2 z2^4
/// C_p), casimir_power_shift (C_{p+1}^l = z1^2 z2^4 C_p^l) and
/// casimir_products (C_a C_b = C_c C_d whenever a + b = c + d).
CentreReport centre_identity(const ModuleRep& m, bool allow_even = false);

/// 2 P_l(C/2) = k1^l + k1^-l + (q-q^-1)^{2l} f1^l e1^l as a matrix identity,
/// where C = q k1 + q^-1 k1^-1 + (q-q^-1)^2 f1 e1 is the gl(2) Casimir.
/// Applies to gl(2) and sl(2|1) modules alike.
bool gl2_chebyshev_holds(const ModuleRep& m);

/// The module twisted by psi: e_i and f_i swap, k1 -> k1^{-1},
/// k2 -> -k2^{-1}.
ModuleRep psi_image(const ModuleRep& m);

/// Corrupts one nonzero entry of e1 (negative controls).
ModuleRep corrupted(const ModuleRep& m);

}  // namespace qsl21
