#pragma once

// Constructors for the finite-dimensional simple modules of U_q(gl(2)) and
// U_q(sl(2|1)) at a root of unity, the induced module M' built from a gl(2)
// module V0, and the classification of parameter sets.
//
// Parameter conventions. A type A nilpotent module is given by N and the
// sign omega (lambda1 = omega q^{N-1}); a type B nilpotent module by a free
// lambda1 with N = l'. Atypical nilpotent modules replace lambda2 by a sign
// epsilon: lambda2 = epsilon when [mu2] = 0, lambda2 = epsilon/(lambda1 q)
// when [mu1+mu2+1] = 0. Periodic modules carry phi and beta.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "qsl21/module.hpp"

namespace qsl21 {

/// A RepSpec that violates the conditions of its family.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Type A when omega is set, type B otherwise (nilpotent families only).
bool is_type_a(const RepSpec& spec);

/// Checks the family conditions and fills the derived parameters
/// (lambda1 and lambda2 from N, omega, epsilon; beta for atypical periodic
/// modules; N = l' for type B). Throws SpecError naming the violated
/// condition.
RepSpec complete_spec(const QContext& ctx, const RepSpec& spec);

/// gl(2) nilpotent module of dimension N on v_0 .. v_{N-1}.
ModuleRep gl2_nilpotent(const std::shared_ptr<const QContext>& ctx, const RepSpec& spec);
/// gl(2) periodic module of dimension l; f1 v_p = phi v_{p+1} cyclically.
ModuleRep gl2_periodic(const std::shared_ptr<const QContext>& ctx, const RepSpec& spec);

/// M' = V0 + f2 V0 + f3 V0 + f2 f3 V0, with the generator action computed by
/// normal ordering g f2^rho f3^sigma in the algebra. Basis order is
/// (rho, sigma) = (0,0), (1,0), (0,1), (1,1), then p; for a periodic V0 the
/// f3 layers carry the factor phi^{-1}.
ModuleRep induce(const ModuleRep& v0);

/// Closed-form sl(2|1) module of an explicit family.
ModuleRep sl21_family(const std::shared_ptr<const QContext>& ctx, const RepSpec& spec);

/// Builds any spec, including induced modules and the listed transforms
/// ("psi", "quotient", "corrupted").
ModuleRep build(const RepSpec& spec);

/// The gl(2) module V0 underlying an sl(2|1) or induced spec.
RepSpec base_spec(const RepSpec& spec);

/// Value of C_p predicted for the induced module of these parameters
/// (zero on atypical families).
CycloScalar expected_casimir(const QContext& ctx, const RepSpec& spec, int p);

/// Parses a parameter value: a scalar string ("n; c0,c1,..."), a rational
/// ("-3/5"), or a multiple of a power of q ("q^-1", "-q^2", "3/2*q").
CycloScalar parse_parameter(const QContext& ctx, std::string_view text);

/// Raw parameters of a module before classification.
struct RawParams {
  CycloScalar lambda1;
  CycloScalar lambda2;
  std::optional<CycloScalar> phi;
  std::optional<CycloScalar> beta;
  std::optional<int> N;
};

struct Classification {
  Family family = Family::Sl21TypicalNilpotent;
  bool typical = true;
  std::size_t dim = 0;
  char type = 'A';  // 'A' or 'B'
  int N = 0;        // dimension of V0
  std::string reason;
  /// Spec that builds the simple module of this class.
  RepSpec spec;
};

/// Family and dimension of the simple quotient of the induced module.
/// Throws DomainError when f1^l = 0 while e1 acts periodically ("apply psi
/// first") and SpecError for inconsistent N.
Classification classify(const QContext& ctx, const RawParams& raw);

/// Random generic parameters: nonzero rationals whose numerator and
/// denominator are products of small primes, with every degeneracy of the
/// requested family rejected exactly.
class ParameterSampler {
 public:
  explicit ParameterSampler(std::uint64_t seed);
  /// Seed from QSL21_SEED, or a fixed default.
  static ParameterSampler from_env();

  CycloScalar rational();
  int sign();
  /// A generic spec of the family. N is drawn when not given (type A
  /// nilpotent families); type_b selects the type B variant.
  RepSpec draw(const QContext& ctx, Family family, std::optional<int> N = std::nullopt, bool type_b = false);

 private:
  std::mt19937_64 rng_;
};

}  // namespace qsl21
