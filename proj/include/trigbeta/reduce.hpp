#pragma once

#include <string>
#include <vector>

#include "trigbeta/expr.hpp"
#include "trigbeta/integrand.hpp"

namespace trigbeta {

struct DerivationStep {
  std::string rule_id;      // e.g. "master-half-pi"
  std::string anchor;       // citation anchor for the rule's source
  std::string description;  // what the step does, instantiated
  std::string state_after;  // rendering of the state after the step
};

/// Ordered substitution/identity steps from integrand to closed form.
/// Non-empty for any successful reduction; the first step names the master
/// rule applied.
struct Derivation {
  std::vector<DerivationStep> steps;
};

struct AlternativeForm {
  ClosedForm form;
  std::vector<std::string> rules;  // rewrite rule ids, in application order
};

struct ReductionOutcome {
  ClosedForm primary_form;
  std::vector<AlternativeForm> alternative_forms;
  Derivation derivation;
};

/// Thrown by reduce_quarter_pi when alpha + beta + 2*gamma + 2 != 0; the
/// exact rational residue is carried so callers can report it.
struct ConstraintError : Error {
  Rational delta;
  ConstraintError(const std::string& msg, const Rational& d) : Error(msg), delta(d) {}
};

/// Half-pi master reduction:
///   integral of sin^alpha cos^beta over [0, pi/2]
///     = (1/2) B((alpha+1)/2, (beta+1)/2).
/// Total for every convergent exponent pair; throws DivergenceError with
/// the offending endpoint otherwise.
ReductionOutcome reduce_half_pi(const TrigIntegrand& ti);

/// Quarter-pi master reduction:
///   integral of sin^alpha cos^beta cos^gamma(2x) over [0, pi/4]
///     = (1/2) B((alpha+1)/2, gamma+1)   when alpha + beta + 2*gamma + 2 = 0.
/// The constraint is checked by exact rational arithmetic; violations throw
/// ConstraintError (callers fall back to quadrature-only evaluation).
ReductionOutcome reduce_quarter_pi(const TrigIntegrand& ti);

/// Dispatch on the interval.
ReductionOutcome reduce(const TrigIntegrand& ti);

/// Bounded identity-rewrite pass: breadth-first application of the
/// gamma/beta identities (Legendre duplication, reflection, half-integer
/// gamma, beta<->gamma expansion, integer gamma -> factorial), at most 4
/// rule applications deep, deduplicated by canonical rendering. Every
/// returned form is numerically equivalent to the input at 1e-10.
std::vector<AlternativeForm> apply_identities(const ClosedForm& cf);

std::string derivation_to_text(const Derivation& d);
std::string derivation_to_latex(const Derivation& d);

}  // namespace trigbeta
