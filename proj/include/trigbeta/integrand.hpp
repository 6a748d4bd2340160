#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trigbeta/errors.hpp"
#include "trigbeta/rational.hpp"

namespace trigbeta {

enum class Interval { QuarterPi, HalfPi };
enum class Endpoint { Lower, Upper };

/// Canonical integrand sin^alpha(x) * cos^beta(x) * cos^gamma(2x) over
/// [0, pi/4] or [0, pi/2]. On the half-pi interval cos(2x) changes sign, so
/// cos2x_exp must be zero there; the parser rejects such inputs.
struct TrigIntegrand {
  Rational sin_exp;    // alpha
  Rational cos_exp;    // beta
  Rational cos2x_exp;  // gamma
  Interval interval = Interval::HalfPi;

  friend bool operator==(const TrigIntegrand& a, const TrigIntegrand& b) {
    return a.sin_exp == b.sin_exp && a.cos_exp == b.cos_exp && a.cos2x_exp == b.cos2x_exp &&
           a.interval == b.interval;
  }
};

struct ConvergenceVerdict {
  bool convergent = false;
  std::optional<Endpoint> offending_endpoint;  // present iff !convergent
  std::string reason;
};

/// Thrown when an operation requires a convergent integrand.
struct DivergenceError : Error {
  Endpoint endpoint;
  DivergenceError(const std::string& msg, Endpoint e) : Error(msg), endpoint(e) {}
};

enum class TrigBase { Sin, Cos, Tan, Cot, Sec, Csc, Cos2x };

struct ExponentTriple {
  Rational sin_exp, cos_exp, cos2x_exp;
};

/// Rewrite a factor list into sin/cos/cos2x exponents:
///   tan^e -> sin^e cos^-e,  cot^e -> sin^-e cos^e,
///   sec^e -> cos^-e,        csc^e -> sin^-e,
/// summing exponents of like bases exactly.
ExponentTriple normalize_factors(std::span<const std::pair<TrigBase, Rational>> factors);

/// Parse integrand DSL text, e.g. "int[0,pi/2] sin(x)^(-1/2) dx".
/// Throws ParseError with the byte offset of the offending token.
TrigIntegrand parse_integrand(std::string_view text);

/// Convergent iff alpha > -1, and beta > -1 on the half-pi interval,
/// and gamma > -1 on the quarter-pi interval.
ConvergenceVerdict convergence_check(const TrigIntegrand& ti);

/// Canonical DSL text; parse_integrand(render_integrand(ti)) == ti.
std::string render_integrand(const TrigIntegrand& ti);

}  // namespace trigbeta
