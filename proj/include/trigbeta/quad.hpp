#pragma once

#include "trigbeta/integrand.hpp"

namespace trigbeta {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // |S_L - S_{L-1}| at the final level
  int levels_used = 0;
  long evaluations = 0;
  bool converged = false;
};

/// Tanh-sinh (double-exponential) quadrature of a TrigIntegrand over its
/// interval. The integrand is evaluated in log space,
/// exp(alpha*ln sin x + beta*ln cos x + gamma*ln cos 2x), with distances to
/// both endpoints carried separately so integrable endpoint singularities
/// (exponents in (-1, 0)) lose no precision.
///
/// This routine is the independent oracle for the symbolic reductions: it
/// shares no code with the gamma/beta kernel beyond elementary functions.
///
/// Requires a convergent integrand (throws DivergenceError otherwise),
/// positive tolerances and 3 <= max_level <= 14. When the successive-level
/// difference never reaches max(abs_tol, rel_tol*|value|), the result is
/// returned with converged == false rather than trusted silently.
QuadratureResult integrate(const TrigIntegrand& ti, double abs_tol = 1e-12,
                           double rel_tol = 1e-11, int max_level = 12);

/// Direct quadrature of the defining integral of B(a, b) over [0, 1],
/// for a, b > 0, with the same double-exponential machinery.
QuadratureResult integrate_beta_def(double a, double b, double tol = 1e-12);

}  // namespace trigbeta
