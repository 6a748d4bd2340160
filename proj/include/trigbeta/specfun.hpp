#pragma once

#include <cstdint>
#include <string>

#include "trigbeta/expr.hpp"
#include "trigbeta/rational.hpp"

namespace trigbeta {

/// ln Gamma(x) for x > 0. Relative error <= 1e-13 on (0, 170].
double log_gamma(double x);

struct SignedLog {
  double log_abs;
  int sign;
};

/// ln |Gamma(x)| plus the sign of Gamma(x), for any non-pole x.
SignedLog log_abs_gamma(double x);

/// Gamma(x) for x not a nonpositive integer. Uses exp(log_gamma) for
/// x >= 0.5 and the reflection formula below. Throws PoleError at poles and
/// OverflowError when |Gamma(x)| exceeds the double range.
double gamma_fn(double x);

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b), a, b > 0.
double log_beta(double a, double b);

/// B(a, b) for a, b > 0, computed in log space. Symmetric to the bit:
/// arguments are ordered before computing.
double beta_fn(double a, double b);

/// sin(pi*x) and cos(pi*x) with exact argument reduction around the nearest
/// integer, so values at rational multiples of pi stay accurate.
double sin_pi(double x);
double cos_pi(double x);

using int128 = __int128;

/// n! as an exact 128-bit integer. Throws OverflowError for n > 33.
int128 factorial_exact(int n);

/// C(n, k) as an exact 128-bit integer. Requires 0 <= k <= n; throws
/// OverflowError beyond the exact range.
int128 binomial_exact(std::int64_t n, std::int64_t k);

std::string int128_str(int128 v);
double int128_to_double(int128 v);

/// Exact closed form sqrt(pi) * (2m)! / (4^m * m!) for Gamma(m + 1/2).
ClosedForm gamma_half_integer(int m);

}  // namespace trigbeta
