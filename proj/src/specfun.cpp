#include "trigbeta/specfun.hpp"

#include <cmath>
#include <limits>

#include "trigbeta/errors.hpp"

namespace trigbeta {

namespace {

constexpr double kLogRootTwoPi = 0.91893853320467274178;
constexpr double kLogMaxDouble = 709.782712893384;  // ln(DBL_MAX)

// Lanczos coefficients for g = 7, kmax = 8
// [J. SIAM Numer. Anal., Ser. B, 1 (1964) 86]
constexpr double kLanczos7[9] = {
    0.99999999999980993227684700473478,
    676.520368121885098567009190444019,
    -1259.13921672240287047156078755283,
    771.3234287776530788486528258894,
    -176.61502916214059906584551354,
    12.507343278686904814458936853,
    -0.13857109526572011689554707,
    9.984369578019570859563e-6,
    1.50563273514931155834e-7,
};

// ln Gamma(x) for x >= 0.5 via the Lanczos sum.
double log_gamma_lanczos(double x) {
  const double z = x - 1.0;
  double ag = kLanczos7[0];
  for (int k = 1; k <= 8; ++k) ag += kLanczos7[k] / (z + k);
  const double t = z + 7.5;
  return (z + 0.5) * std::log(t) - t + kLogRootTwoPi + std::log(ag);
}

}  // namespace

double log_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0)
    throw DomainError("log_gamma requires a finite positive argument");
  if (x < 0.5) {
    // Gamma(x) = Gamma(x+1) / x
    return log_gamma_lanczos(x + 1.0) - std::log(x);
  }
  return log_gamma_lanczos(x);
}

double sin_pi(double x) {
  const double r = std::round(x);
  const double f = x - r;  // exact for |x| < 2^52
  const double s = std::sin(M_PI * f);
  const bool odd = std::fmod(r, 2.0) != 0.0;
  return odd ? -s : s;
}

double cos_pi(double x) {
  const double r = std::round(x);
  const double f = x - r;
  const double c = std::cos(M_PI * f);
  const bool odd = std::fmod(r, 2.0) != 0.0;
  return odd ? -c : c;
}

SignedLog log_abs_gamma(double x) {
  if (!std::isfinite(x)) throw DomainError("log_abs_gamma requires a finite argument");
  if (x >= 0.5) return {log_gamma(x), 1};
  if (x == std::floor(x)) throw PoleError("gamma pole at nonpositive integer");
  // Reflection: Gamma(x) = pi / (sin(pi x) * Gamma(1 - x)); 1 - x >= 0.5 here,
  // so Gamma(1 - x) > 0 and the sign is carried entirely by sin(pi x).
  const double s = sin_pi(x);
  const double log_abs = std::log(M_PI) - std::log(std::fabs(s)) - log_gamma(1.0 - x);
  return {log_abs, s > 0.0 ? 1 : -1};
}

double gamma_fn(double x) {
  const SignedLog lg = log_abs_gamma(x);
  if (lg.log_abs > kLogMaxDouble) throw OverflowError("gamma overflows the double range");
  return lg.sign * std::exp(lg.log_abs);
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta requires positive arguments");
  if (a > b) std::swap(a, b);  // symmetric by construction
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double beta_fn(double a, double b) {
  const double lb = log_beta(a, b);
  if (lb > kLogMaxDouble) throw OverflowError("beta overflows the double range");
  return std::exp(lb);
}

int128 factorial_exact(int n) {
  if (n < 0) throw DomainError("factorial of a negative integer");
  if (n > 33) throw OverflowError("factorial exceeds the exact 128-bit range");
  int128 r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

int128 binomial_exact(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) throw DomainError("binomial requires 0 <= k <= n");
  if (k > n - k) k = n - k;
  int128 r = 1;
  const int128 limit = std::numeric_limits<std::int64_t>::max();
  for (std::int64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) stays exact: r < 2^127 / (n - k + i) is enforced below
    const int128 factor = n - k + i;
    if (r > (((int128)1) << 120) / (factor > limit ? limit : factor))
      throw OverflowError("binomial exceeds the exact 128-bit range");
    r = r * factor / i;  // divisible at every step
  }
  return r;
}

std::string int128_str(int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
  std::string digits;
  while (u > 0) {
    digits.push_back(static_cast<char>('0' + (int)(u % 10)));
    u /= 10;
  }
  if (neg) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

double int128_to_double(int128 v) { return static_cast<double>(v); }

ClosedForm gamma_half_integer(int m) {
  if (m < 0) throw DomainError("gamma_half_integer requires m >= 0");
  // sqrt(pi) * (2m)! / (4^m * m!)
  const int128 num = factorial_exact(2 * m);
  int128 den = factorial_exact(m);
  for (int i = 0; i < m; ++i) den *= 4;
  // reduce the fraction exactly before squeezing into int64
  int128 a = num, b = den;
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  const int128 rn = num / a, rd = den / a;
  const auto max64 = (int128)std::numeric_limits<std::int64_t>::max();
  if (rn > max64 || rd > max64)
    throw OverflowError("half-integer gamma coefficient exceeds the exact range");
  const Rational coeff{static_cast<std::int64_t>(rn), static_cast<std::int64_t>(rd)};
  if (coeff == Rational(1)) return ClosedForm::pow(ClosedForm::pi(), Rational(1, 2));
  return ClosedForm::mul(
      {ClosedForm::constant(coeff), ClosedForm::pow(ClosedForm::pi(), Rational(1, 2))});
}

}  // namespace trigbeta
