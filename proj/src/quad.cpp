#include "trigbeta/quad.hpp"

#include <cmath>
#include <mutex>
#include <vector>

#include "trigbeta/errors.hpp"

namespace trigbeta {

namespace {

constexpr double kTMax = 9.5;          // abscissa range of the tanh-sinh map
constexpr double kLogDrop = -690.0;    // contributions below e^-690 ~ 1e-300 are dropped
constexpr int kMaxLevel = 14;

// One abscissa of the unit-interval map x = (1 + tanh((pi/2) sinh t)) / 2.
// sigma_lo is the distance from 0, sigma_hi the distance from 1; both are
// also carried in log form so endpoint distances stay meaningful after the
// doubles underflow.
struct DENode {
  double sigma_lo;
  double sigma_hi;
  double log_sigma_lo;
  double log_sigma_hi;
  double log_w;  // log of the unit-interval weight (pi/4) cosh t / cosh^2((pi/2) sinh t)
};

double softplus(double u) {
  // log(1 + e^u), stable for any u
  if (u > 0.0) return u + std::log1p(std::exp(-u));
  return std::log1p(std::exp(u));
}

double log_cosh(double z) {
  const double a = std::fabs(z);
  return a + std::log1p(std::exp(-2.0 * a)) - M_LN2;
}

DENode make_node(double t) {
  const double z = M_PI_2 * std::sinh(t);
  DENode n;
  n.log_sigma_lo = -softplus(-2.0 * z);
  n.log_sigma_hi = -softplus(2.0 * z);
  n.sigma_lo = std::exp(n.log_sigma_lo);
  n.sigma_hi = std::exp(n.log_sigma_hi);
  n.log_w = std::log(M_PI_4) + std::log(std::cosh(t)) - 2.0 * log_cosh(z);
  return n;
}

// Level 0 holds the nodes at t = 0, 1, 2, ...; level L > 0 holds the new
// nodes at odd multiples of 2^-L. Only t >= 0 is stored; the t < 0 mirror
// swaps lo and hi.
const std::vector<DENode>& level_nodes(int level) {
  static std::vector<DENode> tables[kMaxLevel + 1];
  static std::once_flag flags[kMaxLevel + 1];
  std::call_once(flags[level], [level] {
    std::vector<DENode>& tab = tables[level];
    const double h = std::ldexp(1.0, -level);
    if (level == 0) {
      for (int k = 0; k * h <= kTMax; ++k) tab.push_back(make_node(k * h));
    } else {
      for (int k = 1; k * h <= kTMax; k += 2) tab.push_back(make_node(k * h));
    }
  });
  return tables[level];
}

struct KahanSum {
  double sum = 0.0, c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// Generic driver: logf(sigma_lo, sigma_hi, log_sigma_lo, log_sigma_hi)
// returns the log of the integrand at the point sigma_lo of [0, 1] scaled
// by the caller; log_scale collects log(U) for the affine map to [0, U].
template <class LogF>
QuadratureResult de_integrate(LogF&& logf, double log_scale, double abs_tol, double rel_tol,
                              int max_level) {
  QuadratureResult res;

  auto node_contribution = [&](const DENode& nd, bool mirrored) -> double {
    const double slo = mirrored ? nd.sigma_hi : nd.sigma_lo;
    const double shi = mirrored ? nd.sigma_lo : nd.sigma_hi;
    const double lslo = mirrored ? nd.log_sigma_hi : nd.log_sigma_lo;
    const double lshi = mirrored ? nd.log_sigma_lo : nd.log_sigma_hi;
    ++res.evaluations;
    const double lf = logf(slo, shi, lslo, lshi);
    const double lc = lf + nd.log_w + log_scale;
    return lc > kLogDrop ? std::exp(lc) : 0.0;
  };

  auto level_sum = [&](int level) -> double {
    const std::vector<DENode>& tab = level_nodes(level);
    KahanSum s;
    bool right_live = true, left_live = true;
    int right_dead = 0, left_dead = 0;
    const double h = std::ldexp(1.0, -level);
    for (std::size_t i = 0; i < tab.size(); ++i) {
      const double t = (level == 0 ? double(i) : double(2 * i + 1)) * h;
      if (level == 0 && i == 0) {
        s.add(node_contribution(tab[0], false));  // center point, no mirror
        continue;
      }
      if (!right_live && !left_live) break;
      if (right_live) {
        const double c = node_contribution(tab[i], false);
        s.add(c);
        if (c == 0.0 && t > 1.0) {
          if (++right_dead >= 2) right_live = false;
        } else {
          right_dead = 0;
        }
      }
      if (left_live) {
        const double c = node_contribution(tab[i], true);
        s.add(c);
        if (c == 0.0 && t > 1.0) {
          if (++left_dead >= 2) left_live = false;
        } else {
          left_dead = 0;
        }
      }
    }
    return s.sum;
  };

  double h = 1.0;
  double s_prev = level_sum(0) * h;
  res.levels_used = 0;
  res.error_estimate = std::fabs(s_prev);
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    const double s_cur = 0.5 * s_prev + h * level_sum(level);
    res.error_estimate = std::fabs(s_cur - s_prev);
    res.levels_used = level;
    s_prev = s_cur;
    if (level >= 3 &&
        res.error_estimate <= std::max(abs_tol, rel_tol * std::fabs(s_cur))) {
      res.converged = true;
      break;
    }
  }
  res.value = s_prev;
  return res;
}

// log(sin v) where log_v = log(v); switches to the log of the argument when
// v is too small for sin to add information.
double log_sin(double v, double log_v) {
  if (v < 1e-8) return log_v;
  return std::log(std::sin(v));
}

void check_tolerances(double abs_tol, double rel_tol, int max_level) {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("tolerances must be positive");
  if (max_level < 3 || max_level > kMaxLevel)
    throw DomainError("max_level must lie in [3, 14]");
}

}  // namespace

QuadratureResult integrate(const TrigIntegrand& ti, double abs_tol, double rel_tol,
                           int max_level) {
  check_tolerances(abs_tol, rel_tol, max_level);
  const ConvergenceVerdict verdict = convergence_check(ti);
  if (!verdict.convergent)
    throw DivergenceError("integral diverges: " + verdict.reason, *verdict.offending_endpoint);

  const bool half = ti.interval == Interval::HalfPi;
  const double upper = half ? M_PI_2 : M_PI_4;
  const double log_upper = std::log(upper);
  const double alpha = ti.sin_exp.to_double();
  const double beta = ti.cos_exp.to_double();
  const double gamma = ti.cos2x_exp.to_double();

  auto logf = [&](double slo, double shi, double lslo, double lshi) -> double {
    double lf = 0.0;
    if (alpha != 0.0) lf += alpha * log_sin(upper * slo, log_upper + lslo);
    if (half) {
      // cos x = sin(pi/2 - x); the distance to the upper endpoint is exact
      if (beta != 0.0) lf += beta * log_sin(upper * shi, log_upper + lshi);
    } else {
      if (beta != 0.0) lf += beta * std::log(std::cos(upper * slo));
      // cos 2x = sin(2 (pi/4 - x))
      if (gamma != 0.0)
        lf += gamma * log_sin(2.0 * upper * shi, M_LN2 + log_upper + lshi);
    }
    return lf;
  };
  return de_integrate(logf, log_upper, abs_tol, rel_tol, max_level);
}

QuadratureResult integrate_beta_def(double a, double b, double tol) {
  if (!(a > 0.0) || !(b > 0.0))
    throw DomainError("beta integral requires positive arguments");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const double pa = a - 1.0, pb = b - 1.0;
  auto logf = [&](double, double, double lslo, double lshi) -> double {
    return pa * lslo + pb * lshi;
  };
  return de_integrate(logf, 0.0, tol, 1e-11, 12);
}

}  // namespace trigbeta
