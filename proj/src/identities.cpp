#include "trigbeta/identities.hpp"

#include <cmath>
#include <cstdio>

#include "trigbeta/expr.hpp"
#include "trigbeta/prng.hpp"
#include "trigbeta/specfun.hpp"

namespace trigbeta {

namespace {

double rel_err(double got, double want) {
  const double scale = std::max(std::fabs(want), 1e-300);
  return std::fabs(got - want) / scale;
}

}  // namespace

std::vector<IdentityCheck> run_identity_suite(std::uint64_t seed, int samples) {
  std::vector<IdentityCheck> checks;

  {  // Legendre duplication: Gamma(2a) = 2^(2a-1) Gamma(a) Gamma(a+1/2) / sqrt(pi)
    SplitMix64 rng(seed ^ 0x1ull);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double a = rng.uniform(0.05, 30.0);
      const double lhs = gamma_fn(2.0 * a);
      const double rhs =
          std::exp((2.0 * a - 1.0) * M_LN2 + log_gamma(a) + log_gamma(a + 0.5) -
                   0.5 * std::log(M_PI));
      worst = std::max(worst, rel_err(rhs, lhs));
    }
    checks.push_back({"duplication", samples, worst});
  }

  {  // reflection: Gamma(t) Gamma(1-t) = pi / sin(pi t)
    SplitMix64 rng(seed ^ 0x2ull);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double t = rng.uniform(0.0, 1.0);
      if (t == 0.0) continue;
      const double lhs = gamma_fn(t) * gamma_fn(1.0 - t);
      const double rhs = M_PI / sin_pi(t);
      worst = std::max(worst, rel_err(lhs, rhs));
    }
    checks.push_back({"reflection", samples, worst});
  }

  {  // recurrence: Gamma(x+1) = x Gamma(x)
    SplitMix64 rng(seed ^ 0x3ull);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double x = rng.uniform(0.1, 50.0);
      const double lhs = gamma_fn(x + 1.0);
      const double rhs = x * gamma_fn(x);
      worst = std::max(worst, rel_err(rhs, lhs));
    }
    checks.push_back({"recurrence", samples, worst});
  }

  {  // beta symmetry: exact, the two orders share one computation path
    SplitMix64 rng(seed ^ 0x4ull);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double a = rng.uniform(0.1, 20.0);
      const double b = rng.uniform(0.1, 20.0);
      const double ab = beta_fn(a, b);
      const double ba = beta_fn(b, a);
      worst = std::max(worst, rel_err(ab, ba));
    }
    checks.push_back({"beta-symmetry", samples, worst});
  }

  {  // half-integer gamma closed form vs Gamma(m + 1/2)
    SplitMix64 rng(seed ^ 0x5ull);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const int m = static_cast<int>(rng.uniform_int(0, 16));
      const double closed = eval_closed_form(gamma_half_integer(m));
      const double direct = gamma_fn(m + 0.5);
      worst = std::max(worst, rel_err(closed, direct));
    }
    checks.push_back({"half-integer-gamma", samples, worst});
  }

  return checks;
}

std::string identity_suite_text(const std::vector<IdentityCheck>& checks, std::uint64_t seed,
                                double pass_threshold) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "identity suite: seed=%llu samples=%d threshold=%.1e\n",
                static_cast<unsigned long long>(seed), checks.empty() ? 0 : checks.front().samples,
                pass_threshold);
  std::string s = buf;
  bool all_ok = true;
  for (const IdentityCheck& c : checks) {
    const bool ok = c.max_rel_err <= pass_threshold;
    all_ok = all_ok && ok;
    std::snprintf(buf, sizeof(buf), "%-20s max rel err %.3e  %s\n", c.name.c_str(), c.max_rel_err,
                  ok ? "PASS" : "FAIL");
    s += buf;
  }
  s += all_ok ? "overall: PASS\n" : "overall: FAIL\n";
  return s;
}

}  // namespace trigbeta
