#include "trigbeta/reduce.hpp"

#include <deque>
#include <set>

#include "trigbeta/specfun.hpp"

namespace trigbeta {

namespace {

constexpr std::size_t kMaxDepth = 4;
constexpr std::size_t kMaxForms = 800;

const char* kAnchorHalfPiSubst = "The change of variables $x= \\sin^{2}t$";
const char* kAnchorBetaDef = "The convergence of the integral requires $a, \\, b  > 0$";
const char* kAnchorTanSubst = "Let $t = \\tan x$ to obtain";
const char* kAnchorSquareSubst = "The change of variables $s=t^{2}$ produces";
const char* kAnchorConstraint = "with the condition";

ClosedForm half_beta(const Rational& a, const Rational& b) {
  return ClosedForm::mul({ClosedForm::constant(Rational(1, 2)), ClosedForm::beta(a, b)});
}

void require_convergent(const TrigIntegrand& ti) {
  const ConvergenceVerdict v = convergence_check(ti);
  if (!v.convergent) throw DivergenceError("integral diverges: " + v.reason, *v.offending_endpoint);
}

// ---- identity rewriting ----------------------------------------------------

struct Candidate {
  ClosedForm form;
  std::string rule;
};

// A rewrite that trips a construction guard (pole, domain, exact-range) is
// simply not a candidate; apply_identities never fails.
template <class F>
void try_candidate(std::vector<Candidate>& out, const char* rule, F&& make) {
  try {
    out.push_back({make(), rule});
  } catch (const Error&) {
  }
}

ClosedForm pow2(const Rational& e) { return ClosedForm::pow(ClosedForm::integer(2), e); }
ClosedForm sqrt_pi() { return ClosedForm::pow(ClosedForm::pi(), Rational(1, 2)); }
ClosedForm inv(const ClosedForm& f) { return ClosedForm::pow(f, Rational(-1)); }

bool valid_gamma_arg(const Rational& r) { return !r.is_nonpositive_integer(); }

// Exact rational (2m)! / (4^m m!), or nullopt beyond the exact range.
std::optional<Rational> half_integer_coeff(std::int64_t m) {
  if (m < 0 || m > 16) return std::nullopt;
  const int128 num = factorial_exact(static_cast<int>(2 * m));
  int128 den = factorial_exact(static_cast<int>(m));
  for (int i = 0; i < m; ++i) den *= 4;
  int128 a = num, b = den;
  while (b != 0) {
    const int128 t = a % b;
    a = b;
    b = t;
  }
  const int128 rn = num / a, rd = den / a;
  if (rn > INT64_MAX || rd > INT64_MAX) return std::nullopt;
  return Rational(static_cast<std::int64_t>(rn), static_cast<std::int64_t>(rd));
}

// Single-node rewrites for a leaf node (not Mul); each result is an
// equivalent form of just that node.
void node_rewrites(const ClosedForm& f, std::vector<Candidate>& out) {
  switch (f.kind()) {
    case NodeKind::Beta: {
      const Rational a = f.beta_a();
      const Rational b = f.beta_b();
      // B(a,b) = Gamma(a) Gamma(b) / Gamma(a+b)
      try_candidate(out, "beta-to-gamma", [&] {
        return ClosedForm::mul(
            {ClosedForm::gamma(a), ClosedForm::gamma(b), inv(ClosedForm::gamma(a + b))});
      });
      // Legendre duplication at the beta level: B(x, 1/2) = 2^(2x-1) B(x, x)
      const Rational half(1, 2);
      if (b == half)
        try_candidate(out, "duplication", [&] {
          return ClosedForm::mul({pow2(a + a - Rational(1)), ClosedForm::beta(a, a)});
        });
      else if (a == half)
        try_candidate(out, "duplication", [&] {
          return ClosedForm::mul({pow2(b + b - Rational(1)), ClosedForm::beta(b, b)});
        });
      if (a == b)
        try_candidate(out, "duplication", [&] {
          return ClosedForm::mul({pow2(Rational(1) - a - a), ClosedForm::beta(a, half)});
        });
      break;
    }
    case NodeKind::Gamma: {
      const Rational g = f.gamma_arg();
      if (g.is_integer() && g.num() >= 1) {
        try_candidate(out, "gamma-to-factorial", [&] { return ClosedForm::fact(g.num() - 1); });
        if (g.num() <= 21) {
          try_candidate(out, "gamma-to-factorial", [&] {
            const int128 v = factorial_exact(static_cast<int>(g.num() - 1));
            return ClosedForm::constant(Rational(static_cast<std::int64_t>(v)));
          });
        }
      }
      if (g.den() == 2 && g.num() > 0) {
        const std::int64_t m = (g.num() - 1) / 2;  // g = m + 1/2
        if (const auto coeff = half_integer_coeff(m)) {
          try_candidate(out, "gamma-half-integer", [&] {
            if (*coeff == Rational(1)) return sqrt_pi();
            return ClosedForm::mul({ClosedForm::constant(*coeff), sqrt_pi()});
          });
        }
      }
      // Gamma(x) = sqrt(pi) 2^(1-2x) Gamma(2x) / Gamma(x + 1/2)
      const Rational two_g = g + g;
      const Rational g_half = g + Rational(1, 2);
      if (valid_gamma_arg(two_g) && valid_gamma_arg(g_half)) {
        try_candidate(out, "duplication", [&] {
          return ClosedForm::mul({sqrt_pi(), pow2(Rational(1) - two_g), ClosedForm::gamma(two_g),
                                  inv(ClosedForm::gamma(g_half))});
        });
      }
      break;
    }
    default:
      break;
  }
}

// Pairwise rewrites inside a product: reflection, duplication merge and
// beta contraction. `factors` is the canonical factor list.
void mul_rewrites(const std::vector<ClosedForm>& factors, std::vector<Candidate>& out) {
  struct GammaFactor {
    std::size_t index;
    Rational arg;
    int exp_sign;  // +1 for Gamma(g), -1 for Gamma(g)^-1
  };
  std::vector<GammaFactor> gammas;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const ClosedForm& f = factors[i];
    if (f.kind() == NodeKind::Gamma) {
      gammas.push_back({i, f.gamma_arg(), 1});
    } else if (f.kind() == NodeKind::Pow && f.pow_base().kind() == NodeKind::Gamma) {
      const Rational& e = f.pow_exp();
      if (e == Rational(1)) gammas.push_back({i, f.pow_base().gamma_arg(), 1});
      if (e == Rational(-1)) gammas.push_back({i, f.pow_base().gamma_arg(), -1});
    }
  }

  auto rebuild = [&](std::size_t drop_i, std::size_t drop_j, auto&& make_add, const char* rule) {
    try_candidate(out, rule, [&] {
      std::vector<ClosedForm> next;
      for (std::size_t k = 0; k < factors.size(); ++k)
        if (k != drop_i && k != drop_j) next.push_back(factors[k]);
      for (auto& a : make_add()) next.push_back(std::move(a));
      return ClosedForm::mul(std::move(next));
    });
  };

  for (std::size_t x = 0; x < gammas.size(); ++x) {
    for (std::size_t y = x + 1; y < gammas.size(); ++y) {
      const GammaFactor& gx = gammas[x];
      const GammaFactor& gy = gammas[y];
      if (gx.exp_sign != gy.exp_sign) continue;
      const bool inverse = gx.exp_sign < 0;
      // reflection: Gamma(t) Gamma(1-t) = pi / sin(pi t)
      if (gx.arg + gy.arg == Rational(1)) {
        const Rational t = gx.arg;
        if (!inverse) {
          rebuild(
              gx.index, gy.index,
              [&] {
                return std::vector<ClosedForm>{ClosedForm::pi(), inv(ClosedForm::sin_pi(t))};
              },
              "reflection");
        } else {
          rebuild(
              gx.index, gy.index,
              [&] {
                return std::vector<ClosedForm>{inv(ClosedForm::pi()), ClosedForm::sin_pi(t)};
              },
              "reflection");
        }
      }
      // duplication merge: Gamma(x) Gamma(x+1/2) = sqrt(pi) 2^(1-2x) Gamma(2x)
      const Rational half(1, 2);
      const Rational lo = gx.arg < gy.arg ? gx.arg : gy.arg;
      const Rational hi = gx.arg < gy.arg ? gy.arg : gx.arg;
      if (hi - lo == half) {
        const Rational two_lo = lo + lo;
        if (valid_gamma_arg(two_lo)) {
          if (!inverse) {
            rebuild(
                gx.index, gy.index,
                [&] {
                  return std::vector<ClosedForm>{sqrt_pi(), pow2(Rational(1) - two_lo),
                                                 ClosedForm::gamma(two_lo)};
                },
                "duplication");
          } else {
            rebuild(
                gx.index, gy.index,
                [&] {
                  return std::vector<ClosedForm>{inv(sqrt_pi()), pow2(two_lo - Rational(1)),
                                                 inv(ClosedForm::gamma(two_lo))};
                },
                "duplication");
          }
        }
      }
    }
  }

  // beta contraction: Gamma(a) Gamma(b) Gamma(a+b)^-1 -> B(a, b)
  for (std::size_t x = 0; x < gammas.size(); ++x) {
    for (std::size_t y = x + 1; y < gammas.size(); ++y) {
      if (gammas[x].exp_sign != 1 || gammas[y].exp_sign != 1) continue;
      const Rational a = gammas[x].arg, b = gammas[y].arg;
      if (!(a > Rational(0)) || !(b > Rational(0))) continue;
      for (const GammaFactor& gz : gammas) {
        if (gz.exp_sign != -1 || gz.arg != a + b) continue;
        try_candidate(out, "gamma-to-beta", [&] {
          std::vector<ClosedForm> next;
          for (std::size_t k = 0; k < factors.size(); ++k)
            if (k != gammas[x].index && k != gammas[y].index && k != gz.index)
              next.push_back(factors[k]);
          next.push_back(ClosedForm::beta(a, b));
          return ClosedForm::mul(std::move(next));
        });
        break;
      }
    }
  }
}

// All forms reachable from cf by one rule application anywhere in the tree.
std::vector<Candidate> one_step_rewrites(const ClosedForm& cf) {
  std::vector<Candidate> out;
  node_rewrites(cf, out);
  if (cf.kind() == NodeKind::Pow) {
    for (const Candidate& c : one_step_rewrites(cf.pow_base())) {
      try_candidate(out, c.rule.c_str(), [&] { return ClosedForm::pow(c.form, cf.pow_exp()); });
    }
  } else if (cf.kind() == NodeKind::Mul) {
    const auto& fs = cf.factors();
    mul_rewrites(fs, out);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      for (const Candidate& c : one_step_rewrites(fs[i])) {
        try_candidate(out, c.rule.c_str(), [&] {
          std::vector<ClosedForm> next = fs;
          next[i] = c.form;
          return ClosedForm::mul(std::move(next));
        });
      }
    }
  }
  return out;
}

}  // namespace

std::vector<AlternativeForm> apply_identities(const ClosedForm& cf) {
  struct Item {
    ClosedForm form;
    std::vector<std::string> trail;
    std::size_t depth;
  };
  std::deque<Item> queue;
  std::set<std::string> seen;
  std::vector<AlternativeForm> result;

  const std::string origin = print_closed_form(cf);
  seen.insert(origin);
  queue.push_back({cf, {}, 0});

  while (!queue.empty() && seen.size() <= kMaxForms) {
    Item item = std::move(queue.front());
    queue.pop_front();
    if (item.depth == kMaxDepth) continue;
    for (Candidate& c : one_step_rewrites(item.form)) {
      std::string key = print_closed_form(c.form);
      if (!seen.insert(key).second) continue;
      std::vector<std::string> trail = item.trail;
      trail.push_back(c.rule);
      bool equivalent = false;
      try {
        equivalent = equivalent_numeric(cf, c.form, 1e-10);
      } catch (const Error&) {
        continue;  // not evaluable in double range; drop it
      }
      if (equivalent) result.push_back({c.form, trail});
      queue.push_back({std::move(c.form), std::move(trail), item.depth + 1});
      if (seen.size() > kMaxForms) break;
    }
  }
  return result;
}

ReductionOutcome reduce_half_pi(const TrigIntegrand& ti) {
  if (ti.interval != Interval::HalfPi)
    throw DomainError("reduce_half_pi requires the half-pi interval");
  if (!ti.cos2x_exp.is_zero())
    throw DomainError("cos(2x) exponent must be zero on the half-pi interval");
  require_convergent(ti);

  const Rational a = (ti.sin_exp + Rational(1)) / Rational(2);
  const Rational b = (ti.cos_exp + Rational(1)) / Rational(2);
  const ClosedForm primary = half_beta(a, b);

  Derivation d;
  d.steps.push_back(
      {"master-half-pi", kAnchorHalfPiSubst,
       "substitute x = sin^2(t); the integrand becomes x^(" + (a - Rational(1)).str() +
           ")·(1-x)^(" + (b - Rational(1)).str() + ")/2 over [0,1]",
       "(1/2)·∫ x^(" + (a - Rational(1)).str() + ")·(1-x)^(" + (b - Rational(1)).str() + ") dx"});
  d.steps.push_back({"beta-identification", kAnchorBetaDef,
                     "recognize the defining beta integral with arguments " + a.str() + ", " +
                         b.str(),
                     print_closed_form(primary)});

  return {primary, apply_identities(primary), std::move(d)};
}

ReductionOutcome reduce_quarter_pi(const TrigIntegrand& ti) {
  if (ti.interval != Interval::QuarterPi)
    throw DomainError("reduce_quarter_pi requires the quarter-pi interval");
  const Rational residue =
      ti.sin_exp + ti.cos_exp + Rational(2) * ti.cos2x_exp + Rational(2);
  if (!residue.is_zero())
    throw ConstraintError("exponent constraint alpha + beta + 2*gamma + 2 = 0 violated (residue " +
                              residue.str() + ")",
                          residue);
  require_convergent(ti);

  const Rational a = (ti.sin_exp + Rational(1)) / Rational(2);
  const Rational b = ti.cos2x_exp + Rational(1);
  const ClosedForm primary = half_beta(a, b);

  Derivation d;
  d.steps.push_back({"master-quarter-pi", kAnchorConstraint,
                     "exponent constraint alpha + beta + 2*gamma + 2 = 0 holds exactly",
                     "alpha=" + ti.sin_exp.str() + ", beta=" + ti.cos_exp.str() +
                         ", gamma=" + ti.cos2x_exp.str()});
  d.steps.push_back({"tangent-substitution", kAnchorTanSubst,
                     "substitute t = tan(x); the (1+t^2) factors cancel under the constraint",
                     "∫ t^(" + ti.sin_exp.str() + ")·(1-t^2)^(" + ti.cos2x_exp.str() +
                         ") dt over [0,1]"});
  d.steps.push_back({"square-substitution", kAnchorSquareSubst,
                     "substitute s = t^2",
                     "(1/2)·∫ s^(" + (a - Rational(1)).str() + ")·(1-s)^(" +
                         ti.cos2x_exp.str() + ") ds over [0,1]"});
  d.steps.push_back({"beta-identification", kAnchorBetaDef,
                     "recognize the defining beta integral with arguments " + a.str() + ", " +
                         b.str(),
                     print_closed_form(primary)});

  return {primary, apply_identities(primary), std::move(d)};
}

ReductionOutcome reduce(const TrigIntegrand& ti) {
  return ti.interval == Interval::HalfPi ? reduce_half_pi(ti) : reduce_quarter_pi(ti);
}

std::string derivation_to_text(const Derivation& d) {
  std::string s;
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const DerivationStep& st = d.steps[i];
    s += std::to_string(i + 1) + ". [" + st.rule_id + "] " + st.description + "\n";
    s += "   => " + st.state_after + "\n";
    s += "   anchor: " + st.anchor + "\n";
  }
  return s;
}

std::string derivation_to_latex(const Derivation& d) {
  std::string s = "\\begin{enumerate}\n";
  for (const DerivationStep& st : d.steps) {
    s += "  \\item \\textbf{" + st.rule_id + "}: " + st.description + " $\\Rightarrow$ \\verb|" +
         st.state_after + "|\n";
  }
  s += "\\end{enumerate}\n";
  return s;
}

}  // namespace trigbeta
