#include "trigbeta/expr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trigbeta/errors.hpp"
#include "trigbeta/specfun.hpp"

namespace trigbeta {

struct ClosedForm::Node {
  NodeKind kind;
  Rational r1, r2;               // Const value / Gamma arg / Beta a,b / trig arg / Pow exp
  std::int64_t i1 = 0, i2 = 0;   // Binom n,k / Fact n
  std::vector<ClosedForm> kids;  // Pow: base; Mul: factors
};

namespace {

// canonical factor order: exact integers, then pi and trig constants, then
// the special functions, then composite nodes
int kind_rank(NodeKind k) {
  switch (k) {
    case NodeKind::Const: return 0;
    case NodeKind::Binom: return 1;
    case NodeKind::Fact: return 2;
    case NodeKind::Pi: return 3;
    case NodeKind::SinPi: return 4;
    case NodeKind::CosPi: return 5;
    case NodeKind::Gamma: return 6;
    case NodeKind::Beta: return 7;
    case NodeKind::Pow: return 8;
    case NodeKind::Mul: return 9;
  }
  return 10;
}

// sin(pi r) with exact rational reduction; returns sign and log-magnitude.
LogValue eval_sin_pi(const Rational& r) {
  if (r.is_integer()) return {-std::numeric_limits<double>::infinity(), 0};
  if (r.den() == 2) {
    // sin(pi (2k+1)/2) = +-1
    const std::int64_t m = ((r.num() % 4) + 4) % 4;  // 1 or 3
    return {0.0, m == 1 ? 1 : -1};
  }
  const double v = sin_pi(r.to_double());
  return {std::log(std::fabs(v)), v > 0.0 ? 1 : -1};
}

LogValue eval_cos_pi(const Rational& r) {
  if (r.den() == 2) return {-std::numeric_limits<double>::infinity(), 0};
  if (r.is_integer()) {
    const bool odd = (r.num() % 2) != 0;
    return {0.0, odd ? -1 : 1};
  }
  const double v = cos_pi(r.to_double());
  return {std::log(std::fabs(v)), v > 0.0 ? 1 : -1};
}

}  // namespace

NodeKind ClosedForm::kind() const { return n_->kind; }
const Rational& ClosedForm::const_value() const { return n_->r1; }
const Rational& ClosedForm::gamma_arg() const { return n_->r1; }
const Rational& ClosedForm::beta_a() const { return n_->r1; }
const Rational& ClosedForm::beta_b() const { return n_->r2; }
const Rational& ClosedForm::trig_arg() const { return n_->r1; }
std::int64_t ClosedForm::binom_n() const { return n_->i1; }
std::int64_t ClosedForm::binom_k() const { return n_->i2; }
std::int64_t ClosedForm::fact_n() const { return n_->i1; }
const ClosedForm& ClosedForm::pow_base() const { return n_->kids.front(); }
const Rational& ClosedForm::pow_exp() const { return n_->r1; }
const std::vector<ClosedForm>& ClosedForm::factors() const { return n_->kids; }

ClosedForm ClosedForm::constant(const Rational& v) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Const;
  n->r1 = v;
  return ClosedForm(std::move(n));
}

ClosedForm ClosedForm::pi() {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Pi;
  return ClosedForm(std::move(n));
}

ClosedForm ClosedForm::gamma(const Rational& arg) {
  if (arg.is_nonpositive_integer()) throw PoleError("Gamma argument is a nonpositive integer");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Gamma;
  n->r1 = arg;
  return ClosedForm(std::move(n));
}

ClosedForm ClosedForm::beta(const Rational& a, const Rational& b) {
  if (a <= Rational(0) || b <= Rational(0)) throw DomainError("Beta arguments must be positive");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Beta;
  n->r1 = a;
  n->r2 = b;
  return ClosedForm(std::move(n));
}

ClosedForm ClosedForm::sin_pi(const Rational& r) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::SinPi;
  n->r1 = r;
  return ClosedForm(std::move(n));
}

ClosedForm ClosedForm::cos_pi(const Rational& r) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::CosPi;
  n->r1 = r;
  return ClosedForm(std::move(n));
}

ClosedForm ClosedForm::binom(std::int64_t nn, std::int64_t kk) {
  binomial_exact(nn, kk);  // validates range and exactness
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Binom;
  n->i1 = nn;
  n->i2 = kk;
  return ClosedForm(std::move(n));
}

ClosedForm ClosedForm::fact(std::int64_t nn) {
  if (nn < 0) throw DomainError("factorial of a negative integer");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Fact;
  n->i1 = nn;
  return ClosedForm(std::move(n));
}

ClosedForm ClosedForm::pow(const ClosedForm& base, const Rational& exp) {
  if (exp == Rational(0)) return integer(1);
  if (exp == Rational(1)) return base;
  if (base.kind() == NodeKind::Pow && eval_log(base.pow_base()).sign > 0) {
    // (x^a)^b = x^(ab) only holds unconditionally for positive x
    return pow(base.pow_base(), base.pow_exp() * exp);
  }
  const LogValue lb = eval_log(base);
  if (lb.sign == 0 && exp < Rational(0)) throw PoleError("zero base under a negative exponent");
  if (lb.sign < 0 && !exp.is_integer())
    throw DomainError("negative base under a non-integer exponent");
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Pow;
  n->r1 = exp;
  n->kids.push_back(base);
  return ClosedForm(std::move(n));
}

ClosedForm ClosedForm::mul(std::vector<ClosedForm> factors) {
  // flatten nested products
  std::vector<ClosedForm> flat;
  flat.reserve(factors.size());
  for (auto& f : factors) {
    if (f.kind() == NodeKind::Mul) {
      for (const auto& g : f.factors()) flat.push_back(g);
    } else {
      flat.push_back(std::move(f));
    }
  }

  // fold plain constant factors into one exact rational
  Rational c(1);
  std::vector<ClosedForm> rest;
  for (auto& f : flat) {
    if (f.kind() == NodeKind::Const) {
      c *= f.const_value();
    } else {
      rest.push_back(std::move(f));
    }
  }
  if (c.is_zero()) return constant(Rational(0));

  // merge like bases: view each factor as (base, exponent) and sum exponents
  struct BE {
    ClosedForm base;
    Rational exp;
  };
  std::vector<BE> parts;
  for (auto& f : rest) {
    if (f.kind() == NodeKind::Pow) {
      parts.push_back({f.pow_base(), f.pow_exp()});
    } else {
      parts.push_back({f, Rational(1)});
    }
  }
  std::stable_sort(parts.begin(), parts.end(),
                   [](const BE& a, const BE& b) { return a.base.compare(b.base) < 0; });
  std::vector<ClosedForm> merged;
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t j = i + 1;
    Rational e = parts[i].exp;
    while (j < parts.size() && parts[j].base == parts[i].base) {
      e += parts[j].exp;
      ++j;
    }
    if (!e.is_zero()) merged.push_back(pow(parts[i].base, e));
    i = j;
  }

  std::sort(merged.begin(), merged.end(),
            [](const ClosedForm& a, const ClosedForm& b) { return a.compare(b) < 0; });

  std::vector<ClosedForm> out;
  if (c != Rational(1) || merged.empty()) out.push_back(constant(c));
  for (auto& m : merged) out.push_back(std::move(m));
  if (out.size() == 1) return out.front();

  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Mul;
  n->kids = std::move(out);
  return ClosedForm(std::move(n));
}

int ClosedForm::compare(const ClosedForm& o) const {
  if (n_ == o.n_) return 0;
  const int ra = kind_rank(n_->kind), rb = kind_rank(o.n_->kind);
  if (ra != rb) return ra < rb ? -1 : 1;
  int c = n_->r1.cmp(o.n_->r1);
  if (c != 0) return c;
  c = n_->r2.cmp(o.n_->r2);
  if (c != 0) return c;
  if (n_->i1 != o.n_->i1) return n_->i1 < o.n_->i1 ? -1 : 1;
  if (n_->i2 != o.n_->i2) return n_->i2 < o.n_->i2 ? -1 : 1;
  const auto& ka = n_->kids;
  const auto& kb = o.n_->kids;
  for (std::size_t i = 0; i < std::min(ka.size(), kb.size()); ++i) {
    c = ka[i].compare(kb[i]);
    if (c != 0) return c;
  }
  if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
  return 0;
}

LogValue eval_log(const ClosedForm& cf) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  switch (cf.kind()) {
    case NodeKind::Const: {
      const Rational& v = cf.const_value();
      if (v.is_zero()) return {kNegInf, 0};
      const double num = static_cast<double>(v.num() < 0 ? -v.num() : v.num());
      return {std::log(num / static_cast<double>(v.den())), v.num() > 0 ? 1 : -1};
    }
    case NodeKind::Pi:
      return {std::log(M_PI), 1};
    case NodeKind::Gamma: {
      const SignedLog g = log_abs_gamma(cf.gamma_arg().to_double());
      return {g.log_abs, g.sign};
    }
    case NodeKind::Beta:
      return {log_beta(cf.beta_a().to_double(), cf.beta_b().to_double()), 1};
    case NodeKind::SinPi:
      return eval_sin_pi(cf.trig_arg());
    case NodeKind::CosPi:
      return eval_cos_pi(cf.trig_arg());
    case NodeKind::Binom:
      return {std::log(int128_to_double(binomial_exact(cf.binom_n(), cf.binom_k()))), 1};
    case NodeKind::Fact: {
      const std::int64_t n = cf.fact_n();
      if (n == 0 || n == 1) return {0.0, 1};
      if (n <= 33) return {std::log(int128_to_double(factorial_exact(static_cast<int>(n)))), 1};
      return {log_gamma(static_cast<double>(n) + 1.0), 1};
    }
    case NodeKind::Pow: {
      const LogValue b = eval_log(cf.pow_base());
      const Rational& e = cf.pow_exp();
      if (b.sign == 0) {
        if (e < Rational(0)) throw PoleError("zero base under a negative exponent");
        return {kNegInf, 0};
      }
      int sign = 1;
      if (b.sign < 0) sign = (e.num() % 2 == 0) ? 1 : -1;  // e integral by construction
      return {e.to_double() * b.log_abs, sign};
    }
    case NodeKind::Mul: {
      double sum = 0.0;
      int sign = 1;
      for (const auto& f : cf.factors()) {
        const LogValue v = eval_log(f);
        if (v.sign == 0) return {kNegInf, 0};
        sum += v.log_abs;
        sign *= v.sign;
      }
      return {sum, sign};
    }
  }
  throw Error("unreachable node kind");
}

double eval_closed_form(const ClosedForm& cf) {
  const LogValue v = eval_log(cf);
  if (v.sign == 0) return 0.0;
  if (v.log_abs > 709.782712893384) throw OverflowError("closed form overflows the double range");
  return v.sign * std::exp(v.log_abs);
}

bool equivalent_numeric(const ClosedForm& a, const ClosedForm& b, double rel_tol) {
  const double va = eval_closed_form(a);
  const double vb = eval_closed_form(b);
  const double scale = std::max({std::fabs(va), std::fabs(vb), 1.0});
  return std::fabs(va - vb) <= rel_tol * scale;
}

namespace {

// "3π/4" style rendering of a rational multiple of pi (plain mode)
std::string pi_multiple(const Rational& r) {
  std::string s;
  if (r.num() < 0) s += "-";
  const std::int64_t p = r.num() < 0 ? -r.num() : r.num();
  if (p != 1) s += std::to_string(p) + "·";
  s += "π";
  if (r.den() != 1) s += "/" + std::to_string(r.den());
  return s;
}

std::string rat_plain(const Rational& r) { return r.str(); }

// Const rendered standalone: "5", "(-5)", "(1/2)", "(-1/2)"
std::string const_plain(const Rational& v) {
  if (v.is_integer() && v.num() >= 0) return std::to_string(v.num());
  return "(" + v.str() + ")";
}

std::string render_plain(const ClosedForm& cf);

std::string render_pow_base_plain(const ClosedForm& base) {
  switch (base.kind()) {
    case NodeKind::Mul:
    case NodeKind::Pow:
      return "(" + render_plain(base) + ")";
    default:
      return render_plain(base);
  }
}

std::string render_pow_plain(const ClosedForm& base, const Rational& e) {
  std::string s = render_pow_base_plain(base);
  if (e.is_integer() && e.num() >= 0) {
    s += "^" + std::to_string(e.num());
  } else {
    s += "^(" + e.str() + ")";
  }
  return s;
}

std::string render_plain(const ClosedForm& cf) {
  switch (cf.kind()) {
    case NodeKind::Const:
      return const_plain(cf.const_value());
    case NodeKind::Pi:
      return "π";
    case NodeKind::Gamma:
      return "Γ(" + rat_plain(cf.gamma_arg()) + ")";
    case NodeKind::Beta:
      return "B(" + rat_plain(cf.beta_a()) + ", " + rat_plain(cf.beta_b()) + ")";
    case NodeKind::SinPi:
      return "sin(" + pi_multiple(cf.trig_arg()) + ")";
    case NodeKind::CosPi:
      return "cos(" + pi_multiple(cf.trig_arg()) + ")";
    case NodeKind::Binom:
      return "C(" + std::to_string(cf.binom_n()) + "," + std::to_string(cf.binom_k()) + ")";
    case NodeKind::Fact:
      return std::to_string(cf.fact_n()) + "!";
    case NodeKind::Pow:
      return render_pow_plain(cf.pow_base(), cf.pow_exp());
    case NodeKind::Mul: {
      std::vector<std::string> num, den;
      for (const auto& f : cf.factors()) {
        if (f.kind() == NodeKind::Pow && f.pow_exp() < Rational(0)) {
          const Rational flipped = -f.pow_exp();
          if (flipped == Rational(1)) {
            den.push_back(render_pow_base_plain(f.pow_base()));
          } else {
            den.push_back(render_pow_plain(f.pow_base(), flipped));
          }
        } else {
          num.push_back(render_plain(f));
        }
      }
      std::string s;
      if (num.empty()) {
        s = "1";
      } else {
        for (std::size_t i = 0; i < num.size(); ++i) {
          if (i) s += "·";
          s += num[i];
        }
      }
      if (!den.empty()) {
        if (den.size() == 1) {
          s += "/" + den[0];
        } else {
          s += "/(";
          for (std::size_t i = 0; i < den.size(); ++i) {
            if (i) s += "·";
            s += den[i];
          }
          s += ")";
        }
      }
      return s;
    }
  }
  throw Error("unreachable node kind");
}

// --- LaTeX mode ---

std::string rat_latex(const Rational& r) {
  if (r.is_integer()) return std::to_string(r.num());
  std::string s;
  if (r.num() < 0) s += "-";
  s += "\\tfrac{" + std::to_string(r.num() < 0 ? -r.num() : r.num()) + "}{" +
       std::to_string(r.den()) + "}";
  return s;
}

std::string pi_multiple_latex(const Rational& r) {
  std::string s;
  if (r.num() < 0) s += "-";
  const std::int64_t p = r.num() < 0 ? -r.num() : r.num();
  if (r.den() == 1) return s + (p == 1 ? "" : std::to_string(p)) + "\\pi";
  return s + "\\tfrac{" + (p == 1 ? "" : std::to_string(p)) + "\\pi}{" + std::to_string(r.den()) +
         "}";
}

std::string render_latex(const ClosedForm& cf);

std::string render_latex_braced(const ClosedForm& cf) {
  if (cf.kind() == NodeKind::Mul || cf.kind() == NodeKind::Pow ||
      (cf.kind() == NodeKind::Const && !(cf.const_value().is_integer() && cf.const_value().num() >= 0)))
    return "\\left(" + render_latex(cf) + "\\right)";
  return render_latex(cf);
}

std::string render_latex(const ClosedForm& cf) {
  switch (cf.kind()) {
    case NodeKind::Const:
      return rat_latex(cf.const_value());
    case NodeKind::Pi:
      return "\\pi";
    case NodeKind::Gamma:
      return "\\Gamma\\left(" + rat_latex(cf.gamma_arg()) + "\\right)";
    case NodeKind::Beta:
      return "B\\left(" + rat_latex(cf.beta_a()) + ", " + rat_latex(cf.beta_b()) + "\\right)";
    case NodeKind::SinPi:
      return "\\sin\\left(" + pi_multiple_latex(cf.trig_arg()) + "\\right)";
    case NodeKind::CosPi:
      return "\\cos\\left(" + pi_multiple_latex(cf.trig_arg()) + "\\right)";
    case NodeKind::Binom:
      return "\\binom{" + std::to_string(cf.binom_n()) + "}{" + std::to_string(cf.binom_k()) + "}";
    case NodeKind::Fact:
      return std::to_string(cf.fact_n()) + "!";
    case NodeKind::Pow:
      return render_latex_braced(cf.pow_base()) + "^{" + cf.pow_exp().str() + "}";
    case NodeKind::Mul: {
      std::string num, den;
      int nn = 0, nd = 0;
      for (const auto& f : cf.factors()) {
        if (f.kind() == NodeKind::Pow && f.pow_exp() < Rational(0)) {
          const Rational flipped = -f.pow_exp();
          if (nd++) den += "\\,";
          den += flipped == Rational(1)
                     ? render_latex_braced(f.pow_base())
                     : render_latex_braced(f.pow_base()) + "^{" + flipped.str() + "}";
        } else {
          if (nn++) num += "\\,";
          num += render_latex(f);
        }
      }
      if (nn == 0) num = "1";
      if (nd == 0) return num;
      return "\\frac{" + num + "}{" + den + "}";
    }
  }
  throw Error("unreachable node kind");
}

}  // namespace

std::string print_closed_form(const ClosedForm& cf) { return render_plain(cf); }
std::string print_closed_form_latex(const ClosedForm& cf) { return render_latex(cf); }

}  // namespace trigbeta
