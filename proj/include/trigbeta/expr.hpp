#pragma once

#include <memory>
#include <string>
#include <vector>

#include "trigbeta/rational.hpp"

namespace trigbeta {

enum class NodeKind { Const, Pi, Gamma, Beta, SinPi, CosPi, Binom, Fact, Pow, Mul };

/// Immutable closed-form expression tree over the atoms that show up as
/// answers of the beta-reducible trigonometric integrals: exact rationals,
/// pi, Gamma/Beta of rational arguments, sin/cos of rational multiples of
/// pi, binomials, factorials, rational powers and products. Sums are
/// deliberately not representable.
///
/// Construction canonicalizes products (flattening, folding of plain
/// constant factors, merging of like bases, sorting by a fixed node order)
/// and rejects structurally invalid nodes: Gamma at a nonpositive integer,
/// Beta with a nonpositive argument, a negative base under a non-integer
/// exponent, an exact zero under a negative exponent.
class ClosedForm {
 public:
  static ClosedForm constant(const Rational& v);
  static ClosedForm integer(std::int64_t v) { return constant(Rational(v)); }
  static ClosedForm pi();
  static ClosedForm gamma(const Rational& arg);
  static ClosedForm beta(const Rational& a, const Rational& b);
  static ClosedForm sin_pi(const Rational& r);  // sin(pi * r)
  static ClosedForm cos_pi(const Rational& r);  // cos(pi * r)
  static ClosedForm binom(std::int64_t n, std::int64_t k);
  static ClosedForm fact(std::int64_t n);
  static ClosedForm pow(const ClosedForm& base, const Rational& exp);
  static ClosedForm mul(std::vector<ClosedForm> factors);

  NodeKind kind() const;

  const Rational& const_value() const;  // Const
  const Rational& gamma_arg() const;    // Gamma
  const Rational& beta_a() const;       // Beta
  const Rational& beta_b() const;       // Beta
  const Rational& trig_arg() const;     // SinPi / CosPi
  std::int64_t binom_n() const;         // Binom
  std::int64_t binom_k() const;         // Binom
  std::int64_t fact_n() const;          // Fact
  const ClosedForm& pow_base() const;   // Pow
  const Rational& pow_exp() const;      // Pow
  const std::vector<ClosedForm>& factors() const;  // Mul

  /// Total order used for canonical factor sorting and deduplication.
  int compare(const ClosedForm& o) const;
  bool operator==(const ClosedForm& o) const { return compare(o) == 0; }
  bool operator!=(const ClosedForm& o) const { return compare(o) != 0; }

 private:
  struct Node;
  explicit ClosedForm(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

/// Sign and log-magnitude of a real value; sign == 0 encodes an exact zero.
struct LogValue {
  double log_abs;
  int sign;
};

/// Evaluate in log-magnitude + sign form. Never overflows on intermediate
/// products; only the final exponentiation can.
LogValue eval_log(const ClosedForm& cf);

/// Numeric value of the tree. Throws OverflowError when the value exceeds
/// the double range, PoleError/DomainError when propagated from leaves.
double eval_closed_form(const ClosedForm& cf);

/// True iff |eval(a) - eval(b)| <= rel_tol * max(|eval(a)|, |eval(b)|, 1).
bool equivalent_numeric(const ClosedForm& a, const ClosedForm& b, double rel_tol);

/// Deterministic human-readable rendering, e.g. "(1/2)·B(1/4, 1/2)".
std::string print_closed_form(const ClosedForm& cf);

/// LaTeX rendering of the same tree.
std::string print_closed_form_latex(const ClosedForm& cf);

}  // namespace trigbeta
