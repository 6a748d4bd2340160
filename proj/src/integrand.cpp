#include "trigbeta/integrand.hpp"

#include <cctype>
#include <cstdlib>

namespace trigbeta {

ExponentTriple normalize_factors(std::span<const std::pair<TrigBase, Rational>> factors) {
  ExponentTriple t{Rational(0), Rational(0), Rational(0)};
  for (const auto& [base, e] : factors) {
    switch (base) {
      case TrigBase::Sin:
        t.sin_exp += e;
        break;
      case TrigBase::Cos:
        t.cos_exp += e;
        break;
      case TrigBase::Tan:
        t.sin_exp += e;
        t.cos_exp -= e;
        break;
      case TrigBase::Cot:
        t.sin_exp -= e;
        t.cos_exp += e;
        break;
      case TrigBase::Sec:
        t.cos_exp -= e;
        break;
      case TrigBase::Csc:
        t.sin_exp -= e;
        break;
      case TrigBase::Cos2x:
        t.cos2x_exp += e;
        break;
    }
  }
  return t;
}

namespace {

// Hand-rolled scanner/parser for the grammar
//   integral := "int" "[" "0" "," bound "]" product "dx"
//   bound    := "pi/2" | "pi/4"
//   product  := term { ("*" | "/") term }
//   term     := factor [ "^" "(" rational ")" | "^" integer ] | "sqrt" "(" factor ")"
//   factor   := "sin(x)" | "cos(x)" | "tan(x)" | "cot(x)" | "sec(x)" | "csc(x)" | "cos(2x)"
// Whitespace-insensitive, case-sensitive. A product may start with the
// literal 1, which lets "1/..." spell a reciprocal.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  TrigIntegrand run() {
    expect_word("int");
    expect_char('[');
    expect_word("0");
    expect_char(',');
    const Interval interval = parse_bound();
    expect_char(']');

    std::vector<std::pair<TrigBase, Rational>> factors;
    std::size_t cos2x_pos = std::string_view::npos;
    parse_product(factors, cos2x_pos);

    expect_word("dx");
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input", pos_);

    const ExponentTriple t = normalize_factors(factors);
    if (interval == Interval::HalfPi && !t.cos2x_exp.is_zero())
      fail("cos(2x) integrand on the half-pi interval (cos 2x changes sign there)", cos2x_pos);
    return TrigIntegrand{t.sin_exp, t.cos_exp, t.cos2x_exp, interval};
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_char(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept_char(char c) {
    if (peek_char(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect_char(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string_view peek_word() {
    skip_ws();
    std::size_t end = pos_;
    while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
    return text_.substr(pos_, end - pos_);
  }

  void expect_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) fail("expected '" + std::string(w) + "'", pos_);
    pos_ += w.size();
  }

  std::int64_t parse_integer() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t p = pos_;
    if (p < text_.size() && (text_[p] == '-' || text_[p] == '+')) ++p;
    std::size_t digits = p;
    while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
    if (p == digits) fail("expected an integer", start);
    errno = 0;
    char* end = nullptr;
    const std::string token(text_.substr(start, p - start));
    const long long v = std::strtoll(token.c_str(), &end, 10);
    if (errno == ERANGE) fail("integer literal out of range", start);
    pos_ = p;
    return v;
  }

  Rational parse_rational() {
    const std::int64_t num = parse_integer();
    if (accept_char('/')) {
      const std::size_t dpos = pos_;
      const std::int64_t den = parse_integer();
      if (den <= 0) fail("denominator must be a positive integer", dpos);
      return Rational(num, den);
    }
    return Rational(num);
  }

  Interval parse_bound() {
    skip_ws();
    const std::size_t at = pos_;
    expect_word("pi");
    expect_char('/');
    const std::int64_t d = parse_integer();
    if (d == 2) return Interval::HalfPi;
    if (d == 4) return Interval::QuarterPi;
    fail("bound must be pi/2 or pi/4", at);
  }

  TrigBase parse_factor(std::size_t& cos2x_pos) {
    skip_ws();
    const std::size_t at = pos_;
    const std::string_view w = peek_word();
    TrigBase base;
    if (w == "sin") base = TrigBase::Sin;
    else if (w == "cos") base = TrigBase::Cos;
    else if (w == "tan") base = TrigBase::Tan;
    else if (w == "cot") base = TrigBase::Cot;
    else if (w == "sec") base = TrigBase::Sec;
    else if (w == "csc") base = TrigBase::Csc;
    else fail("expected one of sin, cos, tan, cot, sec, csc", at);
    pos_ += w.size();
    expect_char('(');
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '2') {
      if (base != TrigBase::Cos) fail("only cos supports the double angle 2x", pos_);
      ++pos_;
      expect_word("x");
      expect_char(')');
      if (cos2x_pos == std::string_view::npos) cos2x_pos = at;
      return TrigBase::Cos2x;
    }
    expect_word("x");
    expect_char(')');
    return base;
  }

  void parse_term(std::vector<std::pair<TrigBase, Rational>>& out, std::size_t& cos2x_pos,
                  bool reciprocal) {
    skip_ws();
    const std::string_view w = peek_word();
    if (w == "sqrt") {
      pos_ += w.size();
      expect_char('(');
      const TrigBase base = parse_factor(cos2x_pos);
      expect_char(')');
      Rational e(1, 2);
      if (reciprocal) e = -e;
      out.emplace_back(base, e);
      return;
    }
    const TrigBase base = parse_factor(cos2x_pos);
    Rational e(1);
    if (accept_char('^')) {
      if (accept_char('(')) {
        e = parse_rational();
        expect_char(')');
      } else {
        e = Rational(parse_integer());
      }
    }
    if (reciprocal) e = -e;
    out.emplace_back(base, e);
  }

  void parse_product(std::vector<std::pair<TrigBase, Rational>>& out, std::size_t& cos2x_pos) {
    skip_ws();
    bool reciprocal = false;
    // optional leading literal 1 ("1/f", "1 * f", or a bare constant integrand)
    if (pos_ < text_.size() && text_[pos_] == '1') {
      ++pos_;
      if (accept_char('/')) {
        reciprocal = true;
      } else if (accept_char('*')) {
        reciprocal = false;
      } else {
        return;  // constant integrand; "dx" follows
      }
    }
    parse_term(out, cos2x_pos, reciprocal);
    for (;;) {
      if (accept_char('*')) {
        parse_term(out, cos2x_pos, false);
      } else if (accept_char('/')) {
        parse_term(out, cos2x_pos, true);
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string exponent_suffix(const Rational& e) {
  if (e == Rational(1)) return "";
  if (e.is_integer() && e.num() >= 0) return "^" + std::to_string(e.num());
  return "^(" + e.str() + ")";
}

}  // namespace

TrigIntegrand parse_integrand(std::string_view text) { return Parser(text).run(); }

ConvergenceVerdict convergence_check(const TrigIntegrand& ti) {
  const Rational minus_one(-1);
  if (ti.sin_exp <= minus_one) {
    return {false, Endpoint::Lower,
            "sin exponent " + ti.sin_exp.str() + " <= -1 makes the integral diverge at 0"};
  }
  if (ti.interval == Interval::HalfPi) {
    if (ti.cos_exp <= minus_one)
      return {false, Endpoint::Upper,
              "cos exponent " + ti.cos_exp.str() + " <= -1 makes the integral diverge at pi/2"};
  } else {
    if (ti.cos2x_exp <= minus_one)
      return {false, Endpoint::Upper,
              "cos(2x) exponent " + ti.cos2x_exp.str() +
                  " <= -1 makes the integral diverge at pi/4"};
  }
  return {true, std::nullopt, "convergent"};
}

std::string render_integrand(const TrigIntegrand& ti) {
  std::string s = "int[0,";
  s += ti.interval == Interval::HalfPi ? "pi/2" : "pi/4";
  s += "] ";
  std::vector<std::string> parts;
  if (!ti.sin_exp.is_zero()) parts.push_back("sin(x)" + exponent_suffix(ti.sin_exp));
  if (!ti.cos_exp.is_zero()) parts.push_back("cos(x)" + exponent_suffix(ti.cos_exp));
  if (!ti.cos2x_exp.is_zero()) parts.push_back("cos(2x)" + exponent_suffix(ti.cos2x_exp));
  if (parts.empty()) {
    s += "1";
  } else {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) s += " * ";
      s += parts[i];
    }
  }
  s += " dx";
  return s;
}

}  // namespace trigbeta
