#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <vector>

#include "trigbeta/integrand.hpp"
#include "trigbeta/prng.hpp"

using namespace trigbeta;

namespace {

TrigIntegrand ti(Rational a, Rational b, Rational c, Interval iv) { return {a, b, c, iv}; }

}  // namespace

TEST_CASE("parse the documented examples") {
  CHECK(parse_integrand("int[0,pi/2] sin(x)^(-1/2) dx") ==
        ti(Rational(-1, 2), Rational(0), Rational(0), Interval::HalfPi));
  CHECK(parse_integrand("int[0,pi/2] tan(x)^(1/3) dx") ==
        ti(Rational(1, 3), Rational(-1, 3), Rational(0), Interval::HalfPi));
  CHECK(parse_integrand("int[0,pi/4] sin(x)^3 * cos(2x)^(1/2) / cos(x)^6 dx") ==
        ti(Rational(3), Rational(-6), Rational(1, 2), Interval::QuarterPi));
}

TEST_CASE("parse sugar: sqrt, reciprocal, bare integers, whitespace") {
  CHECK(parse_integrand("int[0,pi/2] sqrt(sin(x)) dx") ==
        ti(Rational(1, 2), Rational(0), Rational(0), Interval::HalfPi));
  CHECK(parse_integrand("int[0,pi/2] 1/sqrt(sin(x)) dx") ==
        ti(Rational(-1, 2), Rational(0), Rational(0), Interval::HalfPi));
  CHECK(parse_integrand("int[0,pi/4] 1/cos(x)^2 dx") ==
        ti(Rational(0), Rational(-2), Rational(0), Interval::QuarterPi));
  CHECK(parse_integrand("int[0,pi/2] sin(x)^2 dx") ==
        ti(Rational(2), Rational(0), Rational(0), Interval::HalfPi));
  CHECK(parse_integrand("int[0,pi/2] sin(x)^-2 dx") ==
        ti(Rational(-2), Rational(0), Rational(0), Interval::HalfPi));
  CHECK(parse_integrand("  int [ 0 , pi/2 ]  sin(x) ^ (1/2)  dx  ") ==
        ti(Rational(1, 2), Rational(0), Rational(0), Interval::HalfPi));
  CHECK(parse_integrand("int[0,pi/4] 1 dx") ==
        ti(Rational(0), Rational(0), Rational(0), Interval::QuarterPi));
}

TEST_CASE("normalize rewrites every base into sin/cos/cos2x") {
  using P = std::pair<TrigBase, Rational>;
  {
    const std::array<P, 2> fs{P{TrigBase::Tan, Rational(1, 2)}, P{TrigBase::Cos, Rational(-1, 2)}};
    const ExponentTriple t = normalize_factors(fs);
    CHECK(t.sin_exp == Rational(1, 2));
    CHECK(t.cos_exp == Rational(-1));
  }
  {
    const std::array<P, 2> fs{P{TrigBase::Cot, Rational(1, 2)}, P{TrigBase::Sin, Rational(-1, 2)}};
    const ExponentTriple t = normalize_factors(fs);
    CHECK(t.sin_exp == Rational(-1));
    CHECK(t.cos_exp == Rational(1, 2));
  }
  {
    const std::array<P, 2> fs{P{TrigBase::Sec, Rational(1, 2)}, P{TrigBase::Sin, Rational(-1, 2)}};
    const ExponentTriple t = normalize_factors(fs);
    CHECK(t.sin_exp == Rational(-1, 2));
    CHECK(t.cos_exp == Rational(-1, 2));
  }
  {  // csc and cos2x
    const std::array<P, 2> fs{P{TrigBase::Csc, Rational(2)}, P{TrigBase::Cos2x, Rational(1, 2)}};
    const ExponentTriple t = normalize_factors(fs);
    CHECK(t.sin_exp == Rational(-2));
    CHECK(t.cos2x_exp == Rational(1, 2));
  }
}

TEST_CASE("normalization is additive over concatenation") {
  SplitMix64 rng(5150);
  using P = std::pair<TrigBase, Rational>;
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<P> xs, ys;
    const auto gen = [&](std::vector<P>& v) {
      const int n = static_cast<int>(rng.uniform_int(0, 4));
      for (int i = 0; i < n; ++i)
        v.emplace_back(static_cast<TrigBase>(rng.uniform_int(0, 6)),
                       Rational(rng.uniform_int(-8, 8), rng.uniform_int(1, 4)));
    };
    gen(xs);
    gen(ys);
    std::vector<P> both = xs;
    both.insert(both.end(), ys.begin(), ys.end());
    const ExponentTriple tx = normalize_factors(xs);
    const ExponentTriple ty = normalize_factors(ys);
    const ExponentTriple tb = normalize_factors(both);
    CHECK(tb.sin_exp == tx.sin_exp + ty.sin_exp);
    CHECK(tb.cos_exp == tx.cos_exp + ty.cos_exp);
    CHECK(tb.cos2x_exp == tx.cos2x_exp + ty.cos2x_exp);
  }
}

TEST_CASE("tan.cot ties cancel exactly; constant integrand is legal") {
  const TrigIntegrand t = parse_integrand("int[0,pi/2] tan(x)^(1/2) * cot(x)^(1/2) dx");
  CHECK(t.sin_exp.is_zero());
  CHECK(t.cos_exp.is_zero());
  CHECK(render_integrand(t) == "int[0,pi/2] 1 dx");
  CHECK(parse_integrand(render_integrand(t)) == t);
}

TEST_CASE("cos(2x) is rejected on the half-pi interval, with a position") {
  // net-zero exponent is fine (it cancels), nonzero is not
  CHECK_NOTHROW(parse_integrand("int[0,pi/2] cos(2x) * cos(2x)^(-1) dx"));
  try {
    parse_integrand("int[0,pi/2] sin(x) * cos(2x) dx");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.pos == 21);  // offset of the cos(2x) token
    CHECK(std::string(e.what()).find("cos(2x)") != std::string::npos);
  }
  CHECK_NOTHROW(parse_integrand("int[0,pi/4] cos(2x) dx"));
}

TEST_CASE("convergence verdicts") {
  {
    const ConvergenceVerdict v =
        convergence_check(ti(Rational(-1, 2), Rational(0), Rational(0), Interval::HalfPi));
    CHECK(v.convergent);
    CHECK_FALSE(v.offending_endpoint.has_value());
  }
  {
    const ConvergenceVerdict v =
        convergence_check(ti(Rational(-1), Rational(0), Rational(0), Interval::HalfPi));
    CHECK_FALSE(v.convergent);
    CHECK(v.offending_endpoint == Endpoint::Lower);
    CHECK_FALSE(v.reason.empty());
  }
  {
    const ConvergenceVerdict v =
        convergence_check(ti(Rational(0), Rational(-3, 2), Rational(0), Interval::HalfPi));
    CHECK_FALSE(v.convergent);
    CHECK(v.offending_endpoint == Endpoint::Upper);
  }
  {  // beta is unconstrained on the quarter interval
    const ConvergenceVerdict v =
        convergence_check(ti(Rational(0), Rational(-5), Rational(1, 2), Interval::QuarterPi));
    CHECK(v.convergent);
  }
  {
    const ConvergenceVerdict v =
        convergence_check(ti(Rational(0), Rational(0), Rational(-9, 8), Interval::QuarterPi));
    CHECK_FALSE(v.convergent);
    CHECK(v.offending_endpoint == Endpoint::Upper);
  }
}

TEST_CASE("render matches the canonical forms") {
  CHECK(render_integrand(ti(Rational(1, 2), Rational(0), Rational(0), Interval::HalfPi)) ==
        "int[0,pi/2] sin(x)^(1/2) dx");
  CHECK(render_integrand(ti(Rational(0), Rational(-2), Rational(0), Interval::QuarterPi)) ==
        "int[0,pi/4] cos(x)^(-2) dx");
  CHECK(render_integrand(ti(Rational(2), Rational(-4), Rational(0), Interval::QuarterPi)) ==
        "int[0,pi/4] sin(x)^2 * cos(x)^(-4) dx");
  CHECK(render_integrand(ti(Rational(1), Rational(1), Rational(0), Interval::HalfPi)) ==
        "int[0,pi/2] sin(x) * cos(x) dx");
}

TEST_CASE("property: render/parse round-trip on 1000 random integrands") {
  SplitMix64 rng(777);
  const std::array<std::int64_t, 5> dens{1, 2, 3, 4, 8};
  for (int i = 0; i < 1000; ++i) {
    const Interval iv = rng.uniform_int(0, 1) ? Interval::HalfPi : Interval::QuarterPi;
    const auto r = [&] {
      return Rational(rng.uniform_int(-24, 24),
                      dens[static_cast<std::size_t>(rng.uniform_int(0, 4))]);
    };
    TrigIntegrand t{r(), r(), iv == Interval::HalfPi ? Rational(0) : r(), iv};
    const std::string text = render_integrand(t);
    CHECK(parse_integrand(text) == t);
  }
}

TEST_CASE("invalid inputs are rejected with positioned errors") {
  const std::vector<std::string> bad = {
      "",                                        // empty
      "int[0,pi/3] sin(x) dx",                   // unsupported bound
      "int[1,pi/2] sin(x) dx",                   // lower bound not 0
      "int[0,pi/2] sin(y) dx",                   // bad variable
      "int[0,pi/2] sinh(x) dx",                  // unknown function
      "int[0,pi/2] SIN(x) dx",                   // case sensitive
      "int[0,pi/2] sin(x)^ dx",                  // missing exponent
      "int[0,pi/2] sin(x)^(1/0) dx",             // zero denominator
      "int[0,pi/2] sin(x) cos(x) dx",            // missing operator
      "int[0,pi/2] sin(x) *",                    // truncated
      "int[0,pi/2] cos(2x) dx",                  // cos(2x) on half-pi
      "int[0,pi/2] sin(2x) dx",                  // double angle only for cos
      "int[0,pi/4] sqrt(sin(x))^2 dx",           // exponent after sqrt
      "int[0,pi/2] sin(x) dy",                   // bad differential
      "int[0,pi/2] sin(x) dx trailing",          // trailing garbage
      "int[0,pi/2] sin(x)^(999999999999999999999) dx",  // exponent overflow
  };
  for (const std::string& src : bad) {
    CAPTURE(src);
    try {
      parse_integrand(src);
      FAIL_CHECK("expected ParseError for: " << src);
    } catch (const ParseError& e) {
      CHECK(e.pos <= src.size());
    }
  }
}
