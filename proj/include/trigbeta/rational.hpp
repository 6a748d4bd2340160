#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "trigbeta/errors.hpp"

namespace trigbeta {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in rational add");
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in rational sub");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in rational mul");
  return r;
}

}  // namespace detail

/// Exact fraction with int64 numerator and positive int64 denominator,
/// always stored reduced. Arithmetic is exact; overflow throws, never wraps.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  bool is_nonpositive_integer() const { return den_ == 1 && num_ <= 0; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "p/q", or just "p" when the denominator is 1.
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator-(const Rational& x) { return Rational(-x.num_, x.den_, raw_tag{}); }

  friend Rational operator+(const Rational& x, const Rational& y) {
    return Rational(detail::checked_add(detail::checked_mul(x.num_, y.den_),
                                        detail::checked_mul(y.num_, x.den_)),
                    detail::checked_mul(x.den_, y.den_));
  }
  friend Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }
  friend Rational operator*(const Rational& x, const Rational& y) {
    return Rational(detail::checked_mul(x.num_, y.num_), detail::checked_mul(x.den_, y.den_));
  }
  friend Rational operator/(const Rational& x, const Rational& y) {
    if (y.num_ == 0) throw PoleError("rational division by zero");
    return Rational(detail::checked_mul(x.num_, y.den_), detail::checked_mul(x.den_, y.num_));
  }

  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator-=(const Rational& y) { return *this = *this - y; }
  Rational& operator*=(const Rational& y) { return *this = *this * y; }

  friend bool operator==(const Rational& x, const Rational& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend bool operator!=(const Rational& x, const Rational& y) { return !(x == y); }
  friend bool operator<(const Rational& x, const Rational& y) {
    // exact cross multiplication in 128 bits
    return static_cast<__int128>(x.num_) * y.den_ < static_cast<__int128>(y.num_) * x.den_;
  }
  friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
  friend bool operator<=(const Rational& x, const Rational& y) { return !(y < x); }
  friend bool operator>=(const Rational& x, const Rational& y) { return !(x < y); }

  /// Three-way compare, exact.
  int cmp(const Rational& y) const {
    if (*this < y) return -1;
    if (y < *this) return 1;
    return 0;
  }

 private:
  struct raw_tag {};
  Rational(std::int64_t n, std::int64_t d, raw_tag) : num_(n), den_(d) {}

  void normalize() {
    if (den_ == 0) throw DomainError("rational with zero denominator");
    if (num_ == INT64_MIN || den_ == INT64_MIN)
      throw OverflowError("rational magnitude out of range");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace trigbeta
