#pragma once

/**
 * Exact rational numbers over 64-bit integers.
 *
 * Values are always normalized: gcd(|num|, den) == 1 and den >= 1, so zero
 * is uniquely 0/1 and equality is field-wise. Every operation is overflow
 * checked; an overflow throws instead of wrapping, so a result is either
 * exact or absent.
 */

#include <charconv>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace civ {

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("civ::Rational: integer overflow");
  return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("civ::Rational: integer overflow");
  return r;
}

inline std::int64_t iabs(std::int64_t a) { return a < 0 ? -a : a; }

}  // namespace detail

class Rational {
 public:
  using int_type = std::int64_t;

  constexpr Rational() = default;
  // Implicit on purpose: integer literals appear everywhere in coordinates.
  constexpr Rational(int_type n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(int_type n, int_type d) : num_(n), den_(d) { normalize(); }

  int_type numerator() const { return num_; }
  int_type denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }
  bool is_positive() const { return num_ > 0; }

  /// Always "p/q", including integers ("3/1") and zero ("0/1").
  std::string to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  /// Accepts "p/q" or a bare integer "p".
  static Rational parse(std::string_view text) {
    auto parse_int = [&](std::string_view s) {
      int_type v{};
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("civ::Rational: cannot parse '" + std::string(text) + "'");
      return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }

  Rational operator-() const {
    Rational r;
    r.num_ = detail::checked_mul(num_, -1);
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == 1 && b.den_ == 1) return Rational(detail::checked_add(a.num_, b.num_));
    int_type g = std::gcd(a.den_, b.den_);
    int_type n = detail::checked_add(detail::checked_mul(a.num_, b.den_ / g),
                                     detail::checked_mul(b.num_, a.den_ / g));
    return Rational(n, detail::checked_mul(a.den_, b.den_ / g));
  }

  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    int_type g1 = std::gcd(detail::iabs(a.num_), b.den_);
    int_type g2 = std::gcd(detail::iabs(b.num_), a.den_);
    Rational r;
    r.num_ = detail::checked_mul(a.num_ / g1, b.num_ / g2);
    r.den_ = detail::checked_mul(a.den_ / g2, b.den_ / g1);
    return r;
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("civ::Rational: division by zero");
    Rational inv;
    inv.num_ = b.num_ < 0 ? -b.den_ : b.den_;
    inv.den_ = detail::iabs(b.num_);
    return a * inv;
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational&, const Rational&) = default;

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    if (r.den_ == 1) return os << r.num_;
    return os << r.num_ << '/' << r.den_;
  }

 private:
  void normalize() {
    if (den_ == 0) throw std::domain_error("civ::Rational: zero denominator");
    if (den_ < 0) {
      num_ = detail::checked_mul(num_, -1);
      den_ = detail::checked_mul(den_, -1);
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    int_type g = std::gcd(detail::iabs(num_), den_);
    num_ /= g;
    den_ /= g;
  }

  int_type num_ = 0;
  int_type den_ = 1;
};

/// The exact scalar field used throughout the engine.
using Scalar = Rational;

}  // namespace civ

template <>
struct std::hash<civ::Rational> {
  std::size_t operator()(const civ::Rational& r) const noexcept {
    std::size_t h = std::hash<std::int64_t>{}(r.numerator());
    return h ^ (std::hash<std::int64_t>{}(r.denominator()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};
