#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace cca {

// Raised on malformed inputs (bad indices, dimension mismatches, parse errors).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raised if an exact computation would leave the 64-bit range. All quantities
// in this project stay far below that; overflow means a logic bug upstream.
struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

// Exact rational number over int64. Always normalized: den > 0, gcd(num,den)=1.
// Every money amount, price and utility in the system is one of these; there is
// no floating point anywhere.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  constexpr Rational(std::int64_t v) : num_(v), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_positive() const { return num_ > 0; }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  // "5", "-3" or "1/2"; inverse of parse for every normalized value.
  std::string str() const;
  static Rational parse(const std::string& text);

 private:
  void normalize();
  std::int64_t num_;
  std::int64_t den_;
};

using Money = Rational;

}  // namespace cca

template <>
struct std::hash<cca::Rational> {
  std::size_t operator()(const cca::Rational& r) const noexcept {
    std::size_t h = std::hash<std::int64_t>{}(r.num());
    return h * 1000003u ^ std::hash<std::int64_t>{}(r.den());
  }
};
