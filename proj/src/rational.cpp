#include "cca/rational.hpp"

#include <numeric>

namespace cca {

namespace {

using i128 = __int128;

std::int64_t checked(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("rational arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den_ == 0) throw InputError("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = checked(-i128(num_));
    den_ = checked(-i128(den_));
  }
  std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = checked(-i128(num_));
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
  i128 d = i128(den_) * o.den_;
  std::int64_t g = std::gcd(checked(n < 0 ? -n : n), checked(d));
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = checked(n);
  den_ = checked(d);
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  std::int64_t g1 = std::gcd(num_, o.den_);
  std::int64_t g2 = std::gcd(o.num_, den_);
  i128 n = i128(num_ / g1) * (o.num_ / g2);
  i128 d = i128(den_ / g2) * (o.den_ / g1);
  num_ = checked(n);
  den_ = checked(d);
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw InputError("rational division by zero");
  Rational inv;
  inv.num_ = o.den_;
  inv.den_ = o.num_;
  if (inv.den_ < 0) {
    inv.num_ = -inv.num_;
    inv.den_ = -inv.den_;
  }
  return *this *= inv;
}

bool operator<(const Rational& a, const Rational& b) {
  return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw InputError("empty rational literal");
  std::size_t slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      std::int64_t v = std::stoll(text, &used);
      if (used != text.size()) throw InputError("trailing characters in rational: " + text);
      return Rational(v);
    }
    std::int64_t n = std::stoll(text.substr(0, slash), &used);
    if (used != slash) throw InputError("bad numerator in rational: " + text);
    std::string dpart = text.substr(slash + 1);
    std::int64_t d = std::stoll(dpart, &used);
    if (used != dpart.size()) throw InputError("bad denominator in rational: " + text);
    return Rational(n, d);
  } catch (const std::invalid_argument&) {
    throw InputError("unparsable rational: " + text);
  } catch (const std::out_of_range&) {
    throw InputError("rational literal out of range: " + text);
  }
}

}  // namespace cca
