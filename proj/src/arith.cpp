#include "modbrauer/arith.hpp"

namespace modbrauer {

Rational::Rational(Int n, Int d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    n = checked_sub(0, n);
    d = checked_sub(0, d);
  }
  Int g = gcd(n, d);
  num_ = n / g;
  den_ = d / g;
}

Rational operator+(const Rational& a, const Rational& b) {
  Int g = gcd(a.den_, b.den_);
  Int da = b.den_ / g;
  Int db = a.den_ / g;
  return Rational(checked_add(checked_mul(a.num_, da), checked_mul(b.num_, db)),
                  checked_mul(a.den_, da));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  Int g1 = gcd(a.num_, b.den_);
  Int g2 = gcd(b.num_, a.den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Rational(checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("division by zero rational");
  return a * Rational(b.den_, b.num_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  os << r.num_;
  if (r.den_ != 1) os << '/' << r.den_;
  return os;
}

QmodZ::QmodZ(Int num, Int den) {
  if (den <= 0) throw std::domain_error("Q/Z element needs a positive denominator");
  num = mod_floor(num, den);
  Int g = gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

QmodZ operator+(const QmodZ& a, const QmodZ& b) {
  Int l = lcm(a.den_, b.den_);
  return QmodZ(checked_add(checked_mul(a.num_, l / a.den_), checked_mul(b.num_, l / b.den_)), l);
}

QmodZ operator-(const QmodZ& a, const QmodZ& b) { return a + (-b); }

QmodZ operator*(Int k, const QmodZ& a) {
  return QmodZ(checked_mul(mod_floor(k, a.den_), a.num_), a.den_);
}

std::string QmodZ::to_string() const {
  if (num_ == 0) return "0";
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace modbrauer
