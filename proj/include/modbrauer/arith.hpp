#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace modbrauer {

using Int = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
__extension__ typedef __int128 Wide;

class ArithmeticOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in addition");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in subtraction");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in multiplication");
  return r;
}

// Representative of a mod m in [0, m).
inline Int mod_floor(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

// Floor division (rounds toward negative infinity).
inline Int div_floor(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int gcd(Int a, Int b) { return std::gcd(a, b); }

inline Int lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / std::gcd(a, b), b < 0 ? -b : b);
}

inline std::string to_string(const BigInt& v) { return v.str(); }

/// Exact rational number with int64 numerator and positive denominator, always reduced.
class Rational {
 public:
  Rational() = default;
  Rational(Int n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(Int n, Int d);

  Int num() const { return num_; }
  Int den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(checked_sub(0, num_), den_); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  Int num_ = 0;
  Int den_ = 1;
};

/// An element of Q/Z, stored as a reduced fraction num/den with 0 <= num < den.
class QmodZ {
 public:
  QmodZ() = default;
  QmodZ(Int num, Int den);
  explicit QmodZ(const Rational& r) : QmodZ(r.num(), r.den()) {}

  Int num() const { return num_; }
  Int den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  // Order of the element in Q/Z.
  Int order() const { return den_; }

  friend QmodZ operator+(const QmodZ& a, const QmodZ& b);
  friend QmodZ operator-(const QmodZ& a, const QmodZ& b);
  QmodZ operator-() const { return QmodZ(den_ - num_, den_); }
  friend QmodZ operator*(Int k, const QmodZ& a);
  QmodZ& operator+=(const QmodZ& o) { return *this = *this + o; }

  friend bool operator==(const QmodZ& a, const QmodZ& b) = default;
  friend auto operator<=>(const QmodZ& a, const QmodZ& b) {
    // Compare as rationals in [0, 1).
    return static_cast<Wide>(a.num_) * b.den_ <=> static_cast<Wide>(b.num_) * a.den_;
  }

  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const QmodZ& q) { return os << q.to_string(); }

 private:
  Int num_ = 0;
  Int den_ = 1;
};

}  // namespace modbrauer
