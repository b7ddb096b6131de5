#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace denseknap {

// Exact rational number, always kept in lowest terms with a positive
// denominator. All instance data (costs, profits, weights, budgets) and all
// exponent arithmetic go through this type; the solvers use no floating
// point except for human-readable diagnostics.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long long num) : v_(static_cast<long>(num)) {}  // NOLINT(google-explicit-constructor)
  Rational(long long num, long long den);
  explicit Rational(const mpq_class& q);
  explicit Rational(const mpz_class& z) : v_(z) {}

  // Accepts "p", "-p", "p/q" and decimal strings like "2.75".
  static Rational from_string(std::string_view text);
  // 2^e for any (possibly negative) integer e.
  static Rational pow2(long e);

  std::string str() const;  // canonical: "p" when integral, else "p/q"
  double to_double() const { return v_.get_d(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  Rational floor() const;
  // Floor as a machine integer; throws std::overflow_error when out of range.
  long long floor_ll() const;
  // Largest e with 2^e <= *this; requires a strictly positive value.
  long floor_log2() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

// C(n, k) exactly.
mpz_class binomial(unsigned long n, unsigned long k);
// Smallest integer e with 2^e >= y; requires y >= 1.
long ceil_log2(const mpz_class& y);
// Smallest integer strictly greater than log2(y); requires y >= 1.
// Equals floor(log2 y) + 1 even when y is a power of two.
long int_above_log2(const mpz_class& y);

}  // namespace denseknap
