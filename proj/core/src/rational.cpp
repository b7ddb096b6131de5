#include "denseknap/rational.hpp"

#include <limits>
#include <stdexcept>

namespace denseknap {

Rational::Rational(long long num, long long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
  v_.canonicalize();
}

Rational::Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

Rational Rational::from_string(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    // "12.5" -> 125/10; reject a second dot or a slash mixed in.
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0 || digits.find_first_of("./") != std::string::npos)
      throw std::invalid_argument("malformed decimal literal: " + s);
    mpz_class num, den;
    if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
      throw std::invalid_argument("malformed decimal literal: " + s);
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rational r;
    r.v_ = mpq_class(num) / mpq_class(den);
    r.v_.canonicalize();
    return r;
  }
  mpq_class q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("malformed rational literal: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return Rational(q);
}

Rational Rational::pow2(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  Rational r;
  r.v_ = e >= 0 ? mpq_class(p) : mpq_class(1) / mpq_class(p);
  r.v_.canonicalize();
  return r;
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return Rational(q);
}

long long Rational::floor_ll() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("rational floor out of machine range");
  return q.get_si();
}

long Rational::floor_log2() const {
  if (sign() <= 0) throw std::domain_error("floor_log2 of non-positive rational");
  // First guess from bit lengths, then settle with exact comparisons.
  long e = static_cast<long>(mpz_sizeinbase(v_.get_num().get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(v_.get_den().get_mpz_t(), 2));
  while (pow2(e) > *this) --e;
  while (pow2(e + 1) <= *this) ++e;
  return e;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

long ceil_log2(const mpz_class& y) {
  if (y < 1) throw std::domain_error("ceil_log2 of non-positive integer");
  size_t bits = mpz_sizeinbase(y.get_mpz_t(), 2);
  bool pow_of_two = mpz_popcount(y.get_mpz_t()) == 1;
  return static_cast<long>(bits) - (pow_of_two ? 1 : 0);
}

long int_above_log2(const mpz_class& y) {
  if (y < 1) throw std::domain_error("int_above_log2 of non-positive integer");
  return static_cast<long>(mpz_sizeinbase(y.get_mpz_t(), 2));
}

}  // namespace denseknap
