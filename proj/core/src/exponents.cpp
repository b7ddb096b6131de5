#include "denseknap/exponents.hpp"

#include <stdexcept>

namespace denseknap::exponents {

Rational theta(int m) {
  if (m < 2) throw std::domain_error("theta requires m >= 2");
  return Rational(m, 2) - Rational(1, 2) - Rational(1, 2LL * m);
}

Rational theta_general(int m, const Rational& alpha_base) {
  if (m < 2) throw std::domain_error("theta_general requires m >= 2");
  if (alpha_base <= Rational(0) || alpha_base >= Rational(1))
    throw std::domain_error("theta_general requires alpha_base in (0,1)");
  return Rational(m, 2) - Rational(1, 2) + (Rational(2) * alpha_base - Rational(1)) / Rational(m);
}

Rational alpha(int m) {
  if (m < 1) throw std::domain_error("alpha requires m >= 1");
  Rational mm(m);
  Rational inner = mm - Rational(1) - (Rational(2) * mm - Rational(2)) / (mm * mm + mm - Rational(1));
  return Rational(2, 3) * inner;
}

Rational gamma(int r) {
  if (r < 2) throw std::domain_error("gamma requires r >= 2");
  return Rational(1) + alpha(r - 1) - alpha(r);
}

std::vector<IdentityCheck> verify_identities(int m_max) {
  if (m_max < 3) throw std::domain_error("verify_identities requires m_max >= 3");
  std::vector<IdentityCheck> out;
  for (int r = 3; r <= m_max; ++r) {
    Rational lhs1 = Rational(1) + theta(r - 1) - theta(r) / Rational(r - 1);
    out.push_back({r, "theta_recurrence", lhs1 == theta(r)});
    Rational lhs2 = (Rational(2) + alpha(r - 1) - alpha(r)) * theta(r);
    out.push_back({r, "alpha_theta_product", lhs2 == alpha(r)});
  }
  return out;
}

std::vector<TableRow> table(int m_max) {
  if (m_max < 2) throw std::domain_error("table requires m_max >= 2");
  std::vector<TableRow> rows;
  for (int m = 2; m <= m_max; ++m) rows.push_back({m, theta(m), alpha(m), gamma(m)});
  return rows;
}

}  // namespace denseknap::exponents
