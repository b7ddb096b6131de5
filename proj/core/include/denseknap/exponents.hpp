#pragma once

#include <string>
#include <vector>

#include "denseknap/rational.hpp"

namespace denseknap::exponents {

// Approximation-ratio exponent for the densest k-subhypergraph recursion with
// the default order-2 base exponent 1/4: m/2 - 1/2 - 1/(2m). Requires m >= 2.
Rational theta(int m);

// Same exponent for an arbitrary order-2 base exponent in (0,1):
// m/2 - 1/2 + (2*alpha_base - 1)/m. Reduces to theta(m) at alpha_base = 1/4.
Rational theta_general(int m, const Rational& alpha_base);

// Set-union knapsack exponent (2/3)*[m - 1 - (2m-2)/(m^2+m-1)]. Requires
// m >= 1; alpha(1) = 0 so the induction bottoms out at classical knapsack.
Rational alpha(int m);

// Cost-scale cutoff exponent 1 + alpha(r-1) - alpha(r). Requires r >= 2.
Rational gamma(int r);

struct IdentityCheck {
  int m = 0;
  std::string identity;  // "theta_recurrence" | "alpha_theta_product"
  bool holds = false;
};

// Evaluates, for every r in 3..m_max, the two recurrence identities the
// analysis relies on, as exact rational equalities:
//   1 + theta(r-1) - theta(r)/(r-1) == theta(r)
//   (2 + alpha(r-1) - alpha(r)) * theta(r) == alpha(r)
std::vector<IdentityCheck> verify_identities(int m_max);

struct TableRow {
  int m = 0;
  Rational theta;
  Rational alpha;
  Rational gamma;  // defined for m >= 2
};

// Rows for m = 2..m_max.
std::vector<TableRow> table(int m_max);

}  // namespace denseknap::exponents
