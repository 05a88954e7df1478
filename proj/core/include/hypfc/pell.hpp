// Fundamental solutions of x^2 - d y^2 = +-1 and derived constants for a
// real quadratic lattice with fundamental unit eps = a0 + c0*sqrt(d).
#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>

namespace hypfc {

struct PellData {
  long d = 0;             // positive non-square
  mpz_class a0, c0;       // minimal solution of a0^2 - d c0^2 = 1, a0,c0 > 0
  int cf_period = 0;      // period length of the continued fraction of sqrt(d)

  // eps = a0 + c0 sqrt(d) and ell = 2 log eps, rounded to double.
  double epsilon = 0.0;
  double ell = 0.0;

  // (a0+1)/c0 = u_plus/v_plus and (a0-1)/c0 = u_minus/v_minus in lowest
  // terms; d_pm = u_pm^2 - d v_pm^2.  d_plus > 0 > d_minus always.
  mpz_class u_plus, v_plus, u_minus, v_minus;
  mpz_class d_plus, d_minus;

  // Minimal solution of x^2 - d y^2 = -1 when it exists (odd cf_period).
  std::optional<std::pair<mpz_class, mpz_class>> neg_fund;
};

// Continued-fraction solver.  Throws std::domain_error when d < 2 or d is a
// perfect square.
PellData solve_pell(long d);

// Minimal solution of the -1 equation, or nullopt when unsolvable.
std::optional<std::pair<mpz_class, mpz_class>> solve_negative_pell(long d);

// Boundary correction attached to N: (-1)^(m + c0 n) when N equals d_plus
// or d_minus, 0 otherwise.
int psi_d(const PellData& pd, long m, long n, const mpz_class& N);

}  // namespace hypfc
