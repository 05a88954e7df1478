#include "hypfc/pell.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hypfc {

namespace {

struct CfResult {
  mpz_class x, y;  // convergent at the end of the first period
  int period;
};

// One period of the continued fraction of sqrt(d).  The expansion is
// [a0; a1, ..., ar] with the (m, q) recurrence
//   m_{i+1} = a_i q_i - m_i,   q_{i+1} = (d - m_{i+1}^2) / q_i,
// and the period ends at the first index i >= 1 with q_i = 1.  The
// convergent h_{r-1}/k_{r-1} then solves x^2 - d y^2 = (-1)^r.
CfResult sqrt_cf_fundamental(long d) {
  mpz_class D(d);
  mpz_class s = sqrt(D);  // floor sqrt
  mpz_class m = 0, q = 1, a = s;

  mpz_class h_prev = 1, h = a;  // numerators
  mpz_class k_prev = 0, k = 1;  // denominators

  for (int i = 1;; ++i) {
    m = a * q - m;
    q = (D - m * m) / q;
    a = (s + m) / q;
    if (q == 1) return {h, k, i};
    h_prev = a * h + h_prev;
    std::swap(h, h_prev);
    k_prev = a * k + k_prev;
    std::swap(k, k_prev);
    if (i > 100000) throw std::runtime_error("continued fraction period too long");
  }
}

}  // namespace

PellData solve_pell(long d) {
  if (d < 2) throw std::domain_error("pell: d must be >= 2");
  mpz_class D(d), s = sqrt(mpz_class(d));
  if (s * s == D) throw std::domain_error("pell: d must not be a perfect square");

  CfResult cf = sqrt_cf_fundamental(d);

  PellData pd;
  pd.d = d;
  pd.cf_period = cf.period;
  if (cf.period % 2 == 0) {
    pd.a0 = cf.x;
    pd.c0 = cf.y;
  } else {
    // Odd period: the convergent solves the -1 equation and eps is its square.
    pd.neg_fund = std::make_pair(cf.x, cf.y);
    pd.a0 = cf.x * cf.x + D * cf.y * cf.y;
    pd.c0 = 2 * cf.x * cf.y;
  }

  if (pd.a0 * pd.a0 - D * pd.c0 * pd.c0 != 1)
    throw std::runtime_error("pell: internal check failed");

  pd.epsilon = mpz_get_d(pd.a0.get_mpz_t()) +
               mpz_get_d(pd.c0.get_mpz_t()) * std::sqrt(static_cast<double>(d));
  pd.ell = 2.0 * std::log(pd.epsilon);

  mpz_class g;
  g = gcd(mpz_class(pd.a0 + 1), pd.c0);
  pd.u_plus = (pd.a0 + 1) / g;
  pd.v_plus = pd.c0 / g;
  g = gcd(mpz_class(pd.a0 - 1), pd.c0);
  pd.u_minus = (pd.a0 - 1) / g;
  pd.v_minus = pd.c0 / g;
  pd.d_plus = pd.u_plus * pd.u_plus - D * pd.v_plus * pd.v_plus;
  pd.d_minus = pd.u_minus * pd.u_minus - D * pd.v_minus * pd.v_minus;
  if (pd.d_plus <= 0 || pd.d_minus >= 0)
    throw std::runtime_error("pell: boundary divisors have unexpected signs");

  return pd;
}

std::optional<std::pair<mpz_class, mpz_class>> solve_negative_pell(long d) {
  return solve_pell(d).neg_fund;
}

int psi_d(const PellData& pd, long m, long n, const mpz_class& N) {
  if (N != pd.d_plus && N != pd.d_minus) return 0;
  // parity of m + c0*n
  bool odd = (m % 2 != 0) != (mpz_odd_p(pd.c0.get_mpz_t()) && (n % 2 != 0));
  return odd ? -1 : 1;
}

}  // namespace hypfc
