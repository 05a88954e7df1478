// Exact rational q-expansions with truncation tracking, plus the reference
// forms built from them.
#pragma once

#include <gmpxx.h>

#include <vector>

namespace hypfc {

// A truncated Laurent series sum c_n q^n for lead <= n <= trunc, with every
// stored coefficient exact.  Arithmetic propagates the truncation order by
// the minimum rule, so results never claim more precision than they have.
class QSeries {
 public:
  // Coefficients for exponents lead, lead+1, ..., lead + coeffs.size() - 1.
  QSeries(long lead, std::vector<mpq_class> coeffs);

  long lead_exponent() const { return lead_; }
  long truncation_order() const { return trunc_; }

  // Coefficient of q^n; zero below the lead, out_of_range past the truncation.
  const mpq_class& coeff(long n) const;

  bool is_zero() const { return coeffs_.empty(); }

  QSeries inverse() const;       // requires nonzero leading coefficient
  QSeries pow(long n) const;     // negative n inverts first
  QSeries shift(long k) const;   // multiply by q^k

  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const mpq_class& s, const QSeries& a);
  friend QSeries operator+(const mpq_class& s, const QSeries& a);

 private:
  long lead_ = 0;
  long trunc_ = 0;
  std::vector<mpq_class> coeffs_;  // normalized: front() != 0 unless empty

  static const mpq_class kZero;
};

// Bernoulli number B_n (B_1 = -1/2 convention).
mpq_class bernoulli(int n);

// Divisor power sum sigma_k(n) for n >= 1.
mpz_class sigma(int k, long n);

// q prod (1-q^n)^24 = sum tau(n) q^n, exact through q^order.
QSeries delta_series(long order);

// 1 - (2k/B_k) sum sigma_{k-1}(n) q^n for even k >= 4.
QSeries eisenstein_series(int k, long order);

// E_4^3 / Delta = q^-1 + 744 + 196884 q + ...
QSeries j_series(long order);

// (j + 264) E_6^2 = q^-1 + 0 - 598428 q + ...
QSeries rankin_basis(long order);

}  // namespace hypfc
