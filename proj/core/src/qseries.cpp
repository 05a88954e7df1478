#include "hypfc/qseries.hpp"

#include <algorithm>
#include <stdexcept>

namespace hypfc {

const mpq_class QSeries::kZero{0};

QSeries::QSeries(long lead, std::vector<mpq_class> coeffs)
    : lead_(lead), coeffs_(std::move(coeffs)) {
  trunc_ = lead_ + static_cast<long>(coeffs_.size()) - 1;
  // normalize away leading zeros so the lead coefficient is trustworthy
  size_t drop = 0;
  while (drop < coeffs_.size() && coeffs_[drop] == 0) ++drop;
  if (drop > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + drop);
    lead_ += static_cast<long>(drop);
  }
  if (coeffs_.empty()) lead_ = trunc_ + 1;
}

const mpq_class& QSeries::coeff(long n) const {
  if (n > trunc_) throw std::out_of_range("qseries: coefficient beyond truncation");
  if (n < lead_) return kZero;
  return coeffs_[n - lead_];
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  long lead = std::min(a.lead_, b.lead_);
  long trunc = std::min(a.trunc_, b.trunc_);
  if (trunc < lead) return QSeries(trunc + 1, {});
  std::vector<mpq_class> c(trunc - lead + 1);
  for (long n = lead; n <= trunc; ++n) {
    if (n >= a.lead_ && n <= a.trunc_) c[n - lead] += a.coeffs_[n - a.lead_];
    if (n >= b.lead_ && n <= b.trunc_) c[n - lead] += b.coeffs_[n - b.lead_];
  }
  return QSeries(lead, std::move(c));
}

QSeries operator-(const QSeries& a, const QSeries& b) {
  return a + mpq_class(-1) * b;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) {
    // zero with the weakest truncation the product could claim
    long trunc = std::min(a.trunc_ + b.lead_, b.trunc_ + a.lead_);
    return QSeries(trunc + 1, {});
  }
  long lead = a.lead_ + b.lead_;
  long trunc = std::min(a.trunc_ + b.lead_, b.trunc_ + a.lead_);
  std::vector<mpq_class> c(trunc - lead + 1);
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    long na = a.lead_ + static_cast<long>(i);
    for (size_t j = 0; j < b.coeffs_.size(); ++j) {
      long n = na + b.lead_ + static_cast<long>(j);
      if (n > trunc) break;
      c[n - lead] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return QSeries(lead, std::move(c));
}

QSeries operator*(const mpq_class& s, const QSeries& a) {
  std::vector<mpq_class> c(a.coeffs_);
  for (auto& v : c) v *= s;
  QSeries out(a.lead_, std::move(c));
  out.trunc_ = a.trunc_;  // scaling by zero must not move the truncation
  return out;
}

// An exact constant is known to every order, so it adopts the series'
// truncation instead of weakening it through the minimum rule.
QSeries operator+(const mpq_class& s, const QSeries& a) {
  if (a.trunc_ < 0)
    throw std::out_of_range("qseries: constant term lies beyond truncation");
  long lead = std::min(a.lead_, 0L);
  std::vector<mpq_class> c(a.trunc_ - lead + 1);
  for (long n = a.lead_; n <= a.trunc_; ++n) c[n - lead] = a.coeffs_[n - a.lead_];
  c[-lead] += s;
  return QSeries(lead, std::move(c));
}

QSeries QSeries::shift(long k) const {
  QSeries out = *this;
  out.lead_ += k;
  out.trunc_ += k;
  return out;
}

QSeries QSeries::inverse() const {
  if (coeffs_.empty()) throw std::domain_error("qseries: inverting zero");
  // Relative precision L survives inversion: lead flips sign.
  long L = trunc_ - lead_;
  std::vector<mpq_class> g(L + 1);
  g[0] = 1 / coeffs_[0];
  // Newton doubling on the lead-stripped unit part f = c0 + c1 q + ...
  for (long known = 1; known <= L;) {
    long next = std::min(2 * known, L + 1);
    // r = (f * g) truncated to `next` terms; then g -= g*(r - 1)
    std::vector<mpq_class> r(next);
    for (long i = 0; i < next && i < static_cast<long>(coeffs_.size()); ++i)
      for (long j = 0; i + j < next && j < known; ++j) r[i + j] += coeffs_[i] * g[j];
    r[0] -= 1;
    std::vector<mpq_class> upd(next);
    for (long i = 0; i < next; ++i)
      for (long j = 0; i + j < next && j < known; ++j) upd[i + j] += r[i] * g[j];
    for (long i = 0; i < next; ++i) g[i] -= upd[i];
    known = next;
  }
  return QSeries(-lead_, std::move(g));
}

QSeries QSeries::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  // The unit starts with this series' relative precision so the minimum
  // rule reproduces trunc = n*lead + (trunc - lead) through the chain.
  QSeries acc(0, {mpq_class(1)});
  acc.trunc_ = trunc_ - lead_;
  QSeries base = *this;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return acc;
}

mpq_class bernoulli(int n) {
  if (n < 0) throw std::domain_error("bernoulli: negative index");
  static std::vector<mpq_class> cache{mpq_class(1)};
  while (static_cast<int>(cache.size()) <= n) {
    int m = static_cast<int>(cache.size());
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    mpq_class acc = 0;
    mpz_class binom = 1;  // C(m+1, 0)
    for (int j = 0; j < m; ++j) {
      acc += binom * cache[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    cache.push_back(-acc / binom);  // binom now C(m+1, m) = m+1
  }
  return cache[n];
}

mpz_class sigma(int k, long n) {
  if (n < 1) throw std::domain_error("sigma: n must be positive");
  mpz_class total = 0, dk;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    mpz_ui_pow_ui(dk.get_mpz_t(), d, k);
    total += dk;
    long e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(dk.get_mpz_t(), e, k);
      total += dk;
    }
  }
  return total;
}

QSeries delta_series(long order) {
  if (order < 1) throw std::domain_error("delta_series: order must be >= 1");
  // Euler: prod (1-q^n) = sum (-1)^k q^{k(3k-1)/2} over all integer k.
  long L = order - 1;
  std::vector<mpq_class> euler(L + 1);
  for (long k = 0;; ++k) {
    long p1 = k * (3 * k - 1) / 2, p2 = k * (3 * k + 1) / 2;
    if (p1 > L && p2 > L) break;
    mpq_class s((k % 2 == 0) ? 1 : -1);
    if (p1 <= L) euler[p1] += s;
    if (p2 <= L && k > 0) euler[p2] += s;
  }
  QSeries eta24 = QSeries(0, std::move(euler)).pow(24);
  return eta24.shift(1);
}

QSeries eisenstein_series(int k, long order) {
  if (k < 4 || k % 2 != 0)
    throw std::domain_error("eisenstein_series: weight must be even and >= 4");
  mpq_class factor = mpq_class(-2 * k) / bernoulli(k);
  std::vector<mpq_class> c(order + 1);
  c[0] = 1;
  for (long n = 1; n <= order; ++n) c[n] = factor * sigma(k - 1, n);
  return QSeries(0, std::move(c));
}

QSeries j_series(long order) {
  QSeries e4 = eisenstein_series(4, order + 1);
  QSeries delta = delta_series(order + 2);
  return e4 * e4 * e4 * delta.inverse();
}

QSeries rankin_basis(long order) {
  QSeries j = j_series(order);
  QSeries e6 = eisenstein_series(6, order + 1);
  return (mpq_class(264) + j) * (e6 * e6);
}

}  // namespace hypfc
