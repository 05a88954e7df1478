// The four oscillatory kernel integrals over horizontal contours, in their
// hypergeometric closed forms.  Each mixed or two-geodesic kernel keeps a
// quadrature fallback over the defining contour; for the two-geodesic case
// with location parameter inside (0,1) the closed form's argument sits on
// the 2F1 branch cut, so the quadrature route is the production path there.
#include "hypfc/hypnum.hpp"

#include <cmath>

namespace hypfc {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2 * kPi;

std::complex<double> e_of(std::complex<double> z) {
  return std::exp(std::complex<double>(0, kTwoPi) * z);
}

double sign_pow_half_k(double s, int k) {
  // s^(k/2) for s = +-1
  return (s < 0 && (k / 2) % 2 != 0) ? -1.0 : 1.0;
}

int sgn(double r) { return r > 0 ? 1 : -1; }

void check_r(double r, const char* who) {
  if (r == 0.0) throw std::domain_error(std::string(who) + ": r must be nonzero");
}

double rel_err_sum(const AdaptiveComplex& a, const AdaptiveComplex& b) {
  return a.abs_err / std::max(a.abs(), 1e-300) +
         b.abs_err / std::max(b.abs(), 1e-300) + 1e-14;
}

}  // namespace

AdaptiveComplex i_par_par(const HypParams& p, double r) {
  check_r(r, "i_par_par");
  if (p.n <= 0) return exact_zero();
  double z = -4 * kPi * kPi * double(p.m) * double(p.n) / (r * r);
  AdaptiveComplex f = hyp0f1(p.k, z);
  double pref = std::pow(kTwoPi, p.k) * std::pow(double(p.n), p.k - 1) /
                std::tgamma(p.k) * sign_pow_half_k(-1, p.k);
  std::complex<double> v = pref * f.value();
  return {v.real(), v.imag(),
          std::abs(pref) * f.abs_err + std::abs(v) * 1e-14, f.precision_bits};
}

AdaptiveComplex i_hyp_par(const HypParams& p, double r) {
  check_r(r, "i_hyp_par");
  if (p.n <= 0) return exact_zero();
  std::complex<double> a(p.k / 2.0, kTwoPi * p.m / p.ell);
  std::complex<double> z(0, 4 * kPi * p.n * r);
  AdaptiveComplex f = hyp1f1(a, p.k, z);
  double damp = std::exp(kPi * kPi * p.m * (sgn(r) - 1) / p.ell);
  std::complex<double> phase = std::exp(std::complex<double>(0, -kTwoPi * p.n * r));
  double pref = std::pow(kTwoPi, p.k) * std::pow(double(p.n), p.k - 1) /
                std::tgamma(p.k) * sign_pow_half_k(-1, p.k);
  std::complex<double> v = pref * damp * phase * f.value();
  return {v.real(), v.imag(),
          std::abs(pref * damp) * f.abs_err + std::abs(v) * 1e-14,
          f.precision_bits};
}

AdaptiveComplex i_par_hyp(const HypParams& p, double r) {
  check_r(r, "i_par_hyp");
  std::complex<double> t(0, kTwoPi * p.n / p.ell);  // 2*pi*i*n/ell
  std::complex<double> half_k(p.k / 2.0, 0);
  AdaptiveComplex b = complex_beta(half_k + t, half_k - t);
  std::complex<double> z(0, kTwoPi * p.m / r);
  AdaptiveComplex f = hyp1f1(half_k - t, p.k, z);
  // (pi*i/2)(k/2 - 2*pi*i*n/ell)(1 - sgn r) - pi*i*m/r
  std::complex<double> expo =
      std::complex<double>(0, kPi / 2) * (half_k - t) * double(1 - sgn(r)) -
      std::complex<double>(0, kPi * p.m / r);
  std::complex<double> v =
      std::exp(expo) * b.value() * f.value() / p.ell;
  return {v.real(), v.imag(), std::abs(v) * rel_err_sum(b, f),
          std::min(b.precision_bits, f.precision_bits)};
}

namespace detail {

namespace {
void check_hh(const HypParams& p, double ell_prime, double r, int alpha,
              int beta) {
  (void)p;
  if (!(ell_prime > 0))
    throw std::domain_error("i_hyp_hyp: ell_prime must be positive");
  if (r == 0.0 || r == 1.0)
    throw std::domain_error("i_hyp_hyp: r must avoid 0 and 1");
  if ((alpha != 1 && alpha != -1) || (beta != 1 && beta != -1))
    throw std::domain_error("i_hyp_hyp: sign labels must be +-1");
  if (alpha * beta != sgn(r))
    throw std::domain_error("i_hyp_hyp: sign labels must satisfy a*b = sgn r");
}
}  // namespace

AdaptiveComplex i_hyp_hyp_closed_main(const HypParams& p, double ell_prime,
                                      double r, int alpha, int beta) {
  check_hh(p, ell_prime, r, alpha, beta);
  if (r > 0 && r < 1)
    throw std::domain_error(
        "i_hyp_hyp_closed_main: argument 1/r lies on the branch cut");
  double lq = std::log(std::abs(r / (r - 1)));
  std::complex<double> a(p.k / 2.0, -kTwoPi * p.m / p.ell);
  std::complex<double> b(p.k / 2.0, kTwoPi * p.n / ell_prime);
  AdaptiveComplex bt = complex_beta(std::conj(b), b);
  AdaptiveComplex f = hyp2f1(a, b, p.k, 1.0 / r);
  std::complex<double> bracket =
      (p.m / (2 * p.ell)) * std::complex<double>(lq, kPi * (1 - alpha)) +
      (p.n / (2 * ell_prime)) * std::complex<double>(-lq, kPi * (1 + beta));
  double pref = sign_pow_half_k(r, p.k) / ell_prime *
                std::pow(std::abs((r - 1) / r), p.k / 4.0) *
                std::exp(2 * kPi * kPi * p.n / ell_prime);
  std::complex<double> v = pref * e_of(bracket) * bt.value() * f.value();
  return {v.real(), v.imag(), std::abs(v) * rel_err_sum(bt, f),
          std::min(bt.precision_bits, f.precision_bits)};
}

AdaptiveComplex i_hyp_hyp_closed_alt(const HypParams& p, double ell_prime,
                                     double r, int alpha, int beta) {
  check_hh(p, ell_prime, r, alpha, beta);
  if (r > 0 && r < 1)
    throw std::domain_error(
        "i_hyp_hyp_closed_alt: argument 1/(1-r) lies on the branch cut");
  double lq = std::log(std::abs(r / (r - 1)));
  std::complex<double> a(p.k / 2.0, kTwoPi * p.m / p.ell);
  std::complex<double> b(p.k / 2.0, kTwoPi * p.n / ell_prime);
  AdaptiveComplex bt = complex_beta(std::conj(b), b);
  AdaptiveComplex f = hyp2f1(a, b, p.k, 1.0 / (1.0 - r));
  int sr1 = sgn(r - 1);
  std::complex<double> bracket =
      (p.m / (2 * p.ell)) * std::complex<double>(lq, kPi * (1 - alpha)) +
      (p.n / (2 * ell_prime)) * std::complex<double>(lq, kPi * (1 + alpha * sr1));
  double pref = sign_pow_half_k(r - 1, p.k) / ell_prime *
                std::pow(std::abs(r / (r - 1)), p.k / 4.0) *
                std::exp(2 * kPi * kPi * p.n / ell_prime);
  std::complex<double> v = pref * e_of(bracket) * bt.value() * f.value();
  return {v.real(), v.imag(), std::abs(v) * rel_err_sum(bt, f),
          std::min(bt.precision_bits, f.precision_bits)};
}

AdaptiveComplex i_hyp_hyp_quadrature(const HypParams& p, double ell_prime,
                                     double r, int alpha, int beta,
                                     double tol) {
  check_hh(p, ell_prime, r, alpha, beta);
  const double s1 = sgn(r - 1) * std::sqrt(std::abs((r - 1) / r));
  const double s2 = std::sqrt(std::abs(r / (r - 1)));
  const std::complex<double> mu(0, kTwoPi * p.m / p.ell);
  const std::complex<double> sk(p.k / 2.0, -kTwoPi * p.n / ell_prime);
  const int half_k = p.k / 2;
  auto f = [&](std::complex<double> u) {
    std::complex<double> eu = std::exp(u);
    std::complex<double> num = double(alpha) * eu + s1;
    std::complex<double> den = eu + double(beta) * s2;
    std::complex<double> w = s2 * num / den;
    std::complex<double> head = std::exp(mu * std::log(w));
    std::complex<double> dpow = std::pow(num, half_k) * std::pow(den, half_k);
    return head * std::exp(u * sk) / dpow / ell_prime;
  };
  double shift = std::abs(std::log(s2));
  double budget = std::log(10.0 / tol) + kPi * kPi * std::abs(p.n) / ell_prime +
                  kTwoPi * kPi * std::abs(p.m) / p.ell + 3.0;
  double width = shift + 2.0 + 2.0 * budget / p.k;
  // scale probe so the doubling tolerance tracks the integrand's magnitude
  double scale = 0;
  for (double x : {-shift, -1.0, 0.0, 1.0, shift})
    scale = std::max(scale, std::abs(f({x, kPi / 2})));
  double abs_tol = tol * std::max(scale, 1e-300) * (2 * width + 1);
  return contour_quadrature(f, kPi / 2, width, abs_tol, p.k / 2.0);
}

}  // namespace detail

AdaptiveComplex i_hyp_hyp(const HypParams& p, double ell_prime, double r,
                          int alpha, int beta, HypHypRoute* route) {
  if (r > 0 && r < 1) {
    // both closed forms land on the 2F1 branch cut here
    if (route) *route = HypHypRoute::quadrature;
    return detail::i_hyp_hyp_quadrature(p, ell_prime, r, alpha, beta, 1e-11);
  }
  if (route) *route = HypHypRoute::closed_main;
  return detail::i_hyp_hyp_closed_main(p, ell_prime, r, alpha, beta);
}

}  // namespace hypfc
