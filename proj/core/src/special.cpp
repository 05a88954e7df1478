// Gamma, beta and the hypergeometric series 0F1/1F1/2F1 for complex
// parameters, evaluated on the adaptive precision ladder.  The base rung is
// plain double with compensated summation; escalated rungs are MPFR floats
// of roughly doubling mantissa (domain cap 512 bits).
#include "hypfc/hypnum.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <type_traits>
#include <vector>

namespace hypfc {
namespace {

namespace bmp = boost::multiprecision;
using mp106 = bmp::number<bmp::mpfr_float_backend<32>, bmp::et_off>;
using mp212 = bmp::number<bmp::mpfr_float_backend<64>, bmp::et_off>;
using mp425 = bmp::number<bmp::mpfr_float_backend<128>, bmp::et_off>;
using mp512 = bmp::number<bmp::mpfr_float_backend<154>, bmp::et_off>;

template <class R>
struct prec_traits;
template <>
struct prec_traits<double> {
  static constexpr int bits = 53;
  static constexpr int spouge_a = 0;  // double uses the Lanczos route instead
};
template <>
struct prec_traits<mp106> {
  static constexpr int bits = 106;
  static constexpr int spouge_a = 41;
};
template <>
struct prec_traits<mp212> {
  static constexpr int bits = 212;
  static constexpr int spouge_a = 81;
};
template <>
struct prec_traits<mp425> {
  static constexpr int bits = 425;
  static constexpr int spouge_a = 161;
};
template <>
struct prec_traits<mp512> {
  static constexpr int bits = 512;
  static constexpr int spouge_a = 195;
};

template <class R>
double to_d(const R& x) {
  return static_cast<double>(x);
}

// Minimal complex arithmetic over an arbitrary real type.  std::complex is
// only specified for the builtin floating types, so the ladder carries its
// own.
template <class R>
struct CNum {
  R re{}, im{};
};

template <class R>
CNum<R> make_cnum(std::complex<double> z) {
  return {R(z.real()), R(z.imag())};
}

template <class R>
std::complex<double> downcast(const CNum<R>& z) {
  return {to_d(z.re), to_d(z.im)};
}

template <class R>
CNum<R> operator+(const CNum<R>& a, const CNum<R>& b) {
  return {a.re + b.re, a.im + b.im};
}
template <class R>
CNum<R> operator-(const CNum<R>& a, const CNum<R>& b) {
  return {a.re - b.re, a.im - b.im};
}
template <class R>
CNum<R> operator*(const CNum<R>& a, const CNum<R>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class R>
CNum<R> operator*(const R& s, const CNum<R>& a) {
  return {s * a.re, s * a.im};
}
template <class R>
CNum<R> operator/(const CNum<R>& a, const CNum<R>& b) {
  R d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
template <class R>
CNum<R> operator/(const CNum<R>& a, const R& s) {
  return {a.re / s, a.im / s};
}

template <class R>
R cn_abs(const CNum<R>& a) {
  using std::hypot;
  return hypot(a.re, a.im);
}

template <class R>
CNum<R> cn_exp(const CNum<R>& a) {
  using std::cos;
  using std::exp;
  using std::sin;
  R e = exp(a.re);
  return {e * cos(a.im), e * sin(a.im)};
}

// principal branch
template <class R>
CNum<R> cn_log(const CNum<R>& a) {
  using std::atan2;
  using std::log;
  return {log(cn_abs(a)), atan2(a.im, a.re)};
}

template <class R>
CNum<R> cn_pow(const CNum<R>& w, const CNum<R>& s) {
  return cn_exp(s * cn_log(w));
}

template <class R>
CNum<R> cn_sin(const CNum<R>& a) {
  using std::cos;
  using std::cosh;
  using std::sin;
  using std::sinh;
  return {sin(a.re) * cosh(a.im), cos(a.re) * sinh(a.im)};
}

// Kahan accumulator over CNum.
template <class R>
struct CSum {
  CNum<R> s{}, c{};
  void add(const CNum<R>& t) {
    CNum<R> y = t - c;
    CNum<R> u = s + y;
    c = (u - s) - y;
    s = u;
  }
};

bool is_nonpos_int(std::complex<double> z) {
  return std::abs(z.imag()) < 1e-9 && z.real() < 0.5 &&
         std::abs(z.real() - std::round(z.real())) < 1e-9;
}

// ---- gamma ------------------------------------------------------------

// Fixed-coefficient rational approximation (g = 7, 9 terms), the base rung.
std::complex<double> lanczos_gamma(std::complex<double> z) {
  static const double c[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,       -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  const double pi = 3.14159265358979323846;
  if (z.real() < 0.5) {
    return pi / (std::sin(pi * z) * lanczos_gamma(1.0 - z));
  }
  std::complex<double> a = c[0];
  for (int i = 1; i < 9; ++i) a += c[i] / (z + std::complex<double>(i - 1, 0));
  std::complex<double> t = z + 6.5;
  return std::sqrt(2 * pi) * std::pow(t, z - 0.5) * std::exp(-t) * a;
}

// Runtime-coefficient series (Spouge) for the escalated rungs; the
// parameter a fixes the error floor below the rung's mantissa.
template <class R>
const std::vector<R>& spouge_coeffs() {
  static const std::vector<R> coeffs = [] {
    const int a = prec_traits<R>::spouge_a;
    using std::exp;
    using std::pow;
    using std::sqrt;
    std::vector<R> c(a);
    const R pi_r = acos(R(-1));
    c[0] = sqrt(2 * pi_r);
    R fact = 1;
    for (int j = 1; j < a; ++j) {
      if (j > 1) fact *= R(j - 1);
      R aj = R(a - j);
      c[j] = (j % 2 ? R(1) : R(-1)) * pow(aj, R(j) - R(1) / 2) * exp(aj) / fact;
    }
    return c;
  }();
  return coeffs;
}

template <class R>
CNum<R> spouge_gamma(const CNum<R>& z, double* cancel) {
  const auto& c = spouge_coeffs<R>();
  const int a = prec_traits<R>::spouge_a;
  const R pi_r = acos(R(-1));
  if (z.re < R(1) / 2) {
    // reflection
    CNum<R> one{R(1), R(0)};
    double sub_cancel = 1;
    CNum<R> g = spouge_gamma<R>(one - z, &sub_cancel);
    if (cancel) *cancel = sub_cancel;
    CNum<R> pz{pi_r * z.re, pi_r * z.im};
    CNum<R> pi_c{pi_r, R(0)};
    return pi_c / (cn_sin(pz) * g);
  }
  CNum<R> w = z - CNum<R>{R(1), R(0)};
  CSum<R> sum;
  sum.add(CNum<R>{c[0], R(0)});
  double maxmag = to_d(cn_abs(sum.s));
  for (int j = 1; j < a; ++j) {
    sum.add(CNum<R>{c[j], R(0)} / (w + CNum<R>{R(j), R(0)}));
    maxmag = std::max(maxmag, to_d(cn_abs(sum.s)));
  }
  if (cancel) *cancel = maxmag / std::max(to_d(cn_abs(sum.s)), 1e-300);
  CNum<R> wa = w + CNum<R>{R(a), R(0)};
  CNum<R> exponent = (w + CNum<R>{R(1) / 2, R(0)}) * cn_log(wa) - wa;
  return cn_exp(exponent) * sum.s;
}

// ---- series cores -----------------------------------------------------

template <class R>
struct SeriesOut {
  CNum<R> value{};
  double cancel = 1;
  bool converged = false;
};

constexpr int kMaxTerms = 60000;

template <class R>
SeriesOut<R> series_0f1(std::complex<double> b_, std::complex<double> z_) {
  CNum<R> b = make_cnum<R>(b_), z = make_cnum<R>(z_);
  const double eps = std::ldexp(1.0, -(prec_traits<R>::bits - 4));
  CNum<R> term{R(1), R(0)};
  CSum<R> sum;
  sum.add(term);
  double maxmag = 1, smag = 1;
  int small = 0;
  SeriesOut<R> out;
  for (int j = 0; j < kMaxTerms; ++j) {
    term = term * z / ((b + CNum<R>{R(j), R(0)}) * CNum<R>{R(j + 1), R(0)});
    sum.add(term);
    smag = to_d(cn_abs(sum.s));
    maxmag = std::max(maxmag, smag);
    if (to_d(cn_abs(term)) <= eps * (smag + 1e-300)) {
      if (++small >= 3) {
        out.converged = true;
        break;
      }
    } else {
      small = 0;
    }
  }
  out.value = sum.s;
  out.cancel = maxmag / std::max(smag, 1e-300);
  return out;
}

template <class R>
SeriesOut<R> series_1f1(std::complex<double> a_, std::complex<double> b_,
                        std::complex<double> z_) {
  // reflect arguments with negative real part so the sum has no
  // exponentially growing alternation
  bool reflect = z_.real() < 0;
  std::complex<double> aa = reflect ? b_ - a_ : a_;
  std::complex<double> zz = reflect ? -z_ : z_;
  CNum<R> a = make_cnum<R>(aa), b = make_cnum<R>(b_), z = make_cnum<R>(zz);
  const double eps = std::ldexp(1.0, -(prec_traits<R>::bits - 4));
  CNum<R> term{R(1), R(0)};
  CSum<R> sum;
  sum.add(term);
  double maxmag = 1, smag = 1;
  int small = 0;
  SeriesOut<R> out;
  for (int j = 0; j < kMaxTerms; ++j) {
    CNum<R> jj{R(j), R(0)};
    term = term * (a + jj) * z / ((b + jj) * CNum<R>{R(j + 1), R(0)});
    sum.add(term);
    smag = to_d(cn_abs(sum.s));
    maxmag = std::max(maxmag, smag);
    if (to_d(cn_abs(term)) <= eps * (smag + 1e-300)) {
      if (++small >= 3) {
        out.converged = true;
        break;
      }
    } else {
      small = 0;
    }
  }
  out.value = sum.s;
  if (reflect) out.value = cn_exp(make_cnum<R>(z_)) * out.value;
  out.cancel = maxmag / std::max(smag, 1e-300);
  return out;
}

template <class R>
SeriesOut<R> series_2f1(std::complex<double> a_, std::complex<double> b_,
                        std::complex<double> c_, std::complex<double> z_) {
  CNum<R> a = make_cnum<R>(a_), b = make_cnum<R>(b_), c = make_cnum<R>(c_),
          z = make_cnum<R>(z_);
  const double eps = std::ldexp(1.0, -(prec_traits<R>::bits - 4));
  CNum<R> term{R(1), R(0)};
  CSum<R> sum;
  sum.add(term);
  double maxmag = 1, smag = 1;
  int small = 0;
  SeriesOut<R> out;
  for (int j = 0; j < kMaxTerms; ++j) {
    CNum<R> jj{R(j), R(0)};
    term = term * (a + jj) * (b + jj) * z / ((c + jj) * CNum<R>{R(j + 1), R(0)});
    sum.add(term);
    smag = to_d(cn_abs(sum.s));
    maxmag = std::max(maxmag, smag);
    if (to_d(cn_abs(term)) <= eps * (smag + 1e-300)) {
      if (++small >= 3) {
        out.converged = true;
        break;
      }
    } else {
      small = 0;
    }
  }
  out.value = sum.s;
  out.cancel = maxmag / std::max(smag, 1e-300);
  return out;
}

// dispatch one rung of the ladder to its real type
template <class Body>
detail::LevelEval dispatch_level(int level, Body&& body) {
  switch (level) {
    case 0:
      return body(std::type_identity<double>{});
    case 1:
      return body(std::type_identity<mp106>{});
    case 2:
      return body(std::type_identity<mp212>{});
    case 3:
      return body(std::type_identity<mp425>{});
    default:
      return body(std::type_identity<mp512>{});
  }
}

template <class R>
detail::LevelEval from_series(const SeriesOut<R>& s) {
  return {downcast(s.value), s.cancel, s.converged};
}

}  // namespace

AdaptiveComplex complex_gamma(std::complex<double> z) {
  if (is_nonpos_int(z))
    throw std::domain_error("complex_gamma: pole at nonpositive integer");
  auto fn = [&](int level) -> detail::LevelEval {
    if (level == 0) {
      // flagged so the ladder always cross-checks against the series route
      return {lanczos_gamma(z), 1e9, true};
    }
    return dispatch_level(level, [&]<class R>(std::type_identity<R>) {
      double cancel = 1;
      CNum<R> g = spouge_gamma<R>(make_cnum<R>(z), &cancel);
      return detail::LevelEval{downcast(g), cancel, true};
    });
  };
  return detail::escalate(fn, 2e-10, "complex_gamma");
}

AdaptiveComplex complex_beta(std::complex<double> u, std::complex<double> v) {
  if (is_nonpos_int(u) || is_nonpos_int(v))
    throw std::domain_error("complex_beta: pole at nonpositive integer");
  if (is_nonpos_int(u + v))
    throw std::domain_error("complex_beta: u+v at nonpositive integer");
  auto fn = [&](int level) -> detail::LevelEval {
    if (level == 0) {
      auto val =
          lanczos_gamma(u) * lanczos_gamma(v) / lanczos_gamma(u + v);
      return {val, 1e9, true};
    }
    return dispatch_level(level, [&]<class R>(std::type_identity<R>) {
      double c1 = 1, c2 = 1, c3 = 1;
      CNum<R> g1 = spouge_gamma<R>(make_cnum<R>(u), &c1);
      CNum<R> g2 = spouge_gamma<R>(make_cnum<R>(v), &c2);
      CNum<R> g3 = spouge_gamma<R>(make_cnum<R>(u + v), &c3);
      return detail::LevelEval{downcast(g1 * g2 / g3),
                               std::max({c1, c2, c3}), true};
    });
  };
  return detail::escalate(fn, 2e-10, "complex_beta");
}

AdaptiveComplex hyp0f1(std::complex<double> b, std::complex<double> z,
                       double rel_tol) {
  if (is_nonpos_int(b))
    throw std::domain_error("hyp0f1: lower parameter at nonpositive integer");
  auto fn = [&](int level) {
    return dispatch_level(level, [&]<class R>(std::type_identity<R>) {
      return from_series(series_0f1<R>(b, z));
    });
  };
  return detail::escalate(fn, rel_tol, "hyp0f1");
}

AdaptiveComplex hyp1f1(std::complex<double> a, std::complex<double> b,
                       std::complex<double> z, double rel_tol) {
  if (is_nonpos_int(b))
    throw std::domain_error("hyp1f1: lower parameter at nonpositive integer");
  auto fn = [&](int level) {
    return dispatch_level(level, [&]<class R>(std::type_identity<R>) {
      return from_series(series_1f1<R>(a, b, z));
    });
  };
  return detail::escalate(fn, rel_tol, "hyp1f1");
}

namespace {

enum class TfRoute { direct, pfaff };

// route selection shared by the plain and Euler-dressed entry points
TfRoute pick_2f1_route(std::complex<double> z) {
  if (std::abs(z) <= 0.5) return TfRoute::direct;
  if (z.imag() == 0.0 && z.real() >= 1.0)
    throw std::domain_error("hyp2f1: real argument on the branch cut [1,inf)");
  std::complex<double> w = z / (z - 1.0);
  double az = std::abs(z), aw = std::abs(w);
  if (az <= aw && az < 0.995) return TfRoute::direct;
  if (aw < 0.995) return TfRoute::pfaff;
  throw std::domain_error(
      "hyp2f1: argument too close to the branch point; no transform image "
      "converges");
}

template <class R>
SeriesOut<R> eval_2f1_routed(std::complex<double> a, std::complex<double> b,
                             std::complex<double> c, std::complex<double> z,
                             TfRoute route) {
  if (route == TfRoute::direct) return series_2f1<R>(a, b, c, z);
  // Pfaff: (1-z)^(-a) 2F1(a, c-b; c; z/(z-1))
  std::complex<double> w = z / (z - 1.0);
  SeriesOut<R> s = series_2f1<R>(a, c - b, c, w);
  CNum<R> prefix = cn_pow(make_cnum<R>(1.0 - z), make_cnum<R>(-a));
  s.value = prefix * s.value;
  return s;
}

}  // namespace

AdaptiveComplex hyp2f1(std::complex<double> a, std::complex<double> b,
                       std::complex<double> c, std::complex<double> z,
                       double rel_tol) {
  if (is_nonpos_int(c))
    throw std::domain_error("hyp2f1: lower parameter at nonpositive integer");
  TfRoute route = pick_2f1_route(z);
  auto fn = [&](int level) {
    return dispatch_level(level, [&]<class R>(std::type_identity<R>) {
      return from_series(eval_2f1_routed<R>(a, b, c, z, route));
    });
  };
  return detail::escalate(fn, rel_tol, "hyp2f1");
}

AdaptiveComplex hyp2f1_euler(std::complex<double> a, std::complex<double> b,
                             std::complex<double> c, std::complex<double> z,
                             double rel_tol) {
  if (is_nonpos_int(c))
    throw std::domain_error("hyp2f1: lower parameter at nonpositive integer");
  TfRoute route = pick_2f1_route(z);
  auto fn = [&](int level) {
    return dispatch_level(level, [&]<class R>(std::type_identity<R>) {
      SeriesOut<R> inner = eval_2f1_routed<R>(c - a, c - b, c, z, route);
      CNum<R> prefix =
          cn_pow(make_cnum<R>(1.0 - z), make_cnum<R>(c - a - b));
      inner.value = prefix * inner.value;
      return from_series(inner);
    });
  };
  return detail::escalate(fn, rel_tol, "hyp2f1_euler");
}

}  // namespace hypfc
