#include "doctest.h"
#include "hypfc/hypnum.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace hypfc;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

double ell_d2() { return 2 * std::log(1 + std::sqrt(2.0)); }
double ell_d3() { return 2 * std::log(2 + std::sqrt(3.0)); }

cplx e_of(cplx z) { return std::exp(cplx(0, 2 * kPi) * z); }

double rel(cplx a, cplx b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

int sgn(double r) { return r > 0 ? 1 : -1; }

// contour-integral routes built directly from the defining integrands; these
// are independent of the closed forms in the library
AdaptiveComplex quad_route_par_par(int k, long m, long n, double r) {
  double y = 1.0 / std::max(1L, n);
  auto f = [=](cplx u) {
    return e_of(-double(m) / (r * r * u) - double(n) * u) * std::pow(u, -k);
  };
  double peak = 0;
  for (double x = -2; x <= 2; x += 0.25)
    peak = std::max(peak, std::abs(f({x, y})));
  return contour_quadrature(f, y, 40.0, std::max(1e-13 * peak * 80, 1e-300),
                            k / 40.0);
}

AdaptiveComplex quad_route_hyp_par(int k, double ell, long m, long n, double r) {
  auto f = [=](cplx u) {
    cplx w = double(sgn(r)) * (u - r) / (u + r);
    cplx head = std::exp(cplx(0, 2 * kPi * m / ell) * std::log(w));
    return head * std::exp(cplx(0, -2 * kPi * n) * u) /
           (std::pow(u - r, k / 2) * std::pow(u + r, k / 2));
  };
  double peak = 0;
  for (double x = -4; x <= 4; x += 0.25)
    peak = std::max(peak, std::abs(f({x, 1.0})));
  return contour_quadrature(f, 1.0, 40.0, std::max(1e-13 * peak * 80, 1e-300),
                            k / 40.0);
}

AdaptiveComplex quad_route_par_hyp(int k, double ell, long m, long n, double r) {
  int s = sgn(r);
  auto f = [=](cplx u) {
    cplx eu = std::exp(u);
    cplx g = (double(s) * eu - 1.0) / (2 * r * (double(s) * eu + 1.0));
    return e_of(double(m) * g) *
           std::exp(u * cplx(k / 2.0, -2 * kPi * n / ell)) /
           std::pow(double(s) * eu + 1.0, k) / ell;
  };
  // keep the doubling tolerance a safe factor above the double roundoff
  // floor eps * peak * width, or tiny values would never settle
  double peak = 0;
  for (double x = -3; x <= 3; x += 0.5)
    peak = std::max(peak, std::abs(f({x, kPi / 2})));
  return contour_quadrature(f, kPi / 2, 16.0, std::max(1e-13 * peak * 32, 1e-300),
                            k / 2.0);
}

// The double-precision contour route cannot certify values below its
// roundoff floor, so comparisons lean on the quadrature's own error report.
void check_close(const AdaptiveComplex& closed, const AdaptiveComplex& quad,
                 double rel_tol) {
  double allowed = std::max(rel_tol * std::max(closed.abs(), quad.abs()),
                            10 * (quad.abs_err + closed.abs_err));
  CHECK(std::abs(closed.value() - quad.value()) <= allowed);
}

}  // namespace

TEST_SUITE("hypnum") {

TEST_CASE("gamma at complex points") {
  // reference values: mpmath 1.3.0 at 30 digits
  AdaptiveComplex g = complex_gamma({2, 3});
  CHECK(rel(g.value(), {-0.08239527266561188367, 0.0917742874352593146}) < 1e-12);
  CHECK(g.abs_err < 1e-9 * g.abs());
  CHECK(g.precision_bits >= 106);

  g = complex_gamma({6, -2});
  CHECK(rel(g.value(), {-80.04767342563401602, 25.88503555440530401}) < 1e-12);

  // reflection side
  g = complex_gamma({-1.5, 0.5});
  CHECK(rel(g.value(), {0.937916662787885051, 0.3492056681478048686}) < 1e-12);

  // real anchor points
  CHECK(rel(complex_gamma({0.5, 0}).value(), {std::sqrt(kPi), 0}) < 1e-13);
  CHECK(rel(complex_gamma({5, 0}).value(), {24, 0}) < 1e-13);

  CHECK_THROWS_AS(complex_gamma({0, 0}), std::domain_error);
  CHECK_THROWS_AS(complex_gamma({-3, 0}), std::domain_error);
}

TEST_CASE("gamma functional equation") {
  const cplx pts[] = {{0.3, 1.7}, {2.5, -4.0}, {6.0, 11.3}, {-2.3, 0.8},
                      {1.0, 21.0}, {-0.7, -5.5}, {4.5, 0.0}, {0.25, 9.0}};
  for (cplx z : pts) {
    AdaptiveComplex gz = complex_gamma(z);
    AdaptiveComplex gz1 = complex_gamma(z + 1.0);
    CHECK(rel(gz1.value(), z * gz.value()) < 1e-11);
  }
}

TEST_CASE("beta values and symmetry") {
  AdaptiveComplex b = complex_beta({6, -2}, {6, 2});
  CHECK(rel(b.value(), {1.773104328630997713e-4, 0}) < 1e-12);
  // conjugate arguments give a real positive value
  CHECK(std::abs(b.im) <= 10 * b.abs_err);
  CHECK(b.re > 0);

  AdaptiveComplex b1 = complex_beta({2.5, 1.0}, {3.0, -0.5});
  AdaptiveComplex b2 = complex_beta({3.0, -0.5}, {2.5, 1.0});
  CHECK(rel(b1.value(), b2.value()) < 1e-12);

  CHECK_THROWS_AS(complex_beta({0, 0}, {2, 0}), std::domain_error);
}

TEST_CASE("0F1 against frozen references and escalation bookkeeping") {
  AdaptiveComplex f = hyp0f1(12, -197.392);
  CHECK(rel(f.value(), {1.394268112386962253e-6, 0}) < 1e-12);
  // the alternating sum loses ~12 digits, so the ladder must have climbed
  CHECK(f.precision_bits > 53);
  CHECK(f.abs_err < 1e-10 * f.abs());

  f = hyp0f1(5, -30);
  CHECK(rel(f.value(), {-6.839820173820489715e-4, 0}) < 1e-12);

  CHECK(hyp0f1(7, 0).value() == cplx(1, 0));
  CHECK_THROWS_AS(hyp0f1(-2, 1.0), std::domain_error);
}

TEST_CASE("0F1 matches the Bessel-J identity") {
  // 0F1(; b; -x) = Gamma(b) x^(-(b-1)/2) J_{b-1}(2 sqrt x)
  for (int b = 2; b <= 14; ++b) {
    for (double x : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 35.0, 50.0}) {
      double lhs = hyp0f1(b, -x).value().real();
      double rhs = std::tgamma(b) * std::pow(x, -(b - 1) / 2.0) *
                   std::cyl_bessel_j(b - 1, 2 * std::sqrt(x));
      CHECK(std::abs(lhs - rhs) <=
            1e-12 * std::max({std::abs(lhs), std::abs(rhs), 1e-12}));
    }
  }
}

TEST_CASE("1F1 against frozen references") {
  AdaptiveComplex f = hyp1f1({6, 2.5}, 12, {0, 17});
  CHECK(rel(f.value(), {4.50780385794346564e-4, -5.978990233830550329e-4}) < 1e-11);

  f = hyp1f1({6, -3}, 12, {-8, 2});
  CHECK(rel(f.value(), {-4.587336047251420831e-2, 3.02680877885380143e-2}) < 1e-11);

  CHECK(hyp1f1({2, 1}, 5, 0).value() == cplx(1, 0));
  CHECK_THROWS_AS(hyp1f1({1, 0}, -4, 1.0), std::domain_error);
}

TEST_CASE("1F1 Kummer reflection residuals") {
  // purely imaginary arguments keep both sides on the direct series, so the
  // two evaluations are independent sums
  int samples = 0;
  for (double t : {2.0, -5.0, 9.0, 14.0, -11.0, 20.0, -26.0}) {
    for (double ms : {0.5, 1.5, -2.5}) {
      cplx a(6, ms), b(12, 0), z(0, t);
      AdaptiveComplex lhs = hyp1f1(a, b, z);
      AdaptiveComplex rhs = hyp1f1(b - a, b, -z);
      cplx mirrored = std::exp(z) * rhs.value();
      CHECK(std::abs(lhs.value() - mirrored) <=
            10 * (lhs.abs_err + rhs.abs_err) + 1e-13 * std::abs(mirrored));
      ++samples;
    }
  }
  CHECK(samples >= 20);
}

TEST_CASE("2F1 references, transforms, and branch guards") {
  // 2F1(1,1;2;z) = -log(1-z)/z
  AdaptiveComplex f = hyp2f1(1, 1, 2, 0.5);
  CHECK(rel(f.value(), {2 * std::log(2.0), 0}) < 1e-13);

  f = hyp2f1({6, -1}, {6, 2}, 12, -0.8);
  CHECK(rel(f.value(), {0.1296797187961188742, -0.0392485750731519595}) < 1e-12);

  // Pfaff zone: |z| > 1 with image z/(z-1) inside the disk
  f = hyp2f1({6, 1}, {6, -2}, 12, -5.0);
  CHECK(rel(f.value(), {5.954193960847044635e-4, 7.440063038672205083e-4}) < 1e-11);

  // slowly converging tail just below the branch point
  f = hyp2f1({6, 1}, {6, -1}, 12, 0.97);
  CHECK(rel(f.value(), {946.1275524484912853, 0}) < 1e-10);

  CHECK_THROWS_AS(hyp2f1(1, 2, 4, 1.2), std::domain_error);
  CHECK_THROWS_AS(hyp2f1(1, 2, 4, 1.0), std::domain_error);
  CHECK_THROWS_AS(hyp2f1(1, 2, -3, 0.3), std::domain_error);
  // both |z| and |z/(z-1)| outside the disk: no convergent image
  CHECK_THROWS_AS(hyp2f1(1, 2, 4, cplx(1.0001, 1e-4)), std::domain_error);
}

TEST_CASE("2F1 Euler transform residuals") {
  int samples = 0;
  const cplx zs[] = {{0.3, 0.2},  {-0.7, 0.1}, {0.1, -0.6}, {-2.5, 0.0},
                     {0.8, 0.4},  {-0.2, 0.9}, {0.55, 0.0}, {-4.0, 1.0},
                     {0.0, 1.5},  {0.9, -0.2}, {-1.2, -0.8}, {0.45, 0.45}};
  for (cplx z : zs) {
    for (double s : {1.0, -2.0}) {
      cplx a(3, s), b(5, -0.5 * s), c(9, 0.25);
      AdaptiveComplex d = hyp2f1(a, b, c, z);
      AdaptiveComplex eu = hyp2f1_euler(a, b, c, z);
      CHECK(std::abs(d.value() - eu.value()) <=
            10 * (d.abs_err + eu.abs_err) + 1e-12 * std::abs(d.value()));
      ++samples;
    }
  }
  CHECK(samples >= 20);
}

TEST_CASE("contour quadrature on a shifted gaussian") {
  auto f = [](cplx u) { return std::exp(-u * u); };
  AdaptiveComplex q = contour_quadrature(f, 0.5, 8.0, 1e-13, 10.0);
  CHECK(rel(q.value(), {std::sqrt(kPi), 0}) < 1e-12);
  CHECK_THROWS_AS(contour_quadrature(f, 0.5, -1.0, 1e-13, 1.0), std::domain_error);
}

TEST_CASE("cusp-cusp kernel: zeros, references, quadrature route") {
  // vanishing side of the spectrum is exact
  AdaptiveComplex z1 = i_par_par(HypParams(12, ell_d2(), 3, 0), 1.5);
  CHECK(z1.value() == cplx(0, 0));
  CHECK(z1.abs_err == 0.0);
  CHECK(i_par_par(HypParams(12, ell_d2(), 3, -2), 1.5).value() == cplx(0, 0));
  CHECK_THROWS_AS(i_par_par(HypParams(12, ell_d2(), 1, 1), 0.0), std::domain_error);

  // frozen contour-integral references (mpmath, 30 digits)
  CHECK(rel(i_par_par(HypParams(12, ell_d2(), 1, 2), 1.5).value(),
            {6440.822144349644414, 0}) < 1e-11);
  CHECK(rel(i_par_par(HypParams(10, ell_d2(), 3, 1), 0.8).value(),
            {-3.297984099914387174e-4, 0}) < 5e-9);
  CHECK(rel(i_par_par(HypParams(12, ell_d2(), 2, 3), -2.0).value(),
            {4089.732195215621442, 0}) < 1e-11);

  int samples = 0;
  for (int k : {10, 12}) {
    for (long m : {-1L, 1L, 2L, 3L}) {
      for (long n : {1L, 2L}) {
        for (double r : {0.6, 1.5, -2.2, 3.1}) {
          AdaptiveComplex closed = i_par_par(HypParams(k, ell_d2(), m, n), r);
          AdaptiveComplex quad = quad_route_par_par(k, m, n, r);
          check_close(closed, quad, 1e-7);
          ++samples;
        }
      }
    }
  }
  CHECK(samples >= 50);
}

TEST_CASE("geodesic-cusp kernel: zeros, references, realness, quadrature route") {
  double l2 = ell_d2(), l3 = ell_d3();
  CHECK(i_hyp_par(HypParams(12, l2, 2, 0), 0.7).value() == cplx(0, 0));
  CHECK(i_hyp_par(HypParams(12, l2, 2, -1), 0.7).value() == cplx(0, 0));

  CHECK(rel(i_hyp_par(HypParams(12, l2, 2, 1), 0.7).value(),
            {-0.06151561157998792792, 0}) < 1e-10);
  CHECK(rel(i_hyp_par(HypParams(10, l2, -1, 2), -1.3).value(),
            {90555.9416933049269, 0}) < 1e-10);
  CHECK(rel(i_hyp_par(HypParams(12, l3, 0, 1), 2.4).value(),
            {0.08079683780631994537, 0}) < 1e-10);

  int samples = 0;
  for (int k : {10, 12}) {
    for (long m : {-2L, -1L, 0L, 1L, 2L}) {
      for (long n : {1L, 2L}) {
        for (double r : {0.7, -1.3, 2.4}) {
          AdaptiveComplex closed = i_hyp_par(HypParams(k, l2, m, n), r);
          // even weight forces a real value
          CHECK(std::abs(closed.im) <= 10 * closed.abs_err);
          AdaptiveComplex quad = quad_route_hyp_par(k, l2, m, n, r);
          check_close(closed, quad, 1e-6);
          ++samples;
        }
      }
    }
  }
  CHECK(samples >= 50);
}

TEST_CASE("geodesic-cusp kernel at m = 0 matches the elementary residue sum") {
  // with no twist the contour closes over the two poles and the integral
  // collapses to a finite sum
  for (int k : {4, 8, 12}) {
    for (long n : {1L, 2L, 3L}) {
      for (double r : {0.7, 1.3, -2.1}) {
        cplx acc(0, 0);
        for (int j = 0; j <= k / 2 - 1; ++j) {
          double binom = std::round(std::tgamma(k - 1 - j) /
                                    (std::tgamma(k / 2) * std::tgamma(k / 2 - j)));
          cplx tw = std::pow(cplx(0, 2 * kPi * n), j);
          double fact = std::tgamma(j + 1);
          cplx lobe = std::exp(cplx(0, -2 * kPi * n * r)) / std::pow(2 * r, k - 1 - j) +
                      std::exp(cplx(0, 2 * kPi * n * r)) / std::pow(-2 * r, k - 1 - j);
          acc += tw / fact * binom * lobe;
        }
        cplx expect = cplx(0, 2 * kPi) * double((k / 2) % 2 ? -1 : 1) * acc;
        AdaptiveComplex got = i_hyp_par(HypParams(k, ell_d2(), 0, n), r);
        CHECK(rel(got.value(), expect) < 1e-10);
      }
    }
  }
}

TEST_CASE("cusp-geodesic kernel: references, realness, quadrature route") {
  double l2 = ell_d2(), l3 = ell_d3();
  CHECK(rel(i_par_hyp(HypParams(12, l2, 1, 2), 0.6).value(),
            {9.228761059289002978e-6, 0}) < 1e-10);
  CHECK(rel(i_par_hyp(HypParams(10, l2, -2, -1), -1.1).value(),
            {1.728315154967057584e-12, 0}) < 1e-10);
  CHECK(rel(i_par_hyp(HypParams(12, l3, 0, 3), 1.9).value(),
            {6.547320763970023742e-8, 0}) < 1e-10);
  CHECK_THROWS_AS(i_par_hyp(HypParams(12, l2, 1, 1), 0.0), std::domain_error);

  int samples = 0;
  for (int k : {10, 12}) {
    for (long m : {-2L, 0L, 1L, 2L}) {
      for (long n : {-2L, -1L, 0L, 1L, 2L}) {
        for (double r : {0.6, -1.1, 1.9}) {
          AdaptiveComplex closed = i_par_hyp(HypParams(k, l2, m, n), r);
          CHECK(std::abs(closed.im) <= 10 * closed.abs_err);
          AdaptiveComplex quad = quad_route_par_hyp(k, l2, m, n, r);
          check_close(closed, quad, 1e-6);
          ++samples;
        }
      }
    }
  }
  CHECK(samples >= 50);
}

TEST_CASE("geodesic-geodesic kernel: guards and frozen references") {
  double l2 = ell_d2(), l3 = ell_d3();
  HypParams p(12, l2, 1, 1);
  CHECK_THROWS_AS(i_hyp_hyp(p, l2, 2.0, 1, -1), std::domain_error);  // a*b != sgn r
  CHECK_THROWS_AS(i_hyp_hyp(p, l2, 0.0, 1, 1), std::domain_error);
  CHECK_THROWS_AS(i_hyp_hyp(p, l2, 1.0, 1, 1), std::domain_error);
  CHECK_THROWS_AS(i_hyp_hyp(p, l2, 2.0, 2, 1), std::domain_error);
  CHECK_THROWS_AS(i_hyp_hyp(p, -1.0, 2.0, 1, 1), std::domain_error);

  HypHypRoute route;
  AdaptiveComplex v = i_hyp_hyp(HypParams(12, l2, 1, 1), l2, 2.0, 1, 1, &route);
  CHECK(route == HypHypRoute::closed_main);
  CHECK(rel(v.value(), {3.673212973605200544e-5, 0}) < 1e-10);

  v = i_hyp_hyp(HypParams(12, l2, 2, -1), l3, -0.7, 1, -1, &route);
  CHECK(route == HypHypRoute::closed_main);
  CHECK(rel(v.value(), {4.923134569748460096e-8, 0}) < 1e-10);

  // inside (0,1) both closed forms sit on the branch cut: quadrature route
  v = i_hyp_hyp(HypParams(10, l2, 1, 2), l2, 0.3, 1, 1, &route);
  CHECK(route == HypHypRoute::quadrature);
  CHECK(rel(v.value(), {-0.1063264026789528612, 0.04231340388352448079}) < 1e-8);

  v = i_hyp_hyp(HypParams(10, l3, -1, 1), l2, 0.3, -1, -1, &route);
  CHECK(route == HypHypRoute::quadrature);
  CHECK(rel(v.value(), {-52.07419592804145701, 49.23248442693731194}) < 1e-8);

  CHECK_THROWS_AS(
      detail::i_hyp_hyp_closed_main(HypParams(10, l2, 1, 1), l2, 0.3, 1, 1),
      std::domain_error);
  CHECK_THROWS_AS(
      detail::i_hyp_hyp_closed_alt(HypParams(10, l2, 1, 1), l2, 0.3, 1, 1),
      std::domain_error);
}

TEST_CASE("geodesic-geodesic kernel: dual closed forms and quadrature agree") {
  double l2 = ell_d2(), l3 = ell_d3();
  int samples = 0;
  for (double r : {2.0, 3.7, -0.4, -1.6, 5.2, -2.8}) {
    for (auto [m, n] : std::vector<std::pair<long, long>>{
             {1, 1}, {2, -1}, {0, 2}, {1, 0}, {-1, 1}}) {
      int cells[2][2] = {{1, sgn(r)}, {-1, -sgn(r)}};
      for (auto& cell : cells) {
        HypParams p(10, l2, m, n);
        AdaptiveComplex main =
            detail::i_hyp_hyp_closed_main(p, l3, r, cell[0], cell[1]);
        AdaptiveComplex alt =
            detail::i_hyp_hyp_closed_alt(p, l3, r, cell[0], cell[1]);
        CHECK(rel(main.value(), alt.value()) < 1e-9);
        AdaptiveComplex quad =
            detail::i_hyp_hyp_quadrature(p, l3, r, cell[0], cell[1]);
        CHECK(rel(main.value(), quad.value()) < 1e-6);
        ++samples;
      }
    }
  }
  CHECK(samples >= 50);
}

TEST_CASE("geodesic-geodesic kernel: conjugation symmetry across the swap") {
  double l2 = ell_d2(), l3 = ell_d3();
  int samples = 0;
  for (double r : {2.0, -0.7, 0.3, 0.62, -1.6}) {
    for (auto [m, n] : std::vector<std::pair<long, long>>{
             {1, 1}, {2, -1}, {0, 2}, {1, 2}}) {
      for (int a0 : {1, -1}) {
        int b0 = a0 * sgn(r);
        AdaptiveComplex lhs_i = i_hyp_hyp(HypParams(10, l2, m, n), l3, r, a0, b0);
        AdaptiveComplex rhs_i = i_hyp_hyp(HypParams(10, l3, n, m), l2, r, -b0, -a0);
        double gn = complex_gamma({5.0, 2 * kPi * n / l3}).abs();
        double gm = complex_gamma({5.0, 2 * kPi * m / l2}).abs();
        cplx lhs = lhs_i.value() * l3 * std::exp(-2 * kPi * kPi * n / l3) / (gn * gn);
        cplx rhs = std::conj(rhs_i.value()) * l2 *
                   std::exp(-2 * kPi * kPi * m / l2) / (gm * gm);
        CHECK(rel(lhs, rhs) < 1e-5);
        ++samples;
      }
    }
  }
  CHECK(samples >= 20);
}

}  // TEST_SUITE
