// Panelled Gauss-Legendre integration along horizontal lines in the upper
// half plane.  This is the dual route against which every closed-form kernel
// is checked, and the production route for the cells whose hypergeometric
// argument would land on the branch cut.
#include "hypfc/hypnum.hpp"

#include <array>
#include <cmath>

namespace hypfc {
namespace {

constexpr int kOrder = 24;

struct GLRule {
  std::array<double, kOrder> x;
  std::array<double, kOrder> w;
};

// nodes and weights by Newton iteration on the Legendre polynomial
const GLRule& gl_rule() {
  static const GLRule rule = [] {
    GLRule r{};
    const int n = kOrder;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1, p1 = x;
        for (int j = 2; j <= n; ++j) {
          double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      r.x[i] = -x;
      r.x[n - 1 - i] = x;
      r.w[i] = r.w[n - 1 - i] = 2.0 / ((1 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

struct KahanC {
  std::complex<double> s{0, 0}, c{0, 0};
  void add(std::complex<double> t) {
    auto y = t - c;
    auto u = s + y;
    c = (u - s) - y;
    s = u;
  }
};

}  // namespace

AdaptiveComplex contour_quadrature(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    double y, double half_width, double tol, double decay_rate) {
  if (!(half_width > 0) || !(tol > 0) || !(decay_rate > 0))
    throw std::domain_error("contour_quadrature: bad geometry parameters");
  const GLRule& rule = gl_rule();

  auto integrate = [&](long panels) {
    KahanC acc;
    double h = 2 * half_width / panels;
    for (long p = 0; p < panels; ++p) {
      double x0 = -half_width + p * h;
      double mid = x0 + h / 2, half = h / 2;
      for (int i = 0; i < kOrder; ++i) {
        std::complex<double> u(mid + half * rule.x[i], y);
        acc.add(rule.w[i] * half * f(u));
      }
    }
    return acc.s;
  };

  double tail = (std::abs(f({half_width, y})) + std::abs(f({-half_width, y}))) /
                decay_rate;

  long panels = 8;
  std::complex<double> prev = integrate(panels);
  for (int iter = 0; iter < 15; ++iter) {
    panels *= 2;
    std::complex<double> cur = integrate(panels);
    double diff = std::abs(cur - prev);
    if (diff <= tol) {
      return {cur.real(), cur.imag(), diff + tail + 1e-18, 53};
    }
    prev = cur;
  }
  throw NoConvergence("contour_quadrature: panel cap reached",
                      {prev.real(), prev.imag(), tol, 53});
}

}  // namespace hypfc
