// Complex-parameter special functions and the four oscillatory kernel
// integrals used by the Fourier-coefficient assembly.  Closed forms run on
// the adaptive precision ladder; an independent contour quadrature over
// horizontal lines provides the dual route.
#pragma once

#include <complex>
#include <functional>

#include "hypfc/adaptive.hpp"

namespace hypfc {

// Parameter bundle shared by the kernel integrals: weight k (even, >= 4),
// hyperbolic period ell (> 0), and the two Fourier indices.
struct HypParams {
  int k;
  double ell;
  long m = 0;
  long n = 0;

  HypParams(int k_, double ell_, long m_, long n_) : k(k_), ell(ell_), m(m_), n(n_) {
    if (k_ < 4 || k_ % 2 != 0)
      throw std::domain_error("HypParams: weight must be even and >= 4");
    if (!(ell_ > 0))
      throw std::domain_error("HypParams: ell must be positive");
  }
};

// Gamma(z) for complex z, z not a nonpositive integer.  Fixed-coefficient
// rational approximation at base precision, runtime-coefficient series at
// escalated precision; the two must agree or the ladder climbs.
AdaptiveComplex complex_gamma(std::complex<double> z);

// B(u, v) = Gamma(u) Gamma(v) / Gamma(u+v), all three factors evaluated at a
// common precision level.
AdaptiveComplex complex_beta(std::complex<double> u, std::complex<double> v);

// 0F1(; b; z), entire in z.
AdaptiveComplex hyp0f1(std::complex<double> b, std::complex<double> z,
                       double rel_tol = 1e-13);

// 1F1(a; b; z); arguments with negative real part are routed through the
// reflection 1F1(a;b;z) = e^z 1F1(b-a;b;-z) before summing.
AdaptiveComplex hyp1f1(std::complex<double> a, std::complex<double> b,
                       std::complex<double> z, double rel_tol = 1e-13);

// 2F1(a, b; c; z) away from the branch cut [1, inf).  Direct series for
// |z| <= 1/2, otherwise the argument is remapped to the smallest-modulus
// image under the z/(z-1) transform; real z >= 1 throws.
AdaptiveComplex hyp2f1(std::complex<double> a, std::complex<double> b,
                       std::complex<double> c, std::complex<double> z,
                       double rel_tol = 1e-13);

// (1-z)^(c-a-b) 2F1(c-a, c-b; c; z): same function by Euler's identity,
// kept separate so tests can cross the two routes.
AdaptiveComplex hyp2f1_euler(std::complex<double> a, std::complex<double> b,
                             std::complex<double> c, std::complex<double> z,
                             double rel_tol = 1e-13);

// Integral of f over the horizontal line Im u = y, |Re u| <= half_width,
// by panelled Gauss-Legendre with panel doubling until successive estimates
// agree within tol.  decay_rate > 0 is the exponential falloff of |f| at the
// ends; it feeds the tail contribution of abs_err.
AdaptiveComplex contour_quadrature(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    double y, double half_width, double tol, double decay_rate);

// ---- kernel integrals -------------------------------------------------
//
// Every kernel takes the weight/period/indices bundle and the real location
// parameter r (nonzero; the two-cusp kernel additionally excludes r = 1).
// n <= 0 gives an exact zero for the first two.  Even weight makes the
// mixed kernels real; callers may assert on .im against .abs_err.

// Expansion-side cusp, series-side cusp.
AdaptiveComplex i_par_par(const HypParams& p, double r);

// Expansion-side geodesic, series-side cusp.
AdaptiveComplex i_hyp_par(const HypParams& p, double r);

// Expansion-side cusp, series-side geodesic.  ell is the period of the
// series-side geodesic.
AdaptiveComplex i_par_hyp(const HypParams& p, double r);

// Both sides geodesic.  ell is the expansion side, ell_prime the series
// side; alpha and beta are the two sign labels of the coset cell and must
// satisfy alpha * beta = sgn(r).  For r outside (0,1) a closed hypergeometric
// form applies; inside (0,1) its argument lands on the branch cut, so the
// defining contour integral is evaluated by quadrature instead.  The route
// taken is reported through *route when non-null.
enum class HypHypRoute { closed_main, closed_alt, quadrature };

AdaptiveComplex i_hyp_hyp(const HypParams& p, double ell_prime, double r,
                          int alpha, int beta, HypHypRoute* route = nullptr);

namespace detail {
// The two hypergeometric closed forms for i_hyp_hyp, exposed for the
// dual-route tests.  Valid for r < 0 or r > 1 (and one-sided limits of the
// sign labels); both throw if the 2F1 argument would land on [1, inf).
AdaptiveComplex i_hyp_hyp_closed_main(const HypParams& p, double ell_prime,
                                      double r, int alpha, int beta);
AdaptiveComplex i_hyp_hyp_closed_alt(const HypParams& p, double ell_prime,
                                     double r, int alpha, int beta);
// Defining contour integral at Im u = pi/2, for oracle comparisons.
AdaptiveComplex i_hyp_hyp_quadrature(const HypParams& p, double ell_prime,
                                     double r, int alpha, int beta,
                                     double tol = 1e-11);
}  // namespace detail

}  // namespace hypfc
