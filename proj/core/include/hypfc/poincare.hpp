// Fourier coefficients of holomorphic Poincare series on SL2(Z): the four
// expansion/series combinations of cusp and geodesic data, assembled from
// the Kloosterman sums and hypergeometric kernels, plus the negative-Pell
// detector built from the weight-10 geodesic/geodesic sum.
#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "hypfc/adaptive.hpp"

namespace hypfc {

// Which coefficient family is being computed.  The first tag names the
// series (cusp or geodesic seed), the second the expansion it is read in.
enum class Expansion { par_par, hyp_par, par_hyp, hyp_hyp };

struct CoeffRequest {
  Expansion expansion = Expansion::par_par;
  int k = 12;              // even weight >= 4
  std::optional<long> d;   // geodesic discriminant; required iff a geodesic
                           // side is involved, and must be a non-square >= 2
  long m = 1;              // index of the Poincare series
  long n = 1;              // index of the coefficient
  double window = 100.0;   // truncation: modulus cap for par_par, hyperbola
                           // cap |N| for the mixed sums, |C - 1/2| cap for
                           // the geodesic/geodesic sum
  double tol = 1e-9;       // advisory target for the series evaluations
};

struct CoeffTerm {
  std::string label;            // the cell, e.g. "C=5" or "C=-9/8"
  std::complex<double> value;   // its contribution to the total
};

struct CoeffResult {
  AdaptiveComplex value;
  double tail_bound = 0.0;      // power-law model of the truncated remainder
  std::vector<CoeffTerm> terms; // ascending |C - anchor|, positives first
};

// Parabolic coefficient of a parabolic series.  Exact Kronecker delta for
// n <= 0; otherwise delta plus the Bessel-weighted classical sum.
CoeffResult coeff_par_par(const CoeffRequest& req);

// Parabolic coefficient of a geodesic series.  Exact zero for n <= 0.
CoeffResult coeff_hyp_par(const CoeffRequest& req);

// Geodesic coefficient of a parabolic series; defined for all m, n.
// Real (up to the reported error) in even weight.
CoeffResult coeff_par_hyp(const CoeffRequest& req);

// Geodesic coefficient of a geodesic series at the same geodesic, including
// the identity and reversal diagonal terms (the C = 1 and C = 0 cells).
CoeffResult coeff_hyp_hyp(const CoeffRequest& req);

// Dispatch on req.expansion.
CoeffResult compute_coeff(const CoeffRequest& req);

// Negative-Pell detector: the weight-10, index-(0,0) geodesic/geodesic
// window sum without its diagonal terms.  Approaches 0 when x^2 - d y^2 = -1
// has integer solutions and -1 when it does not.
double phi_negative_pell(long d, double window = 2.0);

// Power-law tail model for the truncated remainder: scale * window^(2-k)
// for the parabolic and mixed sums, scale * window^(5/2-k/2) for the
// geodesic/geodesic sum.  The coefficient routines calibrate scale from the
// last decade of computed terms; the default models a unit-size term at the
// window edge.
double tail_estimate(Expansion expansion, int k, double window,
                     double scale = 1.0);

}  // namespace hypfc
