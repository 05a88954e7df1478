// Geometric index sets over the real quadratic lattice: coprime hyperbola
// points inside the closed ellipse, and hyperbolic double-coset
// representatives grouped by their C-value.
#pragma once

#include "hypfc/pell.hpp"
#include "hypfc/quadnum.hpp"

#include <gmpxx.h>

#include <map>
#include <vector>

namespace hypfc {

struct LatticePoint {
  mpz_class e, g;
  bool operator==(const LatticePoint& o) const { return e == o.e && g == o.g; }
  bool operator<(const LatticePoint& o) const {
    return e != o.e ? e < o.e : g < o.g;
  }
};

// All coprime (e, g) with e^2 - d g^2 = N and e^2 + d g^2 <= a0 |N|
// (boundary included), sorted by (e, g).  Symmetric under both sign flips.
std::vector<LatticePoint> enumerate_rstar(const PellData& pd, const mpz_class& N);

// An integer matrix (e f; g h) of determinant 1 together with its entries
// after conjugation into the eta frame.  The frame satisfies d = conj(a),
// c = conj(b), so C = a*d is rational.
struct CosetRep {
  mpz_class e, f, g, h;
  QuadNum a, b, c, d;
  mpq_class C;
  int alpha = 0;  // sign of a*c
  int beta = 0;   // sign of c*d
};

CosetRep conjugate_to_eta_frame(long d, const mpz_class& e, const mpz_class& f,
                                const mpz_class& g, const mpz_class& h);

// Representatives with abcd != 0 satisfying both frame inequalities
//   eps^-1 <= |ab/cd|^(1/2) < eps,   eps^-1 <= |bd/ac|^(1/2) < eps
// (checked exactly), one per {M, -M} pair, restricted to |C - 1/2| <= X and
// grouped by exact C.  Requires X >= 1/2.
std::map<mpq_class, std::vector<CosetRep>> enumerate_hd(const PellData& pd,
                                                        const mpq_class& X);

// Same contract, via a direct scan of every integer matrix inside the
// entry ellipsoid.  Quadratically slower; kept as an independent
// cross-check for small d and windows.
std::map<mpq_class, std::vector<CosetRep>> enumerate_hd_bruteforce(
    const PellData& pd, const mpq_class& X);

}  // namespace hypfc
