// Generalized Kloosterman sums on SL2(Z) for the cusp at infinity and the
// geodesic joining -sqrt(d) to sqrt(d): the classical sum, the two mixed
// cusp/geodesic sums with their unitary renormalizations, and the per-cell
// geodesic/geodesic sums.
#pragma once

#include "hypfc/adaptive.hpp"
#include "hypfc/lattice.hpp"
#include "hypfc/pell.hpp"

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <vector>

namespace hypfc {

struct KloostermanValue {
  AdaptiveComplex value;
  long term_count = 0;  // phases summed; |value| <= term_count + 1
};

// Raised when a geodesic/geodesic sum is queried at a C outside the window
// certified by the supplied representative list.
class WindowMissError : public std::out_of_range {
 public:
  explicit WindowMissError(const std::string& what) : std::out_of_range(what) {}
};

// Classical sum over residues d mod c, ad = 1 mod c, of e((ma + nd)/c).
// Real up to rounding.
KloostermanValue s_par_par(long m, long n, long c);

// Geodesic-to-cusp sum at C = -N/(2 sqrt d): half the phase sum over the
// coprime points of e^2 - d g^2 = N inside the closed ellipse
// e^2 + d g^2 <= a0 |N|, corrected by -psi_d.  Real up to rounding.
KloostermanValue s_hyp_par(const PellData& pd, long m, long n,
                           const mpz_class& N);

// s_hyp_par rescaled by exp(pi^2 m (sgn C - 1)/ell - pi i n/C).
KloostermanValue s_star_hyp_par(const PellData& pd, long m, long n,
                                const mpz_class& N);

// Cusp-to-geodesic sums at C = N/(2 sqrt d), evaluated through the
// transposed geodesic-to-cusp sums (inverting group elements swaps the
// roles and conjugates).
KloostermanValue s_par_hyp(const PellData& pd, long m, long n,
                           const mpz_class& N);
KloostermanValue s_star_par_hyp(const PellData& pd, long m, long n,
                                const mpz_class& N);

// Geodesic-to-geodesic sum over one sign cell: representatives with ad = C,
// sgn(ac) = alpha, sgn(cd) = beta contribute
//   e((m/2L) log|ab/cd| + (n/2L) log|ac/bd|),  L = 2 log eps.
// reps comes from enumerate_hd and must certify coverage of C, otherwise
// WindowMissError is raised.
KloostermanValue s_hyp_hyp(
    const PellData& pd, long m, long n, const mpq_class& C, int alpha,
    int beta, const std::map<mpq_class, std::vector<CosetRep>>& reps);

// Unitary-normalized cell with beta = alpha sgn(C): s_hyp_hyp times
//   e((m/2L)[log|C/(C-1)| + pi i (1-alpha)]
//     + (n/2L)[log|(C-1)/C| + pi i (1+beta)]).
// Equals the principal-logarithm sum of e((m/L) log(a/c) + (n/L) log(-c/d))
// over the alpha cell.
KloostermanValue s_star_hyp_hyp(
    const PellData& pd, long m, long n, const mpq_class& C, int alpha,
    const std::map<mpq_class, std::vector<CosetRep>>& reps);

}  // namespace hypfc
