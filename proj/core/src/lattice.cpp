#include "hypfc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace hypfc {

namespace {

mpz_class isqrt(const mpz_class& v) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

mpq_class make_q(const mpz_class& num, const mpz_class& den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// Exact square test for 0 <= v < 2^62; the double sqrt is then within one
// ulp of the true root and two adjustment steps settle it.
bool is_square_ll(long long v, long long& root) {
  if (v < 0) return false;
  long long r = llround(std::sqrt(static_cast<double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  if (r * r != v) return false;
  root = r;
  return true;
}

bool frame_order(const CosetRep& lhs, const CosetRep& rhs) {
  if (lhs.e != rhs.e) return lhs.e < rhs.e;
  if (lhs.f != rhs.f) return lhs.f < rhs.f;
  if (lhs.g != rhs.g) return lhs.g < rhs.g;
  return lhs.h < rhs.h;
}

// For the pair {M, -M} keep the copy whose first nonzero coordinate in the
// order (e, g, f, h) is positive.
bool canonical_sign(const mpz_class& e, const mpz_class& g, const mpz_class& f,
                    const mpz_class& h) {
  for (const mpz_class* v : {&e, &g, &f, &h})
    if (*v != 0) return *v > 0;
  return false;  // all-zero never occurs for det 1
}

// Exact test for eps^-2 <= |num/den| < eps^2 with num, den nonzero.
// Both bounds reduce to sign evaluations of quadratic-field products:
//   |num| >= eps^-2 |den|  <=>  (eps^2 num)^2 >= den^2,
//   |num| <  eps^2 |den|   <=>  num^2 < (eps^2 den)^2.
bool in_window(const QuadNum& num, const QuadNum& den, const QuadNum& eps2) {
  QuadNum lo1 = eps2 * num - den, lo2 = eps2 * num + den;
  if ((lo1 * lo2).sign() < 0) return false;
  QuadNum hi1 = num - eps2 * den, hi2 = num + eps2 * den;
  return (hi1 * hi2).sign() < 0;
}

// Frame membership: abcd != 0 and both half-open inequalities.
bool in_hd(const CosetRep& rep, const QuadNum& eps2) {
  if (rep.a.is_zero() || rep.b.is_zero() || rep.c.is_zero() || rep.d.is_zero())
    return false;
  return in_window(rep.a * rep.b, rep.c * rep.d, eps2) &&
         in_window(rep.b * rep.d, rep.a * rep.c, eps2);
}

// All integer pairs (v, w) with w^2 = d v^2 - n and d v^2 + w^2 within the
// ellipse bound kappa |n| (kappa = a0^2 + d c0^2), i.e. v^2 <= (kappa|n|+n)/2d.
// Signs are expanded, so the list is closed under v -> -v and w -> -w.
std::vector<std::pair<mpz_class, mpz_class>> norm_hits(long d, const mpz_class& n,
                                                       const mpz_class& kappa) {
  std::vector<std::pair<mpz_class, mpz_class>> out;
  mpz_class bound2 = (kappa * abs(n) + n) / (2 * d);
  if (bound2 < 0) return out;
  mpz_class vmax = isqrt(bound2);

  auto emit = [&](const mpz_class& v, const mpz_class& w) {
    out.emplace_back(v, w);
    if (w != 0) out.emplace_back(v, -w);
    if (v != 0) {
      out.emplace_back(-v, w);
      if (w != 0) out.emplace_back(-v, -w);
    }
  };

  // Fast path when every d v^2 - n fits comfortably in 64 bits.
  if (vmax.fits_slong_p()) {
    long long vm = vmax.get_si();
    double top = static_cast<double>(d) * static_cast<double>(vm) * static_cast<double>(vm) +
                 std::abs(n.get_d());
    if (top < 4.5e18) {
      long long nl = n.get_si();
      for (long long v = 0; v <= vm; ++v) {
        long long w2 = d * v * v - nl, w;
        if (is_square_ll(w2, w))
          emit(mpz_class(static_cast<long>(v)), mpz_class(static_cast<long>(w)));
      }
      return out;
    }
  }

  mpz_class w2, w;
  for (mpz_class v = 0; v <= vmax; ++v) {
    w2 = d * v * v - n;
    if (w2 >= 0 && mpz_perfect_square_p(w2.get_mpz_t())) {
      mpz_sqrt(w.get_mpz_t(), w2.get_mpz_t());
      emit(v, w);
    }
  }
  return out;
}

void sort_and_check(std::map<mpq_class, std::vector<CosetRep>>& out,
                    const PellData& pd) {
  mpq_class kappa(pd.a0 * pd.a0 + pd.d * pd.c0 * pd.c0);
  for (auto& [cval, reps] : out) {
    std::sort(reps.begin(), reps.end(), frame_order);
    for (const CosetRep& r : reps) {
      // a^2 + d^2 = 2(x_a^2 + D y_a^2) <= (eps^2 + eps^-2)|C| = 2 kappa |C|.
      mpq_class tr = r.a.x() * r.a.x() + pd.d * r.a.y() * r.a.y();
      if (tr > kappa * abs(cval))
        throw std::runtime_error("lattice: trace bound violated");
    }
  }
}

}  // namespace

std::vector<LatticePoint> enumerate_rstar(const PellData& pd, const mpz_class& N) {
  if (N == 0) throw std::invalid_argument("enumerate_rstar: N must be nonzero");
  std::set<LatticePoint> pts;
  // e^2 + d g^2 <= a0|N| together with e^2 = N + d g^2 pins the g range.
  mpz_class gmax = isqrt((pd.a0 * abs(N) - N) / (2 * pd.d));
  mpz_class e2, e;
  for (mpz_class g = 0; g <= gmax; ++g) {
    e2 = N + pd.d * g * g;
    if (e2 < 0 || !mpz_perfect_square_p(e2.get_mpz_t())) continue;
    mpz_sqrt(e.get_mpz_t(), e2.get_mpz_t());
    if (gcd(e, g) != 1) continue;
    pts.insert({e, g});
    pts.insert({e, mpz_class(-g)});
    pts.insert({mpz_class(-e), g});
    pts.insert({mpz_class(-e), mpz_class(-g)});
  }
  return {pts.begin(), pts.end()};
}

CosetRep conjugate_to_eta_frame(long d, const mpz_class& e, const mpz_class& f,
                                const mpz_class& g, const mpz_class& h) {
  if (e * h - f * g != 1)
    throw std::invalid_argument("conjugate_to_eta_frame: determinant must be 1");
  CosetRep rep;
  rep.e = e;
  rep.f = f;
  rep.g = g;
  rep.h = h;
  // Conjugating (e f; g h) by the sqrt(d) scaling frame mixes the entries as
  //   a = (e+h)/2 + (dg+f)/(2d) sqrt(d),   b = (h-e)/2 + (f-dg)/(2d) sqrt(d),
  // with c and d the field conjugates of b and a.
  rep.a = QuadNum(d, make_q(e + h, 2), make_q(d * g + f, 2 * d));
  rep.b = QuadNum(d, make_q(h - e, 2), make_q(f - d * g, 2 * d));
  rep.c = rep.b.conj();
  rep.d = rep.a.conj();
  if (!(rep.a * rep.d - rep.b * rep.c == QuadNum::integer(d, 1)))
    throw std::runtime_error("conjugate_to_eta_frame: frame determinant drifted");
  rep.C = rep.a.norm();
  rep.alpha = (rep.a * rep.c).sign();
  rep.beta = (rep.c * rep.d).sign();
  return rep;
}

std::map<mpq_class, std::vector<CosetRep>> enumerate_hd(const PellData& pd,
                                                        const mpq_class& X) {
  if (X < mpq_class(1, 2)) throw std::domain_error("enumerate_hd: window X must be >= 1/2");
  const long d = pd.d;
  mpz_class kappa = pd.a0 * pd.a0 + d * pd.c0 * pd.c0;
  QuadNum eps2(d, mpq_class(kappa), mpq_class(2 * pd.a0 * pd.c0));

  // C = 1/2 + j/(4d); the window |C - 1/2| <= X is the integer range |j| <= 4dX.
  mpq_class jq = 4 * d * X;
  mpz_class jmax_z;
  mpz_fdiv_q(jmax_z.get_mpz_t(), jq.get_num().get_mpz_t(), jq.get_den().get_mpz_t());
  long jmax = jmax_z.get_si();

  std::map<mpq_class, std::vector<CosetRep>> out;
  for (long j = -jmax; j <= jmax; ++j) {
    // C = 0 and C = 1 carry abcd = 0 only; nothing to collect there.
    if (j == -2 * d || j == 2 * d) continue;
    mpz_class na(2 * d + j), nb(j - 2 * d);

    // Written in the doubled-entry variables A = 2d*a = d(e+h) + (dg+f)sqrt(d)
    // and B = 2d*b, membership forces the two norm equations
    //   d p^2 - q^2 = 2d + j   (p = e+h, q = dg+f)
    //   d r^2 - s^2 = j - 2d   (r = h-e, s = f-dg)
    // with the ellipse bound of norm_hits covering the closed window.
    auto hits_a = norm_hits(d, na, kappa);
    auto hits_b = norm_hits(d, nb, kappa);
    if (hits_a.empty() || hits_b.empty()) continue;

    mpq_class cval = make_q(na, 4 * d);
    for (const auto& [p, q] : hits_a) {
      for (const auto& [r, s] : hits_b) {
        if ((p - r) % 2 != 0) continue;
        if ((q - s) % (2 * d) != 0) continue;
        mpz_class e = (p - r) / 2, h = (p + r) / 2;
        mpz_class f = (q + s) / 2, g = (q - s) / (2 * d);
        if (!canonical_sign(e, g, f, h)) continue;
        CosetRep rep = conjugate_to_eta_frame(d, e, f, g, h);
        if (rep.C != cval)
          throw std::runtime_error("enumerate_hd: C drifted from its cell");
        if (!in_hd(rep, eps2)) continue;
        out[cval].push_back(std::move(rep));
      }
    }
  }
  sort_and_check(out, pd);
  return out;
}

std::map<mpq_class, std::vector<CosetRep>> enumerate_hd_bruteforce(
    const PellData& pd, const mpq_class& X) {
  if (X < mpq_class(1, 2)) throw std::domain_error("enumerate_hd: window X must be >= 1/2");
  const long d = pd.d;
  mpz_class kappa = pd.a0 * pd.a0 + d * pd.c0 * pd.c0;
  QuadNum eps2(d, mpq_class(kappa), mpq_class(2 * pd.a0 * pd.c0));

  // Entry ellipsoid e^2 + d g^2 + (f^2 + d h^2)/d <= (eps^2 + eps^-2)(2X + 1):
  // every matrix meeting the frame inequalities inside the C-window lands in
  // it, since a^2+d^2 and b^2+c^2 are separately bounded by multiples of |C|
  // and |C-1|.
  mpq_class Eq = 2 * kappa * (2 * X + 1);
  mpz_class E = Eq.get_num() / Eq.get_den();
  mpz_class emax = isqrt(E), gmax = isqrt(E / d), fmax = isqrt(E * d);
  mpq_class half(1, 2);

  std::map<mpq_class, std::vector<CosetRep>> out;
  mpz_class gcd_gh, e0, f0v, u, v;
  for (mpz_class g = -gmax; g <= gmax; ++g) {
    for (mpz_class h = -emax; h <= emax; ++h) {
      mpz_gcdext(gcd_gh.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(),
                 h.get_mpz_t(), g.get_mpz_t());
      if (gcd_gh != 1) continue;  // covers (0,0) too
      mpz_class e_base = u, f_base = -v;  // e_base*h - f_base*g = 1

      // General solution e = e_base + t g, f = f_base + t h.
      mpz_class t_lo, t_hi;
      if (g != 0) {
        t_lo = (-emax - e_base) / g;
        t_hi = (emax - e_base) / g;
      } else {
        t_lo = (-fmax - f_base) / h;
        t_hi = (fmax - f_base) / h;
      }
      if (t_lo > t_hi) std::swap(t_lo, t_hi);
      for (mpz_class t = t_lo - 1; t <= t_hi + 1; ++t) {
        mpz_class e = e_base + t * g, f = f_base + t * h;
        if (abs(e) > emax || abs(f) > fmax) continue;
        mpq_class ell = mpq_class(e * e + d * g * g) + make_q(f * f + d * h * h, d);
        if (ell > Eq) continue;
        if (!canonical_sign(e, g, f, h)) continue;
        CosetRep rep = conjugate_to_eta_frame(d, e, f, g, h);
        if (abs(rep.C - half) > X) continue;
        if (!in_hd(rep, eps2)) continue;
        out[rep.C].push_back(std::move(rep));
      }
    }
  }
  sort_and_check(out, pd);
  return out;
}

}  // namespace hypfc
