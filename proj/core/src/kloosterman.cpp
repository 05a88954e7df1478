#include "hypfc/kloosterman.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace hypfc {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kEps = 2.220446049250313e-16;

// Compensated accumulator for unit phases e(x).  The caller supplies the
// phase already split into an exact fractional part plus a small float
// remainder; arg_mag is the magnitude of the float part before reduction,
// which drives the per-term error model.
struct PhaseSum {
  std::complex<double> sum{0.0, 0.0};
  std::complex<double> comp{0.0, 0.0};
  double err = 0.0;
  long terms = 0;

  void add(double x, double arg_mag, double weight = 1.0) {
    double f = x - std::floor(x);
    double t = 2.0 * kPi * f;
    std::complex<double> term =
        weight * std::complex<double>(std::cos(t), std::sin(t));
    std::complex<double> y = term - comp;
    std::complex<double> u = sum + y;
    comp = (u - sum) - y;
    sum = u;
    err += (2.0 * kPi * (std::abs(arg_mag) + 1.0) * 8.0 * kEps + 4.0 * kEps) *
           std::abs(weight);
    ++terms;
  }
};

long inv_mod(long a, long c) {
  // extended Euclid; returns a^-1 mod c in [0, c), requires gcd(a, c) = 1
  long r0 = c, r1 = ((a % c) + c) % c;
  long t0 = 0, t1 = 1;
  while (r1 != 0) {
    long q = r0 / r1;
    long r2 = r0 - q * r1;
    long t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  return ((t0 % c) + c) % c;
}

// Exact fractional part of a rational, in [0, 1).
double frac_mpq(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return mpq_class(r, q.get_den()).get_d();
}

double log_abs_mpz(const mpz_class& v) {
  long ex = 0;
  double mant = mpz_get_d_2exp(&ex, v.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(ex) * M_LN2;
}

double log_abs_mpq(const mpq_class& q) {
  return log_abs_mpz(q.get_num()) - log_abs_mpz(q.get_den());
}

// log |w / conj(w)| for w = x + y sqrt(d), from the two cancellation-safe
// single logs.
double log_conj_ratio(const QuadNum& w) {
  return w.log_abs() - w.conj().log_abs();
}

AdaptiveComplex pack(std::complex<double> v, double err) {
  return {v.real(), v.imag(), err, 53};
}

}  // namespace

KloostermanValue s_par_par(long m, long n, long c) {
  if (c < 1) throw std::domain_error("s_par_par: modulus must be positive");
  long mm = ((m % c) + c) % c;
  long nn = ((n % c) + c) % c;
  PhaseSum ps;
  for (long d = 0; d < c; ++d) {
    if (std::gcd(d, c) != 1) continue;
    long a = inv_mod(d, c);
    long ph = static_cast<long>(
        (static_cast<__int128>(mm) * a + static_cast<__int128>(nn) * d) % c);
    ps.add(static_cast<double>(ph) / static_cast<double>(c), 0.0);
  }
  return {pack(ps.sum, ps.err), ps.terms};
}

KloostermanValue s_hyp_par(const PellData& pd, long m, long n,
                           const mpz_class& N) {
  if (N == 0) throw std::domain_error("s_hyp_par: N must be nonzero");
  const std::vector<LatticePoint> pts = enumerate_rstar(pd, N);
  const mpz_class absN = abs(N);
  PhaseSum ps;
  for (const LatticePoint& p : pts) {
    QuadNum w(pd.d, mpq_class(p.e), mpq_class(p.g));
    double lam = (p.g == 0) ? 0.0 : log_conj_ratio(w);
    double xl = static_cast<double>(m) * lam / pd.ell;

    mpz_class gbar = 0;
    if (p.g != 0 &&
        mpz_invert(gbar.get_mpz_t(), p.g.get_mpz_t(), absN.get_mpz_t()) == 0) {
      throw std::runtime_error("s_hyp_par: lattice point with g not a unit");
    }
    mpq_class q(mpz_class(-n) * p.e * gbar, N);
    q.canonicalize();

    ps.add((xl - std::floor(xl)) + frac_mpq(q), xl);
  }
  std::complex<double> v = 0.5 * ps.sum;
  v -= static_cast<double>(psi_d(pd, m, n, N));
  return {pack(v, 0.5 * ps.err + 2.0 * kEps), ps.terms / 2};
}

KloostermanValue s_star_hyp_par(const PellData& pd, long m, long n,
                                const mpz_class& N) {
  KloostermanValue base = s_hyp_par(pd, m, n, N);
  const int sgn_c = (N > 0) ? -1 : 1;  // C = -N/(2 sqrt d)
  const double amp = std::exp(kPi * kPi * m * (sgn_c - 1) / pd.ell);
  // -pi i n / C = 2 pi i n sqrt(d) / N
  const double x = n * std::sqrt(static_cast<double>(pd.d)) / N.get_d();
  const double t = 2.0 * kPi * (x - std::floor(x));
  const std::complex<double> factor =
      amp * std::complex<double>(std::cos(t), std::sin(t));
  const double mag = std::abs(factor);
  std::complex<double> v = base.value.value() * factor;
  double err = base.value.abs_err * mag +
               base.value.abs() * mag * 2.0 * kPi * (std::abs(x) + 1.0) * 8.0 * kEps;
  return {pack(v, err), base.term_count};
}

KloostermanValue s_par_hyp(const PellData& pd, long m, long n,
                           const mpz_class& N) {
  KloostermanValue t = s_hyp_par(pd, n, m, N);
  t.value.im = -t.value.im;
  return t;
}

KloostermanValue s_star_par_hyp(const PellData& pd, long m, long n,
                                const mpz_class& N) {
  KloostermanValue t = s_star_hyp_par(pd, n, m, N);
  t.value.im = -t.value.im;
  return t;
}

KloostermanValue s_hyp_hyp(
    const PellData& pd, long m, long n, const mpq_class& C, int alpha,
    int beta, const std::map<mpq_class, std::vector<CosetRep>>& reps) {
  if (alpha * alpha != 1 || beta * beta != 1)
    throw std::domain_error("s_hyp_hyp: alpha, beta must be +-1");

  // Coverage certificate: the furthest C present bounds the usable window.
  const mpq_class half(1, 2);
  mpq_class want = abs(C - half);
  mpq_class have(-1);
  for (const auto& cell : reps) {
    mpq_class r = abs(cell.first - half);
    if (r > have) have = r;
  }
  if (want > have) {
    std::ostringstream os;
    os << "s_hyp_hyp: C = " << C << " outside the enumerated window";
    throw WindowMissError(os.str());
  }

  PhaseSum ps;
  auto it = reps.find(C);
  if (it != reps.end()) {
    const double two_ell = 2.0 * pd.ell;
    for (const CosetRep& r : it->second) {
      if (r.alpha != alpha || r.beta != beta) continue;
      // With d = conj(a) and c = conj(b):  ab/cd = u/conj(u) for u = ab,
      // and ac/bd = v/conj(v) for v = ac.
      double x1 = static_cast<double>(m) * log_conj_ratio(r.a * r.b) / two_ell;
      double x2 = static_cast<double>(n) * log_conj_ratio(r.a * r.c) / two_ell;
      ps.add((x1 - std::floor(x1)) + (x2 - std::floor(x2)),
             std::abs(x1) + std::abs(x2));
    }
  }
  return {pack(ps.sum, ps.err), ps.terms};
}

KloostermanValue s_star_hyp_hyp(
    const PellData& pd, long m, long n, const mpq_class& C, int alpha,
    const std::map<mpq_class, std::vector<CosetRep>>& reps) {
  if (C == 0 || C == 1)
    throw std::domain_error("s_star_hyp_hyp: C must avoid 0 and 1");
  const int sgn_c = (C > 0) ? 1 : -1;
  const int beta = alpha * sgn_c;
  KloostermanValue base = s_hyp_hyp(pd, m, n, C, alpha, beta, reps);

  const double lq = log_abs_mpq(C / (C - 1));
  const double x = (m - n) * lq / (2.0 * pd.ell);
  const double amp =
      std::exp(-kPi * kPi * (m * (1 - alpha) + n * (1 + beta)) / pd.ell);
  const double t = 2.0 * kPi * (x - std::floor(x));
  const std::complex<double> factor =
      amp * std::complex<double>(std::cos(t), std::sin(t));
  std::complex<double> v = base.value.value() * factor;
  double err = base.value.abs_err * amp +
               base.value.abs() * amp * 2.0 * kPi * (std::abs(x) + 1.0) * 8.0 * kEps;
  return {pack(v, err), base.term_count};
}

}  // namespace hypfc
