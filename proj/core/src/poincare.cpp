#include "hypfc/poincare.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "hypfc/hypnum.hpp"
#include "hypfc/kloosterman.hpp"
#include "hypfc/lattice.hpp"
#include "hypfc/pell.hpp"
#include "hypfc/quadnum.hpp"

namespace hypfc {
namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kEps = 2.220446049250313e-16;

void check_weight(int k) {
  if (k < 4 || k % 2 != 0)
    throw std::domain_error("coeff: weight must be even and >= 4");
}

void check_request(const CoeffRequest& req, bool needs_d) {
  check_weight(req.k);
  if (!(req.window > 0) || !std::isfinite(req.window))
    throw std::domain_error("coeff: window must be positive and finite");
  if (!(req.tol > 0))
    throw std::domain_error("coeff: tol must be positive");
  if (needs_d && !req.d)
    throw std::invalid_argument("coeff: this expansion needs the discriminant d");
  if (!needs_d && req.d)
    throw std::invalid_argument("coeff: d does not apply to the cusp/cusp expansion");
}

// Series evaluations are asked for a bit more than the advisory target so the
// assembled sum, not the individual factor, meets it.
double series_tol(const CoeffRequest& req) { return std::min(req.tol, 1e-13); }

double sign_half_k(int k) { return (k / 2) % 2 != 0 ? -1.0 : 1.0; }

// (2 pi i)^k n^{k-1} / Gamma(k) for even k, as a real number.
double parabolic_prefactor(int k, long n) {
  return sign_half_k(k) * std::pow(kTwoPi, k) * std::pow(double(n), k - 1) /
         std::tgamma(double(k));
}

AdaptiveComplex ac_mul(const AdaptiveComplex& a, const AdaptiveComplex& b) {
  std::complex<double> v = a.value() * b.value();
  double err = a.abs() * b.abs_err + b.abs() * a.abs_err +
               a.abs_err * b.abs_err + 2.0 * kEps * std::abs(v);
  return {v.real(), v.imag(), err,
          std::min(a.precision_bits, b.precision_bits)};
}

AdaptiveComplex ac_scale(const AdaptiveComplex& a, std::complex<double> s) {
  std::complex<double> v = a.value() * s;
  return {v.real(), v.imag(), a.abs_err * std::abs(s) + 2.0 * kEps * std::abs(v),
          a.precision_bits};
}

AdaptiveComplex ac_add(const AdaptiveComplex& a, const AdaptiveComplex& b) {
  std::complex<double> v = a.value() + b.value();
  return {v.real(), v.imag(),
          a.abs_err + b.abs_err + kEps * (a.abs() + b.abs()),
          std::min(a.precision_bits, b.precision_bits)};
}

bool is_exact_zero(const AdaptiveComplex& a) {
  return a.re == 0.0 && a.im == 0.0 && a.abs_err == 0.0;
}

int thread_budget() {
  static const int budget = [] {
    if (const char* s = std::getenv("HYPFC_THREADS")) {
      char* end = nullptr;
      long t = std::strtol(s, &end, 10);
      if (end != s && *end == '\0' && t >= 1 && t <= 256) return int(t);
    }
    unsigned hc = std::thread::hardware_concurrency();
    if (hc == 0) hc = 1;
    return int(std::min(hc, 8u));
  }();
  return budget;
}

// Strided worker pool.  If any index throws, the exception from the smallest
// index is rethrown after the join, so failures are deterministic too.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t nt =
      std::min<std::size_t>(std::size_t(thread_budget()), count);
  if (nt <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::mutex mu;
  std::size_t err_index = SIZE_MAX;
  std::exception_ptr err;
  for (std::size_t t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += nt) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (i < err_index) {
            err_index = i;
            err = std::current_exception();
          }
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

struct Kahan {
  double sum = 0.0, carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// One summand of a coefficient formula.  dist is the |C - anchor| the tail
// model sees; a negative dist keeps the term out of the calibration (used by
// the Kronecker delta and the diagonal additions, which are not window terms).
struct TermJob {
  std::string label;
  double dist = -1.0;
  std::function<AdaptiveComplex()> eval;
};

double tail_exponent(Expansion expansion, int k) {
  return expansion == Expansion::hyp_hyp ? 2.5 - k / 2.0 : 2.0 - double(k);
}

// Evaluates the jobs in parallel, reduces them in list order, and fits the
// truncation model to the last decade of computed terms.  Cells that turn out
// to be unpopulated (exact zero, no phase terms) are dropped from the report.
CoeffResult assemble(std::vector<TermJob> jobs, Expansion expansion, int k,
                     double window) {
  std::vector<AdaptiveComplex> vals(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) { vals[i] = jobs[i].eval(); });

  CoeffResult res;
  Kahan re, im;
  double err = 0.0, mag = 0.0;
  int bits = 53;
  const double expo = tail_exponent(expansion, k);
  double cal = 0.0;
  res.terms.reserve(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const AdaptiveComplex& v = vals[i];
    if (is_exact_zero(v)) continue;
    re.add(v.re);
    im.add(v.im);
    err += v.abs_err;
    mag += v.abs();
    bits = std::max(bits, v.precision_bits);
    res.terms.push_back({std::move(jobs[i].label), v.value()});
    if (jobs[i].dist >= window / 10.0 && v.abs() > 0.0)
      cal = std::max(cal, v.abs() * std::pow(jobs[i].dist, -expo));
  }
  res.value = {re.sum, im.sum, err + 4.0 * kEps * mag, bits};
  // extra decade of headroom on top of the fitted constant: the model tracks
  // the largest recent term, not the integrated remainder
  res.tail_bound = 10.0 * cal * std::pow(window, expo);
  return res;
}

std::string int_cell_label(long c) { return "C=" + std::to_string(c); }

// C = +-|N| / (2 sqrt(d)) rendered exactly.
std::string half_sqrt_label(bool positive, long abs_n, long d) {
  std::ostringstream os;
  os << "C=" << (positive ? "" : "-") << abs_n << "/(2*sqrt(" << d << "))";
  return os.str();
}

// Shared by coeff_hyp_hyp and phi_negative_pell: the window sum over the
// geodesic/geodesic cells, optionally with the identity and reversal cosets.
std::vector<TermJob> hyp_hyp_jobs(const PellData& pd, int k, long m, long n,
                                  double window, double ftol,
                                  bool with_diagonals) {
  auto reps = std::make_shared<const std::map<mpq_class, std::vector<CosetRep>>>(
      enumerate_hd(pd, mpq_class(window)));

  const double ell = pd.ell;
  const std::complex<double> t(0.0, kTwoPi * double(n) / ell);
  const std::complex<double> half_k(k / 2.0, 0.0);
  AdaptiveComplex pref_b =
      ac_scale(complex_beta(half_k - t, half_k + t),
               std::exp(2.0 * kPi * kPi * double(n) / ell) / ell);

  struct Entry {
    mpq_class dist;
    mpq_class c_key;
    TermJob job;
  };
  std::vector<Entry> entries;
  const mpq_class half(1, 2);

  for (const auto& cell : *reps) {
    const mpq_class& C = cell.first;
    Entry e{abs(C - half), C, {}};
    e.job.label = "C=" + C.get_str();
    e.job.dist = e.dist.get_d();
    const bool inside = C > 0 && C < 1;
    const double cd = C.get_d();
    const PellData pd_loc = pd;
    e.job.eval = [=]() -> AdaptiveComplex {
      const auto& reps_map = *reps;
      if (!inside) {
        KloostermanValue sp = s_star_hyp_hyp(pd_loc, m, n, C, +1, reps_map);
        KloostermanValue sm = s_star_hyp_hyp(pd_loc, m, n, C, -1, reps_map);
        AdaptiveComplex s_sum = ac_add(sp.value, sm.value);
        try {
          AdaptiveComplex f =
              hyp2f1(std::complex<double>(k / 2.0, -kTwoPi * double(m) / ell),
                     std::complex<double>(k / 2.0, kTwoPi * double(n) / ell),
                     double(k), 1.0 / cd, ftol);
          return ac_scale(ac_mul(ac_mul(pref_b, f), s_sum),
                          1.0 / std::pow(cd, k / 2));
        } catch (const std::domain_error&) {
          // closed form refused the argument (too close to the branch
          // point); the defining contour integral still applies
        }
      }
      HypParams hp(k, ell, m, n);
      AdaptiveComplex acc = exact_zero();
      const double den = std::pow(std::abs(cd * (cd - 1.0)), k / 4.0);
      for (int alpha : {+1, -1}) {
        const int beta = alpha * (cd > 0 ? 1 : -1);
        KloostermanValue s = s_hyp_hyp(pd_loc, m, n, C, alpha, beta, reps_map);
        if (s.term_count == 0 && s.value.re == 0.0 && s.value.im == 0.0)
          continue;
        AdaptiveComplex i =
            detail::i_hyp_hyp_quadrature(hp, ell, cd, alpha, beta, 1e-11);
        acc = ac_add(acc, ac_scale(ac_mul(i, s.value), 1.0 / den));
      }
      if (is_exact_zero(acc)) acc.abs_err = kEps;  // populated cell, keep it
      return acc;
    };
    entries.push_back(std::move(e));
  }

  if (with_diagonals) {
    // The two cosets the window sum cannot see: a = d = 1 (C = 1) pairs the
    // geodesic with itself, and the orientation reversal (C = 0) appears
    // exactly when x^2 - d y^2 = -1 is solvable.
    if (n == m) {
      Entry e{half, mpq_class(1), {}};
      e.job.label = "C=1";
      e.job.eval = [] { return AdaptiveComplex{1.0, 0.0, 0.0, 53}; };
      entries.push_back(std::move(e));
    }
    if (n == -m && pd.neg_fund) {
      Entry e{half, mpq_class(0), {}};
      e.job.label = "C=0";
      const long d = pd.d;
      const long nn = n;
      const int k_loc = k;
      const PellData pd_loc = pd;
      e.job.eval = [=]() -> AdaptiveComplex {
        const mpz_class& x0 = pd_loc.neg_fund->first;
        const mpz_class& y0 = pd_loc.neg_fund->second;
        CosetRep rep = conjugate_to_eta_frame(d, x0, -y0 * d, y0, -x0);
        if (!rep.a.is_zero())
          throw std::runtime_error(
              "coeff_hyp_hyp: reversal coset is not antidiagonal in the "
              "geodesic frame");
        // rep.b is the t of the reversal term; t^2 is a positive unit
        double log_t2 = (rep.b * rep.b).log_abs();
        double theta = -kTwoPi * double(nn) * log_t2 / pd_loc.ell;
        double amp =
            sign_half_k(k_loc) * std::exp(2.0 * kPi * kPi * double(nn) / pd_loc.ell);
        std::complex<double> v =
            amp * std::complex<double>(std::cos(theta), std::sin(theta));
        double err = std::abs(amp) * (std::abs(theta) + 4.0) * 8.0 * kEps;
        return {v.real(), v.imag(), err, 53};
      };
      entries.push_back(std::move(e));
    }
  }

  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    return a.c_key > b.c_key;
  });
  std::vector<TermJob> jobs;
  jobs.reserve(entries.size());
  for (Entry& e : entries) jobs.push_back(std::move(e.job));
  return jobs;
}

}  // namespace

CoeffResult coeff_par_par(const CoeffRequest& req) {
  check_request(req, /*needs_d=*/false);
  CoeffResult res;
  const bool diag = req.m == req.n;
  if (req.n <= 0) {
    res.value = {diag ? 1.0 : 0.0, 0.0, 0.0, 53};
    if (diag) res.terms.push_back({"C=0", {1.0, 0.0}});
    return res;
  }
  const int k = req.k;
  const long m = req.m, n = req.n;
  const double ftol = series_tol(req);
  const double pref = parabolic_prefactor(k, n);
  const long c_max = static_cast<long>(std::floor(req.window));

  std::vector<TermJob> jobs;
  if (diag)
    jobs.push_back(
        {"C=0", -1.0, [] { return AdaptiveComplex{1.0, 0.0, 0.0, 53}; }});
  for (long c = 1; c <= c_max; ++c) {
    jobs.push_back({int_cell_label(c), double(c), [=]() -> AdaptiveComplex {
                      KloostermanValue s = s_par_par(m, n, c);
                      AdaptiveComplex f = hyp0f1(
                          double(k),
                          -4.0 * kPi * kPi * double(m) * double(n) /
                              (double(c) * double(c)),
                          ftol);
                      return ac_scale(ac_mul(f, s.value),
                                      pref / std::pow(double(c), k));
                    }});
  }
  return assemble(std::move(jobs), Expansion::par_par, k, req.window);
}

CoeffResult coeff_hyp_par(const CoeffRequest& req) {
  check_request(req, /*needs_d=*/true);
  const PellData pd = solve_pell(*req.d);
  if (req.n <= 0) {
    CoeffResult res;
    res.value = {0.0, 0.0, 0.0, 53};
    return res;
  }
  const int k = req.k;
  const long m = req.m, n = req.n;
  const double ftol = series_tol(req);
  const double pref = parabolic_prefactor(k, n);
  const double sqd = std::sqrt(double(pd.d));
  const double ell = pd.ell;
  const long n_max = static_cast<long>(std::floor(req.window));

  std::vector<TermJob> jobs;
  for (long a = 1; a <= n_max; ++a) {
    // C = -N/(2 sqrt d); at equal |N| the positive C, i.e. negative N, leads
    for (long N : {-a, a}) {
      TermJob job;
      job.label = half_sqrt_label(N < 0, a, pd.d);
      job.dist = double(a);  // window and tail model run in units of N
      job.eval = [=]() -> AdaptiveComplex {
        KloostermanValue s = s_hyp_par(pd, m, n, N);
        if (s.term_count == 0 && s.value.re == 0.0 && s.value.im == 0.0)
          return exact_zero();
        AdaptiveComplex f =
            hyp1f1(std::complex<double>(k / 2.0, kTwoPi * double(m) / ell),
                   double(k),
                   std::complex<double>(0.0, -4.0 * kPi * double(n) * sqd / N),
                   ftol);
        const double damp =
            std::exp(-kPi * kPi * double(m) * (N > 0 ? 2.0 : 0.0) / ell);
        const double x = kTwoPi * double(n) * sqd / double(N);
        const std::complex<double> phase(std::cos(x), std::sin(x));
        const double cpow = std::pow(-2.0 * sqd / double(N), k / 2);
        return ac_scale(ac_mul(f, s.value), pref * cpow * damp * phase);
      };
      jobs.push_back(std::move(job));
    }
  }
  return assemble(std::move(jobs), Expansion::hyp_par, k, req.window);
}

CoeffResult coeff_par_hyp(const CoeffRequest& req) {
  check_request(req, /*needs_d=*/true);
  const PellData pd = solve_pell(*req.d);
  const int k = req.k;
  const long m = req.m, n = req.n;
  const double ftol = series_tol(req);
  const double sqd = std::sqrt(double(pd.d));
  const double ell = pd.ell;
  const long n_max = static_cast<long>(std::floor(req.window));

  const std::complex<double> t(0.0, kTwoPi * double(n) / ell);
  const std::complex<double> half_k(k / 2.0, 0.0);
  const AdaptiveComplex pref_b =
      ac_scale(complex_beta(half_k + t, half_k - t),
               std::exp(2.0 * kPi * kPi * double(n) / ell) / ell);

  std::vector<TermJob> jobs;
  for (long a = 1; a <= n_max; ++a) {
    // C = N/(2 sqrt d); positive N leads at equal |N|
    for (long N : {a, -a}) {
      TermJob job;
      job.label = half_sqrt_label(N > 0, a, pd.d);
      job.dist = double(a);  // window and tail model run in units of N
      job.eval = [=]() -> AdaptiveComplex {
        KloostermanValue s = s_star_par_hyp(pd, m, n, N);
        if (s.term_count == 0 && s.value.re == 0.0 && s.value.im == 0.0)
          return exact_zero();
        const double cd = double(N) / (2.0 * sqd);
        AdaptiveComplex f =
            hyp1f1(half_k - t, double(k),
                   std::complex<double>(0.0, kTwoPi * double(m) / cd), ftol);
        return ac_scale(ac_mul(ac_mul(pref_b, f), s.value),
                        1.0 / std::pow(cd, k / 2));
      };
      jobs.push_back(std::move(job));
    }
  }
  return assemble(std::move(jobs), Expansion::par_hyp, k, req.window);
}

CoeffResult coeff_hyp_hyp(const CoeffRequest& req) {
  check_request(req, /*needs_d=*/true);
  if (req.window < 0.5)
    throw std::domain_error("coeff_hyp_hyp: window must be at least 1/2");
  const PellData pd = solve_pell(*req.d);
  std::vector<TermJob> jobs =
      hyp_hyp_jobs(pd, req.k, req.m, req.n, req.window, series_tol(req),
                   /*with_diagonals=*/true);
  return assemble(std::move(jobs), Expansion::hyp_hyp, req.k, req.window);
}

CoeffResult compute_coeff(const CoeffRequest& req) {
  switch (req.expansion) {
    case Expansion::par_par:
      return coeff_par_par(req);
    case Expansion::hyp_par:
      return coeff_hyp_par(req);
    case Expansion::par_hyp:
      return coeff_par_hyp(req);
    case Expansion::hyp_hyp:
      return coeff_hyp_hyp(req);
  }
  throw std::invalid_argument("compute_coeff: unknown expansion");
}

double phi_negative_pell(long d, double window) {
  if (!(window >= 2.0))
    throw std::domain_error("phi_negative_pell: window must be at least 2");
  const PellData pd = solve_pell(d);
  // weight 10, both indices 0: the prefactor collapses to 1/(1260 log eps),
  // so the bare window sum is already the classifier
  std::vector<TermJob> jobs = hyp_hyp_jobs(pd, 10, 0, 0, window, 1e-13,
                                           /*with_diagonals=*/false);
  CoeffResult res = assemble(std::move(jobs), Expansion::hyp_hyp, 10, window);
  return res.value.re;
}

double tail_estimate(Expansion expansion, int k, double window, double scale) {
  check_weight(k);
  if (!(window >= 1.0))
    throw std::domain_error("tail_estimate: window must be >= 1");
  return scale * std::pow(window, tail_exponent(expansion, k));
}

}  // namespace hypfc
