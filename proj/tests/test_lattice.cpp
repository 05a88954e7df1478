#include "doctest.h"
#include "hypfc/lattice.hpp"
#include "hypfc/pell.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <vector>

using namespace hypfc;

namespace {

std::vector<LatticePoint> rstar_naive(const PellData& pd, long N) {
  std::vector<LatticePoint> out;
  mpz_class bound = pd.a0 * std::abs(N);
  long emax = static_cast<long>(std::sqrt(bound.get_d())) + 2;
  long gmax = static_cast<long>(std::sqrt(bound.get_d() / pd.d)) + 2;
  for (long e = -emax; e <= emax; ++e)
    for (long g = -gmax; g <= gmax; ++g) {
      if (mpz_class(e) * e - pd.d * mpz_class(g) * g != N) continue;
      if (mpz_class(e) * e + pd.d * mpz_class(g) * g > bound) continue;
      if (gcd(mpz_class(e), mpz_class(g)) != 1) continue;
      out.push_back({e, g});
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool ratio_is_unit(const PellData& pd, const LatticePoint& pt) {
  // |e + g sqrt(d)| equals eps^{+-1} |e - g sqrt(d)| exactly.
  QuadNum u(pd.d, mpq_class(pt.e), mpq_class(pt.g));
  QuadNum ub = u.conj();
  QuadNum eps(pd.d, mpq_class(pd.a0), mpq_class(pd.c0));
  return ((u - eps * ub) * (u + eps * ub)).sign() == 0 ||
         ((eps * u - ub) * (eps * u + ub)).sign() == 0;
}

mpz_class matmul_entry(const CosetRep& m, int idx) {
  switch (idx) {
    case 0: return m.e;
    case 1: return m.f;
    case 2: return m.g;
    default: return m.h;
  }
}

struct Mat {
  mpz_class e, f, g, h;
};

Mat mul(const Mat& x, const Mat& y) {
  return {x.e * y.e + x.f * y.g, x.e * y.f + x.f * y.h,
          x.g * y.e + x.h * y.g, x.g * y.f + x.h * y.h};
}

bool same_up_to_sign(const Mat& x, const Mat& y) {
  return (x.e == y.e && x.f == y.f && x.g == y.g && x.h == y.h) ||
         (x.e == -y.e && x.f == -y.f && x.g == -y.g && x.h == -y.h);
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("the eight points on the N=44 hyperbola for d=5") {
  PellData pd = solve_pell(5);
  auto pts = enumerate_rstar(pd, 44);
  std::set<std::pair<long, long>> got;
  for (const auto& p : pts) got.emplace(p.e.get_si(), p.g.get_si());
  std::set<std::pair<long, long>> want = {{7, 1},   {7, -1},  {-7, 1},  {-7, -1},
                                          {13, 5},  {13, -5}, {-13, 5}, {-13, -5}};
  CHECK(got == want);
}

TEST_CASE("unit and empty fibers for d=2") {
  PellData pd = solve_pell(2);
  auto one = enumerate_rstar(pd, 1);
  REQUIRE(one.size() == 2);
  CHECK(one[0] == LatticePoint{-1, 0});
  CHECK(one[1] == LatticePoint{1, 0});
  CHECK(enumerate_rstar(pd, 3).empty());
  CHECK_THROWS_AS(enumerate_rstar(pd, 0), std::invalid_argument);
}

TEST_CASE("matches a naive double loop for d <= 10, |N| <= 60") {
  for (long d : {2, 3, 5, 6, 7, 8, 10}) {
    PellData pd = solve_pell(d);
    for (long N = -60; N <= 60; ++N) {
      if (N == 0) continue;
      CAPTURE(d);
      CAPTURE(N);
      auto fast = enumerate_rstar(pd, N);
      auto slow = rstar_naive(pd, N);
      REQUIRE(fast.size() == slow.size());
      CHECK(std::equal(fast.begin(), fast.end(), slow.begin()));
      // Closure under both sign flips and the defining constraints.
      std::set<LatticePoint> lookup(fast.begin(), fast.end());
      for (const auto& p : fast) {
        CHECK(p.e * p.e - d * p.g * p.g == N);
        CHECK(p.e * p.e + d * p.g * p.g <= pd.a0 * std::abs(N));
        CHECK(lookup.count({-p.e, p.g}) == 1);
        CHECK(lookup.count({p.e, -p.g}) == 1);
      }
    }
  }
}

TEST_CASE("ellipse boundary is attained only at the unit cofactors") {
  for (long d : {2, 3, 5}) {
    PellData pd = solve_pell(d);
    for (long N = -60; N <= 60; ++N) {
      if (N == 0) continue;
      for (const auto& p : enumerate_rstar(pd, N)) {
        CAPTURE(d);
        CAPTURE(N);
        bool boundary = (p.e * p.e + d * p.g * p.g == pd.a0 * std::abs(N));
        CHECK(boundary == ratio_is_unit(pd, p));
        if (!boundary) continue;
        REQUIRE((N == pd.d_plus || N == pd.d_minus));
        bool is_plus = (abs(p.e) == pd.u_plus && abs(p.g) == pd.v_plus);
        bool is_minus = (abs(p.e) == pd.u_minus && abs(p.g) == pd.v_minus);
        CHECK((N == pd.d_plus ? is_plus : is_minus));
      }
    }
    // and the boundary fibers do contain their cofactor points
    auto plus_fiber = enumerate_rstar(pd, pd.d_plus);
    CHECK(std::count_if(plus_fiber.begin(), plus_fiber.end(), [&](const LatticePoint& p) {
            return abs(p.e) == pd.u_plus && abs(p.g) == pd.v_plus;
          }) == 4);
  }
}

TEST_CASE("frame map on pinned matrices over d=2") {
  CosetRep id = conjugate_to_eta_frame(2, 1, 0, 0, 1);
  CHECK(id.a == QuadNum::integer(2, 1));
  CHECK(id.b.is_zero());
  CHECK(id.c.is_zero());
  CHECK(id.d == QuadNum::integer(2, 1));
  CHECK(id.C == 1);

  // The unit-stabilizer generator diagonalizes to (eps, 0; 0, 1/eps).
  CosetRep gen = conjugate_to_eta_frame(2, 3, 4, 2, 3);
  CHECK(gen.a == QuadNum(2, 3, 2));
  CHECK(gen.b.is_zero());
  CHECK(gen.c.is_zero());
  CHECK(gen.d == QuadNum(2, 3, -2));

  // A matrix squaring to -1 lands on the antidiagonal.
  CosetRep rev = conjugate_to_eta_frame(2, 1, -2, 1, -1);
  CHECK(rev.a.is_zero());
  CHECK(rev.b == QuadNum(2, -1, -1));
  CHECK(rev.c == QuadNum(2, -1, 1));
  CHECK(rev.d.is_zero());
  CHECK(rev.C == 0);

  CHECK_THROWS_AS(conjugate_to_eta_frame(2, 1, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("C bookkeeping identity") {
  // C = 1/2 + ((e^2 - d g^2) - (f^2 - d h^2)/d)/4 for a handful of matrices.
  for (long d : {2, 3, 5}) {
    long mats[][4] = {{1, 0, 0, 1}, {1, 1, 0, 1}, {2, 1, 1, 1},
                      {5, 2, 2, 1}, {3, -1, 1, 0}, {0, -1, 1, 0}};
    for (auto& m : mats) {
      CosetRep rep = conjugate_to_eta_frame(d, m[0], m[1], m[2], m[3]);
      mpq_class inner(m[1] * m[1] - d * m[3] * m[3], d);
      inner.canonicalize();
      mpq_class expect =
          mpq_class(1, 2) + (mpq_class(m[0] * m[0] - d * m[2] * m[2]) - inner) / 4;
      CHECK(rep.C == expect);
    }
  }
}

TEST_CASE("hyperbolic cosets: window scan agrees with the ellipsoid scan") {
  for (long d : {2, 3}) {
    PellData pd = solve_pell(d);
    auto fast = enumerate_hd(pd, 2);
    auto slow = enumerate_hd_bruteforce(pd, 2);
    CAPTURE(d);
    REQUIRE(fast.size() == slow.size());
    auto it_f = fast.begin();
    auto it_s = slow.begin();
    for (; it_f != fast.end(); ++it_f, ++it_s) {
      CHECK(it_f->first == it_s->first);
      REQUIRE(it_f->second.size() == it_s->second.size());
      for (size_t i = 0; i < it_f->second.size(); ++i) {
        const CosetRep& a = it_f->second[i];
        const CosetRep& b = it_s->second[i];
        for (int idx = 0; idx < 4; ++idx)
          CHECK(matmul_entry(a, idx) == matmul_entry(b, idx));
        CHECK(a.alpha == b.alpha);
        CHECK(a.beta == b.beta);
      }
    }
  }
}

TEST_CASE("window scan basics for d=2") {
  PellData pd = solve_pell(2);
  auto hd = enumerate_hd(pd, 2);
  REQUIRE(!hd.empty());
  for (const auto& [cval, reps] : hd) {
    // C sits on the 1/(4d) grid and inside the closed window.
    mpq_class shifted = cval - mpq_class(1, 2);
    mpq_class scaled = 8 * shifted;
    CHECK(scaled.get_den() == 1);
    CHECK(abs(shifted) <= 2);
    CHECK(cval != 0);
    CHECK(cval != 1);
    for (const CosetRep& r : reps) {
      CHECK(r.e * r.h - r.f * r.g == 1);
      CHECK(!(r.a * r.b * r.c * r.d).is_zero());
      CHECK((r.alpha == 1 || r.alpha == -1));
      CHECK((r.beta == 1 || r.beta == -1));
    }
  }
  CHECK_THROWS_AS(enumerate_hd(pd, mpq_class(1, 4)), std::domain_error);
}

TEST_CASE("representatives are pairwise inequivalent under the stabilizer") {
  for (long d : {2, 3}) {
    PellData pd = solve_pell(d);
    Mat gen = {pd.a0, d * pd.c0, pd.c0, pd.a0};          // stabilizer generator
    Mat gen_inv = {pd.a0, -d * pd.c0, -pd.c0, pd.a0};
    std::vector<Mat> all;
    for (const auto& [cval, reps] : enumerate_hd(pd, 2))
      for (const CosetRep& r : reps) all.push_back({r.e, r.f, r.g, r.h});
    REQUIRE(all.size() > 4);
    for (size_t i = 0; i < all.size(); ++i)
      for (size_t j = i + 1; j < all.size(); ++j) {
        CAPTURE(d);
        CHECK_FALSE(same_up_to_sign(all[i], all[j]));
        CHECK_FALSE(same_up_to_sign(mul(gen, all[i]), all[j]));
        CHECK_FALSE(same_up_to_sign(mul(gen_inv, all[i]), all[j]));
        CHECK_FALSE(same_up_to_sign(mul(all[i], gen), all[j]));
        CHECK_FALSE(same_up_to_sign(mul(all[i], gen_inv), all[j]));
      }
  }
}

}  // TEST_SUITE
