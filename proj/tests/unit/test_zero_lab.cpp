#include <gtest/gtest.h>

#include "hardyz/catalog.hpp"
#include "hardyz/zero_lab.hpp"
#include "seed.hpp"

using namespace hardyz;
using oracle::cplx;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::config;
}

std::vector<double> gammas(const ZeroTable& t) {
  std::vector<double> out;
  for (const auto& r : t.records) out.push_back(r.gamma);
  return out;
}

std::vector<double> fine_scan(const SelbergDatum& d, int k, double a, double b) {
  return oracle::sign_scan([&](double t) { return Z_k(d, t, k).value; }, a, b, 0.02, 1e-11);
}

}  // namespace

TEST(Scan, ZetaFirstZeros) {
  auto z = builtin("zeta");
  auto g = gammas(scan_zeros(z, 0, 10, 30));
  ASSERT_EQ(g.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(g[i], oracle::mp::zeta_zeros[i], 1e-9);
}

TEST(Scan, CharacterFirstZeros) {
  const std::pair<const char*, const std::vector<double>*> cases[] = {
      {"chi3", &oracle::mp::chi3_zeros}, {"chi4", &oracle::mp::chi4_zeros}, {"chi5", &oracle::mp::chi5_zeros}};
  for (auto [name, ref] : cases) {
    auto g = gammas(scan_zeros(builtin(name), 0, 5, 16));
    ASSERT_GE(g.size(), 3u) << name;
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(g[i], (*ref)[i], 1e-9) << name;
  }
  auto c4 = gammas(scan_zeros(builtin("chi4"), 0, 5, 12));
  EXPECT_EQ(c4.size(), 2u);
}

TEST(Scan, EmptyRange) {
  auto t = scan_zeros(builtin("zeta"), 0, 10, 10.5);
  EXPECT_TRUE(t.records.empty());
  EXPECT_EQ(t.t0, 10);
  EXPECT_EQ(t.t1, 10.5);
}

TEST(Scan, AgreesWithFineSignScan) {
  auto g = seeded(81);
  for (const auto& name : catalog_names()) {
    auto d = builtin(name);
    for (int k = 0; k <= 3; ++k) {
      const double a = oracle::uniform(g, 20, 400);
      auto got = gammas(scan_zeros(d, k, a, a + 8));
      auto ref = fine_scan(d, k, a, a + 8);
      ASSERT_EQ(got.size(), ref.size()) << name << " k=" << k << " from " << a;
      for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(got[i], ref[i], 1e-9) << name << k;
    }
  }
}

TEST(Scan, TableInvariants) {
  auto d = builtin("chi5");
  EvalContext ctx;
  for (int k = 0; k <= 6; ++k) {
    auto t = scan_zeros(d, k, 100, 130, ctx);
    EXPECT_EQ(t.k, k);
    EXPECT_EQ(t.datum, "chi5");
    for (std::size_t i = 0; i < t.records.size(); ++i) {
      const auto& r = t.records[i];
      EXPECT_GE(r.gamma, 100);
      EXPECT_LE(r.gamma, 130);
      EXPECT_LE(r.bracket, ctx.refine_tol);
      EXPECT_NEAR(std::abs(Z_k(d, r.gamma, k).value), r.residual, 1e-300 + 1e-12 * r.residual);
      if (i) EXPECT_LT(t.records[i - 1].gamma, r.gamma);
    }
  }
}

TEST(Scan, DeterministicAcrossJobs) {
  auto d = builtin("zeta");
  EvalContext one, many;
  one.jobs = 1;
  many.jobs = 4;
  auto a = scan_zeros(d, 1, 200, 260, one), b = scan_zeros(d, 1, 200, 260, many);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].gamma, b.records[i].gamma);
    EXPECT_EQ(a.records[i].residual, b.records[i].residual);
  }
}

TEST(Scan, RangeErrors) {
  auto z = builtin("zeta");
  EXPECT_EQ(kind_of([&] { scan_zeros(z, 0, 4, 10); }), ErrorKind::range);
  EXPECT_EQ(kind_of([&] { scan_zeros(z, 0, 10, 501); }), ErrorKind::range);
  EXPECT_EQ(kind_of([&] { scan_zeros(z, 0, 20, 20); }), ErrorKind::range);
  EXPECT_EQ(kind_of([&] { scan_zeros(z, 7, 10, 20); }), ErrorKind::unsupported);
}

TEST(Scan, LowStrip) {
  // no zeta zeros below 14; Z' has none below 5 either
  EXPECT_EQ(low_strip_count(builtin("zeta"), 0, 5.0), 0);
  auto c4 = builtin("chi4");
  EXPECT_EQ(low_strip_count(c4, 0, 5.0), int(fine_scan(c4, 0, 0.01, 5.0).size()));
}

TEST(Interlace, FirstZetaGap) {
  auto r = interlace_audit(builtin("zeta"), 0, 10, 22);
  ASSERT_EQ(r.gaps.size(), 1u);
  EXPECT_NEAR(r.gaps[0].gamma_left, 14.134725141734694, 1e-9);
  EXPECT_EQ(r.gaps[0].count, 1);
  EXPECT_EQ(r.violations, 0);
}

TEST(Interlace, NoGapsWithFewerThanTwoZeros) {
  auto r = interlace_audit(builtin("zeta"), 0, 10, 14);
  EXPECT_TRUE(r.gaps.empty());
  EXPECT_EQ(r.violations, 0);
}

TEST(Interlace, CountsMatchIndependentScan) {
  auto d = builtin("chi4");
  for (int k = 0; k <= 2; ++k) {
    auto r = interlace_audit(d, k, 50, 75);
    auto base = fine_scan(d, k, 50, 75), next = fine_scan(d, k + 1, 50, 75);
    ASSERT_EQ(r.gaps.size() + 1, base.size()) << k;
    int violations = 0;
    for (std::size_t i = 0; i + 1 < base.size(); ++i) {
      int c = 0;
      for (double x : next) c += (x > base[i] && x < base[i + 1]);
      EXPECT_EQ(r.gaps[i].count, c);
      violations += (c != 1);
    }
    EXPECT_EQ(r.violations, violations);
    EXPECT_EQ(r.rolle_failures, 0);
  }
}

TEST(Count, ZetaAtHundred) {
  auto r = count_compare(builtin("zeta"), 0, 100);
  EXPECT_EQ(r.n_line, oracle::mp::zeta_zero_count_100);
  EXPECT_NEAR(r.theta_term, oracle::mp::theta_100 / oracle::pi, 1e-11);
  EXPECT_LE(std::abs(r.residual), r.residual_bound);
  EXPECT_EQ(r.residual_bound, 1.5);
  // with no zeros off the line N(T) = theta/pi + 1 + S(T); the residual is the +1
  EXPECT_NEAR(r.residual, 1.0, 1e-6);
}

TEST(Count, BoundsAndErrors) {
  auto z = builtin("zeta");
  EXPECT_EQ(count_compare(z, 1, 60).residual_bound, 3.0);
  EXPECT_EQ(kind_of([&] { count_compare(z, 0, 19); }), ErrorKind::range);
  EXPECT_EQ(kind_of([&] { count_compare(z, 0, 501); }), ErrorKind::range);
}

TEST(ArgumentS, ZetaMatchesCount) {
  // S(T) = N(T) - theta/pi - 1 for zeta, with N from the frozen zero counts.
  auto z = builtin("zeta");
  for (auto [T, N] : {std::pair{50.0, oracle::mp::zeta_zero_count_50}, {200.0, oracle::mp::zeta_zero_count_200}}) {
    const double S = argument_S(z, 0, T);
    EXPECT_NEAR(S, N - theta_F(z, T).theta / oracle::pi - 1.0, 1e-6) << T;
  }
}

TEST(ArgumentS, JumpsAcrossAZero) {
  auto z = builtin("zeta");
  const double g = oracle::mp::zeta_zeros[0];
  const double below = argument_S(z, 0, g - 0.01), above = argument_S(z, 0, g + 0.01);
  const double theta_step = (theta_F(z, g + 0.01).theta - theta_F(z, g - 0.01).theta) / oracle::pi;
  EXPECT_NEAR(above - below + theta_step, 1.0, 1e-3);
}

TEST(ArgumentS, PartsAddUp) {
  auto d = builtin("chi5");
  auto p = argument_S_parts(d, 1, 80);
  EXPECT_DOUBLE_EQ(p.total(), p.vertical + p.horizontal);
  EXPECT_DOUBLE_EQ(argument_S(d, 1, 80), p.total());
}

TEST(Contour, ZetaExamples) {
  auto z = builtin("zeta");
  EXPECT_EQ(contour_count(z, Selector::F_k, 0, {-2, 3, 10, 20}), 1);
  EXPECT_EQ(contour_count(z, Selector::F_k, 0, {2, 10, 10, 20}), 0);
  EXPECT_EQ(contour_count(z, Selector::F_k, 0, {-2, 3, 10, 30}), 3);
  // F_1 zeros lie on or right of the line; count them against the on-line zeros of Z'
  const int line = int(fine_scan(z, 1, 21.5, 49.5).size());
  EXPECT_GE(contour_count(z, Selector::F_k, 1, {0.4, 4, 21.5, 49.5}), line);
}

TEST(Contour, CoefficientFunctionNearTheRealAxis) {
  auto z = builtin("zeta");
  EXPECT_EQ(contour_count(z, Selector::f_k, 1, {-0.9, 0.5, -0.9, 0.9}), 1);
  EXPECT_EQ(contour_count(z, Selector::f_k, 2, {-0.9, 0.5, -0.9, 0.9}), 2);
}

TEST(Contour, Errors) {
  auto z = builtin("zeta");
  const double g = oracle::mp::zeta_zeros[0];
  EXPECT_EQ(kind_of([&] { contour_count(z, Selector::F_k, 0, {-2, 3, g, 20}); }), ErrorKind::inconclusive_contour);
  EXPECT_EQ(kind_of([&] { contour_count(z, Selector::F_k, 0, {-2, 3, 0.5, 20}); }), ErrorKind::geometry);
  EXPECT_EQ(kind_of([&] { contour_count(z, Selector::F_k, 0, {3, -2, 10, 20}); }), ErrorKind::range);
  EXPECT_EQ(kind_of([&] { contour_count(z, Selector::F_k, 0, {-2, 3, 10, 700}); }), ErrorKind::range);
}

TEST(Mirror, IdentityAtFifty) {
  auto z = builtin("zeta");
  auto r = mirror_sum_check(z, 0, 50, 40);
  // lhs = d/dt (Z'/Z), checked against a finite difference of Z'/Z
  auto q = [&](double t) {
    auto c = Z_chain(z, t, 1);
    return c[1].value / c[0].value;
  };
  EXPECT_NEAR(r.lhs, oracle::richardson(q, 50, 1e-3), 1e-6 * std::abs(r.lhs));
  EXPECT_TRUE(r.agree);
  EXPECT_LE(r.fitted_c, r.c_limit);
  EXPECT_GT(r.truncated_sum, 0);
}

TEST(Mirror, LhsNegativeAwayFromZeros) {
  for (int k : {0, 1}) {
    auto r = mirror_sum_check(builtin("zeta"), k, 100, 50);
    EXPECT_LT(r.lhs, 0) << k;
    EXPECT_TRUE(r.agree) << k << " C=" << r.fitted_c;
  }
}

TEST(Mirror, Errors) {
  auto z = builtin("zeta");
  EXPECT_EQ(kind_of([&] { mirror_sum_check(z, 0, oracle::mp::zeta_zeros[2], 10); }), ErrorKind::proximity);
  EXPECT_EQ(kind_of([&] { mirror_sum_check(z, 0, 50, 46); }), ErrorKind::range);
  EXPECT_EQ(kind_of([&] { mirror_sum_check(z, 5, 50, 10); }), ErrorKind::unsupported);
}
