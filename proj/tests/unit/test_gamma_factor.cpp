#include <gtest/gtest.h>

#include "hardyz/catalog.hpp"
#include "hardyz/gamma_factor.hpp"
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

}  // namespace

TEST(H, CenterAndUnitModulus) {
  for (const auto& name : catalog_names()) {
    auto d = builtin(name);
    EXPECT_LT(std::abs(H(d, 0.5) - d.omega), 1e-15) << name;
    EXPECT_NEAR(std::abs(H(d, {0.5, 13.7})), 1.0, 1e-13) << name;
  }
}

TEST(H, ReflectionIdentity) {
  for (const auto& name : catalog_names()) {
    auto d = builtin(name);
    EXPECT_LT(std::abs(H(d, {0.3, 9}) * H(d, {0.7, -9}) - 1.0), 1e-10) << name;
  }
}

TEST(H, PolesAndZeros) {
  auto z = builtin("zeta");
  // poles at s = 1 + (mu + n)/lambda = 1, 3, 5, ...
  try {
    H(z, 3.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::pole);
    EXPECT_NE(std::string(e.what()).find("n=1"), std::string::npos) << e.what();
  }
  EXPECT_EQ(H(z, -2.0), cplx(0.0));
  auto c4 = builtin("chi4");
  EXPECT_EQ(kind_of([&] { H(c4, 2.0); }), ErrorKind::pole);
}

TEST(PsiF, CenterValue) {
  auto z = builtin("zeta");
  const double expected = std::log(kPi) + kEulerGamma + 3 * std::log(2.0) + kPi / 2;
  EXPECT_NEAR(psi_F(z, 0.5, 0).real(), expected, 1e-13);
  EXPECT_NEAR(psi_F(z, 0.5, 0).real(), oracle::mp::psiF_zeta_half, 1e-13);
}

TEST(PsiF, MatchesLogDerivativeOfH) {
  auto g = seeded(51);
  for (const auto& name : catalog_names()) {
    auto d = builtin(name);
    for (int i = 0; i < 5; ++i) {
      cplx s(oracle::uniform(g, -1, 2), oracle::uniform(g, 2, 100));
      cplx ref = oracle::circle_derivative([&](cplx w) { return log_H(d, w); }, s, 1, 0.2, 64);
      EXPECT_LT(std::abs(psi_F(d, s, 0) - ref), 1e-10 * (1 + std::abs(ref))) << name << s;
      for (int k = 1; k <= 3; ++k) {
        cplx refk = oracle::circle_derivative([&](cplx w) { return log_H(d, w); }, s, k + 1, 0.3, 96);
        EXPECT_LT(std::abs(psi_F(d, s, k) - refk), 1e-8 * (1 + std::abs(refk))) << name << s << " k=" << k;
      }
    }
  }
}

TEST(PsiF, Symmetry) {
  for (const auto& name : catalog_names()) {
    auto d = builtin(name);
    EXPECT_LT(std::abs(psi_F(d, {2, 11}, 0) - psi_F(d, {-1, -11}, 0)), 1e-10) << name;
    // derivatives pick up (-1)^k
    for (int k = 1; k <= 3; ++k)
      EXPECT_LT(std::abs(psi_F(d, {2, 11}, k) - (k % 2 ? -1.0 : 1.0) * psi_F(d, {-1, -11}, k)), 1e-10);
  }
}

TEST(PsiF, ExclusionZones) {
  auto z = builtin("zeta");
  EXPECT_EQ(kind_of([&] { psi_F(z, {0.05, 0.0}, 0); }), ErrorKind::excluded_region);
  EXPECT_EQ(kind_of([&] { psi_F(z, {3.0, 0.08}, 0); }), ErrorKind::excluded_region);
  EXPECT_NO_THROW(psi_F(z, {0.15, 0.0}, 0));
  auto c4 = builtin("chi4");
  EXPECT_EQ(kind_of([&] { psi_F(c4, {-1.02, 0.0}, 0); }), ErrorKind::excluded_region);
  EXPECT_EQ(kind_of([&] { psi_F(c4, {2.0, 0.0}, 0); }), ErrorKind::excluded_region);
  auto poles = psi_poles(z, -4.5, 5.5);
  ASSERT_EQ(poles.size(), 6u);
  EXPECT_EQ(poles.front().location, -4.0);
  EXPECT_EQ(poles.back().location, 5.0);
}

TEST(PsiF, Residues) {
  for (const auto& name : catalog_names()) {
    auto d = builtin(name);
    for (const auto& p : psi_poles(d, -6, 7)) {
      cplx r = psi_residue(d, p.location, 0.05);
      EXPECT_LT(std::abs(r - double(p.residue)), 1e-10) << name << " at " << p.location;
    }
  }
  auto z = builtin("zeta");
  EXPECT_LT(std::abs(psi_residue(z, 0.0, 0.05) - 1.0), 1e-10);
  EXPECT_LT(std::abs(psi_residue(z, 1.0, 0.05) + 1.0), 1e-10);
  // a circle that encloses nothing
  EXPECT_LT(std::abs(psi_residue(z, 0.5, 0.2)), 1e-10);
}

TEST(PsiF, RealPartBound) {
  for (const auto& name : catalog_names()) {
    auto d = builtin(name);
    for (double sigma : {50.0, 100.0, 200.0}) {
      // odd characters have a pole at even sigma; step half a pole spacing away
      const double x = distance_to_psi_pole(d, sigma) < 0.5 ? sigma + 0.5 / d.lambdas[0] : sigma;
      EXPECT_LE(psi_F(d, x, 0).real(), -0.25 * std::log(x)) << name << " sigma=" << x;
    }
  }
}

TEST(PsiF, AsymptoticEstimates) {
  auto g = seeded(52);
  for (const auto& name : catalog_names()) {
    auto d = builtin(name);
    double worst0 = 0, worst[4] = {0, 0, 0, 0};
    for (int i = 0; i < 60; ++i) {
      cplx s(2.0, oracle::uniform(g, 10, 500));
      worst0 = std::max(worst0, std::abs(psi_F(d, s, 0) + d.degree() * std::log(s)));
      for (int k = 1; k <= 3; ++k) worst[k] = std::max(worst[k], std::abs(psi_F(d, s, k)) * std::pow(std::abs(s), k));
    }
    EXPECT_LT(worst0, 5.0) << name;
    for (int k = 1; k <= 3; ++k) EXPECT_LT(worst[k], 10.0) << name << " k=" << k;
  }
}

TEST(Theta, ZeroAndOddness) {
  auto z = builtin("zeta");
  EXPECT_EQ(theta_F(z, 0).theta, 0.0);
  for (const auto& name : catalog_names()) {
    auto d = builtin(name);
    EXPECT_NEAR(theta_F(d, -7.3).theta, -theta_F(d, 7.3).theta, 1e-10) << name;
  }
}

TEST(Theta, ReferenceValues) {
  auto z = builtin("zeta");
  EXPECT_NEAR(theta_F(z, 100).theta, oracle::mp::theta_100, 1e-11);
  EXPECT_NEAR(theta_F(z, 7.3).theta, oracle::mp::theta_7_3, 1e-12);
}

TEST(Theta, IntegralOfDerivative) {
  for (const char* name : {"zeta", "chi4"}) {
    auto d = builtin(name);
    double integral = oracle::simpson([&](double t) { return theta_F(d, t).theta_prime; }, 0, 100, 1e-11);
    EXPECT_NEAR(theta_F(d, 100).theta - theta_F(d, 0).theta, integral, 1e-8) << name;
  }
}

TEST(Theta, DerivativeMatchesPsiAndFiniteDifference) {
  auto g = seeded(53);
  for (const auto& name : catalog_names()) {
    auto d = builtin(name);
    for (int i = 0; i < 100 / 4; ++i) {
      double t = oracle::uniform(g, 1, 500);
      auto p = theta_F(d, t);
      cplx psi = psi_F(d, {0.5, t}, 0);
      EXPECT_NEAR(p.theta_prime + 0.5 * psi.real(), 0.0, 1e-12);
      EXPECT_LT(std::abs(psi.imag()), 1e-12);
      double fd = oracle::richardson([&](double u) { return theta_F(d, u).theta; }, t, 1e-2);
      EXPECT_NEAR(p.theta_prime, fd, 1e-8 * (1 + std::abs(fd))) << name << " t=" << t;
    }
  }
}

TEST(Theta, AsymptoticForm) {
  auto z = builtin("zeta");
  const double th = theta_F(z, 100).theta;
  EXPECT_LT(std::abs(asymptotic_theta(z, 100) * kPi - th) / th, 1e-3);
  auto c4 = builtin("chi4");
  EXPECT_LT(std::abs(asymptotic_theta(c4, 100) * kPi - theta_F(c4, 100).theta), 0.01);
  // the error is O(1/T): it shrinks roughly tenfold from T=50 to T=500
  for (const auto& name : catalog_names()) {
    auto d = builtin(name);
    double e50 = std::abs(asymptotic_theta(d, 50) - theta_F(d, 50).theta / kPi);
    double e500 = std::abs(asymptotic_theta(d, 500) - theta_F(d, 500).theta / kPi);
    EXPECT_LT(e50, 2e-3) << name;
    EXPECT_LT(e500, 0.2 * e50 + 1e-9) << name;
  }
  EXPECT_EQ(kind_of([&] { asymptotic_theta(z, 9.9); }), ErrorKind::range);
}

TEST(Theta, MainTermScaling) {
  auto z = builtin("zeta");
  auto main = [&](double T) { return z.degree() / (2 * kPi) * T * std::log(T); };
  EXPECT_NEAR(main(400) / main(200), 2 * std::log(400.0) / std::log(200.0), 1e-12);
}
