#pragma once

// Quantities derived from the functional-equation factor
// H(s) = omega * gamma(1-s) / gamma(s): H itself, psi_F = H'/H with its
// s-derivatives, and the phase theta_F with H(1/2+it) = exp(-2 i theta_F(t)).

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hardyz/selberg.hpp"
#include "hardyz/special_functions.hpp"

namespace hardyz {

struct PhasePoint {
  double t;
  double theta;
  double theta_prime;
};

/// A real-axis pole of psi_F: s = 1 + (mu_j + n)/lambda_j (residue -1, a pole
/// of H) or s = -(mu_j + n)/lambda_j (residue +1, a zero of H).
struct PsiPole {
  int j;
  int n;
  double location;
  int residue;
};

enum class Exclusion { enforce, ignore };

namespace detail {

inline std::optional<PsiPole> nearest_psi_pole(const SelbergDatum& d, cplx s) {
  std::optional<PsiPole> best;
  double best_dist = 0;
  auto consider = [&](const PsiPole& p) {
    double dist = std::abs(s - cplx(p.location, 0.0));
    if (!best || dist < best_dist) {
      best = p;
      best_dist = dist;
    }
  };
  for (std::size_t j = 0; j < d.lambdas.size(); ++j) {
    const double lam = d.lambdas[j], mu = d.mus[j];
    // right family: 1 + (mu + n)/lam, n >= 0
    double nr = std::max(0.0, std::round(lam * (s.real() - 1.0) - mu));
    for (double n : {nr - 1, nr, nr + 1})
      if (n >= 0) consider({int(j), int(n), 1.0 + (mu + n) / lam, -1});
    double nl = std::max(0.0, std::round(-lam * s.real() - mu));
    for (double n : {nl - 1, nl, nl + 1})
      if (n >= 0) consider({int(j), int(n), -(mu + n) / lam, +1});
  }
  return best;
}

}  // namespace detail

/// Poles of psi_F with location in [lo, hi], sorted by location.
inline std::vector<PsiPole> psi_poles(const SelbergDatum& d, double lo, double hi) {
  std::vector<PsiPole> out;
  for (std::size_t j = 0; j < d.lambdas.size(); ++j) {
    const double lam = d.lambdas[j], mu = d.mus[j];
    for (int n = 0;; ++n) {
      double x = 1.0 + (mu + n) / lam;
      if (x > hi) break;
      if (x >= lo) out.push_back({int(j), n, x, -1});
    }
    for (int n = 0;; ++n) {
      double x = -(mu + n) / lam;
      if (x < lo) break;
      if (x <= hi) out.push_back({int(j), n, x, +1});
    }
  }
  std::sort(out.begin(), out.end(), [](const PsiPole& a, const PsiPole& b) { return a.location < b.location; });
  return out;
}

inline double distance_to_psi_pole(const SelbergDatum& d, cplx s) {
  auto p = detail::nearest_psi_pole(d, s);
  return p ? std::abs(s - cplx(p->location, 0.0)) : INFINITY;
}

inline void check_exclusion(const SelbergDatum& d, cplx s, const EvalContext& ctx) {
  auto p = detail::nearest_psi_pole(d, s);
  if (p && std::abs(s - cplx(p->location, 0.0)) < ctx.exclusion_radius)
    throw Error(ErrorKind::excluded_region, "point lies inside the exclusion circle around the psi_F pole at s = " +
                                                std::to_string(p->location) + " (j=" + std::to_string(p->j) +
                                                ", n=" + std::to_string(p->n) + ")");
}

/// log H(s) on the branch given by summing log-gamma values; exp() of it is H.
inline cplx log_H(const SelbergDatum& d, cplx s) {
  cplx acc = cplx(0.0, d.omega_arg()) + (1.0 - 2.0 * s) * d.log_q();
  for (std::size_t j = 0; j < d.lambdas.size(); ++j) {
    const double lam = d.lambdas[j], mu = d.mus[j];
    acc += log_gamma(lam * (1.0 - s) + mu) - log_gamma(lam * s + mu);
  }
  return acc;
}

inline cplx H(const SelbergDatum& d, cplx s) {
  for (std::size_t j = 0; j < d.lambdas.size(); ++j) {
    const double lam = d.lambdas[j], mu = d.mus[j];
    if (detail::is_gamma_pole(lam * (1.0 - s) + mu)) {
      int n = int(std::lround(-(lam * (1.0 - s.real()) + mu)));
      throw Error(ErrorKind::pole, "H has a pole at s (j=" + std::to_string(j) + ", n=" + std::to_string(n) + ")");
    }
    if (detail::is_gamma_pole(lam * s + mu)) return 0.0;
  }
  return std::exp(log_H(d, s));
}

/// k-th s-derivative of psi_F(s) = H'(s)/H(s).
inline cplx psi_F(const SelbergDatum& d, cplx s, int k, const EvalContext& ctx = {},
                  Exclusion policy = Exclusion::enforce) {
  if (k < 0) throw Error(ErrorKind::unsupported, "psi_F: derivative order must be nonnegative");
  if (policy == Exclusion::enforce) check_exclusion(d, s, ctx);
  cplx acc = (k == 0) ? cplx(-2.0 * d.log_q()) : cplx(0.0);
  const double reflect_sign = (k % 2 == 0) ? 1.0 : -1.0;
  for (std::size_t j = 0; j < d.lambdas.size(); ++j) {
    const double lam = d.lambdas[j], mu = d.mus[j];
    const double scale = std::pow(lam, k + 1);
    acc -= scale * (reflect_sign * polygamma(k, lam * (1.0 - s) + mu) + polygamma(k, lam * s + mu));
  }
  return acc;
}

/// theta_F(t) = t log Q + sum_j Im logGamma(lambda_j (1/2+it) + mu_j) - arg(omega)/2.
inline PhasePoint theta_F(const SelbergDatum& d, double t, const EvalContext& ctx = {}) {
  double theta = t * d.log_q() - 0.5 * d.omega_arg();
  for (std::size_t j = 0; j < d.lambdas.size(); ++j)
    theta += log_gamma(d.lambdas[j] * cplx(0.5, t) + d.mus[j]).imag();
  const double theta_prime = -0.5 * psi_F(d, cplx(0.5, t), 0, ctx, Exclusion::ignore).real();
  return {t, theta, theta_prime};
}

/// Stirling constants of theta_F(T)/pi = (d/2pi) T log(T/2pi) + c T + c' + O(1/T):
///   c  = (log Q + sum lambda_j (log lambda_j - 1))/pi + (d/2pi) log 2pi
///   c' = sum_j (lambda_j/2 + mu_j - 1/2)/2 - arg(omega)/(2 pi)
struct ThetaConstants {
  double c_linear;
  double c_constant;
};

inline ThetaConstants theta_constants(const SelbergDatum& d) {
  double lin = d.log_q(), cst = 0;
  for (std::size_t j = 0; j < d.lambdas.size(); ++j) {
    const double lam = d.lambdas[j];
    lin += lam * (std::log(lam) - 1.0);
    cst += 0.5 * (0.5 * lam + d.mus[j] - 0.5);
  }
  return {lin / kPi + d.degree() / (2 * kPi) * std::log(2 * kPi), cst - d.omega_arg() / (2 * kPi)};
}

/// Stirling main terms of theta_F(T)/pi.
inline double asymptotic_theta(const SelbergDatum& d, double T) {
  if (T < 10) throw Error(ErrorKind::range, "asymptotic_theta requires T >= 10");
  auto c = theta_constants(d);
  return d.degree() / (2 * kPi) * T * std::log(T / (2 * kPi)) + c.c_linear * T + c.c_constant;
}

/// Mean-spacing proxy theta_F'(t) ~ (d/2) log t + c used to size scan steps.
inline double phase_rate_proxy(const SelbergDatum& d, double t) {
  double c = d.log_q();
  for (double lam : d.lambdas) c += lam * std::log(lam);
  return 0.5 * d.degree() * std::log(std::max(t, 1.0)) + std::abs(c);
}

/// (1/2 pi i) * contour integral of psi_F over |s - center| = radius.
inline cplx psi_residue(const SelbergDatum& d, cplx center, double radius, int nodes = 256) {
  detail::CompensatedSum acc;
  for (int m = 0; m < nodes; ++m) {
    const cplx u = std::polar(1.0, 2 * kPi * m / nodes);
    acc.add(psi_F(d, center + radius * u, 0, {}, Exclusion::ignore) * radius * u);
  }
  return acc.value() / double(nodes);
}

}  // namespace hardyz
