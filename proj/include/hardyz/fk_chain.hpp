#pragma once

// The derivative chain F_{k+1} = F_k' - (1/2) psi_F F_k and everything built
// from it: the coefficient functions f_k (partition formula), Lambda_k, the
// decomposition F_k = (-psi/2)^k A_k g_k, Z_F^(k)(t), xi_{F,k} and g_{F,k}.

#include <array>
#include <cmath>
#include <vector>

#include "hardyz/gamma_factor.hpp"
#include "hardyz/l_evaluator.hpp"

namespace hardyz {

inline constexpr int kMaxChainOrder = 8;

struct ChainValue {
  cplx s;
  int k;
  cplx f_k;
  cplx F_k;
  cplx A_k;
  cplx g_k;
  bool decomposition_defined;  // false near zeros of psi_F, where A_k and g_k are meaningless
};

struct ZDerivative {
  double t;
  int k;
  double value;
  double im_residual;
};

/// Multiplicity vector (a_1, ..., a_k) with sum l * a_l = k.
using Partition = std::vector<int>;

/// All partitions of k as multiplicity vectors, in colex order on
/// (a_1, ..., a_k): the vector with larger a_k comes later.
inline std::vector<Partition> partitions(int k) {
  std::vector<Partition> out;
  if (k <= 0) return out;
  Partition a(k, 0);
  // Recurse from the largest part down; emit in colex order afterwards.
  auto rec = [&](auto&& self, int part, int remaining) -> void {
    if (part == 0) {
      if (remaining == 0) out.push_back(a);
      return;
    }
    for (int m = 0; m * part <= remaining; ++m) {
      a[part - 1] = m;
      self(self, part - 1, remaining - m * part);
    }
    a[part - 1] = 0;
  };
  rec(rec, k, k);
  return out;
}

namespace detail {

inline const std::vector<Partition>& cached_partitions(int k) {
  static const std::array<std::vector<Partition>, kMaxChainOrder + 2> table = [] {
    std::array<std::vector<Partition>, kMaxChainOrder + 2> t;
    for (int i = 0; i <= kMaxChainOrder + 1; ++i) t[i] = partitions(i);
    return t;
  }();
  return table[k];
}

/// psi_F^(0..n-1)(s).
inline std::vector<cplx> psi_jet(const SelbergDatum& d, cplx s, int n, const EvalContext& ctx) {
  std::vector<cplx> out(n);
  for (int l = 0; l < n; ++l) out[l] = psi_F(d, s, l, ctx, l == 0 ? Exclusion::enforce : Exclusion::ignore);
  return out;
}

/// k! sum over partitions (with a_1 <= a1_cap) of (-1/2)^{sum a} prod (psi^(l-1)/l!)^{a_l} / a_l!
inline cplx partition_sum(int k, const std::vector<cplx>& psi, int a1_cap) {
  if (k == 0) return 1.0;
  detail::CompensatedSum acc;
  for (const auto& a : cached_partitions(k)) {
    if (a[0] > a1_cap) continue;
    int parts = 0;
    cplx term = 1.0;
    for (int l = 1; l <= k; ++l) {
      if (a[l - 1] == 0) continue;
      parts += a[l - 1];
      term *= int_pow(psi[l - 1] / factorial(l), a[l - 1]) / factorial(a[l - 1]);
    }
    acc.add(term * std::pow(-0.5, parts));
  }
  return factorial(k) * acc.value();
}

inline void check_order(int k, int cap, const char* what) {
  if (k < 0 || k > cap)
    throw Error(ErrorKind::unsupported, std::string(what) + ": order must lie in [0, " + std::to_string(cap) + "]");
}

/// f_0..f_kmax at s from one psi jet.
inline std::vector<cplx> f_chain(const std::vector<cplx>& psi, int kmax) {
  std::vector<cplx> f(kmax + 1);
  for (int i = 0; i <= kmax; ++i) f[i] = partition_sum(i, psi, i);
  return f;
}

}  // namespace detail

inline cplx f_k(const SelbergDatum& d, cplx s, int k, const EvalContext& ctx = {}) {
  detail::check_order(k, kMaxChainOrder + 1, "f_k");
  if (k == 0) {
    check_exclusion(d, s, ctx);
    return 1.0;
  }
  return detail::partition_sum(k, detail::psi_jet(d, s, k, ctx), k);
}

/// f_k - (-psi_F/2)^k: the partition sum restricted to a_1 <= k - 2.
inline cplx Lambda_k(const SelbergDatum& d, cplx s, int k, const EvalContext& ctx = {}) {
  detail::check_order(k, kMaxChainOrder, "Lambda_k");
  if (k < 1) throw Error(ErrorKind::unsupported, "Lambda_k: order must be at least 1");
  return detail::partition_sum(k, detail::psi_jet(d, s, k, ctx), k - 2);
}

/// F_0..F_kmax at s, plus the psi value, from shared sub-evaluations.
struct ChainBundle {
  cplx s;
  cplx psi;
  std::vector<cplx> f;  // f_0..f_kmax
  std::vector<cplx> F;  // F_0..F_kmax
};

inline ChainBundle chain_bundle(const SelbergDatum& d, cplx s, int kmax, const EvalContext& ctx = {}) {
  detail::check_order(kmax, kMaxChainOrder + 1, "F_k");
  auto psi = detail::psi_jet(d, s, std::max(kmax, 1), ctx);
  auto f = detail::f_chain(psi, kmax);
  auto Fd = F_taylor(d, s, kmax, ctx);
  std::vector<cplx> F(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    detail::CompensatedSum acc;
    for (int j = 0; j <= k; ++j) acc.add(detail::binomial(k, j) * f[k - j] * Fd[j].value);
    F[k] = acc.value();
  }
  return {s, psi[0], std::move(f), std::move(F)};
}

inline ChainValue F_k_value(const SelbergDatum& d, cplx s, int k, const EvalContext& ctx = {}) {
  detail::check_order(k, kMaxChainOrder, "F_k_value");
  auto b = chain_bundle(d, s, k, ctx);
  ChainValue v{s, k, b.f[k], b.F[k], 1.0, b.F[0], true};
  if (k > 0) {
    const cplx lead = detail::int_pow(-0.5 * b.psi, k);
    if (std::abs(b.psi) > 10 * ctx.abs_tol && std::abs(b.f[k]) > 0) {
      v.A_k = b.f[k] / lead;
      v.g_k = b.F[k] / b.f[k];
    } else {
      v.A_k = v.g_k = cplx(NAN, NAN);
      v.decomposition_defined = false;
    }
  }
  return v;
}

/// F_k'(s) = F_{k+1}(s) + (1/2) psi_F(s) F_k(s).
inline cplx F_k_derivative(const SelbergDatum& d, cplx s, int k, const EvalContext& ctx = {}) {
  detail::check_order(k + 1, kMaxChainOrder, "F_k_derivative");
  auto b = chain_bundle(d, s, k + 1, ctx);
  return b.F[k + 1] + 0.5 * b.psi * b.F[k];
}

/// Z_F^(0..kmax)(t) = Re[i^k F_k(1/2+it) e^{i theta_F(t)}], with Z^(k)(-t) = (-1)^k Z^(k)(t).
inline std::vector<ZDerivative> Z_chain(const SelbergDatum& d, double t, int kmax, const EvalContext& ctx = {}) {
  const double u = std::abs(t);
  auto b = chain_bundle(d, cplx(0.5, u), kmax, ctx);
  const cplx phase = std::polar(1.0, theta_F(d, u, ctx).theta);
  std::vector<ZDerivative> out;
  for (int k = 0; k <= kmax; ++k) {
    const cplx z = detail::ipow(k) * b.F[k] * phase;
    const double sign = (t < 0 && k % 2 == 1) ? -1.0 : 1.0;
    out.push_back({t, k, sign * z.real(), std::abs(z.imag())});
  }
  return out;
}

inline ZDerivative Z_k(const SelbergDatum& d, double t, int k, const EvalContext& ctx = {}) {
  detail::check_order(k, kMaxChainOrder, "Z_k");
  return Z_chain(d, t, k, ctx).back();
}

/// xi_{F,k}(s) = s^m (s-1)^m Q^s prod Gamma(lambda s + mu)^{1-k} Gamma(lambda(1-s) + mu)^{-k} F_k(s).
inline cplx xi_k(const SelbergDatum& d, cplx s, int k, const EvalContext& ctx = {}) {
  detail::check_order(k, kMaxChainOrder, "xi_k");
  cplx log_factor = s * d.log_q();
  for (std::size_t j = 0; j < d.lambdas.size(); ++j) {
    const double lam = d.lambdas[j], mu = d.mus[j];
    if (k != 1) log_factor += double(1 - k) * log_gamma(lam * s + mu);
    if (k != 0) log_factor -= double(k) * log_gamma(lam * (1.0 - s) + mu);
  }
  const cplx poly = detail::int_pow(s * (s - 1.0), d.pole_order);
  return poly * std::exp(log_factor) * chain_bundle(d, s, k, ctx).F[k];
}

/// log |g_{F,k}(t)|, where
/// g_{F,k}(t) = (-1)^m (1/4 + t^2)^m Q^{1/2} prod |Gamma(lambda/2 + mu + i lambda t)|^{1-2k}
/// and xi_{F,k}(1/2+it) = omega^{1/2} i^{-k} g_{F,k}(t) Z_F^(k)(t).
inline double log_abs_g_Fk(const SelbergDatum& d, double t, int k) {
  double acc = d.pole_order * std::log(0.25 + t * t) + 0.5 * d.log_q();
  for (std::size_t j = 0; j < d.lambdas.size(); ++j)
    acc += (1.0 - 2.0 * k) * log_gamma(cplx(0.5 * d.lambdas[j] + d.mus[j], d.lambdas[j] * t)).real();
  return acc;
}

inline double g_Fk(const SelbergDatum& d, double t, int k) {
  const double sign = (d.pole_order % 2 == 0) ? 1.0 : -1.0;
  return sign * std::exp(log_abs_g_Fk(d, t, k));
}

/// (g'/g)(t) and d/dt (g'/g)(t), in closed form via digamma and trigamma.
struct LogDerivative {
  double first;
  double second;
};

inline LogDerivative g_Fk_log_derivatives(const SelbergDatum& d, double t, int k) {
  const double m = d.pole_order, w = 0.25 + t * t;
  double first = 2 * m * t / w;
  double second = 2 * m * (0.25 - t * t) / (w * w);
  for (std::size_t j = 0; j < d.lambdas.size(); ++j) {
    const double lam = d.lambdas[j];
    const cplx z(0.5 * lam + d.mus[j], lam * t);
    first -= (1.0 - 2.0 * k) * lam * polygamma(0, z).imag();
    second -= (1.0 - 2.0 * k) * lam * lam * polygamma(1, z).real();
  }
  return {first, second};
}

}  // namespace hardyz
