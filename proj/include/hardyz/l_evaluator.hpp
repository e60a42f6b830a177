#pragma once

// F(s) and its s-derivatives. zeta and Dirichlet L-functions are evaluated
// through Euler-Maclaurin Hurwitz sums; derivatives come from an M-node
// trapezoid rule on a Cauchy circle, which is spectrally accurate for the
// analytic integrand.

#include <cmath>
#include <string>
#include <vector>

#include "hardyz/selberg.hpp"
#include "hardyz/special_functions.hpp"

namespace hardyz {

struct LValue {
  cplx s;
  int j;
  cplx value;
  double est_error;
};

/// Supported evaluation box for F.
struct EvalBox {
  static constexpr double re_min = -4.0;
  static constexpr double re_max = 400.0;
  static constexpr double im_max = 600.0;
  static bool contains(cplx s) {
    return s.real() >= re_min && s.real() <= re_max && std::abs(s.imag()) <= im_max;
  }
};

inline constexpr int kMaxFDerivative = 12;

inline LValue F_value(const SelbergDatum& d, cplx s, const EvalContext& ctx = {}) {
  if (!EvalBox::contains(s))
    throw Error(ErrorKind::range, "F_value: s outside the supported box " + std::to_string(EvalBox::re_min) +
                                      " <= Re s <= " + std::to_string(EvalBox::re_max) + ", |Im s| <= 600");
  if (d.pole_order > 0 && s == cplx(1.0, 0.0)) throw Error(ErrorKind::pole, "F_value: pole at s = 1");
  const auto& prov = *d.coefficients;
  switch (prov.kind()) {
    case ProviderKind::constant_one: {
      auto h = hurwitz_zeta_detailed(s, 1.0, 0, ctx);
      return {s, 0, h.value, h.est_error};
    }
    case ProviderKind::dirichlet_character: {
      // The Hurwitz poles cancel at s = 1; near it, use the circle mean instead.
      constexpr double near = 0.05, r = 0.1;
      if (std::abs(s - 1.0) < near) {
        constexpr int M = 32;
        cplx acc = 0.0;
        double err = 0.0;
        for (int m = 0; m < M; ++m) {
          auto v = F_value(d, s + std::polar(r, 2 * kPi * (m + 0.5) / M), ctx);
          acc += v.value;
          err = std::max(err, v.est_error);
        }
        return {s, 0, acc / double(M), err};
      }
      const int q = prov.modulus();
      cplx acc = 0.0;
      double err = 0.0;
      for (int a = 1; a <= q; ++a) {
        const int chi = prov.character(a);
        if (chi == 0) continue;
        auto h = hurwitz_zeta_detailed(s, double(a) / q, 0, ctx);
        acc += double(chi) * h.value;
        err += h.est_error;
      }
      const cplx scale = std::exp(-s * std::log(double(q)));
      return {s, 0, scale * acc, std::abs(scale) * err};
    }
    case ProviderKind::cusp_form_tau:
      break;
  }
  throw Error(ErrorKind::range, "F_value: no analytic continuation available for provider " + to_string(prov.kind()));
}

/// F^(0..jmax)(s) from one Cauchy circle. The constant F(s) is subtracted from
/// the samples so that derivatives of nearly constant F keep full relative
/// accuracy.
inline std::vector<LValue> F_taylor(const SelbergDatum& d, cplx s, int jmax, const EvalContext& ctx = {}) {
  if (jmax < 0 || jmax > kMaxFDerivative)
    throw Error(ErrorKind::unsupported, "F_derivative: order must lie in [0, 12]");
  const LValue center = F_value(d, s, ctx);
  std::vector<LValue> out{center};
  if (jmax == 0) return out;

  const double rho = ctx.cauchy_radius;
  if (d.pole_order > 0 && std::abs(s - 1.0) < 2.0 * rho)
    throw Error(ErrorKind::geometry, "F_derivative: Cauchy circle of radius " + std::to_string(rho) +
                                         " comes within twice its radius of the pole at s = 1; use a smaller radius");
  if (!EvalBox::contains(s + rho) || !EvalBox::contains(s - rho) || !EvalBox::contains(s + cplx(0, rho)) ||
      !EvalBox::contains(s - cplx(0, rho)))
    throw Error(ErrorKind::geometry, "F_derivative: Cauchy circle leaves the supported box; use a smaller radius");

  const int M = ctx.cauchy_nodes;
  std::vector<cplx> samples(M);
  std::vector<cplx> nodes(M);
  double max_abs = std::abs(center.value), max_err = center.est_error;
  for (int m = 0; m < M; ++m) {
    nodes[m] = std::polar(1.0, 2 * kPi * m / M);
    LValue v = F_value(d, s + rho * nodes[m], ctx);
    samples[m] = v.value - center.value;
    max_abs = std::max(max_abs, std::abs(v.value));
    max_err = std::max(max_err, v.est_error);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  for (int j = 1; j <= jmax; ++j) {
    detail::CompensatedSum acc;
    for (int m = 0; m < M; ++m) acc.add(samples[m] * std::conj(detail::int_pow(nodes[m], j)));
    const double scale = detail::factorial(j) / std::pow(rho, j);
    out.push_back({s, j, acc.value() / double(M) * scale, scale * (max_err + 4 * eps * max_abs)});
  }
  return out;
}

inline LValue F_derivative(const SelbergDatum& d, cplx s, int j, const EvalContext& ctx = {}) {
  if (j == 0) return F_value(d, s, ctx);
  return F_taylor(d, s, j, ctx).back();
}

}  // namespace hardyz
