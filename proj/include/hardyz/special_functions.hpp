#pragma once

// Complex log-gamma, polygamma and Hurwitz zeta (with s-derivatives) in
// double precision. Everything upstream is built on these three kernels.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "hardyz/context.hpp"

namespace hardyz {

namespace detail {

/// B_{2k} for k = 0..15, exact rationals rendered to double.
inline constexpr std::array<double, 16> kBernoulliEven = {
    1.0,
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
};

inline cplx int_pow(cplx z, int n) {  // z^n, n >= 0
  cplx r = 1.0;
  while (n > 0) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

inline bool is_gamma_pole(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

/// Truncated power series in a small increment eps, used to take exact
/// s-derivatives of the Euler-Maclaurin tail terms. Coefficient i holds the
/// eps^i coefficient, so the j-th derivative is j! * c[j].
class Jet {
 public:
  explicit Jet(int order, cplx c0 = 0.0) : c_(order + 1, cplx(0.0)) { c_[0] = c0; }

  static Jet linear(int order, cplx value) {  // value + eps
    Jet j(order, value);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }
  static Jet exp_scaled(int order, double rate) {  // exp(rate * eps)
    Jet j(order, 1.0);
    for (int i = 1; i <= order; ++i) j.c_[i] = j.c_[i - 1] * rate / double(i);
    return j;
  }
  static Jet reciprocal_linear(int order, cplx u) {  // 1 / (u + eps)
    Jet j(order);
    cplx inv = 1.0 / u;
    cplx p = inv;
    for (int i = 0; i <= order; ++i) {
      j.c_[i] = (i % 2 == 0 ? 1.0 : -1.0) * p;
      p *= inv;
    }
    return j;
  }

  int order() const { return int(c_.size()) - 1; }
  cplx operator[](int i) const { return c_[i]; }
  cplx derivative(int j) const { return factorial(j) * c_[j]; }

  Jet& operator*=(const Jet& o) {
    std::vector<cplx> r(c_.size(), cplx(0.0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t k = 0; i + k < c_.size(); ++k) r[i + k] += c_[i] * o.c_[k];
    c_ = std::move(r);
    return *this;
  }
  Jet& operator*=(cplx x) {
    for (auto& v : c_) v *= x;
    return *this;
  }

 private:
  std::vector<cplx> c_;
};

}  // namespace detail

/// log Gamma(z). Principal branch for Re z > 0; elsewhere the branch obtained
/// by summing principal logs along the upward recurrence (cut along the
/// negative real axis), which keeps every caller's phase continuous.
inline cplx log_gamma(cplx z) {
  if (detail::is_gamma_pole(z)) throw Error(ErrorKind::domain, "log_gamma: pole of Gamma at nonpositive integer");
  constexpr double kShift = 10.0;
  cplx shift_sum = 0.0;
  while (z.real() < kShift) {
    shift_sum += std::log(z);
    z += 1.0;
  }
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx p = inv;
  for (int k = 1; k <= 15; ++k) {
    cplx term = detail::kBernoulliEven[k] / (2.0 * k * (2.0 * k - 1.0)) * p;
    series += term;
    if (std::abs(term) < 1e-18 * std::abs(series)) break;
    p *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series - shift_sum;
}

/// psi^(m)(z), the m-th derivative of the digamma function, m <= 16.
inline cplx polygamma(int m, cplx z) {
  if (m < 0 || m > 16) throw Error(ErrorKind::unsupported, "polygamma: order must lie in [0, 16]");
  if (detail::is_gamma_pole(z)) throw Error(ErrorKind::domain, "polygamma: pole at nonpositive integer");
  const double threshold = 15.0 + 2.0 * m;
  const double mfact = detail::factorial(m);
  const double sign_m = (m % 2 == 0) ? 1.0 : -1.0;

  // psi^(m)(z) = psi^(m)(z+N) - (-1)^m m! sum_{j<N} (z+j)^{-m-1}
  detail::CompensatedSum recurrence;
  while (z.real() < threshold) {
    recurrence.add(detail::int_pow(1.0 / z, m + 1));
    z += 1.0;
  }

  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx asym;
  if (m == 0) {
    asym = std::log(z) - 0.5 * inv;
    cplx p = inv2;
    for (int k = 1; k <= 15; ++k) {
      cplx term = detail::kBernoulliEven[k] / (2.0 * k) * p;
      asym -= term;
      if (std::abs(term) < 1e-18 * std::abs(asym)) break;
      p *= inv2;
    }
  } else {
    cplx zm = detail::int_pow(inv, m);  // z^{-m}
    cplx sum = detail::factorial(m - 1) * zm + 0.5 * mfact * zm * inv;
    cplx p = zm * inv2;
    for (int k = 1; k <= 15; ++k) {
      cplx term = detail::kBernoulliEven[k] * (detail::factorial(2 * k + m - 1) / detail::factorial(2 * k)) * p;
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      p *= inv2;
    }
    asym = -sign_m * sum;  // (-1)^{m+1} * sum
  }
  return asym - sign_m * mfact * recurrence.value();
}

struct HurwitzResult {
  cplx value;
  double est_error;
};

/// d^j/ds^j zeta(s, a) for a in (0, 1], j <= 4, by Euler-Maclaurin with the
/// tail terms differentiated analytically.
inline HurwitzResult hurwitz_zeta_detailed(cplx s, double a, int j, const EvalContext& ctx = {}) {
  if (s == cplx(1.0, 0.0)) throw Error(ErrorKind::pole, "hurwitz_zeta: pole at s = 1");
  if (!(a > 0.0 && a <= 1.0)) throw Error(ErrorKind::domain, "hurwitz_zeta: a must lie in (0, 1]");
  if (j < 0 || j > 4) throw Error(ErrorKind::unsupported, "hurwitz_zeta: derivative order must lie in [0, 4]");

  const int n_terms = ctx.em_cutoff(s);
  detail::CompensatedSum direct;
  double magnitude = 0.0;
  double phase_var = 0.0;  // rounding of s * log x turns into a phase error of size eps |s log x|
  for (int n = 0; n < n_terms; ++n) {
    const double x = n + a;
    const double lx = std::log(x);
    cplx term = std::exp(-s * lx);
    if (j > 0) term *= std::pow(-lx, double(j));
    const double size = std::abs(term);
    magnitude += size;
    phase_var += std::pow(size * std::abs(s * lx), 2);
    direct.add(term);
  }

  const double x = n_terms + a;
  const double lx = std::log(x);
  const cplx xs = std::exp(-s * lx);  // x^{-s}
  const detail::Jet shift = detail::Jet::exp_scaled(j, -lx);

  detail::Jet integral = detail::Jet::reciprocal_linear(j, s - 1.0);
  integral *= shift;
  integral *= xs * x;

  detail::Jet half = shift;
  half *= 0.5 * xs;

  cplx tail = integral.derivative(j) + half.derivative(j);
  magnitude += std::abs(integral.derivative(j)) + std::abs(half.derivative(j));

  // Rising factorial (s)_{2k-1} as a jet, extended two factors per k.
  detail::Jet rising = detail::Jet::linear(j, s);
  double last = 0.0;
  const int bern = std::min(ctx.em_bernoulli, 15);
  for (int k = 1; k <= bern; ++k) {
    if (k > 1) {
      rising *= detail::Jet::linear(j, s + double(2 * k - 3));
      rising *= detail::Jet::linear(j, s + double(2 * k - 2));
    }
    detail::Jet term = rising;
    term *= shift;
    term *= xs * std::pow(x, 1.0 - 2.0 * k) * (detail::kBernoulliEven[k] / detail::factorial(2 * k));
    cplx d = term.derivative(j);
    tail += d;
    last = std::abs(d);
    magnitude += last;
  }
  const double eps = std::numeric_limits<double>::epsilon();
  return {direct.value() + tail, last + 4.0 * eps * magnitude + eps * std::sqrt(phase_var)};
}

inline cplx hurwitz_zeta(cplx s, double a, int j = 0, const EvalContext& ctx = {}) {
  return hurwitz_zeta_detailed(s, a, j, ctx).value;
}

}  // namespace hardyz
