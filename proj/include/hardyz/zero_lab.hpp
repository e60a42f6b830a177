#pragma once

// Zero scanning for Z_F^(k), the interlacing audit, on-line vs. asymptotic
// zero counts with the argument term S(T; F_k), rectangle winding counts and
// the mirror-sum check for d/dt (Z^(k+1)/Z^(k)).

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "hardyz/fk_chain.hpp"
#include "hardyz/parallel.hpp"

namespace hardyz {

struct ZeroRecord {
  double gamma;
  double residual;  // |Z^(k)(gamma)|
  double bracket;   // final bracket width
};

struct ZeroTable {
  std::string datum;
  int k = 0;
  double t0 = 0, t1 = 0;
  std::vector<ZeroRecord> records;
  std::vector<double> advisory;  // suspected tangential zeros, never counted
};

struct InterlaceGap {
  double gamma_left;
  double gamma_right;
  std::vector<double> inner_zeros;
  int count;
};

struct InterlaceReport {
  std::string datum;
  int k = 0;
  double t0 = 0, t1 = 0;
  std::vector<InterlaceGap> gaps;
  int violations = 0;
  int rolle_failures = 0;  // gaps with count < 1
};

struct CountReport {
  std::string datum;
  double T = 0;
  int k = 0;
  int n_line = 0;
  double theta_term = 0;
  double s_measured = 0;
  double residual = 0;
  double residual_bound = 0;
};

struct ArgumentS {
  double vertical;    // (1/pi) arg change from sigma_{F,k} to sigma_{F,k} + iT
  double horizontal;  // (1/pi) arg change from sigma_{F,k} + iT to 1/2 + iT
  double total() const { return vertical + horizontal; }
};

struct Rectangle {
  double sigma_min, sigma_max, t_min, t_max;
};

enum class Selector { F_k, f_k };

struct MirrorReport {
  std::string datum;
  int k = 0;
  double t = 0;
  double window = 0;
  double lhs = 0;
  double truncated_sum = 0;
  double tail_bound = 0;
  double fitted_c = 0;
  double c_limit = 0;
  bool agree = false;
};

namespace detail {

struct Root {
  double x;
  double fx;
  double bracket;
};

/// Brent's bracketing zero finder. Requires fa * fb < 0. The returned bracket
/// [x, x +- bracket] still contains a sign change.
template <class Fn>
Root brent_root(Fn&& f, double a, double b, double fa, double fb, double tol) {
  const double eps = std::numeric_limits<double>::epsilon();
  double c = a, fc = fa, d = b - a, e = d;
  for (int iter = 0; iter < 300; ++iter) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2 * eps * std::abs(b) + 0.5 * tol;
    const double m = 0.5 * (c - b);
    if (fb == 0) return {b, fb, 0.0};
    if (std::abs(m) <= tol1) return {b, fb, std::abs(c - b)};
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double s = fb / fa, p, q;
      if (a == c) {
        p = 2 * m * s;
        q = 1 - s;
      } else {
        double qq = fa / fc, r = fb / fc;
        p = s * (2 * m * qq * (qq - r) - (b - a) * (r - 1));
        q = (qq - 1) * (r - 1) * (s - 1);
      }
      if (p > 0)
        q = -q;
      else
        p = -p;
      if (2 * p < std::min(3 * m * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = e = m;
      }
    } else {
      d = e = m;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (m > 0 ? tol1 : -tol1);
    fb = f(b);
  }
  return {b, fb, std::abs(c - b)};
}

/// Golden-section search for a sign flip of sign_ref * f inside [a, c], where
/// b is an interior sample with value fb. Returns the point where the minimum
/// of sign_ref * f was found (and its value).
template <class Fn>
std::pair<double, double> golden_dip(Fn&& f, double a, double b, double c, double fb, double sign_ref) {
  const double ratio = 0.3819660112501051;
  double x = b, fx = sign_ref * fb;
  for (int iter = 0; iter < 48 && fx > 0 && (c - a) > 1e-7; ++iter) {
    double u = (x - a > c - x) ? x - ratio * (x - a) : x + ratio * (c - x);
    double fu = sign_ref * f(u);
    if (fu < fx) {
      if (u < x)
        c = x;
      else
        a = x;
      x = u;
      fx = fu;
    } else {
      if (u < x)
        a = u;
      else
        c = u;
    }
  }
  return {x, fx};
}

inline void check_scan_range(double t0, double t1) {
  if (!(t0 >= 5 && t0 < t1 && t1 <= 500))
    throw Error(ErrorKind::range, "scan range must satisfy 5 <= t0 < t1 <= 500");
}

/// Sample grid with step scan_safety * pi / ((d/2) log t + |c|).
inline std::vector<double> scan_grid(const SelbergDatum& d, double t0, double t1, const EvalContext& ctx) {
  std::vector<double> grid{t0};
  double t = t0;
  while (t < t1) {
    t = std::min(t1, t + ctx.scan_safety * kPi / phase_rate_proxy(d, t));
    grid.push_back(t);
  }
  return grid;
}

/// Sign-change zeros of fn over the given grid, refined with Brent. Pairs of
/// zeros hidden between samples are recovered by probing local minima of |fn|.
template <class Fn>
void zeros_on_grid(Fn&& fn, const std::vector<double>& grid, const EvalContext& ctx, std::vector<ZeroRecord>& records,
                   std::vector<double>& advisory) {
  const unsigned jobs = ctx.worker_count();
  auto values = parallel_map<double>(grid.size(), jobs, [&](std::size_t i) { return fn(grid[i]); });

  struct Bracket {
    double a, b, fa, fb;
  };
  std::vector<Bracket> brackets;
  std::vector<std::size_t> dips;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (values[i] == 0.0) {
      records.push_back({grid[i], 0.0, 0.0});
      continue;
    }
    if (values[i] * values[i + 1] < 0) brackets.push_back({grid[i], grid[i + 1], values[i], values[i + 1]});
    if (i > 0 && values[i - 1] * values[i] > 0 && values[i] * values[i + 1] > 0 &&
        std::abs(values[i]) < std::abs(values[i - 1]) && std::abs(values[i]) < std::abs(values[i + 1]))
      dips.push_back(i);
  }
  if (grid.size() > 1 && values.back() == 0.0) records.push_back({grid.back(), 0.0, 0.0});

  struct DipResult {
    double x, fx;
  };
  auto dip_results = parallel_map<DipResult>(dips.size(), jobs, [&](std::size_t n) {
    const std::size_t i = dips[n];
    const double sign = values[i] > 0 ? 1.0 : -1.0;
    auto [x, fx] = golden_dip(fn, grid[i - 1], grid[i], grid[i + 1], values[i], sign);
    return DipResult{x, sign * fx};
  });
  for (std::size_t n = 0; n < dips.size(); ++n) {
    const std::size_t i = dips[n];
    const auto& r = dip_results[n];
    if (r.fx * values[i] < 0) {
      brackets.push_back({grid[i - 1], r.x, values[i - 1], r.fx});
      brackets.push_back({r.x, grid[i + 1], r.fx, values[i + 1]});
    } else if (std::abs(r.fx) < 1e-4) {
      advisory.push_back(r.x);
    }
  }

  auto refined = parallel_map<ZeroRecord>(brackets.size(), jobs, [&](std::size_t n) {
    const auto& br = brackets[n];
    Root root = brent_root(fn, br.a, br.b, br.fa, br.fb, 0.5 * ctx.refine_tol);
    return ZeroRecord{root.x, std::abs(root.fx), root.bracket};
  });
  records.insert(records.end(), refined.begin(), refined.end());
  std::sort(records.begin(), records.end(), [](const ZeroRecord& a, const ZeroRecord& b) { return a.gamma < b.gamma; });
  std::sort(advisory.begin(), advisory.end());
}

}  // namespace detail

inline ZeroTable scan_zeros(const SelbergDatum& d, int k, double t0, double t1, const EvalContext& ctx = {}) {
  detail::check_scan_range(t0, t1);
  detail::check_order(k, 6, "scan_zeros");
  ZeroTable table{d.name, k, t0, t1, {}, {}};
  auto fn = [&](double t) { return Z_k(d, t, k, ctx).value; };
  detail::zeros_on_grid(fn, detail::scan_grid(d, t0, t1, ctx), ctx, table.records, table.advisory);
  return table;
}

/// Zeros of Z^(k) in (0, upper] by dense uniform sampling (step 0.01).
inline int low_strip_count(const SelbergDatum& d, int k, double upper, const EvalContext& ctx = {}) {
  const int n = std::max(1, int(std::ceil(upper / 0.01)));
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = upper * (i + 1) / n;
  std::vector<ZeroRecord> records;
  std::vector<double> advisory;
  detail::zeros_on_grid([&](double t) { return Z_k(d, t, k, ctx).value; }, grid, ctx, records, advisory);
  return int(records.size());
}

inline InterlaceReport interlace_audit(const SelbergDatum& d, int k, double t0, double t1, const EvalContext& ctx = {}) {
  InterlaceReport report{d.name, k, t0, t1, {}, 0, 0};
  auto base = scan_zeros(d, k, t0, t1, ctx);
  if (base.records.size() < 2) return report;
  auto next = scan_zeros(d, k + 1, t0, t1, ctx);
  for (std::size_t i = 0; i + 1 < base.records.size(); ++i) {
    InterlaceGap gap{base.records[i].gamma, base.records[i + 1].gamma, {}, 0};
    for (const auto& r : next.records)
      if (r.gamma > gap.gamma_left && r.gamma < gap.gamma_right) gap.inner_zeros.push_back(r.gamma);
    gap.count = int(gap.inner_zeros.size());
    if (gap.count != 1) ++report.violations;
    if (gap.count < 1) ++report.rolle_failures;
    report.gaps.push_back(std::move(gap));
  }
  return report;
}

namespace detail {

/// Continuous argument of F_k along the straight segment a -> b, starting from
/// arg_start at a. Steps halve whenever the phase moves by more than pi/4.
template <class Eval>
double track_argument(Eval&& eval, cplx a, cplx b, cplx value_a, double arg_start) {
  const double length = std::abs(b - a);
  const cplx dir = (b - a) / length;
  constexpr double h_max = 0.25, h_min = 1e-9;
  double tau = 0, h = 0.05, arg = arg_start;
  cplx prev = value_a;
  while (tau < length) {
    const double step = std::min(h, length - tau);
    const cplx s = a + (tau + step) * dir;
    const cplx v = eval(s, tau + step);
    const double delta = std::arg(v / prev);
    if (std::abs(delta) > kPi / 4) {
      h = 0.5 * step;
      if (h < h_min)
        throw Error(ErrorKind::tracking, "argument tracking: phase jump persists below the minimum step near s = " +
                                             std::to_string(s.real()) + " + " + std::to_string(s.imag()) + "i");
      continue;
    }
    arg += delta;
    prev = v;
    tau += step;
    if (std::abs(delta) < kPi / 16) h = std::min(h_max, 2 * step);
  }
  return arg;
}

}  // namespace detail

/// S(T; F_k) split into its vertical and horizontal legs. The vertical leg
/// starts at sigma_{F,k} + i (the real point may be a pole of psi_F) and
/// verifies that Re(-psi_F), Re A_k and Re g_k stay positive along
/// sigma = sigma_{F,k}; for k = 0 only Re F > 0 is required.
inline ArgumentS argument_S_parts(const SelbergDatum& d, int k, double T, const EvalContext& ctx = {}) {
  const double sigma = ctx.sigma_right(k);
  auto verified = [&](cplx s, double) {
    auto v = F_k_value(d, s, k, ctx);
    bool ok = v.g_k.real() > 0;
    if (k > 0) ok = ok && v.decomposition_defined && -psi_F(d, s, 0, ctx).real() > 0 && v.A_k.real() > 0;
    if (!ok)
      throw Error(ErrorKind::tracking, "sigma_{F,k} = " + std::to_string(sigma) +
                                           " fails the positivity check for Re(-psi_F), Re A_k, Re g_k at t = " +
                                           std::to_string(s.imag()) + "; raise sigma_right_base");
    return v.F_k;
  };
  auto plain = [&](cplx s, double) { return F_k_value(d, s, k, ctx).F_k; };

  const cplx start(sigma, 1.0), corner(sigma, T), end(0.5, T);
  const cplx v0 = verified(start, 0);
  // With every factor of (-psi/2)^k A_k g_k in the right half-plane, the
  // continuous argument from the real axis is the sum of principal factor args.
  double arg0 = std::arg(v0);
  if (k > 0) {
    auto v = F_k_value(d, start, k, ctx);
    arg0 = k * std::arg(-0.5 * psi_F(d, start, 0, ctx)) + std::arg(v.A_k) + std::arg(v.g_k);
  }
  const double arg_corner = detail::track_argument(verified, start, corner, v0, arg0);
  const cplx v_corner = plain(corner, 0);
  const double arg_end = detail::track_argument(plain, corner, end, v_corner, arg_corner);
  return {arg_corner / kPi, (arg_end - arg_corner) / kPi};
}

inline double argument_S(const SelbergDatum& d, int k, double T, const EvalContext& ctx = {}) {
  return argument_S_parts(d, k, T, ctx).total();
}

inline CountReport count_compare(const SelbergDatum& d, int k, double T, const EvalContext& ctx = {}) {
  if (!(T >= 20 && T <= 500)) throw Error(ErrorKind::range, "count_compare requires 20 <= T <= 500");
  CountReport r;
  r.datum = d.name;
  r.T = T;
  r.k = k;
  r.n_line = low_strip_count(d, k, 5.0, ctx) + int(scan_zeros(d, k, 5.0, T, ctx).records.size());
  r.theta_term = theta_F(d, T, ctx).theta / kPi;
  r.s_measured = argument_S(d, k, T, ctx);
  r.residual = r.n_line - r.theta_term - r.s_measured;
  r.residual_bound = (k == 0) ? 1.5 : 3.0;
  return r;
}

namespace detail {

/// (d/ds) log of the selector, from the exact recursions
/// F_k' = F_{k+1} + psi F_k / 2 and f_k' = f_{k+1} + psi f_k / 2.
inline cplx log_derivative(const SelbergDatum& d, Selector sel, int k, cplx s, const EvalContext& ctx) {
  if (sel == Selector::F_k) {
    auto b = chain_bundle(d, s, k + 1, ctx);
    return b.F[k + 1] / b.F[k] + 0.5 * b.psi;
  }
  auto psi = psi_jet(d, s, k + 1, ctx);
  return partition_sum(k + 1, psi, k + 1) / partition_sum(k, psi, k) + 0.5 * psi[0];
}

/// Adaptive Gauss-Kronrod (7/15) integral of g over [0, 1].
template <class G>
cplx gauss_kronrod(G&& g, double a, double b, double tol, int depth) {
  static constexpr double xk[8] = {0.991455371120812639, 0.949107912342758525, 0.864864423359769073,
                                   0.741531185599394440, 0.586087235467691130, 0.405845151377397167,
                                   0.207784955007898468, 0.0};
  static constexpr double wk[8] = {0.022935322010529225, 0.063092092629978553, 0.104790010322250184,
                                   0.140653259715525919, 0.169004726639267903, 0.190350578064785410,
                                   0.204432940075298892, 0.209482141084727828};
  static constexpr double wg[4] = {0.129484966168869693, 0.279705391489276668, 0.381830050505118945,
                                   0.417959183673469388};
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cplx k15 = wk[7] * g(c), g7 = wg[3] * g(c);
  for (int i = 0; i < 7; ++i) {
    const cplx f1 = g(c - h * xk[i]), f2 = g(c + h * xk[i]);
    k15 += wk[i] * (f1 + f2);
    if (i % 2 == 1) g7 += wg[i / 2] * (f1 + f2);
  }
  k15 *= h;
  g7 *= h;
  if (std::abs(k15 - g7) <= tol || depth <= 0) {
    if (std::abs(k15 - g7) > tol)
      throw Error(ErrorKind::inconclusive_contour, "contour integral did not converge; shift the rectangle");
    return k15;
  }
  return gauss_kronrod(g, a, c, 0.5 * tol, depth - 1) + gauss_kronrod(g, c, b, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Number of zeros of the selector inside the rectangle: the winding number
/// plus the orders of the selector's poles inside. F_k rectangles must have
/// t_min >= 1 so that no real-axis singularity is enclosed; f_k rectangles may
/// enclose psi_F poles (each contributes a pole of order k).
inline int contour_count(const SelbergDatum& d, Selector sel, int k, const Rectangle& rect,
                         const EvalContext& ctx = {}) {
  if (!(rect.sigma_min < rect.sigma_max && rect.t_min < rect.t_max))
    throw Error(ErrorKind::range, "rectangle bounds must be increasing");
  if (!EvalBox::contains({rect.sigma_min - ctx.cauchy_radius, rect.t_max + ctx.cauchy_radius}) ||
      !EvalBox::contains({rect.sigma_max + ctx.cauchy_radius, rect.t_min - ctx.cauchy_radius}))
    throw Error(ErrorKind::range, "rectangle leaves the supported evaluation box");
  if (sel == Selector::F_k && rect.t_min < 1)
    throw Error(ErrorKind::geometry, "F_k rectangles require t_min >= 1");
  detail::check_order(k, sel == Selector::F_k ? kMaxChainOrder - 1 : kMaxChainOrder, "contour_count");

  const double proximity = 2.0 * std::sqrt(ctx.abs_tol);
  const cplx corners[5] = {{rect.sigma_min, rect.t_min},
                           {rect.sigma_max, rect.t_min},
                           {rect.sigma_max, rect.t_max},
                           {rect.sigma_min, rect.t_max},
                           {rect.sigma_min, rect.t_min}};
  cplx total = 0.0;
  for (int e = 0; e < 4; ++e) {
    const cplx a = corners[e], b = corners[e + 1];
    auto integrand = [&](double u) {
      const cplx s = a + u * (b - a);
      const cplx L = detail::log_derivative(d, sel, k, s, ctx);
      if (1.0 / std::abs(L) < proximity)
        throw Error(ErrorKind::inconclusive_contour, "rectangle boundary passes within " + std::to_string(proximity) +
                                                         " of a zero near s = " + std::to_string(s.real()) + " + " +
                                                         std::to_string(s.imag()) + "i");
      return L * (b - a);
    };
    total += detail::gauss_kronrod(integrand, 0.0, 1.0, 1e-7, 14);
  }
  const double winding = (total / cplx(0.0, 2 * kPi)).real();
  const double rounded = std::round(winding);
  if (std::abs(winding - rounded) >= 0.1)
    throw Error(ErrorKind::inconclusive_contour,
                "winding number " + std::to_string(winding) + " is not within 0.1 of an integer; shrink or shift the rectangle");
  int poles = 0;
  if (sel == Selector::f_k && rect.t_min < 0 && rect.t_max > 0)
    poles = k * int(psi_poles(d, rect.sigma_min, rect.sigma_max).size());
  return int(rounded) + poles;
}

/// Compares d/dt (Z^(k+1)/Z^(k))(t) = Z^(k+2)/Z^(k) - (Z^(k+1)/Z^(k))^2 with
/// -sum 1/(t - gamma_k)^2 over zeros within the window. The fitted constant is
/// C = t * max(0, |lhs + sum| - tail_bound); agreement means C <= c_limit.
inline MirrorReport mirror_sum_check(const SelbergDatum& d, int k, double t, double window,
                                     const EvalContext& ctx = {}, double c_limit = 10.0) {
  if (!(window > 0 && window <= std::min(t - 5.0, 500.0 - t)))
    throw Error(ErrorKind::range, "mirror_sum_check requires 0 < window <= min(t - 5, 500 - t)");
  detail::check_order(k + 2, 6, "mirror_sum_check");
  MirrorReport r;
  r.datum = d.name;
  r.k = k;
  r.t = t;
  r.window = window;
  r.c_limit = c_limit;
  auto zeros = scan_zeros(d, k, t - window, t + window, ctx);
  double sum = 0;
  for (const auto& z : zeros.records) {
    if (std::abs(t - z.gamma) < ctx.refine_tol)
      throw Error(ErrorKind::proximity, "t lies within refine_tol of the zero " + std::to_string(z.gamma));
    sum += 1.0 / ((t - z.gamma) * (t - z.gamma));
  }
  auto z = Z_chain(d, t, k + 2, ctx);
  const double q1 = z[k + 1].value / z[k].value;
  r.lhs = z[k + 2].value / z[k].value - q1 * q1;
  r.truncated_sum = sum;
  const double density = theta_F(d, t, ctx).theta_prime / kPi;
  r.tail_bound = 2.0 * density / window;
  r.fitted_c = t * std::max(0.0, std::abs(r.lhs + r.truncated_sum) - r.tail_bound);
  r.agree = r.fitted_c <= c_limit;
  return r;
}

}  // namespace hardyz
