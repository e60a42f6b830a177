#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <thread>

namespace hardyz {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Error taxonomy. The CLI maps `kind()` onto process exit codes.
enum class ErrorKind {
  catalog,          // unknown datum name
  axiom_violation,  // datum fails a Selberg-class invariant
  domain,           // argument outside the function's domain (gamma pole, bad a)
  pole,             // evaluation exactly at a pole of F or H
  excluded_region,  // inside an exclusion circle around a psi_F pole
  range,            // outside a supported evaluation box
  unsupported,      // order/derivative index above the implemented cap
  geometry,         // Cauchy circle touches a singularity
  precision,        // integer overflow in exact coefficient expansion
  inconclusive_contour,
  tracking,
  proximity,        // point too close to a zero ordinate
  config,           // invalid EvalContext / CLI configuration
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Numeric policy shared by every evaluator. All routines take it by const
/// reference; a default-constructed context reproduces the documented defaults.
struct EvalContext {
  double abs_tol = 1e-12;
  // Euler-Maclaurin direct sum length: max(em_min_terms, em_scale * |Im s|).
  int em_min_terms = 20;
  double em_scale = 3.0;
  int em_bernoulli = 12;
  double cauchy_radius = 0.25;
  int cauchy_nodes = 64;
  double exclusion_radius = 0.1;
  // sigma_{F,k} = sigma_right_base + sigma_right_slope * k
  double sigma_right_base = 6.0;
  double sigma_right_slope = 2.0;
  double refine_tol = 1e-9;
  double scan_safety = 0.25;
  unsigned jobs = 0;  // 0 = hardware concurrency

  int em_cutoff(cplx s) const {
    double n = std::max<double>(em_min_terms, std::ceil(em_scale * std::abs(s.imag())));
    return static_cast<int>(n);
  }
  double sigma_right(int k) const { return sigma_right_base + sigma_right_slope * k; }
  unsigned worker_count() const {
    if (jobs != 0) return jobs;
    return std::max(1u, std::thread::hardware_concurrency());
  }

  /// Throws ErrorKind::config naming the first violated invariant.
  void validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorKind::config, "invalid context: " + what); };
    if (!(abs_tol > 0)) fail("abs_tol must be positive");
    if (em_min_terms < 1) fail("em_min_terms must be positive");
    if (!(em_scale > 0)) fail("em_scale must be positive");
    if (em_bernoulli < 1 || em_bernoulli > 15) fail("em_bernoulli must lie in [1, 15]");
    if (!(cauchy_radius > 0 && cauchy_radius < 0.5)) fail("cauchy_radius must lie in (0, 0.5)");
    if (cauchy_nodes < 8) fail("cauchy_nodes must be at least 8");
    if (!(exclusion_radius > 0 && exclusion_radius < 0.5)) fail("exclusion_radius must lie in (0, 0.5)");
    if (!(sigma_right_base > 1)) fail("sigma_right_base must exceed 1");
    if (!(sigma_right_slope >= 0)) fail("sigma_right_slope must be nonnegative");
    if (!(refine_tol > 0)) fail("refine_tol must be positive");
    if (!(scan_safety > 0 && scan_safety < 1)) fail("scan_safety must lie in (0, 1)");
  }
};

namespace detail {

/// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(cplx x) {
    add_real(re_, re_c_, x.real());
    add_real(im_, im_c_, x.imag());
  }
  cplx value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_real(double& sum, double& comp, double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
};

inline double factorial(int n) {
  double r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

/// i^k for integer k (k may be negative).
inline cplx ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

}  // namespace detail
}  // namespace hardyz
