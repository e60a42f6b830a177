#pragma once

// Selberg-class datum (a_F(n), Q, lambda_j, mu_j, omega, m_F) and the
// coefficient providers backing it.

#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <string>
#include <vector>

#include "hardyz/context.hpp"

namespace hardyz {

enum class ProviderKind { constant_one, dirichlet_character, cusp_form_tau };

inline std::string to_string(ProviderKind k) {
  switch (k) {
    case ProviderKind::constant_one: return "constant-one";
    case ProviderKind::dirichlet_character: return "dirichlet-character";
    case ProviderKind::cusp_form_tau: return "cusp-form-tau";
  }
  return "unknown";
}

/// Real Dirichlet coefficients a_F(n), memoized. The cache only grows, and
/// extension is idempotent, so concurrent readers always see a valid prefix.
class CoefficientProvider {
 public:
  static std::shared_ptr<const CoefficientProvider> constant_one() {
    return std::shared_ptr<const CoefficientProvider>(new CoefficientProvider(ProviderKind::constant_one, 1, {}, 0));
  }

  /// values[r] = chi(r) for r = 0..q-1.
  static std::shared_ptr<const CoefficientProvider> dirichlet_character(int modulus, std::vector<int> values) {
    if (modulus < 1 || int(values.size()) != modulus)
      throw Error(ErrorKind::axiom_violation, "character table length must equal the modulus");
    for (int r = 0; r < modulus; ++r) {
      if (values[r] < -1 || values[r] > 1)
        throw Error(ErrorKind::axiom_violation, "character values must be real (0 or +-1)");
      if ((std::gcd(r, modulus) != 1) != (values[r] == 0))
        throw Error(ErrorKind::axiom_violation, "character must vanish exactly on residues sharing a factor with q");
    }
    return std::shared_ptr<const CoefficientProvider>(
        new CoefficientProvider(ProviderKind::dirichlet_character, modulus, std::move(values), 0));
  }

  /// tau(n) / n^{normalization} from q * prod (1 - q^m)^24.
  static std::shared_ptr<const CoefficientProvider> cusp_form_tau(double normalization = 5.5) {
    return std::shared_ptr<const CoefficientProvider>(
        new CoefficientProvider(ProviderKind::cusp_form_tau, 1, {}, normalization));
  }

  ProviderKind kind() const { return kind_; }
  int modulus() const { return modulus_; }
  const std::vector<int>& character_table() const { return table_; }
  double normalization() const { return normalization_; }

  int character(long long n) const { return table_[static_cast<std::size_t>(n % modulus_)]; }

  /// a_F(1..n_max); empty when n_max == 0.
  std::vector<double> values(std::size_t n_max) const {
    if (n_max == 0) return {};
    {
      std::shared_lock lock(cache_->mutex);
      if (cache_->values.size() >= n_max)
        return {cache_->values.begin(), cache_->values.begin() + static_cast<std::ptrdiff_t>(n_max)};
    }
    std::unique_lock lock(cache_->mutex);
    if (cache_->values.size() < n_max) extend(n_max);
    return {cache_->values.begin(), cache_->values.begin() + static_cast<std::ptrdiff_t>(n_max)};
  }

  /// Exact tau(1..n_max). Throws ErrorKind::precision on 128-bit overflow.
  static std::vector<__int128> ramanujan_tau(std::size_t n_max) {
    // P(q) = prod (1 - q^m) by the pentagonal number theorem, then
    // P^24 by the power recurrence b_n = (1/n) sum_k ((alpha+1)k - n) p_k b_{n-k}.
    std::vector<int> pent(n_max, 0);
    if (n_max > 0) pent[0] = 1;
    for (long long k = 1;; ++k) {
      long long g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 >= static_cast<long long>(n_max)) break;
      int sign = (k % 2 == 0) ? 1 : -1;
      pent[g1] += sign;
      if (g2 < static_cast<long long>(n_max)) pent[g2] += sign;
    }
    std::vector<std::size_t> support;
    for (std::size_t k = 1; k < n_max; ++k)
      if (pent[k] != 0) support.push_back(k);
    std::vector<__int128> b(n_max, 0);
    if (n_max > 0) b[0] = 1;
    constexpr long long alpha = 24;
    for (std::size_t n = 1; n < n_max; ++n) {
      __int128 acc = 0;
      for (std::size_t k : support) {
        if (k > n) break;
        __int128 weight = static_cast<__int128>((alpha + 1) * static_cast<long long>(k) - static_cast<long long>(n));
        __int128 prod;
        if (__builtin_mul_overflow(weight * pent[k], b[n - k], &prod) || __builtin_add_overflow(acc, prod, &acc))
          throw Error(ErrorKind::precision, "tau expansion overflowed 128-bit integers");
      }
      b[n] = acc / static_cast<__int128>(n);
    }
    return b;  // b[n] = tau(n+1)
  }

 private:
  struct Cache {
    mutable std::shared_mutex mutex;
    std::vector<double> values;
  };

  CoefficientProvider(ProviderKind kind, int modulus, std::vector<int> table, double normalization)
      : kind_(kind), modulus_(modulus), table_(std::move(table)), normalization_(normalization),
        cache_(std::make_shared<Cache>()) {}

  void extend(std::size_t n_max) const {
    auto& v = cache_->values;
    switch (kind_) {
      case ProviderKind::constant_one:
        v.assign(n_max, 1.0);
        break;
      case ProviderKind::dirichlet_character:
        v.resize(n_max);
        for (std::size_t n = 1; n <= n_max; ++n) v[n - 1] = character(static_cast<long long>(n));
        break;
      case ProviderKind::cusp_form_tau: {
        auto tau = ramanujan_tau(n_max);
        v.resize(n_max);
        for (std::size_t n = 1; n <= n_max; ++n)
          v[n - 1] = static_cast<double>(tau[n - 1]) / std::pow(double(n), normalization_);
        break;
      }
    }
  }

  ProviderKind kind_;
  int modulus_;
  std::vector<int> table_;
  double normalization_;
  std::shared_ptr<Cache> cache_;
};

/// One L-function together with its gamma factor
/// gamma(s) = Q^s prod Gamma(lambda_j s + mu_j).
struct SelbergDatum {
  std::string name;
  double q_scale = 1.0;
  std::vector<double> lambdas;
  std::vector<double> mus;
  double omega = 1.0;
  int pole_order = 0;
  std::shared_ptr<const CoefficientProvider> coefficients;

  double degree() const {
    double d = 0;
    for (double l : lambdas) d += l;
    return 2.0 * d;
  }
  double log_q() const { return std::log(q_scale); }
  /// arg(omega) in {0, pi}.
  double omega_arg() const { return omega > 0 ? 0.0 : kPi; }
};

/// Structural axiom checks; the numeric functional-equation check lives in
/// the catalog since it needs the L-evaluator.
inline void validate_structure(const SelbergDatum& d, std::size_t bound_terms = 10000) {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::axiom_violation, "datum '" + d.name + "' violates: " + what);
  };
  if (d.name.empty()) fail("name must be nonempty");
  if (!(d.q_scale > 0)) fail("Q > 0");
  if (d.lambdas.empty()) fail("lambdas nonempty");
  if (d.lambdas.size() != d.mus.size()) fail("lambdas and mus have equal length");
  for (double l : d.lambdas)
    if (!(l > 0)) fail("every lambda_j > 0");
  for (double m : d.mus)
    if (!(m >= 0)) fail("every mu_j >= 0");
  if (d.omega != 1.0 && d.omega != -1.0) fail("omega in {-1, +1}");
  if (d.pole_order < 0) fail("m_F >= 0");
  if (!d.coefficients) fail("coefficient provider present");
  auto a = d.coefficients->values(bound_terms);
  if (a.empty() || a[0] != 1.0) fail("a_F(1) = 1");
  for (std::size_t n = 1; n <= a.size(); ++n)
    if (std::abs(a[n - 1]) > 2.0 * std::sqrt(double(n))) fail("|a_F(n)| <= 2 sqrt(n) for n <= 10^4");
}

inline std::vector<double> coefficients(const SelbergDatum& d, std::size_t n_max) {
  return d.coefficients->values(n_max);
}

}  // namespace hardyz
