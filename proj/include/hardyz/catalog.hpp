#pragma once

// Built-in catalog of concrete L-functions. Each entry is checked against the
// structural axioms and against a numeric functional-equation residual before
// it is handed out.

#include <cmath>
#include <string>
#include <vector>

#include "hardyz/gamma_factor.hpp"
#include "hardyz/l_evaluator.hpp"
#include "hardyz/selberg.hpp"

namespace hardyz {

/// xi_F(s) = s^m (s-1)^m Q^s prod Gamma(lambda_j s + mu_j) F(s).
inline cplx completed_L(const SelbergDatum& d, cplx s, const EvalContext& ctx = {}) {
  cplx log_gamma_factor = s * d.log_q();
  for (std::size_t j = 0; j < d.lambdas.size(); ++j) log_gamma_factor += log_gamma(d.lambdas[j] * s + d.mus[j]);
  cplx poly = detail::int_pow(s * (s - 1.0), d.pole_order);
  return poly * std::exp(log_gamma_factor) * F_value(d, s, ctx).value;
}

/// Relative residual |xi(s) - omega xi(1-s)| / (1 + |xi(s)|).
inline double functional_equation_residual(const SelbergDatum& d, cplx s, const EvalContext& ctx = {}) {
  cplx a = completed_L(d, s, ctx), b = completed_L(d, 1.0 - s, ctx);
  return std::abs(a - d.omega * b) / (1.0 + std::abs(a));
}

inline const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"zeta", "chi3", "chi4", "chi5"};
  return names;
}

namespace detail {

inline SelbergDatum real_character_datum(std::string name, int q, std::vector<int> table, bool odd) {
  SelbergDatum d;
  d.name = std::move(name);
  d.q_scale = std::sqrt(q / kPi);
  d.lambdas = {0.5};
  d.mus = {odd ? 0.5 : 0.0};
  d.omega = 1.0;
  d.pole_order = 0;
  d.coefficients = CoefficientProvider::dirichlet_character(q, std::move(table));
  return d;
}

}  // namespace detail

inline SelbergDatum builtin(const std::string& name) {
  SelbergDatum d;
  if (name == "zeta") {
    d.name = "zeta";
    d.q_scale = 1.0 / std::sqrt(kPi);
    d.lambdas = {0.5};
    d.mus = {0.0};
    d.omega = 1.0;
    d.pole_order = 1;
    d.coefficients = CoefficientProvider::constant_one();
  } else if (name == "chi3") {
    d = detail::real_character_datum("chi3", 3, {0, 1, -1}, true);
  } else if (name == "chi4") {
    d = detail::real_character_datum("chi4", 4, {0, 1, 0, -1}, true);
  } else if (name == "chi5") {
    d = detail::real_character_datum("chi5", 5, {0, 1, -1, -1, 1}, false);
  } else if (name == "delta") {
    throw Error(ErrorKind::catalog,
                "catalog entry 'delta' is feature-gated and not enabled in this build "
                "(its tau coefficients remain available through CoefficientProvider::cusp_form_tau)");
  } else {
    throw Error(ErrorKind::catalog, "unknown catalog entry '" + name + "'");
  }
  validate_structure(d);
  if (double r = functional_equation_residual(d, cplx(0.3, 7.0)); !(r < 1e-9))
    throw Error(ErrorKind::axiom_violation,
                "datum '" + d.name + "' violates: functional equation residual " + std::to_string(r) + " >= 1e-9");
  return d;
}

}  // namespace hardyz
