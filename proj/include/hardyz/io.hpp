#pragma once

// Text output: 15-significant-digit numbers, ZeroTable / sample CSV, and JSON
// forms of the reports. Needs nlohmann/json (vendored as "json.hpp").

#include <charconv>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hardyz/catalog.hpp"
#include "hardyz/fk_chain.hpp"
#include "hardyz/zero_lab.hpp"

namespace hardyz {

/// Shortest %.15g rendering, independent of the C locale.
inline std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

/// x rounded to 15 significant digits; the JSON writer prints the shortest
/// round-trip form, so this caps printed digits at 15.
inline double round15(double x) {
  if (!std::isfinite(x)) return x;
  const std::string s = format_number(x);
  double y = 0;
  std::from_chars(s.data(), s.data() + s.size(), y);
  return y;
}

namespace detail {

inline nlohmann::json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round15(x);
}

inline nlohmann::json num(cplx z) { return nlohmann::json::array({num(z.real()), num(z.imag())}); }

inline nlohmann::json nums(const std::vector<double>& xs) {
  auto a = nlohmann::json::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}

}  // namespace detail

inline nlohmann::json to_json(const SelbergDatum& d) {
  return {{"name", d.name},
          {"Q", detail::num(d.q_scale)},
          {"lambdas", detail::nums(d.lambdas)},
          {"mus", detail::nums(d.mus)},
          {"omega", detail::num(d.omega)},
          {"m_F", d.pole_order},
          {"degree", detail::num(d.degree())},
          {"provider-kind", to_string(d.coefficients->kind())}};
}

inline nlohmann::json catalog_json() {
  auto a = nlohmann::json::array();
  for (const auto& name : catalog_names()) a.push_back(to_json(builtin(name)));
  return a;
}

inline nlohmann::json to_json(const ZDerivative& z) {
  return {{"t", detail::num(z.t)}, {"k", z.k}, {"value", detail::num(z.value)}, {"im_residual", detail::num(z.im_residual)}};
}

inline nlohmann::json to_json(const ChainValue& v) {
  return {{"s", detail::num(v.s)},     {"k", v.k},
          {"f_k", detail::num(v.f_k)}, {"F_k", detail::num(v.F_k)},
          {"A_k", detail::num(v.A_k)}, {"g_k", detail::num(v.g_k)},
          {"decomposition_defined", v.decomposition_defined}};
}

inline nlohmann::json to_json(const ZeroTable& t) {
  auto records = nlohmann::json::array();
  for (const auto& r : t.records)
    records.push_back({{"gamma", detail::num(r.gamma)}, {"residual", detail::num(r.residual)}, {"bracket", detail::num(r.bracket)}});
  return {{"datum", t.datum},     {"k", t.k},
          {"t0", detail::num(t.t0)}, {"t1", detail::num(t.t1)},
          {"records", records},   {"advisory", detail::nums(t.advisory)}};
}

inline nlohmann::json to_json(const InterlaceReport& r) {
  auto gaps = nlohmann::json::array();
  for (const auto& g : r.gaps)
    gaps.push_back({{"gamma_left", detail::num(g.gamma_left)},
                    {"gamma_right", detail::num(g.gamma_right)},
                    {"inner_zeros", detail::nums(g.inner_zeros)},
                    {"count", g.count}});
  return {{"datum", r.datum},         {"k", r.k},
          {"t0", detail::num(r.t0)},  {"t1", detail::num(r.t1)},
          {"gaps", gaps},             {"violations", r.violations},
          {"rolle_failures", r.rolle_failures}};
}

inline nlohmann::json to_json(const CountReport& r) {
  return {{"datum", r.datum},
          {"T", detail::num(r.T)},
          {"k", r.k},
          {"n_line", r.n_line},
          {"theta_term", detail::num(r.theta_term)},
          {"s_measured", detail::num(r.s_measured)},
          {"residual", detail::num(r.residual)},
          {"residual_bound", detail::num(r.residual_bound)}};
}

inline nlohmann::json to_json(const Rectangle& r) {
  return {{"sigma_min", detail::num(r.sigma_min)},
          {"sigma_max", detail::num(r.sigma_max)},
          {"t_min", detail::num(r.t_min)},
          {"t_max", detail::num(r.t_max)}};
}

inline nlohmann::json to_json(const MirrorReport& r) {
  return {{"datum", r.datum},
          {"k", r.k},
          {"t", detail::num(r.t)},
          {"window", detail::num(r.window)},
          {"lhs", detail::num(r.lhs)},
          {"truncated_sum", detail::num(r.truncated_sum)},
          {"tail_bound", detail::num(r.tail_bound)},
          {"fitted_c", detail::num(r.fitted_c)},
          {"c_limit", detail::num(r.c_limit)},
          {"agree", r.agree}};
}

/// Header `k,t,residual,bracket_width`, LF endings, rows sorted by t.
inline void write_zero_csv(std::ostream& out, const ZeroTable& t) {
  out << "k,t,residual,bracket_width\n";
  for (const auto& r : t.records)
    out << t.k << ',' << format_number(r.gamma) << ',' << format_number(r.residual) << ',' << format_number(r.bracket)
        << '\n';
}

struct SamplePoint {
  double t;
  double value;
};

inline void write_sample_csv(std::ostream& out, int k, const std::vector<SamplePoint>& pts) {
  out << "k,t,value\n";
  for (const auto& p : pts) out << k << ',' << format_number(p.t) << ',' << format_number(p.value) << '\n';
}

inline nlohmann::json to_json(int k, const std::vector<SamplePoint>& pts) {
  auto a = nlohmann::json::array();
  for (const auto& p : pts) a.push_back({{"t", detail::num(p.t)}, {"value", detail::num(p.value)}});
  return {{"k", k}, {"points", a}};
}

}  // namespace hardyz
