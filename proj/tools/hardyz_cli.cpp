// hardyz: command-line front end for the Z-derivative library.
//
//   hardyz catalog
//   hardyz eval --datum D --k K (--t T | --s RE,IM)
//   hardyz zeros --datum D --k K --from A --to B --out PATH
//   hardyz interlace --datum D --k K --from A --to B
//   hardyz count --datum D --k K --T T
//   hardyz contour --datum D --k K --rect SMIN,SMAX,TMIN,TMAX [--selector fk]
//   hardyz mirror --datum D --k K --t T --window W
//   hardyz sample --datum D --k K --from A --to B --step H --out PATH
//
// Context overrides (--abs_tol, --refine_tol, ...) may also come from a flat
// `key = value` file given with --config; flags win over the file.
// Exit codes: 0 ok, 2 usage/domain/validation, 3 inconclusive contour or tracking.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hardyz/hardyz.hpp"
#include "hardyz/io.hpp"

namespace {

using namespace hardyz;

int exit_code(ErrorKind kind) {
  return (kind == ErrorKind::inconclusive_contour || kind == ErrorKind::tracking) ? 3 : 2;
}

struct Common {
  std::string datum = "zeta";
  int k = 0;
  std::string out;
  std::string format = "csv";  // zeros and sample only
};

void add_common(CLI::App* sub, Common& c, bool with_out, bool required_out = false) {
  sub->add_option("--datum", c.datum, "catalog name")->capture_default_str();
  sub->add_option("--k", c.k, "derivative order")->capture_default_str();
  if (with_out) {
    auto* o = sub->add_option("--out", c.out, "output path");
    if (required_out) o->required();
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::config, "cannot open output file " + path);
  f << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hardy Z-function derivatives of Selberg-class L-functions"};
  app.require_subcommand(1);
  app.fallthrough();

  EvalContext ctx;
  app.set_config("--config", "", "flat key = value file with context defaults");
  app.add_option("--abs_tol", ctx.abs_tol)->capture_default_str();
  app.add_option("--em_min_terms", ctx.em_min_terms)->capture_default_str();
  app.add_option("--em_scale", ctx.em_scale)->capture_default_str();
  app.add_option("--em_bernoulli", ctx.em_bernoulli)->capture_default_str();
  app.add_option("--cauchy_radius", ctx.cauchy_radius)->capture_default_str();
  app.add_option("--cauchy_nodes", ctx.cauchy_nodes)->capture_default_str();
  app.add_option("--exclusion_radius", ctx.exclusion_radius)->capture_default_str();
  app.add_option("--sigma_right_base", ctx.sigma_right_base)->capture_default_str();
  app.add_option("--sigma_right_slope", ctx.sigma_right_slope)->capture_default_str();
  app.add_option("--refine_tol", ctx.refine_tol)->capture_default_str();
  app.add_option("--scan_safety", ctx.scan_safety)->capture_default_str();
  app.add_option("--jobs", ctx.jobs, "worker threads for scans (0 = all cores)")->capture_default_str();

  Common c;
  double t = 0, from = 0, to = 0, step = 0, T = 0, window = 0;
  std::vector<double> s_parts, rect_parts;
  std::string selector = "Fk";

  auto* catalog = app.add_subcommand("catalog", "list the built-in data as JSON");

  auto* eval = app.add_subcommand("eval", "Z^(k)(t) on the critical line, or the chain at a complex point");
  add_common(eval, c, false);
  auto* t_opt = eval->add_option("--t", t, "ordinate");
  auto* s_opt = eval->add_option("--s", s_parts, "RE,IM")->delimiter(',')->expected(2);
  t_opt->excludes(s_opt);
  s_opt->excludes(t_opt);

  auto* zeros = app.add_subcommand("zeros", "refined zeros of Z^(k) on [from, to]");
  add_common(zeros, c, true, true);
  zeros->add_option("--from", from)->required();
  zeros->add_option("--to", to)->required();
  zeros->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  auto* interlace = app.add_subcommand("interlace", "zeros of Z^(k+1) between consecutive zeros of Z^(k)");
  add_common(interlace, c, true);
  interlace->add_option("--from", from)->required();
  interlace->add_option("--to", to)->required();

  auto* count = app.add_subcommand("count", "on-line count against theta/pi + S");
  add_common(count, c, true);
  count->add_option("--T", T)->required();

  auto* contour = app.add_subcommand("contour", "argument-principle zero count in a rectangle");
  add_common(contour, c, true);
  contour->add_option("--rect", rect_parts, "SMIN,SMAX,TMIN,TMAX")->delimiter(',')->expected(4)->required();
  contour->add_option("--selector", selector)->check(CLI::IsMember({"Fk", "fk"}))->capture_default_str();

  auto* mirror = app.add_subcommand("mirror", "d/dt (Z^(k+1)/Z^(k)) against the sum over nearby zeros");
  add_common(mirror, c, true);
  mirror->add_option("--t", t)->required();
  mirror->add_option("--window", window)->required();

  auto* sample = app.add_subcommand("sample", "plot data (t, Z^(k)(t)) on a uniform grid");
  add_common(sample, c, true, true);
  sample->add_option("--from", from)->required();
  sample->add_option("--to", to)->required();
  sample->add_option("--step", step)->required();
  sample->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    ctx.validate();
    if (catalog->parsed()) {
      emit("", dump(catalog_json()));
      return 0;
    }
    const SelbergDatum d = builtin(c.datum);

    if (eval->parsed()) {
      if (!s_parts.empty()) {
        emit("", dump(to_json(F_k_value(d, cplx(s_parts[0], s_parts[1]), c.k, ctx))));
      } else {
        emit("", dump(to_json(Z_k(d, t, c.k, ctx))));
      }
    } else if (zeros->parsed()) {
      // An empty or inverted range yields a header-only table.
      ZeroTable table{d.name, c.k, from, to, {}, {}};
      if (from < to) {
        table = scan_zeros(d, c.k, from, to, ctx);
      } else {
        detail::check_order(c.k, 6, "scan_zeros");
      }
      std::ostringstream os;
      if (c.format == "csv")
        write_zero_csv(os, table);
      else
        os << dump(to_json(table));
      emit(c.out, os.str());
    } else if (interlace->parsed()) {
      emit(c.out, dump(to_json(interlace_audit(d, c.k, from, to, ctx))));
    } else if (count->parsed()) {
      emit(c.out, dump(to_json(count_compare(d, c.k, T, ctx))));
    } else if (contour->parsed()) {
      Rectangle r{rect_parts[0], rect_parts[1], rect_parts[2], rect_parts[3]};
      const Selector sel = selector == "fk" ? Selector::f_k : Selector::F_k;
      const int n = contour_count(d, sel, c.k, r, ctx);
      nlohmann::json j = {{"datum", d.name}, {"selector", selector}, {"k", c.k}, {"rect", to_json(r)}, {"count", n}};
      emit(c.out, dump(j));
    } else if (mirror->parsed()) {
      emit(c.out, dump(to_json(mirror_sum_check(d, c.k, t, window, ctx))));
    } else if (sample->parsed()) {
      if (!(step > 0) || !(from <= to)) throw Error(ErrorKind::range, "sample needs step > 0 and from <= to");
      const auto n = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
      detail::check_order(c.k, kMaxChainOrder, "sample");
      auto values = detail::parallel_map<double>(n, ctx.worker_count(), [&](std::size_t i) {
        return Z_k(d, from + double(i) * step, c.k, ctx).value;
      });
      std::vector<SamplePoint> pts(n);
      for (std::size_t i = 0; i < n; ++i) pts[i] = {from + double(i) * step, values[i]};
      std::ostringstream os;
      if (c.format == "csv")
        write_sample_csv(os, c.k, pts);
      else
        os << dump(to_json(c.k, pts));
      emit(c.out, os.str());
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
