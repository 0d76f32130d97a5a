// dfrac: discrete fractional integrals and derivatives on uniform meshes.
//
// Subcommands: kernel, apply, evolve, holder, schauder, selftest.
// Exit codes: 0 success, 1 test failure, 2 usage/input error,
//             3 numerical non-convergence.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dfrac/csv.hpp"
#include "dfrac/errors.hpp"
#include "dfrac/fft.hpp"
#include "dfrac/fracops.hpp"
#include "dfrac/holder.hpp"
#include "dfrac/kernel.hpp"
#include "dfrac/quadrature.hpp"
#include "dfrac/schauder.hpp"
#include "dfrac/selftest.hpp"
#include "dfrac/semigroup.hpp"

namespace {

using nlohmann::json;

struct GlobalFlags {
  double tol = 1e-10;
  double h = 1.0;
  unsigned seed = 0;
};

dfrac::Side parse_side(const std::string& s) {
  if (s == "right") return dfrac::Side::Right;
  if (s == "left") return dfrac::Side::Left;
  throw CLI::ValidationError("--side must be 'right' or 'left'");
}

dfrac::GridFunction load_signal(const std::string& path, double h,
                                const std::string& extension,
                                std::vector<long>* zero_filled = nullptr) {
  dfrac::ParsedSignal sig = dfrac::parse_signal_file(path, h);
  if (zero_filled != nullptr) *zero_filled = sig.zero_filled;
  if (!sig.zero_filled.empty())
    std::cerr << "warning: " << sig.zero_filled.size()
              << " missing interior indices zero-filled\n";
  if (extension == "zero" || extension.empty()) {
    sig.fn.set_extension(dfrac::Extension::ZeroOutside);
  } else if (extension == "constant") {
    sig.fn.set_extension(dfrac::Extension::Constant);
  } else if (extension.rfind("decay:", 0) == 0) {
    double p = 0.0, c = 0.0;
    if (std::sscanf(extension.c_str(), "decay:%lf:%lf", &p, &c) != 2)
      throw CLI::ValidationError("--extension decay:p:c expected");
    sig.fn.set_extension(dfrac::Extension::Decay, {p, c});
  } else if (extension == "undefined") {
    sig.fn.set_extension(dfrac::Extension::Undefined);
  } else {
    throw CLI::ValidationError("unknown extension '" + extension + "'");
  }
  return sig.fn;
}

json report_skeleton(const std::string& command, const json& params,
                     const GlobalFlags& g) {
  json rep;
  rep["command"] = command;
  rep["parameters"] = params;
  rep["results"] = json::object();
  rep["tolerances"] = {{"tol", g.tol}};
  rep["flags"] = json::object();
  return rep;
}

void write_report(const std::string& path, const json& rep) {
  std::ofstream out(path);
  if (!out) throw dfrac::Error("cannot open report file: " + path);
  out << rep.dump(2) << "\n";
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"discrete fractional integrals/derivatives on uniform meshes"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help"); // frees -h for the mesh step
  app.fallthrough();
  GlobalFlags g;
  app.add_option("--tol", g.tol, "default tolerance")->capture_default_str();
  app.add_option("--h,-h", g.h, "mesh step")->capture_default_str();
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();

  // kernel ------------------------------------------------------------------
  auto* sk = app.add_subcommand("kernel", "dump a fractional kernel table");
  double k_alpha = 0.5;
  std::size_t k_max = 64;
  std::string k_method = "recurrence", k_out;
  sk->add_option("--alpha", k_alpha, "kernel order")->required();
  sk->add_option("--max-index", k_max, "last index M")->capture_default_str();
  sk->add_option("--method", k_method, "recurrence|loggamma")
      ->check(CLI::IsMember({"recurrence", "loggamma"}));
  sk->add_option("--out", k_out, "output CSV (n,lambda); stdout if omitted");

  // apply -------------------------------------------------------------------
  auto* sa = app.add_subcommand("apply", "apply a fractional operator");
  double a_order = -0.5;
  std::string a_side = "right", a_input, a_ext = "zero", a_method = "series",
              a_out;
  sa->add_option("--order", a_order,
                 "signed order: <0 integral, >0 derivative")->required();
  sa->add_option("--side", a_side, "right|left")
      ->check(CLI::IsMember({"right", "left"}));
  sa->add_option("--input", a_input, "input CSV (n,value)")->required();
  sa->add_option("--extension", a_ext, "zero|constant|decay:p:c|undefined");
  sa->add_option("--method", a_method, "series|fft|quadrature")
      ->check(CLI::IsMember({"series", "fft", "quadrature"}));
  sa->add_option("--out", a_out, "output CSV; stdout if omitted");

  // evolve ------------------------------------------------------------------
  auto* se = app.add_subcommand("evolve", "apply the translation semigroup");
  double e_t = 1.0;
  std::string e_side = "right", e_input, e_ext = "zero", e_out;
  se->add_option("--t", e_t, "time")->required();
  se->add_option("--side", e_side, "right|left")
      ->check(CLI::IsMember({"right", "left"}));
  se->add_option("--input", e_input, "input CSV (n,value)")->required();
  se->add_option("--extension", e_ext, "zero|constant|decay:p:c|undefined");
  se->add_option("--out", e_out, "output CSV; stdout if omitted");

  // holder ------------------------------------------------------------------
  auto* sh = app.add_subcommand("holder", "discrete Hoelder norm report");
  unsigned h_k = 0;
  double h_beta = 0.5;
  std::string h_input, h_report, h_ext = "zero";
  sh->add_option("--k", h_k, "difference depth k")->capture_default_str();
  sh->add_option("--beta", h_beta, "exponent in (0,1]")->required();
  sh->add_option("--input", h_input, "input CSV (n,value)")->required();
  sh->add_option("--extension", h_ext, "zero|constant|decay:p:c|undefined");
  sh->add_option("--report", h_report, "JSON report path; stdout if omitted");

  // schauder ----------------------------------------------------------------
  auto* ss = app.add_subcommand("schauder", "regularity-ratio sweep");
  std::string s_case = "i", s_alphas, s_betas, s_hs = "1,0.5,0.25,0.125",
              s_families = "bump,cusp,random,impulse", s_report,
              s_side = "right";
  double s_width = 30.0;
  ss->add_option("--case", s_case, "i|ii|iii|iv")
      ->check(CLI::IsMember({"i", "ii", "iii", "iv"}));
  ss->add_option("--side", s_side, "right|left")
      ->check(CLI::IsMember({"right", "left"}));
  ss->add_option("--alpha-list", s_alphas, "comma-separated")->required();
  ss->add_option("--beta-list", s_betas, "comma-separated (ignored for iv)");
  ss->add_option("--h-list", s_hs, "comma-separated mesh steps");
  ss->add_option("--families", s_families, "subset of bump,cusp,random,impulse");
  ss->add_option("--half-width", s_width, "physical window half-width");
  ss->add_option("--report", s_report, "JSON report path; stdout if omitted");

  // selftest ----------------------------------------------------------------
  auto* st = app.add_subcommand("selftest", "run the acceptance criteria");
  std::string t_filter;
  bool t_fault = false;
  st->add_option("--filter", t_filter, "run only criteria matching this text");
  st->add_flag("--inject-kernel-fault", t_fault,
               "corrupt a kernel table to prove the suite catches it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2; // usage error
  }

  if (sk->parsed()) {
    const dfrac::KernelTable t =
        k_method == "loggamma" ? dfrac::kernel_loggamma(k_alpha, k_max)
                               : dfrac::kernel_recurrence(k_alpha, k_max);
    if (k_out.empty())
      dfrac::write_kernel(std::cout, t);
    else
      dfrac::write_kernel_file(k_out, t);
    return 0;
  }

  if (sa->parsed()) {
    const dfrac::GridFunction u = load_signal(a_input, g.h, a_ext);
    const dfrac::OperatorSpec spec{parse_side(a_side), a_order, g.h};
    dfrac::GridFunction v = u;
    if (a_method == "series") {
      v = dfrac::frac_apply_general(u, spec, g.tol);
    } else if (a_method == "fft") {
      v = dfrac::fft_apply(u, spec);
    } else {
      if (a_order == 0.0 || std::fabs(a_order) >= 1.0)
        throw CLI::ValidationError(
            "--method quadrature requires 0 < |order| < 1");
      v = a_order < 0.0
              ? dfrac::frac_integral_quadrature(u, -a_order, spec.side)
              : dfrac::frac_derivative_quadrature(u, a_order, spec.side);
    }
    if (!v.all_valid())
      std::cerr << "warning: some output indices exceeded the tail tolerance "
                   "and are only formally computed\n";
    if (a_out.empty())
      dfrac::write_signal(std::cout, v);
    else
      dfrac::write_signal_file(a_out, v);
    return 0;
  }

  if (se->parsed()) {
    const dfrac::GridFunction u = load_signal(e_input, g.h, e_ext);
    const dfrac::GridFunction v =
        dfrac::apply_semigroup(u, e_t, parse_side(e_side), g.tol);
    if (!v.all_valid())
      std::cerr << "warning: some output indices depend on undeclared tails\n";
    if (e_out.empty())
      dfrac::write_signal(std::cout, v);
    else
      dfrac::write_signal_file(e_out, v);
    return 0;
  }

  if (sh->parsed()) {
    std::vector<long> filled;
    const dfrac::GridFunction u = load_signal(h_input, g.h, h_ext, &filled);
    const dfrac::HolderReport rep = dfrac::holder_norm(u, {h_k, h_beta});
    json params = {{"k", h_k}, {"beta", h_beta}, {"h", g.h},
                   {"input", h_input}, {"extension", h_ext}};
    json out = report_skeleton("holder", params, g);
    json semis = json::object(), sups = json::object(), args = json::object();
    for (const auto& [ls, val] : rep.seminorms)
      semis[std::to_string(ls.first) + "," + std::to_string(ls.second)] = val;
    for (const auto& [ls, val] : rep.sup_terms)
      sups[std::to_string(ls.first) + "," + std::to_string(ls.second)] = val;
    for (const auto& [ls, pair] : rep.argmax_pairs)
      args[std::to_string(ls.first) + "," + std::to_string(ls.second)] = {
          pair.first, pair.second};
    out["results"]["seminorms"] = semis;
    out["results"]["sup_terms"] = sups;
    out["results"]["argmax_pairs"] = args;
    out["results"]["norm"] = rep.norm;
    out["results"]["scan_window"] = {rep.window.n_min, rep.window.n_max};
    if (u.extension() == dfrac::Extension::ZeroOutside)
      out["results"]["stability"] =
          dfrac::double_window_stability(u, {h_k, h_beta});
    out["flags"]["zero_filled"] = filled;
    if (h_report.empty())
      std::cout << out.dump(2) << "\n";
    else
      write_report(h_report, out);
    return 0;
  }

  if (ss->parsed()) {
    const std::map<std::string, dfrac::SchauderCase> cases = {
        {"i", dfrac::SchauderCase::I},
        {"ii", dfrac::SchauderCase::II},
        {"iii", dfrac::SchauderCase::III},
        {"iv", dfrac::SchauderCase::IV}};
    std::vector<dfrac::TestFamily> fams;
    std::stringstream fs(s_families);
    std::string fname;
    while (std::getline(fs, fname, ',')) {
      if (fname == "bump") fams.push_back(dfrac::make_family(dfrac::FamilyKind::Bump));
      else if (fname == "cusp") fams.push_back(dfrac::make_family(dfrac::FamilyKind::Cusp));
      else if (fname == "random")
        fams.push_back(dfrac::make_family(dfrac::FamilyKind::RandomCompact,
                                          g.seed == 0 ? 1234 : g.seed));
      else if (fname == "impulse")
        fams.push_back(dfrac::make_family(dfrac::FamilyKind::Impulse));
      else throw CLI::ValidationError("unknown family '" + fname + "'");
    }
    const dfrac::SchauderSweepReport rep =
        dfrac::run_sweep(cases.at(s_case), fams, parse_list(s_alphas),
                         parse_list(s_betas), parse_list(s_hs), s_width,
                         parse_side(s_side));
    json params = {{"case", s_case},       {"alphas", parse_list(s_alphas)},
                   {"betas", parse_list(s_betas)}, {"h_list", parse_list(s_hs)},
                   {"families", s_families}, {"half_width", s_width},
                   {"seed", g.seed},        {"side", s_side}};
    json out = report_skeleton("schauder", params, g);
    json rows = json::array();
    for (const auto& e : rep.entries)
      rows.push_back({{"family", e.family}, {"alpha", e.alpha},
                      {"beta", e.beta}, {"h", e.h}, {"ratio", e.ratio}});
    json groups = json::array();
    for (const auto& gr : rep.groups)
      groups.push_back({{"family", gr.family}, {"alpha", gr.alpha},
                        {"beta", gr.beta}, {"max_over_h", gr.max_over_h},
                        {"min_over_h", gr.min_over_h}});
    out["results"]["ratios"] = rows;
    out["results"]["groups"] = groups;
    if (rep.has_entries) {
      out["results"]["max_ratio"] = rep.max_ratio;
      out["results"]["min_ratio"] = rep.min_ratio;
    }
    out["results"]["worst_group_spread"] = rep.worst_group_spread;
    out["results"]["doubling_relative_change"] = rep.doubling_relative_change;
    out["flags"]["has_entries"] = rep.has_entries;
    out["flags"]["all_finite"] = rep.all_finite;
    if (s_report.empty())
      std::cout << out.dump(2) << "\n";
    else
      write_report(s_report, out);
    return 0;
  }

  if (st->parsed()) {
    dfrac::SelftestOptions opt;
    opt.filter = t_filter;
    opt.inject_kernel_fault = t_fault;
    opt.seed = g.seed;
    const auto results = dfrac::run_selftest(opt, std::cout);
    if (results.empty()) {
      std::cerr << "selftest: no criteria match filter '" << t_filter << "'\n";
      return 2;
    }
    if (!dfrac::all_passed(results)) {
      json failures = json::array();
      for (const auto& c : results)
        if (!c.passed)
          failures.push_back({{"id", c.id}, {"name", c.name},
                              {"measured", c.measured}, {"limit", c.limit}});
      std::cout << "failures: " << failures.dump() << "\n";
      return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
  }
  return 2;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const dfrac::QuadratureNotConverged& e) {
    std::cerr << "error (non-convergence): " << e.what() << "\n";
    return 3;
  } catch (const dfrac::WindowTooSmall& e) {
    std::cerr << "error (non-convergence): " << e.what() << "\n";
    return 3;
  } catch (const dfrac::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
