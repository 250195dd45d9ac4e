// rkp: command-line front end over the rkp C library.
//
//   rkp coeffs  --r 2 --which d --order 2
//   rkp verify  concomitant --r 3 --order 12
//   rkp flow    --r 2 --m 3
//   rkp pearcey --r 2 --which a --z 4,0 --terms 3
//
// Exit codes: 0 pass, 1 check failed, 2 usage error, 3 insufficient precision.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rkp/rkp.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecision = 3;

struct Options {
  int r = 2;
  std::string which = "a";
  int order = -1;
  int m = -1;
  int n = -1;
  int max = -1;
  std::string z;
  int terms = 3;
  double tol = 1e-10;
  std::string format = "json";
  std::string output;
  std::string target;
};

int exit_code_for(rkp_status status) {
  switch (status) {
    case RKP_OK: return kExitPass;
    case RKP_PRECISION: return kExitPrecision;
    case RKP_INVALID_ARGUMENT:
    case RKP_DOMAIN:
    case RKP_CONFIGURATION:
    case RKP_PARSE: return kExitUsage;
    default: return kExitFail;
  }
}

rkp_format format_of(const std::string& name) {
  if (name == "csv") return RKP_FORMAT_CSV;
  if (name == "pretty") return RKP_FORMAT_PRETTY;
  return RKP_FORMAT_JSON;
}

rkp_which which_of(const std::string& name) { return name == "d" ? RKP_WHICH_D : RKP_WHICH_A; }

bool parse_point(const std::string& text, double& re, double& im) {
  // "re,im" or a bare real part
  std::istringstream in(text);
  im = 0.0;
  if (!(in >> re)) return false;
  in >> std::ws;
  if (in.eof()) return true;
  char comma = 0;
  if (!(in >> comma >> im) || comma != ',') return false;
  in >> std::ws;
  return in.eof();
}

int emit(rkp_status status, char* text, int passed, const Options& opt) {
  if (status != RKP_OK) {
    std::cerr << "rkp: " << rkp_status_name(status) << ": " << rkp_last_error() << "\n";
    return exit_code_for(status);
  }
  if (opt.output.empty()) {
    std::fputs(text, stdout);
  } else {
    std::ofstream file(opt.output, std::ios::binary);
    file << text;
    if (!file) {
      std::cerr << "rkp: cannot write " << opt.output << "\n";
      rkp_string_free(text);
      return kExitUsage;
    }
  }
  rkp_string_free(text);
  return passed ? kExitPass : kExitFail;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--r", opt.r, "Order r of the reduction (r >= 2)")->check(CLI::Range(2, 64));
  cmd->add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "pretty"}))
      ->envname("RKP_FORMAT");
  cmd->add_option("--output", opt.output, "Write the report to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact string-equation series, Lax flows and Pearcey integrals", "rkp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rkp_version());
  Options opt;

  auto* coeffs = app.add_subcommand("coeffs", "Print a_1..a_K or d_1..d_K as exact rationals");
  add_common(coeffs, opt);
  coeffs->add_option("--which", opt.which, "Series")->check(CLI::IsMember({"a", "d"}));
  coeffs->add_option("--order", opt.order, "Number of coefficients K")->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify", "Run an identity suite");
  add_common(verify, opt);
  verify->add_option("target", opt.target, "ortho | concomitant | psi-init | ode-residual | flow-commute")
      ->required()
      ->check(CLI::IsMember({"ortho", "concomitant", "psi-init", "ode-residual", "flow-commute"}));
  verify->add_option("--order", opt.order, "Truncation order (default: smallest sufficient)")
      ->check(CLI::NonNegativeNumber);
  verify->add_option("--max", opt.max, "Largest m, n (ortho, flow-commute)")->check(CLI::NonNegativeNumber);
  verify->add_option("--n", opt.n, "Largest n (psi-init)")->check(CLI::NonNegativeNumber);
  verify->add_option("--m", opt.m, "Largest m (alias of --max)")->check(CLI::NonNegativeNumber);

  auto* flow = app.add_subcommand("flow", "Print du_alpha/dt_m as differential polynomials");
  add_common(flow, opt);
  flow->add_option("--m", opt.m, "Flow index m")->required()->check(CLI::PositiveNumber);

  auto* pearcey = app.add_subcommand("pearcey", "Compare a contour integral with its asymptotic series");
  add_common(pearcey, opt);
  pearcey->add_option("--which", opt.which, "Integral")->check(CLI::IsMember({"a", "d"}));
  pearcey->add_option("--z", opt.z, "Evaluation point as re,im or a real number")->required();
  pearcey->add_option("--terms", opt.terms, "Truncation K")->check(CLI::NonNegativeNumber);
  pearcey->add_option("--tol", opt.tol, "Quadrature tolerance")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const rkp_format format = format_of(opt.format);
  char* text = nullptr;
  int passed = 0;

  rkp_status status;
  if (coeffs->parsed()) {
    const int order = opt.order < 0 ? 4 : opt.order;
    status = rkp_report_coeffs(opt.r, which_of(opt.which), order, format, &text, &passed);
  } else if (verify->parsed()) {
    const int max = opt.max >= 0 ? opt.max : opt.m;
    status = rkp_report_verify(opt.target.c_str(), opt.r, opt.order, max, opt.n, format, &text, &passed);
  } else if (flow->parsed()) {
    status = rkp_report_flow(opt.r, opt.m, format, &text, &passed);
  } else {
    double re = 0.0, im = 0.0;
    if (!parse_point(opt.z, re, im)) {
      std::cerr << "rkp: --z expects re,im or a real number (e.g. --z 4,0), got '" << opt.z << "'\n";
      return kExitUsage;
    }
    status = rkp_report_pearcey(opt.r, which_of(opt.which), re, im, opt.terms, opt.tol, format, &text, &passed);
  }
  return emit(status, text, passed, opt);
}
