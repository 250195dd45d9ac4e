#include "rkp/reports.hpp"

#include <cstdio>
#include <sstream>

#include "rkp/errors.hpp"
#include "rkp/psdo_algebra.hpp"
#include "rkp/string_ops.hpp"

namespace rkp::reports {

namespace {

using nlohmann::json;
using pearcey::Which;

void check_r(int r) { require(r >= 2, ErrorKind::invalid_argument, "--r must be at least 2"); }

std::string number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

json complex_json(pearcey::Complex z) { return json::array({z.real(), z.imag()}); }

void precision_hint(int needed, const std::string& what) {
  fail(ErrorKind::insufficient_precision,
       what + " needs order >= " + std::to_string(needed) + "; increase --order");
}

int resolve_order(const std::optional<int>& order, int budget, const std::string& what) {
  if (!order) return budget;
  require(*order >= 0, ErrorKind::invalid_argument, "--order must be nonnegative");
  if (*order < budget) precision_hint(budget, what);
  return *order;
}

Report verify_ortho(const VerifyRequest& q) {
  const int max = q.max.value_or(6);
  require(max >= 0, ErrorKind::invalid_argument, "--max must be nonnegative");
  const int budget = string_ops::ortho_order_budget(q.r, max, max);
  const int order = resolve_order(q.order, budget, "ortho up to m=n=" + std::to_string(max));
  const auto a = string_ops::solve_a(q.r, order);
  const auto rotated = string_ops::rotated_a(a, q.r);

  Report rep{"verify", true, {}};
  json checks = json::array();
  for (int m = 0; m <= max; ++m) {
    for (int n = 0; n <= max; ++n) {
      const Rational res = string_ops::ortho_residue_with(rotated, a, m, n);
      const bool ok = res == 0;
      rep.pass = rep.pass && ok;
      checks.push_back({{"m", m}, {"n", n}, {"residue", rkp::to_string(res)}, {"pass", ok}});
    }
  }
  rep.body = {{"target", "ortho"}, {"r", q.r},       {"order", order}, {"required_order", budget},
              {"margin", order - budget}, {"checks", checks}};
  return rep;
}

Report verify_concomitant(const VerifyRequest& q) {
  const int order = resolve_order(q.order, 1, "concomitant");
  const auto sum = string_ops::concomitant_sum(q.r, order);
  const auto expected = string_ops::concomitant_expected(q.r);
  const bool ok = sum == expected.truncated(sum.trunc());
  Report rep{"verify", ok, {}};
  rep.body = {{"target", "concomitant"},
              {"r", q.r},
              {"order", order},
              {"value", sum.to_string()},
              {"expected", expected.to_string()},
              {"exact_down_to", -sum.trunc()},
              {"margin", sum.trunc() - 1},
              {"checks", json::array({{{"name", "concomitant"}, {"pass", ok}}})}};
  return rep;
}

Report verify_psi(const VerifyRequest& q) {
  const int count = q.n.value_or(5);
  require(count >= 0, ErrorKind::invalid_argument, "--n must be nonnegative");
  const int budget = string_ops::psi_order_budget(q.r, count);
  const int order = resolve_order(q.order, budget, "psi-init up to n=" + std::to_string(count));
  const auto values = string_ops::psi_initial_check(q.r, order, count);
  Report rep{"verify", true, {}};
  json checks = json::array();
  json list = json::array();
  for (int i = 0; i <= count; ++i) {
    const Rational want = i == 0 ? 1 : 0;
    const bool ok = values[i] == want;
    rep.pass = rep.pass && ok;
    list.push_back(rkp::to_string(values[i]));
    checks.push_back({{"n", i}, {"value", rkp::to_string(values[i])}, {"expected", rkp::to_string(want)}, {"pass", ok}});
  }
  rep.body = {{"target", "psi-init"}, {"r", q.r},       {"order", order}, {"required_order", budget},
              {"margin", order - budget}, {"values", list}, {"checks", checks}};
  return rep;
}

Report verify_ode(const VerifyRequest& q) {
  const int order = resolve_order(q.order, 1, "ode-residual");
  const auto a = string_ops::solve_a(q.r, order);
  const auto d = string_ops::solve_d(q.r, order);
  const auto ra = string_ops::a_residual(a, q.r);
  const auto rd = string_ops::d_residual(d, a, q.r);
  Report rep{"verify", ra.is_zero() && rd.is_zero(), {}};
  rep.body = {{"target", "ode-residual"},
              {"r", q.r},
              {"order", order},
              {"checks", json::array({{{"name", "a"}, {"residual", ra.to_string()}, {"exact_down_to", -ra.trunc()},
                                       {"pass", ra.is_zero()}},
                                      {{"name", "d"}, {"residual", rd.to_string()}, {"exact_down_to", -rd.trunc()},
                                       {"pass", rd.is_zero()}}})},
              {"margin", std::min(ra.trunc(), rd.trunc())}};
  return rep;
}

Report verify_flow_commute(const VerifyRequest& q) {
  const int max = q.max.value_or(5);
  require(max >= 1, ErrorKind::invalid_argument, "--max must be at least 1");
  psdo::FlowSystem system(q.r);
  Report rep{"verify", true, {}};
  json checks = json::array();
  for (int m = 1; m <= max; ++m) {
    for (int n = m + 1; n <= max; ++n) {
      const bool ok = psdo::flow_commute_check(system, m, n);
      rep.pass = rep.pass && ok;
      checks.push_back({{"m", m}, {"n", n}, {"pass", ok}});
    }
  }
  rep.body = {{"target", "flow-commute"}, {"r", q.r}, {"max", max}, {"checks", checks}};
  return rep;
}

std::string pretty_coeffs(const json& b) {
  std::ostringstream os;
  const std::string name = b["which"].get<std::string>();
  os << "r = " << b["r"].get<int>() << ", " << name << "_1.." << name << "_" << b["order"].get<int>() << "\n";
  for (const auto& c : b["coefficients"]) {
    os << "  " << name << "_" << c["k"].get<int>() << " = " << c["value"].get<std::string>() << "\n";
  }
  return os.str();
}

std::string pretty_verify(const Report& rep) {
  const json& b = rep.body;
  std::ostringstream os;
  os << "verify " << b["target"].get<std::string>() << " (r = " << b["r"].get<int>();
  if (b.contains("order")) os << ", order " << b["order"].get<int>();
  os << "): " << (rep.pass ? "PASS" : "FAIL") << "\n";
  if (b.contains("value")) os << "  value: " << b["value"].get<std::string>() << "\n";
  if (b.contains("values")) {
    os << "  values: [";
    for (std::size_t i = 0; i < b["values"].size(); ++i) {
      os << (i ? ", " : "") << b["values"][i].get<std::string>();
    }
    os << "]\n";
  }
  if (b.contains("margin")) os << "  margin: " << b["margin"].get<int>() << "\n";
  int passed = 0;
  for (const auto& c : b["checks"]) {
    if (c["pass"].get<bool>()) {
      ++passed;
      continue;
    }
    os << "  failed: " << c.dump() << "\n";
  }
  os << "  " << passed << "/" << b["checks"].size() << " checks passed\n";
  return os.str();
}

std::string pretty_flow(const json& b) {
  std::ostringstream os;
  const int r = b["r"].get<int>();
  for (const auto& e : b["flow"]) {
    const std::string lhs = r == 2 ? "u" : "u_" + std::to_string(e["alpha"].get<int>());
    os << lhs << "_t = " << e["rhs"].get<std::string>() << "\n";
  }
  return os.str();
}

std::string pretty_pearcey(const Report& rep) {
  const json& b = rep.body;
  std::ostringstream os;
  os << b["which"].get<std::string>() << "(z) at z = (" << number(b["z"][0].get<double>()) << ", "
     << number(b["z"][1].get<double>()) << "), r = " << b["r"].get<int>() << "\n"
     << "  value      (" << number(b["value"][0].get<double>()) << ", " << number(b["value"][1].get<double>())
     << ")\n"
     << "  truncation K = " << b["truncation"].get<int>() << ": (" << number(b["series"][0].get<double>()) << ", "
     << number(b["series"][1].get<double>()) << ")\n"
     << "  gap        " << number(b["gap"].get<double>()) << "\n"
     << "  bound      " << number(b["bound"].get<double>()) << "\n"
     << "  status     " << b["status"].get<std::string>() << "\n";
  return os.str();
}

}  // namespace

Format parse_format(std::string_view text) {
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  if (text == "pretty") return Format::pretty;
  fail(ErrorKind::invalid_argument, "unknown format '" + std::string(text) + "' (json, csv, pretty)");
}

const char* to_string(Format format) {
  switch (format) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    case Format::pretty: return "pretty";
  }
  return "?";
}

Report coeffs(int r, Which which, int order) {
  check_r(r);
  require(order >= 0, ErrorKind::invalid_argument, "--order must be nonnegative");
  const auto bundle = string_ops::solve_bundle(r, order);
  json list = json::array();
  for (int k = 1; k <= order; ++k) {
    const Rational c = which == Which::a ? bundle.a_coeff(k) : bundle.d_coeff(k);
    list.push_back({{"k", k}, {"value", rkp::to_string(c)}});
  }
  return {"coeffs", true, {{"r", r}, {"which", pearcey::to_string(which)}, {"order", order}, {"coefficients", list}}};
}

Report verify(const VerifyRequest& request) {
  check_r(request.r);
  const std::string& t = request.target;
  if (t == "ortho") return verify_ortho(request);
  if (t == "concomitant") return verify_concomitant(request);
  if (t == "psi-init") return verify_psi(request);
  if (t == "ode-residual") return verify_ode(request);
  if (t == "flow-commute") return verify_flow_commute(request);
  fail(ErrorKind::invalid_argument,
       "unknown verify target '" + t + "' (ortho, concomitant, psi-init, ode-residual, flow-commute)");
}

Report flow(int r, int m) {
  check_r(r);
  require(m >= 1, ErrorKind::invalid_argument, "--m must be at least 1");
  const auto rhs = psdo::flow_rhs(m, r);
  json list = json::array();
  for (const auto& [alpha, p] : rhs) {
    list.push_back({{"alpha", alpha}, {"rhs", p.to_string(r == 2)}, {"terms", psdo::to_json(p)}});
  }
  return {"flow", true, {{"r", r}, {"m", m}, {"flow", list}}};
}

Report pearcey(int r, Which which, pearcey::Complex z, int terms, double tolerance) {
  check_r(r);
  require(terms >= 0, ErrorKind::invalid_argument, "--terms must be nonnegative");
  require(tolerance > 0.0, ErrorKind::invalid_argument, "--tol must be positive");
  pearcey::ContourSpec spec;
  spec.r = r;
  spec.tolerance = tolerance;
  const auto g = pearcey::asym_gap(z, terms, which, spec);
  Report rep{"pearcey", g.pass, {}};
  rep.body = {{"z", complex_json(z)},
              {"value", complex_json(g.evaluation.value)},
              {"truncation", terms},
              {"gap", g.gap},
              {"bound", g.bound},
              {"r", r},
              {"which", pearcey::to_string(which)},
              {"series", complex_json(g.truncation)},
              {"error_estimate", g.evaluation.error_estimate},
              {"contour", pearcey::to_string(g.evaluation.contour)},
              {"asserted", g.asserted},
              {"status", !g.asserted ? "REPORTED" : (g.pass ? "PASS" : "FAIL")}};
  return rep;
}

std::string render(const Report& report, Format format) {
  switch (format) {
    case Format::json: {
      json out = report.body;
      out["command"] = report.command;
      out["pass"] = report.pass;
      return out.dump(2) + "\n";
    }
    case Format::csv: {
      if (report.command != "coeffs") {
        fail(ErrorKind::configuration, "csv output is only available for coeffs");
      }
      std::string out = "k," + report.body["which"].get<std::string>() + "_k\n";
      for (const auto& c : report.body["coefficients"]) {
        out += std::to_string(c["k"].get<int>()) + "," + c["value"].get<std::string>() + "\n";
      }
      return out;
    }
    case Format::pretty:
      if (report.command == "coeffs") return pretty_coeffs(report.body);
      if (report.command == "verify") return pretty_verify(report);
      if (report.command == "flow") return pretty_flow(report.body);
      return pretty_pearcey(report);
  }
  return {};
}

}  // namespace rkp::reports
