#include "rkp/rkp.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "rkp/errors.hpp"
#include "rkp/pearcey_numeric.hpp"
#include "rkp/psdo_algebra.hpp"
#include "rkp/reports.hpp"
#include "rkp/string_ops.hpp"

struct rkp_series {
  rkp::series::LaurentSeries value;
};

struct rkp_diffpoly {
  rkp::psdo::DiffPoly value;
};

namespace {

thread_local std::string last_error;

rkp_status status_of(rkp::ErrorKind kind) {
  switch (kind) {
    case rkp::ErrorKind::invalid_argument: return RKP_INVALID_ARGUMENT;
    case rkp::ErrorKind::domain: return RKP_DOMAIN;
    case rkp::ErrorKind::insufficient_precision: return RKP_PRECISION;
    case rkp::ErrorKind::invariant_violation: return RKP_INVARIANT;
    case rkp::ErrorKind::configuration: return RKP_CONFIGURATION;
    case rkp::ErrorKind::parse: return RKP_PARSE;
  }
  return RKP_INTERNAL;
}

template <class F>
rkp_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return RKP_OK;
  } catch (const rkp::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return RKP_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RKP_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RKP_INTERNAL;
  }
}

void need(const void* p, const char* name) {
  rkp::require(p != nullptr, rkp::ErrorKind::invalid_argument, std::string(name) + " must not be null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

rkp::pearcey::Which which_of(rkp_which w) {
  rkp::require(w == RKP_WHICH_A || w == RKP_WHICH_D, rkp::ErrorKind::invalid_argument, "which must be a or d");
  return w == RKP_WHICH_A ? rkp::pearcey::Which::a : rkp::pearcey::Which::d;
}

rkp::reports::Format format_of(rkp_format f) {
  switch (f) {
    case RKP_FORMAT_JSON: return rkp::reports::Format::json;
    case RKP_FORMAT_CSV: return rkp::reports::Format::csv;
    case RKP_FORMAT_PRETTY: return rkp::reports::Format::pretty;
  }
  rkp::fail(rkp::ErrorKind::invalid_argument, "unknown output format");
}

rkp_status emit_report(const rkp::reports::Report& rep, rkp_format format, char** out, int* passed) {
  *out = dup(rkp::reports::render(rep, format_of(format)));
  if (passed) *passed = rep.pass ? 1 : 0;
  return RKP_OK;
}

std::optional<int> optional_of(int v) { return v < 0 ? std::nullopt : std::optional<int>(v); }

}  // namespace

extern "C" {

const char* rkp_version(void) { return "0.1.0"; }

const char* rkp_status_name(rkp_status status) {
  switch (status) {
    case RKP_OK: return "ok";
    case RKP_INVALID_ARGUMENT: return "invalid_argument";
    case RKP_DOMAIN: return "domain";
    case RKP_PRECISION: return "insufficient_precision";
    case RKP_INVARIANT: return "invariant_violation";
    case RKP_CONFIGURATION: return "configuration";
    case RKP_PARSE: return "parse";
    case RKP_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* rkp_last_error(void) { return last_error.c_str(); }

void rkp_string_free(char* s) { std::free(s); }

rkp_status rkp_series_parse(const char* json, rkp_series** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    const auto j = nlohmann::json::parse(json);
    *out = new rkp_series{rkp::series::series_from_json(j)};
  });
}

rkp_status rkp_series_to_json(const rkp_series* s, char** out) {
  return guarded([&] {
    need(s, "series");
    need(out, "out");
    *out = dup(rkp::series::to_json(s->value).dump());
  });
}

rkp_status rkp_series_to_string(const rkp_series* s, char** out) {
  return guarded([&] {
    need(s, "series");
    need(out, "out");
    *out = dup(s->value.to_string());
  });
}

void rkp_series_free(rkp_series* s) { delete s; }

rkp_status rkp_series_add(const rkp_series* a, const rkp_series* b, rkp_series** out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = new rkp_series{rkp::series::series_add(a->value, b->value)};
  });
}

rkp_status rkp_series_mul(const rkp_series* a, const rkp_series* b, rkp_series** out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = new rkp_series{rkp::series::series_mul(a->value, b->value)};
  });
}

rkp_status rkp_series_residue(const rkp_series* s, char** out) {
  return guarded([&] {
    need(s, "series");
    need(out, "out");
    *out = dup(rkp::to_string(rkp::series::residue(s->value)));
  });
}

rkp_status rkp_series_coefficient(const rkp_series* s, int exponent, char** out) {
  return guarded([&] {
    need(s, "series");
    need(out, "out");
    *out = dup(rkp::to_string(s->value.coeff(exponent)));
  });
}

rkp_status rkp_series_trunc(const rkp_series* s, int* out) {
  return guarded([&] {
    need(s, "series");
    need(out, "out");
    *out = s->value.is_exact() ? -1 : s->value.trunc();
  });
}

rkp_status rkp_series_grading_class(const rkp_series* s, int r, int* out) {
  return guarded([&] {
    need(s, "series");
    need(out, "out");
    rkp::require(r >= 2, rkp::ErrorKind::invalid_argument, "r must be at least 2");
    *out = rkp::series::grading_class(s->value, r).value_or(-1);
  });
}

rkp_status rkp_apply_s(const rkp_series* s, int r, int adjoint, rkp_series** out) {
  return guarded([&] {
    need(s, "series");
    need(out, "out");
    auto v = adjoint ? rkp::string_ops::apply_S_star(s->value, r) : rkp::string_ops::apply_S(s->value, r);
    *out = new rkp_series{std::move(v)};
  });
}

rkp_status rkp_solve_a(int r, int order, rkp_series** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rkp_series{rkp::string_ops::solve_a(r, order)};
  });
}

rkp_status rkp_solve_d(int r, int order, rkp_series** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rkp_series{rkp::string_ops::solve_d(r, order)};
  });
}

rkp_status rkp_double_factorial(int n, int r, char** out) {
  return guarded([&] {
    need(out, "out");
    *out = dup(rkp::to_string(rkp::string_ops::double_factorial_r(n, r)));
  });
}

rkp_status rkp_ortho_residue(int r, int m, int n, int order, char** out) {
  return guarded([&] {
    need(out, "out");
    *out = dup(rkp::to_string(rkp::string_ops::ortho_residue(r, m, n, order)));
  });
}

rkp_status rkp_concomitant(int r, int order, rkp_series** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rkp_series{rkp::string_ops::concomitant_sum(r, order)};
  });
}

rkp_status rkp_flow_rhs(int m, int r, rkp_diffpoly*** out, size_t* count) {
  return guarded([&] {
    need(out, "out");
    need(count, "count");
    const auto rhs = rkp::psdo::flow_rhs(m, r);
    auto** array = static_cast<rkp_diffpoly**>(std::calloc(rhs.size() ? rhs.size() : 1, sizeof(rkp_diffpoly*)));
    if (!array) throw std::bad_alloc();
    std::size_t i = 0;
    try {
      for (const auto& [alpha, p] : rhs) array[i++] = new rkp_diffpoly{p};
    } catch (...) {
      rkp_diffpoly_array_free(array, i);
      throw;
    }
    *out = array;
    *count = rhs.size();
  });
}

rkp_status rkp_normal_coordinate(int alpha, int r, rkp_diffpoly** out) {
  return guarded([&] {
    need(out, "out");
    *out = new rkp_diffpoly{rkp::psdo::normal_coordinate(alpha, r)};
  });
}

rkp_status rkp_diffpoly_to_json(const rkp_diffpoly* p, char** out) {
  return guarded([&] {
    need(p, "diffpoly");
    need(out, "out");
    *out = dup(rkp::psdo::to_json(p->value).dump());
  });
}

rkp_status rkp_diffpoly_to_string(const rkp_diffpoly* p, int single_field, char** out) {
  return guarded([&] {
    need(p, "diffpoly");
    need(out, "out");
    *out = dup(p->value.to_string(single_field != 0));
  });
}

void rkp_diffpoly_free(rkp_diffpoly* p) { delete p; }

void rkp_diffpoly_array_free(rkp_diffpoly** array, size_t count) {
  if (!array) return;
  for (size_t i = 0; i < count; ++i) delete array[i];
  std::free(array);
}

void rkp_pearcey_default_options(int r, rkp_pearcey_options* out) {
  if (!out) return;
  const rkp::pearcey::ContourSpec spec;
  out->r = r;
  out->radius = spec.radius;
  out->origin_detour = spec.origin_detour;
  out->nodes_per_ray = spec.nodes_per_ray;
  out->tolerance = spec.tolerance;
  out->contour = RKP_CONTOUR_AUTO;
  out->enforce_sector = 1;
}

rkp_status rkp_pearcey_eval(rkp_which which, double z_re, double z_im, const rkp_pearcey_options* opts,
                            rkp_pearcey_result* out) {
  return guarded([&] {
    need(opts, "options");
    need(out, "out");
    rkp::pearcey::ContourSpec spec;
    spec.r = opts->r;
    spec.radius = opts->radius;
    spec.origin_detour = opts->origin_detour;
    spec.nodes_per_ray = opts->nodes_per_ray;
    spec.tolerance = opts->tolerance;
    spec.enforce_sector = opts->enforce_sector != 0;
    switch (opts->contour) {
      case RKP_CONTOUR_AUTO: spec.kind = rkp::pearcey::ContourKind::automatic; break;
      case RKP_CONTOUR_RAYS: spec.kind = rkp::pearcey::ContourKind::rays; break;
      case RKP_CONTOUR_SADDLE: spec.kind = rkp::pearcey::ContourKind::saddle; break;
      default: rkp::fail(rkp::ErrorKind::invalid_argument, "unknown contour kind");
    }
    const rkp::pearcey::Complex z{z_re, z_im};
    const auto e = which_of(which) == rkp::pearcey::Which::a ? rkp::pearcey::eval_A(z, spec)
                                                              : rkp::pearcey::eval_D(z, spec);
    out->value_re = e.value.real();
    out->value_im = e.value.imag();
    out->error_estimate = e.error_estimate;
    out->doubling_change = e.doubling_change;
    out->contour = e.contour == rkp::pearcey::ContourKind::rays ? RKP_CONTOUR_RAYS : RKP_CONTOUR_SADDLE;
  });
}

rkp_status rkp_report_coeffs(int r, rkp_which which, int order, rkp_format format, char** out, int* passed) {
  return guarded([&] {
    need(out, "out");
    emit_report(rkp::reports::coeffs(r, which_of(which), order), format, out, passed);
  });
}

rkp_status rkp_report_verify(const char* target, int r, int order, int max, int n, rkp_format format, char** out,
                             int* passed) {
  return guarded([&] {
    need(target, "target");
    need(out, "out");
    rkp::reports::VerifyRequest q;
    q.target = target;
    q.r = r;
    q.order = optional_of(order);
    q.max = optional_of(max);
    q.n = optional_of(n);
    emit_report(rkp::reports::verify(q), format, out, passed);
  });
}

rkp_status rkp_report_flow(int r, int m, rkp_format format, char** out, int* passed) {
  return guarded([&] {
    need(out, "out");
    emit_report(rkp::reports::flow(r, m), format, out, passed);
  });
}

rkp_status rkp_report_pearcey(int r, rkp_which which, double z_re, double z_im, int terms, double tolerance,
                              rkp_format format, char** out, int* passed) {
  return guarded([&] {
    need(out, "out");
    emit_report(rkp::reports::pearcey(r, which_of(which), {z_re, z_im}, terms, tolerance), format, out, passed);
  });
}

}  // extern "C"
