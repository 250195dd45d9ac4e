/*
 * rkp: exact string-equation series, Lax calculus and Pearcey numerics.
 *
 * C interface. Objects are opaque handles released with their *_free
 * function; strings returned through char** are released with
 * rkp_string_free. Every call returns an rkp_status; on failure the message
 * is available from rkp_last_error() on the same thread.
 */
#ifndef RKP_H
#define RKP_H

#include <stddef.h>

#if defined(_WIN32)
#  ifdef RKP_BUILDING_LIBRARY
#    define RKP_API __declspec(dllexport)
#  else
#    define RKP_API __declspec(dllimport)
#  endif
#else
#  define RKP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rkp_status {
  RKP_OK = 0,
  RKP_INVALID_ARGUMENT = 1,
  RKP_DOMAIN = 2,
  RKP_PRECISION = 3,
  RKP_INVARIANT = 4,
  RKP_CONFIGURATION = 5,
  RKP_PARSE = 6,
  RKP_INTERNAL = 7
} rkp_status;

typedef enum rkp_which { RKP_WHICH_A = 0, RKP_WHICH_D = 1 } rkp_which;

typedef enum rkp_format { RKP_FORMAT_JSON = 0, RKP_FORMAT_CSV = 1, RKP_FORMAT_PRETTY = 2 } rkp_format;

typedef enum rkp_contour { RKP_CONTOUR_AUTO = 0, RKP_CONTOUR_RAYS = 1, RKP_CONTOUR_SADDLE = 2 } rkp_contour;

typedef struct rkp_series rkp_series;
typedef struct rkp_diffpoly rkp_diffpoly;

/* ---- general ---------------------------------------------------------- */

RKP_API const char* rkp_version(void);
RKP_API const char* rkp_status_name(rkp_status status);
/* Message of the last failed call on this thread ("" if none). */
RKP_API const char* rkp_last_error(void);
RKP_API void rkp_string_free(char* s);

/* ---- series ----------------------------------------------------------- */

/* JSON: {"trunc": n | null, "terms": [{"exp": e, "num": "p", "den": "q"}]} */
RKP_API rkp_status rkp_series_parse(const char* json, rkp_series** out);
RKP_API rkp_status rkp_series_to_json(const rkp_series* s, char** out);
RKP_API rkp_status rkp_series_to_string(const rkp_series* s, char** out);
RKP_API void rkp_series_free(rkp_series* s);

RKP_API rkp_status rkp_series_add(const rkp_series* a, const rkp_series* b, rkp_series** out);
RKP_API rkp_status rkp_series_mul(const rkp_series* a, const rkp_series* b, rkp_series** out);
/* Rationals are exchanged as "p/q" strings. */
RKP_API rkp_status rkp_series_residue(const rkp_series* s, char** out);
RKP_API rkp_status rkp_series_coefficient(const rkp_series* s, int exponent, char** out);
/* -1 for an exact polynomial. */
RKP_API rkp_status rkp_series_trunc(const rkp_series* s, int* out);
/* -1 when the terms span several classes mod r+1. */
RKP_API rkp_status rkp_series_grading_class(const rkp_series* s, int r, int* out);
RKP_API rkp_status rkp_apply_s(const rkp_series* s, int r, int adjoint, rkp_series** out);

/* ---- string-equation series ------------------------------------------- */

RKP_API rkp_status rkp_solve_a(int r, int order, rkp_series** out);
RKP_API rkp_status rkp_solve_d(int r, int order, rkp_series** out);
RKP_API rkp_status rkp_double_factorial(int n, int r, char** out);
RKP_API rkp_status rkp_ortho_residue(int r, int m, int n, int order, char** out);
RKP_API rkp_status rkp_concomitant(int r, int order, rkp_series** out);

/* ---- Lax calculus ----------------------------------------------------- */

/* du_alpha/dt_m for alpha = 1 .. r-1; *count receives r-1 and *out an array
 * of handles released with rkp_diffpoly_array_free. */
RKP_API rkp_status rkp_flow_rhs(int m, int r, rkp_diffpoly*** out, size_t* count);
RKP_API rkp_status rkp_normal_coordinate(int alpha, int r, rkp_diffpoly** out);
RKP_API rkp_status rkp_diffpoly_to_json(const rkp_diffpoly* p, char** out);
RKP_API rkp_status rkp_diffpoly_to_string(const rkp_diffpoly* p, int single_field, char** out);
RKP_API void rkp_diffpoly_free(rkp_diffpoly* p);
RKP_API void rkp_diffpoly_array_free(rkp_diffpoly** array, size_t count);

/* ---- Pearcey integrals ------------------------------------------------ */

typedef struct rkp_pearcey_options {
  int r;
  double radius;        /* 0: chosen from the tail bound */
  double origin_detour; /* signed radius of the detour around w = 0 */
  int nodes_per_ray;
  double tolerance;
  rkp_contour contour;
  int enforce_sector;
} rkp_pearcey_options;

typedef struct rkp_pearcey_result {
  double value_re;
  double value_im;
  double error_estimate;
  double doubling_change;
  rkp_contour contour;
} rkp_pearcey_result;

RKP_API void rkp_pearcey_default_options(int r, rkp_pearcey_options* out);
RKP_API rkp_status rkp_pearcey_eval(rkp_which which, double z_re, double z_im, const rkp_pearcey_options* opts,
                                    rkp_pearcey_result* out);

/* ---- reports (rendered text; *passed receives the verdict) ------------ */

RKP_API rkp_status rkp_report_coeffs(int r, rkp_which which, int order, rkp_format format, char** out,
                                     int* passed);
/* order, max and n: negative selects the default. */
RKP_API rkp_status rkp_report_verify(const char* target, int r, int order, int max, int n, rkp_format format,
                                     char** out, int* passed);
RKP_API rkp_status rkp_report_flow(int r, int m, rkp_format format, char** out, int* passed);
RKP_API rkp_status rkp_report_pearcey(int r, rkp_which which, double z_re, double z_im, int terms,
                                      double tolerance, rkp_format format, char** out, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* RKP_H */
