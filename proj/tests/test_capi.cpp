#include <doctest.h>

#include <cstring>
#include <string>

#include "rkp/rkp.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  rkp_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(rkp_status_name(RKP_OK)) == "ok");
  CHECK(std::string(rkp_status_name(RKP_PRECISION)) == "insufficient_precision");
  CHECK(std::strlen(rkp_version()) > 0);
}

TEST_CASE("series handles") {
  rkp_series* a = nullptr;
  REQUIRE(rkp_solve_a(2, 3, &a) == RKP_OK);
  char* text = nullptr;
  REQUIRE(rkp_series_coefficient(a, -3, &text) == RKP_OK);
  CHECK(take(text) == "-5/24");
  int trunc = 0;
  REQUIRE(rkp_series_trunc(a, &trunc) == RKP_OK);
  CHECK(trunc == 11);
  int cls = -2;
  REQUIRE(rkp_series_grading_class(a, 2, &cls) == RKP_OK);
  CHECK(cls == 0);

  REQUIRE(rkp_series_to_json(a, &text) == RKP_OK);
  const std::string json = take(text);
  rkp_series* back = nullptr;
  REQUIRE(rkp_series_parse(json.c_str(), &back) == RKP_OK);
  rkp_series* sum = nullptr;
  REQUIRE(rkp_series_add(a, back, &sum) == RKP_OK);
  REQUIRE(rkp_series_coefficient(sum, -6, &text) == RKP_OK);
  CHECK(take(text) == "385/576");

  rkp_series* s = nullptr;
  REQUIRE(rkp_apply_s(a, 2, 0, &s) == RKP_OK);
  REQUIRE(rkp_series_grading_class(s, 2, &cls) == RKP_OK);
  CHECK(cls == 1);

  CHECK(rkp_series_coefficient(a, -40, &text) == RKP_PRECISION);
  CHECK(std::string(rkp_last_error()).find("z^-40") != std::string::npos);

  rkp_series_free(s);
  rkp_series_free(sum);
  rkp_series_free(back);
  rkp_series_free(a);
}

TEST_CASE("error codes") {
  rkp_series* s = nullptr;
  CHECK(rkp_series_parse("{not json", &s) == RKP_PARSE);
  CHECK(rkp_series_parse(R"({"trunc": 1, "terms": [{"exp": 0, "num": "1", "den": "0"}]})", &s) == RKP_PARSE);
  CHECK(rkp_solve_a(1, 2, &s) == RKP_INVALID_ARGUMENT);
  CHECK(rkp_solve_a(2, 2, nullptr) == RKP_INVALID_ARGUMENT);
  char* text = nullptr;
  CHECK(rkp_double_factorial(-3, 2, &text) == RKP_DOMAIN);
  CHECK(rkp_ortho_residue(2, 6, 6, 1, &text) == RKP_PRECISION);
  REQUIRE(rkp_double_factorial(7, 2, &text) == RKP_OK);
  CHECK(take(text) == "105");
  CHECK(std::string(rkp_last_error()).empty());
}

TEST_CASE("string-equation identities") {
  char* text = nullptr;
  REQUIRE(rkp_ortho_residue(3, 4, 5, 6, &text) == RKP_OK);
  CHECK(take(text) == "0");
  rkp_series* c = nullptr;
  REQUIRE(rkp_concomitant(3, 5, &c) == RKP_OK);
  REQUIRE(rkp_series_coefficient(c, 2, &text) == RKP_OK);
  CHECK(take(text) == "3");
  rkp_series_free(c);
}

TEST_CASE("flows and differential polynomials") {
  rkp_diffpoly** flows = nullptr;
  size_t count = 0;
  REQUIRE(rkp_flow_rhs(3, 2, &flows, &count) == RKP_OK);
  REQUIRE(count == 1);
  char* text = nullptr;
  REQUIRE(rkp_diffpoly_to_string(flows[0], 1, &text) == RKP_OK);
  CHECK(take(text) == "1/12 u^{(3)} + 1/2 u u^{(1)}");
  REQUIRE(rkp_diffpoly_to_json(flows[0], &text) == RKP_OK);
  CHECK(take(text).find("\"1/12\"") != std::string::npos);
  rkp_diffpoly_array_free(flows, count);

  rkp_diffpoly* w = nullptr;
  REQUIRE(rkp_normal_coordinate(2, 3, &w) == RKP_OK);
  REQUIRE(rkp_diffpoly_to_string(w, 0, &text) == RKP_OK);
  CHECK(take(text).find("1/3 u_2") != std::string::npos);
  rkp_diffpoly_free(w);
}

TEST_CASE("Pearcey evaluation") {
  rkp_pearcey_options opts;
  rkp_pearcey_default_options(2, &opts);
  rkp_pearcey_result res;
  REQUIRE(rkp_pearcey_eval(RKP_WHICH_A, 4.0, 0.0, &opts, &res) == RKP_OK);
  CHECK(res.value_re == doctest::Approx(0.99682272541).epsilon(1e-10));
  CHECK(res.contour == RKP_CONTOUR_SADDLE);
  CHECK(rkp_pearcey_eval(RKP_WHICH_A, -4.0, 0.0, &opts, &res) == RKP_DOMAIN);
  CHECK(std::string(rkp_last_error()).find("sector") != std::string::npos);
  opts.contour = RKP_CONTOUR_RAYS;
  opts.radius = 1.5;
  CHECK(rkp_pearcey_eval(RKP_WHICH_A, 1.0, 0.0, &opts, &res) == RKP_PRECISION);
}

TEST_CASE("reports") {
  char* text = nullptr;
  int passed = -1;
  REQUIRE(rkp_report_coeffs(3, RKP_WHICH_D, 2, RKP_FORMAT_CSV, &text, &passed) == RKP_OK);
  CHECK(take(text) == "k,d_k\n1,31/12\n2,4849/288\n");
  CHECK(passed == 1);
  REQUIRE(rkp_report_verify("psi-init", 3, -1, -1, 4, RKP_FORMAT_JSON, &text, &passed) == RKP_OK);
  CHECK(take(text).find("\"pass\": true") != std::string::npos);
  CHECK(rkp_report_verify("psi-init", 3, 0, -1, 4, RKP_FORMAT_JSON, &text, &passed) == RKP_PRECISION);
  CHECK(std::string(rkp_last_error()).find("increase --order") != std::string::npos);
  CHECK(rkp_report_flow(2, 3, RKP_FORMAT_CSV, &text, &passed) == RKP_CONFIGURATION);
  REQUIRE(rkp_report_pearcey(2, RKP_WHICH_A, 4.0, 0.0, 3, 1e-10, RKP_FORMAT_JSON, &text, &passed) == RKP_OK);
  CHECK(take(text).find("\"truncation\": 3") != std::string::npos);
  CHECK(passed == 1);
}
