#include <doctest.h>

#include <random>

#include "rkp/errors.hpp"
#include "rkp/psdo_algebra.hpp"

using namespace rkp::psdo;
using rkp::ErrorKind;
using rkp::Rational;

namespace {

Rational q(const char* s) { return rkp::parse_rational(s); }

DiffPoly u(int alpha, int k = 0) { return DiffPoly::variable(alpha, k); }
DiffPoly c(const char* s) { return DiffPoly::constant(q(s)); }

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const rkp::Error& e) {
    return e.kind();
  }
  FAIL("expected an rkp::Error");
  return ErrorKind::invalid_argument;
}

DiffPoly random_poly(std::mt19937& rng, int fields) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3), field(1, fields), order(0, 2), count(1, 3);
  Rational lead(num(rng), den(rng));
  lead.canonicalize();
  DiffPoly out = DiffPoly::constant(lead);
  for (int t = count(rng); t > 0; --t) {
    DiffPoly term = DiffPoly::constant(1);
    for (int f = 1 + (rng() % 2); f > 0; --f) term = term * u(field(rng), order(rng));
    Rational s(num(rng), den(rng));
    s.canonicalize();
    out += term.scaled(s);
  }
  return out;
}

}  // namespace

TEST_CASE("differential polynomial basics") {
  const auto p = u(1) * u(1, 1) + u(1, 3).scaled(q("1/12"));
  CHECK(p.to_string(true) == "1/12 u^{(3)} + u u^{(1)}");
  CHECK(p.to_string() == "1/12 u_1^{(3)} + u_1 u_1^{(1)}");
  CHECK((u(1, 1) * u(1, 1)).to_string(true) == "(u^{(1)})^2");
  CHECK((u(2) * u(2)).scaled(-1).to_string() == "-u_2^2");
  CHECK(DiffPoly().to_string() == "0");
  CHECK(p.is_homogeneous(5));
  CHECK(p.partial(JetVar{1, 0}) == u(1, 1));
  CHECK(dp_total_x(u(1) * u(1)) == (u(1) * u(1, 1)).scaled(2));
  CHECK(diffpoly_from_json(to_json(p)) == p);
  CHECK(kind_of([] { diffpoly_from_json(nlohmann::json::parse(R"([{"coeff": "1", "vars": [[0, 0, 1]]}])")); }) ==
        ErrorKind::parse);
}

TEST_CASE("generalized binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(-1, 3) == -1);
  CHECK(binomial(-2, 2) == 3);
  CHECK(binomial(-3, 4) == 15);
  CHECK(binomial(2, 3) == 0);
  CHECK(binomial(4, 0) == 1);
}

TEST_CASE("composition rules") {
  const auto d = PsDO::d_power(1);
  const auto f = PsDO::multiplication(u(1));
  const auto df = psdo_mul(d, f);
  CHECK(df.coeff(1) == u(1));
  CHECK(df.coeff(0) == u(1, 1));
  CHECK(df.is_exact());

  const auto inv = PsDO::d_power(-1);
  CHECK(psdo_mul(inv, d) == PsDO::d_power(0));
  CHECK(psdo_mul(d, inv) == PsDO::d_power(0));

  // d^-1 u = u d^-1 - u' d^-2 + u'' d^-3 - ...
  const auto tail = psdo_mul(inv, f, 3);
  CHECK(tail.depth() == 3);
  CHECK(tail.coeff(-1) == u(1));
  CHECK(tail.coeff(-2) == -u(1, 1));
  CHECK(tail.coeff(-3) == u(1, 2));
  CHECK(tail.coeff(-4) == -u(1, 3));
  CHECK(kind_of([&] { psdo_mul(inv, f); }) == ErrorKind::insufficient_precision);
  CHECK(kind_of([&] { tail.coeff(-5); }) == ErrorKind::insufficient_precision);

  const auto comm = commutator(d, f);
  CHECK(comm.coeff(0) == u(1, 1));
  CHECK(comm.coeff(1).is_zero());
}

TEST_CASE("root of the Lax operator") {
  const auto lax = lax_operator(2);
  const auto root = psdo_root(lax, 2, 4);
  CHECK(root.coeff(1) == c("1"));
  CHECK(root.coeff(0).is_zero());
  CHECK(root.coeff(-1) == u(1).scaled(q("1/2")));
  CHECK(root.coeff(-2) == u(1, 1).scaled(q("-1/4")));
  CHECK(kind_of([&] { psdo_root(PsDO::d_power(3), 2, 2); }) == ErrorKind::domain);
  auto scaled = lax;
  scaled.set_coeff(2, c("2"));
  CHECK(kind_of([&] { psdo_root(scaled, 2, 2); }) == ErrorKind::domain);
}

TEST_CASE("densities and normal coordinates") {
  CHECK(hamiltonian_density(1, 2) == u(1).scaled(q("1/2")));
  // w_alpha = Res L^(alpha/r) / alpha!_(r)! has degree alpha + 1
  for (int r = 2; r <= 5; ++r) {
    for (int alpha = 1; alpha < r; ++alpha) {
      CAPTURE(r);
      CAPTURE(alpha);
      const auto w = normal_coordinate(alpha, r);
      CHECK(w.is_homogeneous(alpha + 1));
      CHECK(w.coefficient(Monomial(JetVar{alpha, 0})) == Rational(1, r));
      CHECK(miura_leading_check(alpha, r));
    }
  }
  CHECK(hamiltonian_density_ap(1, -1, 2) == normal_coordinate(1, 2));
}

TEST_CASE("flows of the hierarchy") {
  const auto kdv = flow_rhs(3, 2);
  CHECK(kdv.at(1) == u(1, 3).scaled(q("1/12")) + (u(1) * u(1, 1)).scaled(q("1/2")));
  CHECK(flow_rhs(1, 3).at(1) == u(1, 1));
  CHECK(flow_rhs(1, 3).at(2) == u(2, 1));
  CHECK(flow_rhs(2, 2).at(1).is_zero());
  CHECK(flow_rhs(3, 3).at(2).is_zero());
  CHECK(kind_of([] { flow_rhs(3, 2, 2); }) == ErrorKind::insufficient_precision);
  CHECK(flow_rhs(3, 2, 4) == kdv);

  FlowSystem sys(2);
  // D_1 acts as d/dx on every jet
  CHECK(sys.derivation(1, u(1) * u(1, 2)) == dp_total_x(u(1) * u(1, 2)));
  CHECK(flow_commute_check(sys, 3, 5));
  CHECK(kind_of([] { flow_commute_check(2, 3, 3, 2); }) == ErrorKind::insufficient_precision);
}

TEST_CASE("initial data of the string solution") {
  const auto p = initial_data(3);
  CHECK(p.value(2, q("6")) == 2);
  CHECK(p.value(1, q("6")) == 0);
  CHECK(kind_of([&] { p.value(3, 1); }) == ErrorKind::invalid_argument);
}

TEST_CASE("property: total derivative obeys Leibniz") {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_poly(rng, 3);
    const auto g = random_poly(rng, 3);
    CHECK(dp_total_x(f * g) == dp_total_x(f) * g + f * dp_total_x(g));
  }
}

TEST_CASE("property: operator product is associative") {
  std::mt19937 rng(5150);
  for (int trial = 0; trial < 15; ++trial) {
    std::map<int, DiffPoly> ca, cb, cc;
    for (int i = 0; i <= 2; ++i) {
      ca[i] = random_poly(rng, 2);
      cb[i - 1] = random_poly(rng, 2);
      cc[i] = random_poly(rng, 2);
    }
    const auto a = PsDO::from_coefficients(ca, 2, 4);
    const auto b = PsDO::from_coefficients(cb, 1, 4);
    const auto c3 = PsDO::from_coefficients(cc, 2, 4);
    CHECK(psdo_mul(psdo_mul(a, b), c3) == psdo_mul(a, psdo_mul(b, c3)));
  }
}

TEST_CASE("property: root of random Lax data") {
  std::mt19937 rng(8675309);
  for (int r = 2; r <= 3; ++r) {
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<DiffPoly> data;
      for (int alpha = 1; alpha < r; ++alpha) data.push_back(random_poly(rng, 2));
      const auto lax = lax_operator(r, data);
      const int depth = 6;
      const auto p = psdo_root(lax, r, depth);
      const auto pr = psdo_power(p, r);
      for (int k = r; k >= r - depth; --k) {
        CAPTURE(k);
        CHECK(pr.coeff(k) == (lax.coefficients().count(k) ? lax.coeff(k) : DiffPoly()));
      }
    }
  }
}
