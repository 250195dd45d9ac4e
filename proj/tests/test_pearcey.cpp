#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rkp/errors.hpp"
#include "rkp/pearcey_numeric.hpp"

using namespace rkp::pearcey;
using rkp::ErrorKind;

namespace {

constexpr double kPi = std::numbers::pi;

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

ContourSpec spec_for(int r, ContourKind kind = ContourKind::automatic) {
  ContourSpec s;
  s.r = r;
  s.kind = kind;
  return s;
}

}  // namespace

TEST_CASE("Gauss-Legendre rule is exact to degree 2n-1") {
  for (int n : {1, 2, 5, 16, 32}) {
    const auto& g = gauss_legendre(n);
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += g.weights[i] * std::pow(g.nodes[i], deg);
      const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
      CHECK(sum == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}

TEST_CASE("sectors") {
  CHECK(in_sector_a(4.0, 2));
  CHECK(in_sector_a(std::polar(3.0, 1.5), 2));
  CHECK_FALSE(in_sector_a(std::polar(3.0, 1.6), 2));
  CHECK(in_sector_d(std::polar(3.0, -kPi / 3), 2));
  CHECK_FALSE(in_sector_d(std::polar(3.0, kPi / 6 + 0.01), 2));
  CHECK(kind_of([] { eval_A(-4.0, spec_for(2)); }) == ErrorKind::domain);
  CHECK(kind_of([] { eval_D(Complex(0.0, 4.0), spec_for(2)); }) == ErrorKind::domain);
}

TEST_CASE("A against its asymptotic series") {
  // r = 2, z = 4, K = 3
  auto g = asym_gap(4.0, 3, Which::a, spec_for(2));
  CHECK(g.asserted);
  CHECK(g.gap <= g.bound);
  CHECK(g.evaluation.value.real() == doctest::Approx(0.99682272541).epsilon(1e-10));

  // r = 3, z = 3 with the four coefficients a_1..a_4
  g = asym_gap(3.0, 4, Which::a, spec_for(3));
  CHECK(g.gap <= g.bound);

  g = asym_gap(5.0, 3, Which::a, spec_for(2));
  CHECK(g.gap <= g.bound);
  g = asym_gap(3.0, 1, Which::a, spec_for(4));
  CHECK(g.gap <= g.bound);

  // K = 0: the gap to 1 shrinks as z grows
  double previous = 1e300;
  for (double x : {2.0, 3.0, 5.0, 8.0, 13.0}) {
    const double gap = asym_gap(x, 0, Which::a, spec_for(2)).gap;
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < 1e-3);
}

TEST_CASE("D against its asymptotic series") {
  const Complex z = std::polar(4.0, -kPi / 3);
  const auto g = asym_gap(z, 2, Which::d, spec_for(2));
  CHECK(g.asserted);
  CHECK(g.gap <= g.bound);
  CHECK(std::abs(eval_D(std::polar(20.0, -kPi / 3), spec_for(2)).value - 1.0) < 1e-3);
}

TEST_CASE("small |z| is reported, not asserted") {
  const auto g = asym_gap(0.5, 3, Which::a, spec_for(2));
  CHECK_FALSE(g.asserted);
  CHECK(g.pass);
  CHECK(g.evaluation.contour == ContourKind::rays);
}

TEST_CASE("ray and saddle contours agree where both are accurate") {
  for (int r : {2, 3}) {
    CAPTURE(r);
    const Complex za = std::polar(1.2, 0.3);
    const auto a1 = eval_A(za, spec_for(r, ContourKind::rays));
    const auto a2 = eval_A(za, spec_for(r, ContourKind::saddle));
    CHECK(std::abs(a1.value - a2.value) < 1e-11);

    const Complex zd = std::polar(1.4, -kPi / (r + 1) + 0.2);
    const auto d1 = eval_D(zd, spec_for(r, ContourKind::rays));
    const auto d2 = eval_D(zd, spec_for(r, ContourKind::saddle));
    CHECK(std::abs(d1.value - d2.value) < 1e-11);
  }
}

TEST_CASE("wrong-side detour adds a multiple of the residue term") {
  const int r = 2;
  const Complex z = std::polar(4.0, -kPi / 3);
  auto spec = spec_for(r);
  const auto index0 = eval_D(z, spec);
  spec.origin_detour = -0.05;
  const auto index1 = eval_D(z, spec);
  const Complex unit = std::sqrt(2.0 * kPi) * std::pow(z, 0.5 * (r + 1)) * std::exp(-std::pow(z, r + 1) / (r + 1.0));
  const Complex ratio = (index1.value - index0.value) / unit;
  CHECK(std::abs(ratio - Complex(0.0, -1.0)) < 1e-9);

  // the same on the straight-ray contour at moderate |z|
  const Complex w = std::polar(1.4, -kPi / 3);
  auto rays = spec_for(r, ContourKind::rays);
  const auto r0 = eval_D(w, rays);
  rays.origin_detour = -0.05;
  const auto r1 = eval_D(w, rays);
  const Complex unit_w = std::sqrt(2.0 * kPi) * std::pow(w, 1.5) * std::exp(-std::pow(w, 3) / 3.0);
  CHECK(std::abs((r1.value - r0.value) / unit_w - Complex(0.0, -1.0)) < 1e-9);

  // and the bound is violated
  const double bound = 2.0 * next_term_magnitude(z, r, 2, Which::d);
  CHECK(std::abs(index1.value - asymptotic_truncation(z, r, 2, Which::d)) > bound);
}

TEST_CASE("contour configuration errors") {
  auto spec = spec_for(2, ContourKind::rays);
  spec.radius = 2.0;
  CHECK(kind_of([&] { eval_A(1.0, spec); }) == ErrorKind::insufficient_precision);
  spec.radius = 0.0;
  spec.origin_detour = 0.0;
  CHECK(kind_of([&] { eval_D(std::polar(1.0, -1.0), spec); }) == ErrorKind::configuration);
  spec.origin_detour = 50.0;
  CHECK(kind_of([&] { eval_D(std::polar(1.0, -1.0), spec); }) == ErrorKind::configuration);
  spec.origin_detour = 0.05;
  spec.nodes_per_ray = 1;
  CHECK(kind_of([&] { eval_A(1.0, spec); }) == ErrorKind::invalid_argument);
  spec.nodes_per_ray = 16;
  spec.tolerance = 0.0;
  CHECK(kind_of([&] { eval_A(1.0, spec); }) == ErrorKind::invalid_argument);
}

TEST_CASE("node doubling stays inside the reported error") {
  for (int r : {2, 3}) {
    for (const Complex z : {Complex(3.5, 0.4), Complex(0.8, -0.2)}) {
      auto spec = spec_for(r);
      const auto coarse = eval_A(z, spec);
      spec.nodes_per_ray *= 2;
      const auto fine = eval_A(z, spec);
      CHECK(std::abs(fine.value - coarse.value) <= coarse.error_estimate);
      CHECK(coarse.doubling_change < 1e-9);
    }
  }
}

TEST_CASE("A solves S^2 A = z^2 A for r = 2") {
  // S f = f'/z - f/(2 z^2) - z f, derivatives by fourth-order central differences
  const auto spec = spec_for(2);
  const double h = 2e-3;
  auto A = [&](Complex z) { return eval_A(z, spec).value; };
  auto S = [&](auto&& f, Complex z) {
    const Complex df = (f(z - 2 * h) - 8.0 * f(z - h) + 8.0 * f(z + h) - f(z + 2 * h)) / (12 * h);
    return df / z - f(z) / (2.0 * z * z) - z * f(z);
  };
  for (const Complex z : {Complex(3.0, 0.0), Complex(2.5, 0.7)}) {
    auto SA = [&](Complex w) { return S(A, w); };
    const Complex lhs = S(SA, z);
    const Complex rhs = z * z * A(z);
    CHECK(std::abs(lhs - rhs) < 1e-6 * std::abs(rhs));
  }
}

TEST_CASE("outside the sector the bound is not asserted") {
  auto spec = spec_for(2, ContourKind::rays);
  spec.enforce_sector = false;
  const Complex z = std::polar(3.0, 2.4);
  const auto g = asym_gap(z, 3, Which::a, spec);
  CHECK_FALSE(g.asserted);
  CHECK(g.pass);
  MESSAGE("Stokes demonstration r=2 z=3e^{2.4i}: gap " << g.gap << " vs bound " << g.bound);
}
