#include "rkp/string_ops.hpp"

#include <functional>

#include "rkp/errors.hpp"

namespace rkp::string_ops {

namespace {

void check_r(int r) { require(r >= 2, ErrorKind::invalid_argument, "r must be >= 2"); }

// Monomialwise action of S (sign = +1) or S^* (sign = -1).
LaurentSeries apply_string_operator(const LaurentSeries& b, int r, int sign) {
  check_r(r);
  LaurentSeries out(b.is_exact() ? LaurentSeries::kExact : b.trunc() - 1);
  const Rational half_shift = Rational(r - 1) / 2;
  for (const auto& [k, c] : b.terms()) {
    Rational lowered = (Rational(k) - half_shift) * sign;
    out.add_to_coeff(k - r, c * lowered);
    out.add_to_coeff(k + 1, -c);
  }
  return out;
}

// Sequential elimination for op(x) = rhs with x = 1 + sum_k c_k z^(e_k),
// e_k = -(r+1) k. The pivot of unknown k is the top exponent of op(z^(e_k));
// every residual coefficient above the current pivot must already vanish.
LaurentSeries eliminate(int r, int order, const std::function<LaurentSeries(const LaurentSeries&)>& op,
                        const LaurentSeries& rhs) {
  const int block = r + 1;
  LaurentSeries x = LaurentSeries::constant(1);
  LaurentSeries residual = op(x) - rhs;

  auto check_cleared_above = [&](int pivot) {
    for (auto it = residual.terms().rbegin(); it != residual.terms().rend(); ++it) {
      if (it->first <= pivot) break;
      fail(ErrorKind::invariant_violation,
           "residual coefficient at z^" + std::to_string(it->first) +
               " did not vanish before pivot z^" + std::to_string(pivot));
    }
  };

  for (int k = 1; k <= order; ++k) {
    const int exponent = -block * k;
    LaurentSeries image = op(LaurentSeries::monomial(exponent, 1));
    auto pivot = image.top_exponent();
    if (!pivot) fail(ErrorKind::invariant_violation, "operator annihilates z^" + std::to_string(exponent));
    check_cleared_above(*pivot);
    if (!residual.is_known(*pivot)) {
      fail(ErrorKind::insufficient_precision,
           "right-hand side not known to z^" + std::to_string(*pivot));
    }
    Rational c = -residual.coeff(*pivot) / image.coeff(*pivot);
    x.set_coeff(exponent, c);
    residual += image.scaled(c);
  }
  const int trunc = block * order + r;
  // The next unknown block would sit at -(r+1)(order+1); all exponents in
  // between vanish by the class structure.
  return x.truncated(trunc);
}

}  // namespace

Rational double_factorial_r(int n, int r) {
  check_r(r);
  if (n < -(r - 1)) {
    fail(ErrorKind::domain, "generalized double factorial undefined for n = " + std::to_string(n) +
                                " < -(r-1)");
  }
  mpz_class product = 1;
  for (int f = n; f >= 1; f -= r) product *= f;
  return Rational(product);
}

Rational alpha_coeff(int m, int r) {
  require(m >= 1, ErrorKind::invalid_argument, "alpha_m needs m >= 1");
  return Rational(1) / double_factorial_r(m, r);
}

Rational m_coeff(int n, int r) {
  require(n >= 1, ErrorKind::invalid_argument, "m_n needs n >= 1");
  return double_factorial_r(n - r, r);
}

LaurentSeries apply_S(const LaurentSeries& b, int r) { return apply_string_operator(b, r, 1); }
LaurentSeries apply_S_star(const LaurentSeries& b, int r) { return apply_string_operator(b, r, -1); }

LaurentSeries apply_S_power(const LaurentSeries& b, int r, int times) {
  LaurentSeries out = b;
  for (int i = 0; i < times; ++i) out = apply_S(out, r);
  return out;
}

LaurentSeries apply_S_star_power(const LaurentSeries& b, int r, int times) {
  LaurentSeries out = b;
  for (int i = 0; i < times; ++i) out = apply_S_star(out, r);
  return out;
}

PhasedSeries apply_S(const PhasedSeries& b) {
  return PhasedSeries(apply_S(b.body(), b.r()), b.r(), b.residue_class() - b.r(), b.phase());
}

PhasedSeries apply_S_star(const PhasedSeries& b) {
  return PhasedSeries(apply_S_star(b.body(), b.r()), b.r(), b.residue_class() - b.r(), b.phase());
}

PhasedSeries rotate_omega(const PhasedSeries& b) {
  const int r = b.r();
  const int c = b.residue_class();
  LaurentSeries body(b.body().trunc());
  for (const auto& [n, coeff] : b.body().terms()) {
    const int blocks = (n - c) / (r + 1);
    body.set_coeff(n, (blocks % 2 == 0) ? coeff : Rational(-coeff));
  }
  return PhasedSeries(std::move(body), r, c, b.phase() + c);
}

PhasedSeries rotated_a(const LaurentSeries& a, int r) {
  return rotate_omega(PhasedSeries(a, r, 0, 0));
}

LaurentSeries solve_a(int r, int order) {
  check_r(r);
  require(order >= 0, ErrorKind::invalid_argument, "order must be >= 0");
  const Rational minus_one_pow = (r % 2 == 0) ? Rational(1) : Rational(-1);
  auto op = [r, minus_one_pow](const LaurentSeries& x) {
    return apply_S_power(x, r, r) - x.shifted(r).scaled(minus_one_pow);
  };
  return eliminate(r, order, op, LaurentSeries());
}

LaurentSeries solve_d(int r, int order) {
  check_r(r);
  require(order >= 0, ErrorKind::invalid_argument, "order must be >= 0");
  // One extra block of a keeps the right-hand side exact past the last pivot.
  const LaurentSeries a = solve_a(r, order + 1);
  const LaurentSeries rhs = rotated_a(a, r).body();
  auto op = [r](const LaurentSeries& x) { return -apply_S_star(x.shifted(-1), r); };
  return eliminate(r, order, op, rhs);
}

Rational StringSeriesBundle::a_coeff(int k) const { return a.coeff(-(r + 1) * k); }
Rational StringSeriesBundle::d_coeff(int k) const { return d.coeff(-(r + 1) * k); }

Rational StringSeriesBundle::g_coeff(int n) const {
  require(n >= 0, ErrorKind::invalid_argument, "g_n needs n >= 0");
  if (n % (r + 1) != 0) return 0;
  return d_coeff(n / (r + 1));
}

StringSeriesBundle solve_bundle(int r, int order) {
  return StringSeriesBundle{r, order, solve_a(r, order), solve_d(r, order)};
}

LaurentSeries a_residual(const LaurentSeries& a, int r) {
  const Rational sign = (r % 2 == 0) ? Rational(1) : Rational(-1);
  return apply_S_power(a, r, r) - a.shifted(r).scaled(sign);
}

LaurentSeries d_residual(const LaurentSeries& d, const LaurentSeries& a, int r) {
  return -apply_S_star(d.shifted(-1), r) - rotated_a(a, r).body();
}

LaurentSeries concomitant_sum(int r, int order) {
  check_r(r);
  const LaurentSeries a = solve_a(r, order);
  const PhasedSeries rotated = rotated_a(a, r);

  std::vector<PhasedSeries> s_powers{PhasedSeries(a, r, 0, 0)};
  std::vector<PhasedSeries> star_powers{rotated};
  for (int k = 1; k < r; ++k) {
    s_powers.push_back(apply_S(s_powers.back()));
    star_powers.push_back(apply_S_star(star_powers.back()));
  }
  PhasedSeries total = star_powers[r - 1] * s_powers[0];
  for (int k = 1; k < r; ++k) total = total + star_powers[r - 1 - k] * s_powers[k];

  const PhasedSeries result = total.normalized();
  if (result.phase() != 0) {
    fail(ErrorKind::invariant_violation, "concomitant summands did not cancel to phase 0");
  }
  if (!result.body().is_known(-1)) {
    fail(ErrorKind::insufficient_precision,
         "concomitant sum is exact only to z^" + std::to_string(-result.body().trunc()));
  }
  return result.body();
}

LaurentSeries concomitant_expected(int r) {
  return LaurentSeries::monomial(r - 1, Rational((r % 2 == 1) ? r : -r));
}

int ortho_order_budget(int r, int m, int n) {
  check_r(r);
  require(m >= 0 && n >= 0, ErrorKind::invalid_argument, "m, n must be >= 0");
  // trunc(a) = (r+1)K + r, each S or S^* costs one order, the product costs
  // the other factor's top exponent: trunc = (r+1)K + r - m - n >= 1.
  const int needed = m + n + 1 - r;
  if (needed <= 0) return 0;
  return (needed + r) / (r + 1);
}

Rational ortho_residue_with(const PhasedSeries& rotated, const LaurentSeries& a, int m, int n) {
  const int r = rotated.r();
  PhasedSeries left = rotated;
  for (int i = 0; i < m; ++i) left = apply_S_star(left);
  PhasedSeries right(a, r, 0, 0);
  for (int i = 0; i < n; ++i) right = apply_S(right);
  const PhasedSeries product = (left * right).normalized();
  Rational res = series::residue(product.body());
  if (res != 0 && product.phase() != 0) {
    fail(ErrorKind::invariant_violation, "ortho pairing produced a non-rational phase");
  }
  return res;
}

Rational ortho_residue(int r, int m, int n, int order) {
  const int budget = ortho_order_budget(r, m, n);
  if (order < budget) {
    fail(ErrorKind::insufficient_precision,
         "ortho residue (m=" + std::to_string(m) + ", n=" + std::to_string(n) + ") needs order >= " +
             std::to_string(budget));
  }
  const LaurentSeries a = solve_a(r, order);
  return ortho_residue_with(rotated_a(a, r), a, m, n);
}

std::vector<LaurentSeries> wave_slice_coefficients(int r, int order, int count) {
  require(count >= 0, ErrorKind::invalid_argument, "count must be >= 0");
  std::vector<LaurentSeries> out;
  LaurentSeries power = solve_a(r, order);
  Rational factor = 1;
  for (int n = 0; n <= count; ++n) {
    if (n > 0) {
      power = apply_S(power, r);
      factor /= -n;
    }
    out.push_back(power.scaled(factor));
  }
  return out;
}

int psi_order_budget(int r, int count) {
  check_r(r);
  // d * S^n a / z has trunc (r+1)K + r - n + 1 >= 1.
  const int needed = count - r;
  if (needed <= 0) return 0;
  return (needed + r) / (r + 1);
}

std::vector<Rational> psi_initial_check(int r, int order, int count) {
  const int budget = psi_order_budget(r, count);
  if (order < budget) {
    fail(ErrorKind::insufficient_precision,
         "psi initial check up to n=" + std::to_string(count) + " needs order >= " + std::to_string(budget));
  }
  const LaurentSeries d = solve_d(r, order);
  std::vector<Rational> out;
  for (const auto& slice : wave_slice_coefficients(r, order, count)) {
    out.push_back(series::residue((d * slice).shifted(-1)));
  }
  return out;
}

}  // namespace rkp::string_ops
