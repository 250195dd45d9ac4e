#include "rkp/psdo_algebra.hpp"

#include <algorithm>
#include <limits>

#include "rkp/errors.hpp"
#include "rkp/string_ops.hpp"

namespace rkp::psdo {

namespace {

const DiffPoly& zero_poly() {
  static const DiffPoly zero;
  return zero;
}

constexpr long long kUnbounded = std::numeric_limits<long long>::min();

// Lowest power known for an operator, or kUnbounded when exact.
long long known_floor(const PsDO& p) {
  return p.is_exact() ? kUnbounded : static_cast<long long>(p.order()) - p.depth();
}

int depth_from_floor(int order, long long floor) {
  if (floor == kUnbounded) return PsDO::kExact;
  return static_cast<int>(order - floor);
}

PsDO multiply(const PsDO& p, const PsDO& q, long long floor) {
  const int order = p.order() + q.order();
  PsDO out(order, depth_from_floor(order, floor));

  for (const auto& [j, qj] : q.coefficients()) {
    // Derivatives of q_j are computed lazily and shared across all i.
    std::vector<DiffPoly> derivs{qj};
    for (const auto& [i, pi] : p.coefficients()) {
      for (int l = 0;; ++l) {
        const long long s = static_cast<long long>(i) + j - l;
        if (floor != kUnbounded && s < floor) break;
        if (i >= 0 && l > i) break;
        while (static_cast<int>(derivs.size()) <= l) derivs.push_back(dp_total_x(derivs.back()));
        const DiffPoly& dq = derivs[l];
        if (dq.is_zero()) break;
        if (floor == kUnbounded && i < 0 && l > 64) {
          fail(ErrorKind::insufficient_precision,
               "product of exact operators has an infinite tail; request an output depth");
        }
        DiffPoly contribution = (pi * dq).scaled(binomial(i, l));
        if (contribution.is_zero()) continue;
        DiffPoly current = out.coefficients().count(static_cast<int>(s))
                               ? out.coeff(static_cast<int>(s))
                               : DiffPoly();
        out.set_coeff(static_cast<int>(s), current + contribution);
      }
    }
  }
  return out;
}

}  // namespace

PsDO::PsDO(int order, int depth) : order_(order), depth_(depth) {
  require(depth >= 0, ErrorKind::invalid_argument, "operator depth must be >= 0");
}

PsDO PsDO::from_coefficients(const std::map<int, DiffPoly>& coeffs, int order, int depth) {
  PsDO out(order, depth);
  for (const auto& [power, c] : coeffs) out.set_coeff(power, c);
  return out;
}

PsDO PsDO::d_power(int power) {
  PsDO out(power, kExact);
  out.set_coeff(power, DiffPoly::constant(1));
  return out;
}

PsDO PsDO::multiplication(const DiffPoly& f) {
  PsDO out(0, kExact);
  out.set_coeff(0, f);
  return out;
}

bool PsDO::is_known(int power) const noexcept {
  return is_exact() || static_cast<long long>(power) >= static_cast<long long>(order_) - depth_;
}

const DiffPoly& PsDO::coeff(int power) const {
  if (!is_known(power)) {
    fail(ErrorKind::insufficient_precision,
         "coefficient of d^" + std::to_string(power) + " lies below the operator depth");
  }
  auto it = coeffs_.find(power);
  return it == coeffs_.end() ? zero_poly() : it->second;
}

void PsDO::set_coeff(int power, DiffPoly value) {
  require(power <= order_, ErrorKind::invalid_argument,
          "d^" + std::to_string(power) + " exceeds the operator order " + std::to_string(order_));
  if (!is_known(power)) {
    fail(ErrorKind::insufficient_precision,
         "cannot set d^" + std::to_string(power) + " below the operator depth");
  }
  if (value.is_zero()) {
    coeffs_.erase(power);
  } else {
    coeffs_[power] = std::move(value);
  }
}

PsDO PsDO::positive_part() const {
  if (order_ < 0) return PsDO(0, kExact);
  if (!is_known(0)) {
    fail(ErrorKind::insufficient_precision, "positive part needs the d^0 coefficient");
  }
  PsDO out(order_, kExact);
  for (auto it = coeffs_.lower_bound(0); it != coeffs_.end(); ++it) out.set_coeff(it->first, it->second);
  return out;
}

bool PsDO::is_differential() const {
  return is_exact() && (coeffs_.empty() || coeffs_.begin()->first >= 0);
}

PsDO PsDO::operator-() const {
  PsDO out(order_, depth_);
  for (const auto& [power, c] : coeffs_) out.coeffs_.emplace(power, -c);
  return out;
}

PsDO operator+(const PsDO& a, const PsDO& b) {
  const int order = std::max(a.order_, b.order_);
  const long long floor = std::max(known_floor(a), known_floor(b));
  PsDO out(order, depth_from_floor(order, floor));
  for (const auto* op : {&a, &b}) {
    for (const auto& [power, c] : op->coeffs_) {
      if (!out.is_known(power)) continue;
      auto it = out.coeffs_.find(power);
      DiffPoly sum = it == out.coeffs_.end() ? c : it->second + c;
      out.set_coeff(power, std::move(sum));
    }
  }
  return out;
}

PsDO operator-(const PsDO& a, const PsDO& b) { return a + (-b); }

Rational binomial(int i, int j) {
  require(j >= 0, ErrorKind::invalid_argument, "binomial lower index must be >= 0");
  mpz_class num = 1;
  mpz_class den = 1;
  for (int t = 0; t < j; ++t) {
    num *= (i - t);
    den *= (t + 1);
  }
  Rational out(num, den);
  out.canonicalize();
  return out;
}

PsDO psdo_mul(const PsDO& p, const PsDO& q) {
  long long floor = kUnbounded;
  if (!p.is_exact()) floor = std::max(floor, known_floor(p) + q.order());
  if (!q.is_exact()) floor = std::max(floor, known_floor(q) + p.order());
  return multiply(p, q, floor);
}

PsDO psdo_mul(const PsDO& p, const PsDO& q, int max_depth) {
  require(max_depth >= 0, ErrorKind::invalid_argument, "depth must be >= 0");
  long long floor = static_cast<long long>(p.order()) + q.order() - max_depth;
  if (!p.is_exact()) floor = std::max(floor, known_floor(p) + q.order());
  if (!q.is_exact()) floor = std::max(floor, known_floor(q) + p.order());
  return multiply(p, q, floor);
}

PsDO psdo_power(const PsDO& p, int times) {
  require(times >= 0, ErrorKind::invalid_argument, "operator power must be >= 0");
  if (times == 0) return PsDO::d_power(0);
  PsDO out = p;
  for (int i = 1; i < times; ++i) out = psdo_mul(out, p);
  return out;
}

PsDO commutator(const PsDO& a, const PsDO& b) { return psdo_mul(a, b) - psdo_mul(b, a); }

PsDO lax_operator(int r) {
  std::vector<DiffPoly> u;
  for (int alpha = 1; alpha < r; ++alpha) u.push_back(DiffPoly::variable(alpha));
  return lax_operator(r, u);
}

PsDO lax_operator(int r, const std::vector<DiffPoly>& u) {
  require(r >= 2, ErrorKind::invalid_argument, "r must be >= 2");
  require(static_cast<int>(u.size()) == r - 1, ErrorKind::invalid_argument,
          "L needs exactly r-1 coefficients");
  PsDO out = PsDO::d_power(r);
  for (int alpha = 1; alpha < r; ++alpha) out.set_coeff(r - 1 - alpha, u[alpha - 1]);
  return out;
}

PsDO psdo_root(const PsDO& lax, int r, int depth) {
  require(r >= 1, ErrorKind::invalid_argument, "root index must be >= 1");
  require(depth >= 0, ErrorKind::invalid_argument, "depth must be >= 0");
  if (lax.order() != r) {
    fail(ErrorKind::domain, "operator has order " + std::to_string(lax.order()) + ", expected " +
                                std::to_string(r));
  }
  if (lax.coeff(r) != DiffPoly::constant(1)) fail(ErrorKind::domain, "operator is not monic");

  // Known: d and p_0 .. p_{q+1}. The placeholder p_q = 0 enters P^r at
  // power r-1+q only through r p_q, which fixes it.
  std::map<int, DiffPoly> known{{1, DiffPoly::constant(1)}};
  for (int q = 0; q >= 1 - depth; --q) {
    PsDO trial = PsDO::from_coefficients(known, 1, 1 - q);
    PsDO powered = psdo_power(trial, r);
    const int target = r - 1 + q;
    DiffPoly missing = lax.coeff(target) - powered.coeff(target);
    known[q] = missing.scaled(Rational(1, r));
  }
  return PsDO::from_coefficients(known, 1, depth);
}

DiffPoly psdo_residue(const PsDO& p) {
  if (!p.is_known(-1)) fail(ErrorKind::insufficient_precision, "residue needs the d^-1 coefficient");
  return p.coeff(-1);
}

DiffPoly hamiltonian_density(int k, int r) {
  require(k >= 1, ErrorKind::invalid_argument, "h_k needs k >= 1");
  const PsDO root = psdo_root(lax_operator(r), r, k + 1);
  return psdo_residue(psdo_power(root, k));
}

DiffPoly normal_coordinate(int alpha, int r) {
  require(alpha >= 1 && alpha <= r - 1, ErrorKind::invalid_argument, "alpha must lie in 1..r-1");
  return hamiltonian_density(alpha, r).scaled(1 / string_ops::double_factorial_r(alpha, r));
}

DiffPoly hamiltonian_density_ap(int alpha, int p, int r) {
  require(alpha >= 1 && alpha <= r - 1, ErrorKind::invalid_argument, "alpha must lie in 1..r-1");
  require(p >= -1, ErrorKind::invalid_argument, "p must be >= -1");
  const int k = alpha + (p + 1) * r;
  return hamiltonian_density(k, r).scaled(1 / string_ops::double_factorial_r(k, r));
}

bool miura_leading_check(int alpha, int r) {
  const DiffPoly correction =
      normal_coordinate(alpha, r) - DiffPoly::variable(alpha).scaled(Rational(1, r));
  for (const auto& v : correction.variables()) {
    if (v.field >= alpha) return false;
  }
  return true;
}

PsDO flow_commutator(int m, int r) {
  require(m >= 1, ErrorKind::invalid_argument, "flow index must be >= 1");
  const PsDO lax = lax_operator(r);
  const PsDO root = psdo_root(lax, r, m + 1);
  return commutator(psdo_power(root, m).positive_part(), lax);
}

std::map<int, DiffPoly> flow_rhs(int m, int r, int depth) {
  if (depth > 0 && depth < m + 1) {
    fail(ErrorKind::insufficient_precision,
         "flow t_" + std::to_string(m) + " needs root depth >= " + std::to_string(m + 1));
  }
  const PsDO comm = flow_commutator(m, r);
  for (const auto& [power, c] : comm.coefficients()) {
    if (power >= r - 1 || power < 0) {
      fail(ErrorKind::invariant_violation,
           "commutator has a d^" + std::to_string(power) + " term outside 0..r-2");
    }
  }
  const Rational scale = string_ops::alpha_coeff(m, r);
  std::map<int, DiffPoly> out;
  for (int alpha = 1; alpha < r; ++alpha) out[alpha] = comm.coeff(r - 1 - alpha).scaled(scale);
  return out;
}

FlowSystem::FlowSystem(int r) : r_(r) {
  require(r >= 2, ErrorKind::invalid_argument, "r must be >= 2");
}

const std::map<int, DiffPoly>& FlowSystem::rhs(int m) {
  auto it = flows_.find(m);
  if (it == flows_.end()) it = flows_.emplace(m, flow_rhs(m, r_)).first;
  return it->second;
}

DiffPoly FlowSystem::derivation(int m, const DiffPoly& p) {
  const auto& flow = rhs(m);
  DiffPoly out;
  for (const auto& v : p.variables()) {
    auto it = flow.find(v.field);
    require(it != flow.end(), ErrorKind::invalid_argument,
            "variable u_" + std::to_string(v.field) + " is not a field of the hierarchy");
    out += p.partial(v) * dp_total_x(it->second, v.order);
  }
  return out;
}

bool flow_commute_check(FlowSystem& system, int m, int n) {
  const auto fm = system.rhs(m);
  const auto fn = system.rhs(n);
  for (int alpha = 1; alpha < system.r(); ++alpha) {
    if (system.derivation(m, fn.at(alpha)) != system.derivation(n, fm.at(alpha))) return false;
  }
  return true;
}

bool flow_commute_check(int m, int n, int r, int depth) {
  if (depth > 0 && depth < std::max(m, n) + 1) {
    fail(ErrorKind::insufficient_precision, "flow commutation needs root depth >= max(m, n) + 1");
  }
  FlowSystem system(r);
  return flow_commute_check(system, m, n);
}

Rational InitialProfile::value(int alpha, const Rational& x) const {
  auto it = slope.find(alpha);
  require(it != slope.end(), ErrorKind::invalid_argument, "alpha out of range");
  return it->second * x;
}

InitialProfile initial_data(int r) {
  require(r >= 2, ErrorKind::invalid_argument, "r must be >= 2");
  InitialProfile out;
  out.r = r;
  for (int alpha = 1; alpha < r; ++alpha) out.slope[alpha] = alpha == r - 1 ? Rational(1, r) : Rational(0);
  return out;
}

}  // namespace rkp::psdo
