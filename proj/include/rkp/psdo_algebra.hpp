#pragma once

// Pseudo-differential operators sum_i p_i d^i with DiffPoly coefficients, the
// Lax operator L = d^r + sum_alpha u_alpha d^(r-1-alpha), its r-th root,
// residues, Hamiltonian densities and the flows of the hierarchy
//
//   dL/dt_m = alpha_m [(L^(m/r))_+, L].
//
// Composition uses d^i o f = sum_{j>=0} C(i, j) f^(j) d^(i-j) with the
// generalized binomial C(i, j) for integers i of either sign.

#include <map>

#include "rkp/diffpoly.hpp"

namespace rkp::psdo {

class PsDO {
 public:
  static constexpr int kExact = std::numeric_limits<int>::max();

  /// Zero operator of the given nominal order and depth.
  PsDO(int order, int depth);
  /// Finite operator; depth kExact means the tail below is exactly zero.
  static PsDO from_coefficients(const std::map<int, DiffPoly>& coeffs, int order, int depth = kExact);
  static PsDO d_power(int power);
  static PsDO multiplication(const DiffPoly& f);

  int order() const noexcept { return order_; }
  int depth() const noexcept { return depth_; }
  bool is_exact() const noexcept { return depth_ == kExact; }
  /// Coefficients are known for powers >= order - depth.
  bool is_known(int power) const noexcept;
  const DiffPoly& coeff(int power) const;
  const std::map<int, DiffPoly>& coefficients() const noexcept { return coeffs_; }
  void set_coeff(int power, DiffPoly value);

  /// Nonnegative-power part (a differential operator, exact).
  PsDO positive_part() const;
  /// True when no negative power carries a nonzero coefficient and the tail is exact.
  bool is_differential() const;

  PsDO operator-() const;
  friend PsDO operator+(const PsDO& a, const PsDO& b);
  friend PsDO operator-(const PsDO& a, const PsDO& b);
  friend bool operator==(const PsDO&, const PsDO&) = default;

 private:
  int order_;
  int depth_;
  std::map<int, DiffPoly> coeffs_;
};

/// Generalized binomial coefficient C(i, j), j >= 0.
Rational binomial(int i, int j);

/// Product truncated to the sound depth min(depth(P), depth(Q)).
PsDO psdo_mul(const PsDO& p, const PsDO& q);
/// Same, additionally capped at the requested output depth. Needed when an
/// exact negative power meets a non-constant coefficient (infinite tail).
PsDO psdo_mul(const PsDO& p, const PsDO& q, int max_depth);
PsDO psdo_power(const PsDO& p, int times);
PsDO commutator(const PsDO& a, const PsDO& b);

/// L with symbolic coefficients u_1 .. u_{r-1}.
PsDO lax_operator(int r);
/// L with caller-supplied coefficients; u[alpha-1] multiplies d^(r-1-alpha).
PsDO lax_operator(int r, const std::vector<DiffPoly>& u);

/// P = d + sum_{i<=0} p_i d^i with P^r = L, coefficients known for powers >= 1 - depth.
PsDO psdo_root(const PsDO& lax, int r, int depth);

/// Coefficient of d^-1.
DiffPoly psdo_residue(const PsDO& p);

/// h_k = Res L^(k/r).
DiffPoly hamiltonian_density(int k, int r);
/// w_alpha = h_alpha / alpha!_(r)!
DiffPoly normal_coordinate(int alpha, int r);
/// h_{alpha,p} = h_{alpha+(p+1)r} / (alpha+(p+1)r)!_(r)!
DiffPoly hamiltonian_density_ap(int alpha, int p, int r);

/// w_alpha - u_alpha / r involves only u_1 .. u_{alpha-1} and their jets.
bool miura_leading_check(int alpha, int r);

/// [(L^(m/r))_+, L] for symbolic L.
PsDO flow_commutator(int m, int r);
/// alpha -> du_alpha/dt_m. Throws insufficient_precision if depth < m + 1;
/// depth <= 0 selects the budget automatically.
std::map<int, DiffPoly> flow_rhs(int m, int r, int depth = 0);

/// Evolutionary derivations D_m of the hierarchy, prolonged to all jets:
/// D_m u_alpha^(k) = d_x^k (du_alpha/dt_m).
class FlowSystem {
 public:
  explicit FlowSystem(int r);
  int r() const noexcept { return r_; }
  const std::map<int, DiffPoly>& rhs(int m);
  DiffPoly derivation(int m, const DiffPoly& p);

 private:
  int r_;
  std::map<int, std::map<int, DiffPoly>> flows_;
};

/// D_m(flow_rhs(n)_alpha) == D_n(flow_rhs(m)_alpha) for every alpha.
bool flow_commute_check(int m, int n, int r, int depth = 0);
bool flow_commute_check(FlowSystem& system, int m, int n);

/// u_alpha at t_{>=2} = 0: the slope of u_alpha in x (1/r for alpha = r-1, else 0).
struct InitialProfile {
  int r = 0;
  std::map<int, Rational> slope;
  Rational value(int alpha, const Rational& x) const;
};
InitialProfile initial_data(int r);

}  // namespace rkp::psdo
