#pragma once

// String operators S_z, S_z^* acting on formal series, the formal solutions
// a(z), d(z) and the finite-order identity checks built on them.
//
//   S_z   z^k = (k - (r-1)/2) z^(k-r) - z^(k+1)
//   S_z^* z^k = ((r-1)/2 - k) z^(k-r) - z^(k+1)
//
// a(z) = 1 + sum a_k z^-(r+1)k solves S_z^r a = (-z)^r a and
// d(z) = 1 + sum d_k z^-(r+1)k solves -S_z^*(d/z) = a(omega z).

#include <vector>

#include "rkp/series_core.hpp"

namespace rkp::string_ops {

using series::LaurentSeries;
using series::PhasedSeries;

/// n (n-r) (n-2r) ... down to the first factor in 1..r; 1 for -(r-1) <= n <= 0.
Rational double_factorial_r(int n, int r);
/// 1 / (m)!_(r)!
Rational alpha_coeff(int m, int r);
/// (n-r)!_(r)!, the shift normalization m_n.
Rational m_coeff(int n, int r);

/// The result is exact down to z^-(trunc-1).
LaurentSeries apply_S(const LaurentSeries& b, int r);
LaurentSeries apply_S_star(const LaurentSeries& b, int r);
LaurentSeries apply_S_power(const LaurentSeries& b, int r, int times);
LaurentSeries apply_S_star_power(const LaurentSeries& b, int r, int times);

/// S and S^* have rational coefficients: they act on the body and shift the
/// residue class by -r (i.e. +1 mod r+1); the phase is untouched.
PhasedSeries apply_S(const PhasedSeries& b);
PhasedSeries apply_S_star(const PhasedSeries& b);

/// z -> omega z. Exponent n picks up omega^n = omega^c (-1)^((n-c)/(r+1)).
PhasedSeries rotate_omega(const PhasedSeries& b);

/// a(z) with `order` exact coefficient blocks; trunc = (r+1) order + r.
LaurentSeries solve_a(int r, int order);
/// d(z) with `order` exact coefficient blocks; trunc = (r+1) order + r.
LaurentSeries solve_d(int r, int order);

/// a(omega z) as a phase-0 rational series (sign flipped on odd blocks).
PhasedSeries rotated_a(const LaurentSeries& a, int r);

struct StringSeriesBundle {
  int r = 0;
  int order = 0;
  LaurentSeries a;
  LaurentSeries d;

  Rational a_coeff(int k) const;
  Rational d_coeff(int k) const;
  /// Normalization series of the extended partition function:
  /// g_(r+1)k = d_k, every other g_n = 0.
  Rational g_coeff(int n) const;
};

StringSeriesBundle solve_bundle(int r, int order);

/// S^r a - (-z)^r a; vanishes on every retained order for the true a.
LaurentSeries a_residual(const LaurentSeries& a, int r);
/// -S^*(d/z) - a(omega z).
LaurentSeries d_residual(const LaurentSeries& d, const LaurentSeries& a, int r);

/// sum_{k=0}^{r-1} S^*^(r-1-k) a(omega z) * S^k a(z); equals (-1)^(r-1) r z^(r-1).
LaurentSeries concomitant_sum(int r, int order);
LaurentSeries concomitant_expected(int r);

/// Smallest order for which residue(S^*^m a(omega z) * S^n a) is exact.
int ortho_order_budget(int r, int m, int n);
Rational ortho_residue(int r, int m, int n, int order);
/// Same pairing with a caller-supplied stand-in for a(omega z).
Rational ortho_residue_with(const PhasedSeries& rotated, const LaurentSeries& a, int m, int n);

/// [(-1)^n/n! S^n a(z)]_{n=0..count}: the x^n Taylor coefficients of f(x; z).
std::vector<LaurentSeries> wave_slice_coefficients(int r, int order, int count);

int psi_order_budget(int r, int count);
/// [res(d(z) (-1)^n/n! S^n a(z) / z)]_{n=0..count}; expected (1, 0, 0, ...).
std::vector<Rational> psi_initial_check(int r, int order, int count);

}  // namespace rkp::string_ops
