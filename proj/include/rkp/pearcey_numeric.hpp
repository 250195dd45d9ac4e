#pragma once

// Numerical evaluation of the Pearcey-type contour integrals
//
//   A(z) = (i/sqrt(2 pi)) z^((r-1)/2) exp(z^(r+1)/(r+1))
//            * int_Gamma exp[w^(r+1)/((r+1)r) - (w/r) z^r] dw
//   D(z) = -(i omega^((r+1)/2)/sqrt(2 pi)) z^((r+1)/2) exp(-z^(r+1)/(r+1))
//            * int_{omega^-1 Gamma} w^-1 exp[-w^(r+1)/((r+1)r) + (w/r) z^r] dw
//
// with Gamma = e^(-i pi/(r+1)) R_+ U e^(i pi/(r+1)) R_+. A is normalized so that
// A(z) -> 1 in |arg z| < pi/r, which fixes Gamma's orientation (downward);
// D's contour runs from arg -2pi/(r+1) to arg 0 and has index 0 about w = 0.
//
// Two contour realizations are available. `rays` follows the straight rays
// from the origin (an arc of radius |eps| avoids the pole of D); its rounding
// error grows like |exp(z^(r+1)/(r+1))|, so it is only usable for small |z|.
// `saddle` traces the steepest-descent path through the saddle w = z and
// integrates exactly along the resulting polyline, which keeps the integrand
// O(1) and the evaluation accurate for large |z|.

#include <complex>
#include <vector>

namespace rkp::pearcey {

using Complex = std::complex<double>;

enum class Which { a, d };
enum class ContourKind { automatic, rays, saddle };

const char* to_string(Which which);
const char* to_string(ContourKind kind);

struct ContourSpec {
  int r = 2;
  /// Cutoff radius for the rays; 0 picks it from the tail bound.
  double radius = 0.0;
  /// Signed radius of the detour around w = 0 used by D. Positive: arc on the
  /// saddle side (index 0). Negative: arc on the far side (index 1).
  double origin_detour = 0.05;
  /// Gauss-Legendre nodes per panel.
  int nodes_per_ray = 16;
  /// Absolute tolerance for tail truncation and the node-doubling estimate.
  double tolerance = 1e-10;
  ContourKind kind = ContourKind::automatic;
  /// Reject z outside the sector where the asymptotic expansion holds.
  bool enforce_sector = true;

  Complex ray_in() const;
  Complex ray_out() const;
};

struct Evaluation {
  Complex value;
  /// |I(n) - I(2n)| from node doubling plus a rounding estimate.
  double error_estimate = 0.0;
  /// Difference between the n-node and 2n-node results alone.
  double doubling_change = 0.0;
  ContourKind contour = ContourKind::automatic;
  int panels = 0;
};

/// |arg z| < pi/r
bool in_sector_a(Complex z, int r);
/// -pi/r - pi/(r+1) < arg z < pi/r - pi/(r+1)
bool in_sector_d(Complex z, int r);

Evaluation eval_A(Complex z, const ContourSpec& spec);
Evaluation eval_D(Complex z, const ContourSpec& spec);

/// 1 + sum_{k=1}^{terms} c_k z^-(r+1)k with c_k = a_k or d_k.
Complex asymptotic_truncation(Complex z, int r, int terms, Which which);
/// |c_{terms+1}| / |z|^((r+1)(terms+1))
double next_term_magnitude(Complex z, int r, int terms, Which which);

/// |z| at and above which the gap bound is asserted rather than only reported.
inline constexpr double kAsymptoticRadius = 2.0;

struct GapReport {
  Complex z;
  int r = 0;
  Which which = Which::a;
  int terms = 0;
  Evaluation evaluation;
  Complex truncation;
  double gap = 0.0;
  double next_term = 0.0;
  /// 2 * next_term
  double bound = 0.0;
  bool asserted = false;
  bool pass = false;
};

GapReport asym_gap(Complex z, int terms, Which which, const ContourSpec& spec);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

}  // namespace rkp::pearcey
