#pragma once

// Truncated formal Laurent series in 1/z with exact rational coefficients.
//
// A series stores coefficients for exponents n >= -trunc; everything below is
// unknown. The special value kExact marks a finite polynomial with no unknown
// tail. Arithmetic propagates the tightest bound under which every reported
// coefficient is exact, so an unknown coefficient is never mistaken for zero.

#include <gmpxx.h>

#include <complex>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace rkp {

using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q" into a canonical rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

}  // namespace rkp

namespace rkp::series {

class LaurentSeries {
 public:
  static constexpr int kExact = std::numeric_limits<int>::max();

  /// Exact zero.
  LaurentSeries() = default;
  /// Zero known down to exponent -trunc.
  explicit LaurentSeries(int trunc);

  static LaurentSeries monomial(int exponent, const Rational& coeff, int trunc = kExact);
  static LaurentSeries constant(const Rational& coeff, int trunc = kExact);
  static LaurentSeries from_terms(const std::map<int, Rational>& terms, int trunc);

  int trunc() const noexcept { return trunc_; }
  bool is_exact() const noexcept { return trunc_ == kExact; }
  /// True when the coefficient of z^exponent is determined.
  bool is_known(int exponent) const noexcept;
  /// Throws insufficient_precision for exponents below -trunc.
  Rational coeff(int exponent) const;
  const std::map<int, Rational>& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  std::optional<int> top_exponent() const;
  /// Highest exponent whose coefficient may be nonzero, unknown tail included.
  std::optional<int> support_top() const;

  void set_coeff(int exponent, const Rational& value);
  void add_to_coeff(int exponent, const Rational& value);

  /// Same series with a (no larger) truncation bound; stored terms below it are dropped.
  LaurentSeries truncated(int trunc) const;
  /// Multiplication by z^k.
  LaurentSeries shifted(int k) const;
  LaurentSeries scaled(const Rational& factor) const;

  LaurentSeries operator-() const;
  LaurentSeries& operator+=(const LaurentSeries& other);
  LaurentSeries& operator-=(const LaurentSeries& other);

  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
  }

  /// Human-readable form, highest exponent first, e.g. "1 - 5/24 z^-3 + O(z^-6)".
  std::string to_string() const;

 private:
  int trunc_ = kExact;
  std::map<int, Rational> terms_;
};

LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b);
LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b);
LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);

LaurentSeries series_add(const LaurentSeries& a, const LaurentSeries& b);
/// Cauchy product. The result is exact for exponents n with
/// n >= top(b) - trunc(a) and n >= top(a) - trunc(b).
LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b);

/// Coefficient of z^-1 (residue at infinity up to sign convention).
Rational residue(const LaurentSeries& a);

/// Common residue class of all stored exponents mod (r+1), or nullopt.
/// The zero series belongs to class 0.
std::optional<int> grading_class(const LaurentSeries& a, int r);

nlohmann::json to_json(const LaurentSeries& a);
LaurentSeries series_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------

/// A series supported on one residue class c mod (r+1), multiplied by an
/// overall omega^phase with omega = exp(i pi/(r+1)). omega^(r+1) = -1, so the
/// phase lives in Z / 2(r+1).
class PhasedSeries {
 public:
  /// Throws domain error if some exponent of body is not congruent to cls.
  PhasedSeries(LaurentSeries body, int r, int cls, int phase = 0);
  /// Infers the class from the body; zero bodies land in class 0.
  static PhasedSeries from_series(LaurentSeries body, int r, int phase = 0);

  const LaurentSeries& body() const noexcept { return body_; }
  int r() const noexcept { return r_; }
  int residue_class() const noexcept { return class_; }
  int phase() const noexcept { return phase_; }

  /// Equivalent value with phase reduced to [0, r], sign folded into the body.
  PhasedSeries normalized() const;
  /// Multiplies by omega^k.
  PhasedSeries with_extra_phase(int k) const;

  /// Numerical value of the coefficient of z^n (omega^phase * body_n).
  std::complex<double> coefficient(int exponent) const;

  friend PhasedSeries operator*(const PhasedSeries& a, const PhasedSeries& b);
  PhasedSeries operator+(const PhasedSeries& other) const;

  /// Equality of the represented complex series (same trunc after normalization).
  friend bool equivalent(const PhasedSeries& a, const PhasedSeries& b);

 private:
  LaurentSeries body_;
  int r_;
  int class_;
  int phase_;
};

/// exp(i pi k/(r+1)).
std::complex<double> omega_power(int k, int r);

}  // namespace rkp::series
