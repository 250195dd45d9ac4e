#pragma once

// Differential polynomials in the jet variables u_alpha^(k), alpha >= 1, k >= 0,
// with exact rational coefficients. Grading: deg u_alpha^(k) = alpha + 1 + k.

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "rkp/series_core.hpp"

namespace rkp::psdo {

struct JetVar {
  int field = 1;  // alpha
  int order = 0;  // k, number of x-derivatives

  friend auto operator<=>(const JetVar&, const JetVar&) = default;
  int degree() const { return field + 1 + order; }
};

/// Product of jet variables, factors sorted by (field, order), powers >= 1.
class Monomial {
 public:
  struct Factor {
    JetVar var;
    int power = 1;
    friend bool operator==(const Factor&, const Factor&) = default;
  };

  Monomial() = default;
  explicit Monomial(JetVar v, int power = 1);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool is_one() const noexcept { return factors_.empty(); }
  int polynomial_degree() const;
  int grading_degree() const;
  int power_of(JetVar v) const;

  Monomial operator*(const Monomial& other) const;
  /// Removes one power of v; v must be present.
  Monomial without_one(JetVar v) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Canonical order: fewer factors first, then lexicographic on factors.
  friend bool operator<(const Monomial& a, const Monomial& b);

 private:
  std::vector<Factor> factors_;
};

class DiffPoly {
 public:
  DiffPoly() = default;
  static DiffPoly constant(const Rational& c);
  static DiffPoly variable(int field, int order = 0);
  static DiffPoly term(const Monomial& m, const Rational& c);

  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Rational coefficient(const Monomial& m) const;

  DiffPoly& operator+=(const DiffPoly& other);
  DiffPoly& operator-=(const DiffPoly& other);
  DiffPoly operator-() const;
  DiffPoly scaled(const Rational& c) const;
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  friend bool operator==(const DiffPoly&, const DiffPoly&) = default;

  /// d/du_field^(order)
  DiffPoly partial(JetVar v) const;
  std::set<JetVar> variables() const;
  std::set<int> grading_degrees() const;
  bool is_homogeneous(int degree) const;
  /// Largest field index present (0 for constants).
  int max_field() const;

  /// Canonical text, e.g. "1/12 u^{(3)} + 1/2 u u^{(1)}". With single_field the
  /// variable is printed as "u", otherwise "u_alpha".
  std::string to_string(bool single_field = false) const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

/// Total x-derivative: u_alpha^(k) -> u_alpha^(k+1) with the Leibniz rule.
DiffPoly dp_total_x(const DiffPoly& p);
DiffPoly dp_total_x(const DiffPoly& p, int times);

/// [{"coeff": "p/q", "vars": [[alpha, k, power], ...]}, ...]
nlohmann::json to_json(const DiffPoly& p);
DiffPoly diffpoly_from_json(const nlohmann::json& j);

}  // namespace rkp::psdo
