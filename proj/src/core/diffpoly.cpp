#include "rkp/diffpoly.hpp"

#include <algorithm>
#include <sstream>

#include "rkp/errors.hpp"

namespace rkp::psdo {

Monomial::Monomial(JetVar v, int power) {
  require(v.field >= 1 && v.order >= 0, ErrorKind::invalid_argument, "jet variable needs alpha >= 1, k >= 0");
  if (power > 0) factors_.push_back({v, power});
}

int Monomial::polynomial_degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.power;
  return d;
}

int Monomial::grading_degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.power * f.var.degree();
  return d;
}

int Monomial::power_of(JetVar v) const {
  for (const auto& f : factors_) {
    if (f.var == v) return f.power;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->var < b->var)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->var < a->var) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.push_back({a->var, a->power + b->power});
      ++a;
      ++b;
    }
  }
  return out;
}

Monomial Monomial::without_one(JetVar v) const {
  Monomial out = *this;
  auto it = std::find_if(out.factors_.begin(), out.factors_.end(),
                         [&](const Factor& f) { return f.var == v; });
  require(it != out.factors_.end(), ErrorKind::invariant_violation, "variable not present in monomial");
  if (--it->power == 0) out.factors_.erase(it);
  return out;
}

bool operator<(const Monomial& a, const Monomial& b) {
  const int da = a.polynomial_degree();
  const int db = b.polynomial_degree();
  if (da != db) return da < db;
  return std::lexicographical_compare(
      a.factors_.begin(), a.factors_.end(), b.factors_.begin(), b.factors_.end(),
      [](const Monomial::Factor& x, const Monomial::Factor& y) {
        if (x.var != y.var) return x.var < y.var;
        return x.power < y.power;
      });
}

// ---------------------------------------------------------------------------

DiffPoly DiffPoly::constant(const Rational& c) { return term(Monomial(), c); }

DiffPoly DiffPoly::variable(int field, int order) { return term(Monomial(JetVar{field, order}), 1); }

DiffPoly DiffPoly::term(const Monomial& m, const Rational& c) {
  DiffPoly p;
  p.add_term(m, c);
  return p;
}

Rational DiffPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void DiffPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

DiffPoly DiffPoly::operator-() const { return scaled(Rational(-1)); }

DiffPoly DiffPoly::scaled(const Rational& c) const {
  DiffPoly out;
  if (c == 0) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, v * c);
  return out;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

DiffPoly DiffPoly::partial(JetVar v) const {
  DiffPoly out;
  for (const auto& [m, c] : terms_) {
    const int p = m.power_of(v);
    if (p > 0) out.add_term(m.without_one(v), c * p);
  }
  return out;
}

std::set<JetVar> DiffPoly::variables() const {
  std::set<JetVar> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) out.insert(f.var);
  }
  return out;
}

std::set<int> DiffPoly::grading_degrees() const {
  std::set<int> out;
  for (const auto& [m, c] : terms_) out.insert(m.grading_degree());
  return out;
}

bool DiffPoly::is_homogeneous(int degree) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [degree](const auto& t) { return t.first.grading_degree() == degree; });
}

int DiffPoly::max_field() const {
  int out = 0;
  for (const auto& v : variables()) out = std::max(out, v.field);
  return out;
}

std::string DiffPoly::to_string(bool single_field) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || m.is_one()) {
      os << mag.get_str();
      if (!m.is_one()) os << " ";
    }
    bool first_factor = true;
    for (const auto& f : m.factors()) {
      if (!first_factor) os << " ";
      first_factor = false;
      std::string name = single_field ? "u" : "u_" + std::to_string(f.var.field);
      if (f.var.order > 0) name += "^{(" + std::to_string(f.var.order) + ")}";
      if (f.power > 1) {
        if (f.var.order > 0) name = "(" + name + ")";
        name += "^" + std::to_string(f.power);
      }
      os << name;
    }
  }
  return os.str();
}

DiffPoly dp_total_x(const DiffPoly& p) {
  DiffPoly out;
  for (const auto& [m, c] : p.terms()) {
    for (const auto& f : m.factors()) {
      Monomial raised = m.without_one(f.var) * Monomial(JetVar{f.var.field, f.var.order + 1});
      out += DiffPoly::term(raised, c * f.power);
    }
  }
  return out;
}

DiffPoly dp_total_x(const DiffPoly& p, int times) {
  DiffPoly out = p;
  for (int i = 0; i < times; ++i) out = dp_total_x(out);
  return out;
}

nlohmann::json to_json(const DiffPoly& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    nlohmann::json vars = nlohmann::json::array();
    for (const auto& f : m.factors()) vars.push_back({f.var.field, f.var.order, f.power});
    out.push_back({{"coeff", c.get_str()}, {"vars", std::move(vars)}});
  }
  return out;
}

DiffPoly diffpoly_from_json(const nlohmann::json& j) {
  auto bad = [](const std::string& msg) { fail(ErrorKind::parse, "diffpoly JSON: " + msg); };
  if (!j.is_array()) bad("expected an array of terms");
  DiffPoly out;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("coeff") || !t.contains("vars") || !t["coeff"].is_string() ||
        !t["vars"].is_array()) {
      bad("each term needs a string coeff and a vars array");
    }
    Monomial m;
    for (const auto& v : t["vars"]) {
      if (!v.is_array() || v.size() != 3 || !v[0].is_number_integer() || !v[1].is_number_integer() ||
          !v[2].is_number_integer()) {
        bad("each variable must be [alpha, k, power]");
      }
      const int alpha = v[0].get<int>();
      const int k = v[1].get<int>();
      const int power = v[2].get<int>();
      if (alpha < 1 || k < 0 || power < 1) bad("need alpha >= 1, k >= 0, power >= 1");
      m = m * Monomial(JetVar{alpha, k}, power);
    }
    out += DiffPoly::term(m, parse_rational(t["coeff"].get<std::string>()));
  }
  return out;
}

}  // namespace rkp::psdo
