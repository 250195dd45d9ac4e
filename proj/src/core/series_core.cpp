#include "rkp/series_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rkp/errors.hpp"

namespace rkp {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { fail(ErrorKind::parse, "not a rational number: '" + s + "'"); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  auto valid_integer = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+') bad();
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) fail(ErrorKind::parse, "zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) { return value.get_str(); }

}  // namespace rkp

namespace rkp::series {

namespace {

int floor_mod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

int clamp_trunc(long long t) {
  if (t >= LaurentSeries::kExact) return LaurentSeries::kExact - 1;
  if (t <= std::numeric_limits<int>::min() / 2) return std::numeric_limits<int>::min() / 2;
  return static_cast<int>(t);
}

}  // namespace

LaurentSeries::LaurentSeries(int trunc) : trunc_(trunc) {}

LaurentSeries LaurentSeries::monomial(int exponent, const Rational& coeff, int trunc) {
  LaurentSeries s(trunc);
  s.set_coeff(exponent, coeff);
  return s;
}

LaurentSeries LaurentSeries::constant(const Rational& coeff, int trunc) {
  return monomial(0, coeff, trunc);
}

LaurentSeries LaurentSeries::from_terms(const std::map<int, Rational>& terms, int trunc) {
  LaurentSeries s(trunc);
  for (const auto& [e, c] : terms) s.set_coeff(e, c);
  return s;
}

bool LaurentSeries::is_known(int exponent) const noexcept {
  return is_exact() || static_cast<long long>(exponent) >= -static_cast<long long>(trunc_);
}

Rational LaurentSeries::coeff(int exponent) const {
  if (!is_known(exponent)) {
    fail(ErrorKind::insufficient_precision,
         "coefficient of z^" + std::to_string(exponent) + " is below the truncation order " +
             std::to_string(-trunc_));
  }
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<int> LaurentSeries::top_exponent() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first;
}

std::optional<int> LaurentSeries::support_top() const {
  if (!terms_.empty()) return terms_.rbegin()->first;
  if (is_exact()) return std::nullopt;
  return clamp_trunc(-static_cast<long long>(trunc_) - 1);
}

void LaurentSeries::set_coeff(int exponent, const Rational& value) {
  if (!is_known(exponent)) {
    fail(ErrorKind::insufficient_precision,
         "cannot store z^" + std::to_string(exponent) + " below truncation order " +
             std::to_string(-trunc_));
  }
  if (value == 0) {
    terms_.erase(exponent);
  } else {
    terms_[exponent] = value;
  }
}

void LaurentSeries::add_to_coeff(int exponent, const Rational& value) {
  if (value == 0) return;
  if (!is_known(exponent)) return;  // contribution falls into the unknown tail
  auto [it, inserted] = terms_.try_emplace(exponent, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentSeries LaurentSeries::truncated(int trunc) const {
  if (trunc >= trunc_) return *this;
  LaurentSeries out(trunc);
  for (auto it = terms_.lower_bound(-trunc); it != terms_.end(); ++it) {
    out.terms_.emplace_hint(out.terms_.end(), it->first, it->second);
  }
  return out;
}

LaurentSeries LaurentSeries::shifted(int k) const {
  LaurentSeries out(is_exact() ? kExact : clamp_trunc(static_cast<long long>(trunc_) - k));
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e + k, c);
  return out;
}

LaurentSeries LaurentSeries::scaled(const Rational& factor) const {
  if (factor == 0) return LaurentSeries(trunc_);
  LaurentSeries out(trunc_);
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, c * factor);
  return out;
}

LaurentSeries LaurentSeries::operator-() const { return scaled(Rational(-1)); }

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& other) {
  if (other.trunc_ < trunc_) *this = truncated(other.trunc_);
  for (const auto& [e, c] : other.terms_) add_to_coeff(e, c);
  return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& other) {
  return *this += -other;
}

std::string LaurentSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = (mag == 1);
    if (!unit || e == 0) os << mag.get_str();
    if (e != 0) {
      if (!unit) os << " ";
      os << "z";
      if (e != 1) os << "^" << e;
    }
  }
  if (first && is_exact()) os << "0";
  if (!is_exact()) os << (first ? "" : " + ") << "O(z^" << (clamp_trunc(-static_cast<long long>(trunc_) - 1)) << ")";
  return os.str();
}

LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  if ((a.is_exact() && a.is_zero()) || (b.is_exact() && b.is_zero())) return LaurentSeries();

  long long bound = LaurentSeries::kExact;
  if (!a.is_exact()) {
    bound = std::min<long long>(bound, static_cast<long long>(a.trunc()) - *b.support_top());
  }
  if (!b.is_exact()) {
    bound = std::min<long long>(bound, static_cast<long long>(b.trunc()) - *a.support_top());
  }
  const int trunc = a.is_exact() && b.is_exact() ? LaurentSeries::kExact : clamp_trunc(bound);
  LaurentSeries out(trunc);
  const long long lowest = out.is_exact() ? std::numeric_limits<long long>::min() : -static_cast<long long>(trunc);

  for (const auto& [ea, ca] : a.terms()) {
    for (auto it = b.terms().rbegin(); it != b.terms().rend(); ++it) {
      long long e = static_cast<long long>(ea) + it->first;
      if (e < lowest) break;
      out.add_to_coeff(static_cast<int>(e), ca * it->second);
    }
  }
  return out;
}

LaurentSeries series_add(const LaurentSeries& a, const LaurentSeries& b) { return a + b; }
LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b) { return a * b; }

Rational residue(const LaurentSeries& a) {
  if (!a.is_known(-1)) {
    fail(ErrorKind::insufficient_precision,
         "residue needs trunc >= 1, series has trunc " + std::to_string(a.trunc()));
  }
  return a.coeff(-1);
}

std::optional<int> grading_class(const LaurentSeries& a, int r) {
  require(r >= 2, ErrorKind::invalid_argument, "grading_class requires r >= 2");
  if (a.is_zero()) return 0;
  const int m = r + 1;
  int cls = floor_mod(a.terms().begin()->first, m);
  for (const auto& [e, c] : a.terms()) {
    if (floor_mod(e, m) != cls) return std::nullopt;
  }
  return cls;
}

nlohmann::json to_json(const LaurentSeries& a) {
  nlohmann::json terms = nlohmann::json::array();
  for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
    terms.push_back({{"exp", it->first},
                     {"num", it->second.get_num().get_str()},
                     {"den", it->second.get_den().get_str()}});
  }
  nlohmann::json j;
  j["trunc"] = a.is_exact() ? nlohmann::json(nullptr) : nlohmann::json(a.trunc());
  j["terms"] = std::move(terms);
  return j;
}

LaurentSeries series_from_json(const nlohmann::json& j) {
  auto bad = [](const std::string& msg) { fail(ErrorKind::parse, "series JSON: " + msg); };
  if (!j.is_object() || !j.contains("trunc") || !j.contains("terms")) bad("expected {trunc, terms}");
  int trunc = LaurentSeries::kExact;
  if (!j["trunc"].is_null()) {
    if (!j["trunc"].is_number_integer()) bad("trunc must be an integer or null");
    trunc = j["trunc"].get<int>();
  }
  if (!j["terms"].is_array()) bad("terms must be an array");
  LaurentSeries s(trunc);
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("exp") || !t.contains("num") || !t.contains("den") ||
        !t["exp"].is_number_integer() || !t["num"].is_string() || !t["den"].is_string()) {
      bad("each term needs integer exp and string num/den");
    }
    int e = t["exp"].get<int>();
    if (s.terms().count(e)) bad("duplicate exponent " + std::to_string(e));
    if (!s.is_known(e)) bad("term z^" + std::to_string(e) + " lies below the truncation order");
    s.set_coeff(e, parse_rational(t["num"].get<std::string>() + "/" + t["den"].get<std::string>()));
  }
  return s;
}

// ---------------------------------------------------------------------------

std::complex<double> omega_power(int k, int r) {
  const int period = 2 * (r + 1);
  const int q = floor_mod(k, period);
  const double angle = std::numbers::pi * q / (r + 1);
  return {std::cos(angle), std::sin(angle)};
}

PhasedSeries::PhasedSeries(LaurentSeries body, int r, int cls, int phase)
    : body_(std::move(body)), r_(r), class_(0), phase_(0) {
  require(r >= 2, ErrorKind::invalid_argument, "PhasedSeries requires r >= 2");
  class_ = floor_mod(cls, r + 1);
  phase_ = floor_mod(phase, 2 * (r + 1));
  for (const auto& [e, c] : body_.terms()) {
    if (floor_mod(e, r + 1) != class_) {
      fail(ErrorKind::domain, "exponent " + std::to_string(e) + " is not in residue class " +
                                  std::to_string(class_) + " mod " + std::to_string(r + 1));
    }
  }
}

PhasedSeries PhasedSeries::from_series(LaurentSeries body, int r, int phase) {
  auto cls = grading_class(body, r);
  if (!cls) fail(ErrorKind::domain, "series mixes residue classes mod " + std::to_string(r + 1));
  return PhasedSeries(std::move(body), r, *cls, phase);
}

PhasedSeries PhasedSeries::normalized() const {
  if (phase_ <= r_) return *this;
  return PhasedSeries(-body_, r_, class_, phase_ - (r_ + 1));
}

PhasedSeries PhasedSeries::with_extra_phase(int k) const {
  return PhasedSeries(body_, r_, class_, phase_ + k);
}

std::complex<double> PhasedSeries::coefficient(int exponent) const {
  return omega_power(phase_, r_) * body_.coeff(exponent).get_d();
}

PhasedSeries operator*(const PhasedSeries& a, const PhasedSeries& b) {
  require(a.r_ == b.r_, ErrorKind::invalid_argument, "PhasedSeries product with different r");
  return PhasedSeries(a.body_ * b.body_, a.r_, a.class_ + b.class_, a.phase_ + b.phase_);
}

PhasedSeries PhasedSeries::operator+(const PhasedSeries& other) const {
  require(r_ == other.r_, ErrorKind::invalid_argument, "PhasedSeries sum with different r");
  PhasedSeries x = normalized();
  PhasedSeries y = other.normalized();
  if (x.body_.is_zero() && x.body_.is_exact()) return other;
  if (y.body_.is_zero() && y.body_.is_exact()) return *this;
  require(x.class_ == y.class_, ErrorKind::domain, "PhasedSeries sum across residue classes");
  require(x.phase_ == y.phase_, ErrorKind::domain,
          "PhasedSeries sum with incompatible phases needs cyclotomic coefficients");
  return PhasedSeries(x.body_ + y.body_, r_, x.class_, x.phase_);
}

bool equivalent(const PhasedSeries& a, const PhasedSeries& b) {
  if (a.r_ != b.r_) return false;
  PhasedSeries x = a.normalized();
  PhasedSeries y = b.normalized();
  if (x.body_.trunc() != y.body_.trunc()) return false;
  if (x.body_.is_zero() && y.body_.is_zero()) return true;
  return x.class_ == y.class_ && x.phase_ == y.phase_ && x.body_ == y.body_;
}

}  // namespace rkp::series
