#include "rkp/pearcey_numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "rkp/errors.hpp"
#include "rkp/string_ops.hpp"

namespace rkp::pearcey {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
const Complex kI{0.0, 1.0};

// Exponent, relative to the saddle, at which a traced path is cut off.
constexpr double kPathCutoff = -60.0;
// Above this value of |z|^(r+1)/(r+1) the saddle contour is used by default.
constexpr double kSaddleThreshold = 1.5;

Complex ipow(Complex w, int n) {
  Complex out = 1.0;
  for (int i = 0; i < n; ++i) out *= w;
  return out;
}

double wrap(double angle) { return std::remainder(angle, 2.0 * kPi); }

std::string fmt(Complex z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

// Phase f(w) = s [w^(r+1)/((r+1)r) - w z^r / r] with s = +1 for A and -1 for D,
// measured from its value at the saddle w = z.
class Phase {
 public:
  Phase(int r, Complex z, double sign, bool pole) : r_(r), z_(z), sign_(sign), pole_(pole) {
    zr_ = ipow(z, r);
    const double norm = sign / ((r + 1.0) * r);
    coef_.assign(r + 2, 0.0);
    double binom = 1.0;  // C(r+1, j)
    for (int j = 1; j <= r + 1; ++j) {
      binom = binom * (r + 2 - j) / j;
      if (j >= 2) coef_[j] = norm * binom * ipow(z, r + 1 - j);
    }
  }

  int r() const { return r_; }
  Complex saddle() const { return z_; }
  double sign() const { return sign_; }

  Complex relative(Complex w) const {
    const Complex h = w - z_;
    Complex acc = 0.0;
    for (int j = r_ + 1; j >= 2; --j) acc = (acc + coef_[j]) * h;
    return acc * h;
  }

  Complex derivative(Complex w) const { return sign_ * (ipow(w, r_) - zr_) / double(r_); }
  Complex second_at_saddle() const { return sign_ * ipow(z_, r_ - 1); }

  Complex integrand(Complex w) const {
    Complex v = std::exp(relative(w));
    return pole_ ? v / w : v;
  }

 private:
  int r_;
  Complex z_;
  double sign_;
  bool pole_;
  Complex zr_;
  std::vector<Complex> coef_;
};

// A straight segment a -> b or an arc rho e^{i phi}, phi0 -> phi1, with an
// orientation sign.
struct Piece {
  bool arc = false;
  Complex a, b;
  double rho = 0.0, phi0 = 0.0, phi1 = 0.0;
  double sign = 1.0;
};

struct Sum {
  Complex value = 0.0;
  double magnitude = 0.0;
};

Sum integrate(const Phase& phase, const std::vector<Piece>& pieces, int nodes) {
  const GaussRule& rule = gauss_legendre(nodes);
  Sum s;
  for (const auto& p : pieces) {
    Complex acc = 0.0;
    double mag = 0.0;
    for (int k = 0; k < nodes; ++k) {
      const double x = rule.nodes[k];
      const double wt = rule.weights[k];
      Complex w, dw;
      if (p.arc) {
        const double half = 0.5 * (p.phi1 - p.phi0);
        const double phi = p.phi0 + half * (x + 1.0);
        w = std::polar(p.rho, phi);
        dw = kI * w * half;
      } else {
        const Complex half = 0.5 * (p.b - p.a);
        w = p.a + half * (x + 1.0);
        dw = half;
      }
      const Complex term = wt * phase.integrand(w) * dw;
      acc += term;
      mag += std::abs(term);
    }
    s.value += p.sign * acc;
    s.magnitude += mag;
  }
  return s;
}

void add_ray(std::vector<Piece>& out, Complex dir, double t0, double t1, double width, double sign) {
  double t = t0;
  // Geometric panels next to the pole, uniform further out.
  while (t < t1) {
    double step = width;
    if (t > 0.0 && t < width) step = std::min(width, t);
    const double next = std::min(t1, t + step);
    out.push_back({false, t * dir, next * dir, 0.0, 0.0, 0.0, sign});
    t = next;
  }
}

void add_arc(std::vector<Piece>& out, double rho, double phi0, double phi1, int panels) {
  const double step = (phi1 - phi0) / panels;
  for (int i = 0; i < panels; ++i) {
    out.push_back({true, 0.0, 0.0, rho, phi0 + i * step, phi0 + (i + 1) * step, 1.0});
  }
}

// Upper bound for log|integrand| on a ray at distance t >= 1, including the
// saddle normalization; valid on every ray where Re(s w^(r+1)) = -t^(r+1).
double ray_log_bound(const Phase& phase, double t, double zabs) {
  const int r = phase.r();
  const double saddle = std::real(phase.sign() * ipow(phase.saddle(), r + 1)) / (r + 1.0);
  return -std::pow(t, r + 1) / ((r + 1.0) * r) + t * std::pow(zabs, r) / r + saddle;
}

double choose_radius(const Phase& phase, const ContourSpec& spec, double log_prefactor) {
  const int r = phase.r();
  const double zabs = std::abs(phase.saddle());
  auto tail_ok = [&](double t) {
    if (t <= zabs) return false;
    const double slope = (std::pow(t, r) - std::pow(zabs, r)) / r;
    const double tail = ray_log_bound(phase, t, zabs) + log_prefactor + std::log(std::max(1.0, 1.0 / slope));
    return tail < std::log(1e-2 * spec.tolerance);
  };
  if (spec.radius > 0.0) {
    if (!tail_ok(spec.radius)) {
      std::ostringstream os;
      os << "tail bound unmet at radius " << spec.radius << " for tolerance " << spec.tolerance;
      fail(ErrorKind::insufficient_precision, os.str());
    }
    return spec.radius;
  }
  double t = std::max(1.0, std::ceil(zabs));
  while (!tail_ok(t)) {
    t += 0.25;
    require(t < 1e4, ErrorKind::insufficient_precision, "no admissible cutoff radius");
  }
  return t;
}

// Steepest-descent branch from the saddle along the initial direction `dir`.
// The integration polyline stops once the integrand is negligible; the path is
// then followed further out, coarsely, to identify its valley.
struct Branch {
  std::vector<Complex> points;
  Complex far;
};

Branch trace_branch(const Phase& phase, Complex dir) {
  const Complex z = phase.saddle();
  const double scale = 1.0 / std::sqrt(std::abs(phase.second_at_saddle()));
  auto descent = [&](Complex at, Complex fallback) {
    const Complex g = phase.derivative(at);
    const double gabs = std::abs(g);
    if (gabs < 1e-14) return std::pair<Complex, double>{fallback, 0.0};
    return std::pair<Complex, double>{-std::conj(g) / gabs, gabs};
  };
  Branch b{{z}, z};
  Complex w = z + 0.25 * scale * dir;
  Complex last = dir;
  bool cut = false;
  for (int step = 0; step < 200000; ++step) {
    if (!cut) {
      b.points.push_back(w);
      cut = std::real(phase.relative(w)) < kPathCutoff;
    }
    if (cut && std::abs(w) > 4.0 * std::abs(z) + 4.0) {
      b.far = w;
      return b;
    }
    auto [d, gabs] = descent(w, last);
    double len;
    if (cut) {
      len = 0.05 * std::abs(w) + 0.05;
    } else {
      len = std::max(0.25 * scale, 0.1 * std::abs(w - z));
      if (gabs > 0.0) len = std::min(len, 1.5 / gabs);
      len = std::max(len, 0.02 * scale);
    }
    auto [dm, gm] = descent(w + 0.5 * len * d, d);
    (void)gm;
    last = dm;
    w += len * dm;
  }
  fail(ErrorKind::insufficient_precision, "steepest-descent path did not reach a valley");
}

double distance_to_origin(Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  double t = len2 > 0.0 ? -std::real(std::conj(ab) * a) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(a + t * ab);
}

struct Contour {
  std::vector<Piece> pieces;
  ContourKind kind;
};

// Integration pieces for the integral of exp(f - f(z)) [/ w] over the contour
// that runs from the `in` valley to the `out` valley.
Contour build_contour(const Phase& phase, const ContourSpec& spec, double in_angle, double out_angle,
                      bool pole, double log_prefactor) {
  const int r = spec.r;
  const Complex z = phase.saddle();
  ContourKind kind = spec.kind;
  if (kind == ContourKind::automatic) {
    kind = std::pow(std::abs(z), r + 1) / (r + 1) > kSaddleThreshold ? ContourKind::saddle : ContourKind::rays;
  }
  const double eps = spec.origin_detour;
  if (pole) {
    require(eps != 0.0, ErrorKind::configuration, "origin detour radius must be nonzero");
  }

  Contour out{{}, kind};
  if (kind == ContourKind::rays) {
    const double radius = choose_radius(phase, spec, log_prefactor);
    const double width = std::min(0.5, 0.5 / (1.0 + std::pow(std::abs(z), r) / r));
    const Complex u_in = std::polar(1.0, in_angle);
    const Complex u_out = std::polar(1.0, out_angle);
    const double t0 = pole ? std::abs(eps) : 0.0;
    if (pole && t0 >= radius) {
      fail(ErrorKind::configuration, "origin detour radius reaches the ray cutoff");
    }
    add_ray(out.pieces, u_out, t0, radius, width, 1.0);
    add_ray(out.pieces, u_in, t0, radius, width, -1.0);
    if (pole) {
      // Short arc through the saddle wedge (index 0) or the long way round.
      const double end = eps > 0.0 ? out_angle : out_angle - 2.0 * kPi;
      add_arc(out.pieces, t0, in_angle, end, eps > 0.0 ? 4 : 16);
    }
    return out;
  }

  // Saddle contour: the two steepest-descent branches.
  const Complex dir = kI / std::sqrt(phase.second_at_saddle());
  const Complex unit = dir / std::abs(dir);
  const Branch branch_p = trace_branch(phase, unit);
  const Branch branch_m = trace_branch(phase, -unit);

  auto lands = [](const Branch& b, double angle) { return std::abs(wrap(std::arg(b.far) - angle)); };
  const double half_valley = kPi / (2.0 * (r + 1));
  const Branch* to_in = nullptr;
  const Branch* to_out = nullptr;
  if (lands(branch_p, in_angle) < half_valley && lands(branch_m, out_angle) < half_valley) {
    to_in = &branch_p;
    to_out = &branch_m;
  } else if (lands(branch_m, in_angle) < half_valley && lands(branch_p, out_angle) < half_valley) {
    to_in = &branch_m;
    to_out = &branch_p;
  } else {
    fail(ErrorKind::configuration,
         "steepest-descent path through z=" + fmt(z) + " does not join the contour valleys");
  }

  double closest = std::numeric_limits<double>::infinity();
  for (const auto* b : {to_in, to_out}) {
    const auto& pts = b->points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      closest = std::min(closest, distance_to_origin(pts[i], pts[i + 1]));
      const double sign = b == to_out ? 1.0 : -1.0;
      out.pieces.push_back({false, pts[i], pts[i + 1], 0.0, 0.0, 0.0, sign});
    }
  }

  if (pole) {
    // Winding of the path relative to the reference contour (rays + short arc).
    double swept = 0.0;
    std::vector<Complex> path(to_in->points.rbegin(), to_in->points.rend());
    path.insert(path.end(), to_out->points.begin() + 1, to_out->points.end());
    path.insert(path.begin(), to_in->far);
    path.push_back(to_out->far);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) swept += std::arg(path[i + 1] / path[i]);
    const double a_in = in_angle + wrap(std::arg(path.front()) - in_angle);
    const double a_out = out_angle + wrap(std::arg(path.back()) - out_angle);
    const long index = std::lround((swept - (a_out - a_in)) / (2.0 * kPi));
    require(index == 0, ErrorKind::configuration, "saddle path has nonzero index about w = 0");
    require(closest > 0.02 * std::abs(z), ErrorKind::configuration,
            "saddle path passes too close to w = 0");
    if (eps < 0.0) {
      require(-eps < 0.5 * closest, ErrorKind::configuration, "origin detour radius intersects the contour");
      add_arc(out.pieces, -eps, 0.0, -2.0 * kPi, 16);
    }
  }
  return out;
}

Evaluation evaluate(const Phase& phase, const ContourSpec& spec, double in_angle, double out_angle, bool pole,
                    Complex prefactor) {
  require(spec.nodes_per_ray >= 2 && spec.nodes_per_ray <= 512, ErrorKind::invalid_argument,
          "nodes_per_ray must lie in [2, 512]");
  require(spec.tolerance > 0.0, ErrorKind::invalid_argument, "tolerance must be positive");
  const Contour contour = build_contour(phase, spec, in_angle, out_angle, pole, std::log(std::abs(prefactor)));
  const Sum coarse = integrate(phase, contour.pieces, spec.nodes_per_ray);
  const Sum fine = integrate(phase, contour.pieces, 2 * spec.nodes_per_ray);
  Evaluation e;
  e.value = prefactor * fine.value;
  e.doubling_change = std::abs(prefactor * (fine.value - coarse.value));
  e.error_estimate = e.doubling_change + 8.0 * kEps * std::abs(prefactor) * fine.magnitude;
  e.contour = contour.kind;
  e.panels = static_cast<int>(contour.pieces.size());
  return e;
}

Rational series_coefficient(int r, int k, Which which) {
  const auto s = which == Which::a ? string_ops::solve_a(r, k) : string_ops::solve_d(r, k);
  return s.coeff(-(r + 1) * k);
}

}  // namespace

const char* to_string(Which which) { return which == Which::a ? "a" : "d"; }

const char* to_string(ContourKind kind) {
  switch (kind) {
    case ContourKind::automatic: return "automatic";
    case ContourKind::rays: return "rays";
    case ContourKind::saddle: return "saddle";
  }
  return "?";
}

Complex ContourSpec::ray_in() const { return std::polar(1.0, -kPi / (r + 1)); }
Complex ContourSpec::ray_out() const { return std::polar(1.0, kPi / (r + 1)); }

bool in_sector_a(Complex z, int r) { return z != 0.0 && std::abs(std::arg(z)) < kPi / r; }

bool in_sector_d(Complex z, int r) {
  return z != 0.0 && std::abs(std::arg(z * std::polar(1.0, kPi / (r + 1)))) < kPi / r;
}

Evaluation eval_A(Complex z, const ContourSpec& spec) {
  const int r = spec.r;
  require(r >= 2, ErrorKind::invalid_argument, "r must be at least 2");
  if (spec.enforce_sector && !in_sector_a(z, r)) {
    fail(ErrorKind::domain, "z=" + fmt(z) + " lies outside the sector |arg z| < pi/" + std::to_string(r));
  }
  const Phase phase(r, z, 1.0, false);
  const double theta = kPi / (r + 1);
  // Downward traversal of Gamma: the contour runs in along arg +theta.
  const Complex prefactor = kI / std::sqrt(2.0 * kPi) * std::pow(z, 0.5 * (r - 1));
  return evaluate(phase, spec, theta, -theta, false, prefactor);
}

Evaluation eval_D(Complex z, const ContourSpec& spec) {
  const int r = spec.r;
  require(r >= 2, ErrorKind::invalid_argument, "r must be at least 2");
  if (spec.enforce_sector && !in_sector_d(z, r)) {
    fail(ErrorKind::domain, "z=" + fmt(z) + " lies outside the sector -pi/" + std::to_string(r) + " - pi/" +
                                std::to_string(r + 1) + " < arg z < pi/" + std::to_string(r) + " - pi/" +
                                std::to_string(r + 1));
  }
  const Phase phase(r, z, -1.0, true);
  const double theta = kPi / (r + 1);
  const Complex omega_half = std::polar(1.0, 0.5 * (r + 1) * theta);
  const Complex prefactor = -kI * omega_half / std::sqrt(2.0 * kPi) * std::pow(z, 0.5 * (r + 1));
  return evaluate(phase, spec, -2.0 * theta, 0.0, true, prefactor);
}

Complex asymptotic_truncation(Complex z, int r, int terms, Which which) {
  require(terms >= 0, ErrorKind::invalid_argument, "terms must be nonnegative");
  Complex out = 1.0;
  if (terms == 0) return out;
  const auto s = which == Which::a ? string_ops::solve_a(r, terms) : string_ops::solve_d(r, terms);
  const Complex step = 1.0 / ipow(z, r + 1);
  Complex power = 1.0;
  for (int k = 1; k <= terms; ++k) {
    power *= step;
    out += s.coeff(-(r + 1) * k).get_d() * power;
  }
  return out;
}

double next_term_magnitude(Complex z, int r, int terms, Which which) {
  require(terms >= 0, ErrorKind::invalid_argument, "terms must be nonnegative");
  const double c = std::abs(series_coefficient(r, terms + 1, which).get_d());
  return c / std::pow(std::abs(z), (r + 1) * (terms + 1));
}

GapReport asym_gap(Complex z, int terms, Which which, const ContourSpec& spec) {
  GapReport g;
  g.z = z;
  g.r = spec.r;
  g.which = which;
  g.terms = terms;
  g.evaluation = which == Which::a ? eval_A(z, spec) : eval_D(z, spec);
  g.truncation = asymptotic_truncation(z, spec.r, terms, which);
  g.gap = std::abs(g.evaluation.value - g.truncation);
  g.next_term = next_term_magnitude(z, spec.r, terms, which);
  g.bound = 2.0 * g.next_term;
  const bool inside = which == Which::a ? in_sector_a(z, spec.r) : in_sector_d(z, spec.r);
  g.asserted = inside && std::abs(z) >= kAsymptoticRadius;
  g.pass = !g.asserted || g.gap <= g.bound;
  return g;
}

const GaussRule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  require(n >= 1, ErrorKind::invalid_argument, "Gauss rule needs at least one node");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace rkp::pearcey
