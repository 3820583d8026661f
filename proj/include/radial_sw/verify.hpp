#pragma once

// Admissibility and consistency checks: entropy, overcompressibility,
// conserved totals, Rankine-Hugoniot degeneracy and weak-form residuals of
// epsilon-realized shadow waves.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <optional>
#include <vector>

#include "radial_sw/core.hpp"
#include "radial_sw/exact_riemann.hpp"
#include "radial_sw/plan.hpp"
#include "radial_sw/quadrature.hpp"
#include "radial_sw/sw_ode.hpp"

namespace rsw {

/// -c^3 [rho] + 3 c^2 [rho u] - 3 c [rho u^2] + [rho u^3]; <= 0 iff dissipative.
inline double entropy_lhs(double rho0, double u0, double rho1, double u1, double c) {
  if (rho0 < 0.0 || rho1 < 0.0) throw DomainError("entropy_lhs: negative density");
  const Jumps j = jump_brackets(rho0, u0, rho1, u1);
  return -c * c * c * j.rho + 3.0 * c * c * j.rho_u - 3.0 * c * j.rho_u2 + j.rho_u3;
}

/// kappa1 (u0 u1 - c^2) - kappa2 (u0 + u1 - 2c), equal to entropy_lhs.
inline double entropy_lhs_kappa(double rho0, double u0, double rho1, double u1, double c) {
  const Fluxes k = influx(OuterStates{rho0, u0, rho1, u1}, c);
  return k.kappa1 * (u0 * u1 - c * c) - k.kappa2 * (u0 + u1 - 2.0 * c);
}

inline bool is_overcompressive(double u0, double v, double u1) { return u0 >= v && v >= u1; }

/// True when the second root lies strictly outside [min(u0,u1), max(u0,u1)].
inline bool second_root_excluded(double rho0, double u0, double rho1, double u1) {
  if (!(rho0 > 0.0) || !(rho1 > 0.0) || rho0 == rho1 || u0 == u1) {
    throw DomainError("second_root_excluded: needs rho0, rho1 > 0, rho0 != rho1, u0 != u1");
  }
  const double v = *second_root_speed(rho0, u0, rho1, u1);
  return v < std::min(u0, u1) || v > std::max(u0, u1);
}

/// Speed for which kappa1 = kappa2 = 0, if one exists.
inline std::optional<double> rankine_hugoniot_degenerate(double rho0, double u0, double rho1, double u1) {
  if (rho0 == 0.0 && rho1 == 0.0) return std::nullopt;
  if (rho0 == 0.0) return u1;
  if (rho1 == 0.0) return u0;
  if (u0 == u1) return u0;
  return std::nullopt;
}

namespace detail {

/// Largest position a front reaches on [t_a, t_b].
inline double front_max(const Front& f, double t_a, double t_b) {
  double m = std::max(f.position(t_a), f.position(t_b));
  if (const auto* am = std::get_if<AbsorbedMotion>(&f.motion); am && am->u_r < 0.0) {
    const double ts = (1.0 / (am->u_r * am->u_r) - am->D) / am->C;  // speed = 0
    if (ts > t_a && ts < t_b) m = std::max(m, f.position(ts));
  }
  return m;
}

}  // namespace detail

/// Q(t) and M(t) inside r <= r_max, plus the origin accounts and the
/// cumulative flux through r = r_max, so both are exactly conserved.
inline ConservedPair conserved(const WavePlan& plan, double t, double r_max) {
  if (t < 0.0) throw DomainError("conserved: t must be >= 0");
  if (!(r_max > plan.data.R)) throw DomainError("conserved: r_max must exceed R");
  const int n = plan.data.n;
  const double area = surface_area(n);

  ConservedPair out{plan.m0(t), plan.origin_momentum(t)};

  // boundary flux through r_max, phase by phase
  for (const Phase& ph : plan.phases) {
    if (ph.t_begin > t) break;
    const double tb = std::min(ph.t_end, t);
    for (const Front& f : ph.fronts) {
      if (detail::front_max(f, ph.t_begin, tb) > r_max) {
        throw OutOfRangeError("conserved: a front crosses r_max; enlarge the truncation radius");
      }
    }
    const RegionProfile& outer = ph.regions.back();
    if (!outer.is_vacuum()) {
      const double dt = tb - ph.t_begin;
      out.Q += area * outer.coeff * outer.velocity * dt;
      out.M += area * outer.coeff * outer.velocity * outer.velocity * dt;
    }
  }

  const Phase& ph = plan.phase_at(t);
  for (std::size_t i = 0; i < ph.regions.size(); ++i) {
    const RegionProfile& reg = ph.regions[i];
    if (reg.is_vacuum()) continue;
    const double lo = i == 0 ? 0.0 : std::max(0.0, ph.fronts[i - 1].position(t));
    const double hi = i == ph.fronts.size() ? r_max : std::min(r_max, ph.fronts[i].position(t));
    if (hi <= lo) continue;
    const double mass = area * reg.coeff * (hi - lo);
    out.Q += mass;
    out.M += mass * reg.velocity;
  }
  for (const Front& f : ph.fronts) {
    const double p = f.solid_angle_mass(t);
    out.Q += area * p;
    out.M += area * p * f.speed(t);
  }
  return out;
}

inline double total_mass(const WavePlan& plan, double t, double r_max) { return conserved(plan, t, r_max).Q; }
inline double total_momentum(const WavePlan& plan, double t, double r_max) {
  return conserved(plan, t, r_max).M;
}

/// phi = ((1 - X^2)(1 - T^2))^4 on the box |X|, |T| < 1 with
/// X = (r - r_c)/h_r, T = (t - t_c)/h_t.
struct TestFunction {
  double r_c;
  double t_c;
  double h_r;
  double h_t;

  void validate() const {
    if (!(h_r > 0.0) || !(h_t > 0.0)) throw DomainError("TestFunction: half-widths must be > 0");
    if (!(r_c - h_r > 0.0) || !(t_c - h_t > 0.0)) {
      throw UnsupportedRegionError("TestFunction: support must lie in r > 0, t > 0");
    }
  }

  struct Value {
    double phi;
    double phi_r;
    double phi_t;
  };

  Value operator()(double r, double t) const {
    const double X = (r - r_c) / h_r;
    const double T = (t - t_c) / h_t;
    if (std::abs(X) >= 1.0 || std::abs(T) >= 1.0) return {0.0, 0.0, 0.0};
    const double a = 1.0 - X * X;
    const double b = 1.0 - T * T;
    const double ab3 = std::pow(a * b, 3);
    return {ab3 * a * b, 4.0 * ab3 * b * (-2.0 * X / h_r), 4.0 * ab3 * a * (-2.0 * T / h_t)};
  }
};

enum class WeakEquation { Mass, Momentum, Entropy };

/// A field that weak_residual can integrate: pointwise (rho, u) plus the
/// breakpoints where it fails to be smooth.
template <class F>
concept WeakField = requires(const F& f, double r, double t) {
  { f.n() } -> std::convertible_to<int>;
  { f.at(r, t) } -> std::convertible_to<std::pair<double, double>>;
  { f.r_breaks(t) } -> std::convertible_to<std::vector<double>>;
  { f.t_breaks() } -> std::convertible_to<std::vector<double>>;
};

/// Epsilon realization of an exact plan.
class PlanField {
 public:
  PlanField(const WavePlan& plan, double eps) : fam_(plan, eps) {}

  int n() const { return fam_.plan().data.n; }
  std::pair<double, double> at(double r, double t) const { return fam_.at(r, t); }

  std::vector<double> r_breaks(double t) const {
    std::vector<double> out;
    for (const Front& f : fam_.plan().phase_at(t).fronts) {
      const double xi = f.position(t);
      if (f.kind == FrontKind::ShadowWave) {
        out.push_back(xi - 0.5 * fam_.eps());
        out.push_back(xi + 0.5 * fam_.eps());
      } else {
        out.push_back(xi);
      }
    }
    return out;
  }

  std::vector<double> t_breaks() const {
    std::vector<double> out;
    for (const Phase& ph : fam_.plan().phases) out.push_back(ph.t_begin);
    return out;
  }

 private:
  EpsFamily fam_;
};

/// Epsilon realization of the non-entropic example; the left field is the
/// smooth solution carried by characteristics leaving the front, valid for
/// r >= 1 - t.
class NonentropicField {
 public:
  explicit NonentropicField(double eps) : eps_(eps) {
    if (!(eps > 0.0)) throw DomainError("NonentropicField: eps must be > 0");
  }

  int n() const { return 2; }

  std::pair<double, double> at(double r, double t) const {
    const NonentropicState e = nonentropic_example(t);
    const double xi = e.front.xi;
    if (std::abs(r - xi) < 0.5 * eps_) return {e.front.sigma / eps_, e.front.speed};
    if (r > xi) return {1.0 / r, 0.0};
    return left(r, t);
  }

  std::vector<double> r_breaks(double t) const {
    const double xi = nonentropic_example(t).front.xi;
    return {xi - 0.5 * eps_, xi + 0.5 * eps_};
  }

  std::vector<double> t_breaks() const { return {}; }

  /// Smooth left state at (r, t) for 1 - t <= r < xi(t).
  static std::pair<double, double> left(double r, double t) {
    if (r < 1.0 - t) throw UnsupportedRegionError("NonentropicField: point outside the front-emitted region");
    auto foot = [&](double tau) {
      const NonentropicState e = nonentropic_example(tau);
      return e.front.xi + e.u_l * (t - tau) - r;
    };
    double lo = 0.0;
    double hi = t;
    for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, t); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (foot(mid) > 0.0) hi = mid; else lo = mid;
    }
    const double tau = 0.5 * (lo + hi);
    const NonentropicState e = nonentropic_example(tau);
    const double rel = e.front.speed - e.u_l;
    const double rho = e.front.xi * e.rho_l * rel / (r * (rel + e.du_l * (t - tau)));
    return {rho, e.u_l};
  }

 private:
  double eps_;
};

struct QuadratureOptions {
  int t_panels = 8;  // panels per smooth t-interval
  int r_panels = 4;  // panels per smooth r-interval
};

/// Weak form of the radial system (or the entropy inequality) tested against phi:
///   mass:     int int -rho phi_t - rho u phi_r + (n-1)/r rho u phi
///   momentum: int int -rho u phi_t - rho u^2 phi_r + (n-1)/r rho u^2 phi
///   entropy:  same with (rho u^2, rho u^3, rho u^3)/2; limit <= 0 when dissipative.
template <WeakField F>
double weak_residual(const F& field, const TestFunction& phi, WeakEquation which, QuadratureOptions opt = {}) {
  phi.validate();
  const int n = field.n();
  const double r_lo = phi.r_c - phi.h_r;
  const double r_hi = phi.r_c + phi.h_r;
  const double t_lo = phi.t_c - phi.h_t;
  const double t_hi = phi.t_c + phi.h_t;

  auto integrand = [&](double r, double t) {
    const auto [rho, u] = field.at(r, t);
    const auto v = phi(r, t);
    double a = rho;
    double b = rho * u;
    if (which == WeakEquation::Momentum) {
      a = rho * u;
      b = rho * u * u;
    } else if (which == WeakEquation::Entropy) {
      a = 0.5 * rho * u * u;
      b = 0.5 * rho * u * u * u;
    }
    return -a * v.phi_t - b * v.phi_r + (n - 1) / r * b * v.phi;
  };
  auto inner = [&](double t) {
    const auto pts = quad::breakpoints(r_lo, r_hi, field.r_breaks(t));
    return quad::integrate([&](double r) { return integrand(r, t); }, pts, opt.r_panels);
  };
  const auto t_pts = quad::breakpoints(t_lo, t_hi, field.t_breaks());
  return quad::integrate(inner, t_pts, opt.t_panels);
}

inline constexpr double kQuadratureTolerance = 1e-10;

struct ResidualReport {
  std::vector<double> eps;
  std::vector<double> mass;
  std::vector<double> momentum;
  std::vector<double> entropy;
  std::optional<double> order_mass;
  std::optional<double> order_momentum;
};

/// Least-squares slope of log|res| against log eps, ignoring values below
/// 10x the quadrature tolerance; none with fewer than two usable points.
inline std::optional<double> fit_order(const std::vector<double>& eps, const std::vector<double>& res) {
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < eps.size() && i < res.size(); ++i) {
    if (std::abs(res[i]) < 10.0 * kQuadratureTolerance) continue;
    x.push_back(std::log(eps[i]));
    y.push_back(std::log(std::abs(res[i])));
  }
  if (x.size() < 2) return std::nullopt;
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

inline std::vector<double> eps_ladder(double eps0 = 1e-2, int halvings = 6) {
  std::vector<double> out;
  for (int k = 0; k <= halvings; ++k) out.push_back(eps0 / std::pow(2.0, k));
  return out;
}

/// Runs all three weak forms over an eps ladder; make_field(eps) builds the field.
template <class Make>
ResidualReport residual_ladder(Make&& make_field, const TestFunction& phi, const std::vector<double>& eps,
                               QuadratureOptions opt = {}) {
  for (std::size_t i = 1; i < eps.size(); ++i) {
    if (!(eps[i] < eps[i - 1])) throw DomainError("residual_ladder: eps must be strictly decreasing");
  }
  ResidualReport rep;
  rep.eps = eps;
  for (double e : eps) {
    const auto field = make_field(e);
    rep.mass.push_back(weak_residual(field, phi, WeakEquation::Mass, opt));
    rep.momentum.push_back(weak_residual(field, phi, WeakEquation::Momentum, opt));
    rep.entropy.push_back(weak_residual(field, phi, WeakEquation::Entropy, opt));
  }
  rep.order_mass = fit_order(rep.eps, rep.mass);
  rep.order_momentum = fit_order(rep.eps, rep.momentum);
  return rep;
}

/// Test function centred on the first shadow wave of the plan at t_c.
inline TestFunction front_test_function(const WavePlan& plan, double t_c, double h_r, double h_t) {
  for (const Front& f : plan.phase_at(t_c).fronts) {
    if (f.kind == FrontKind::ShadowWave) return TestFunction{f.position(t_c), t_c, h_r, h_t};
  }
  throw PreconditionError("front_test_function: no shadow wave at t_c");
}

}  // namespace rsw
