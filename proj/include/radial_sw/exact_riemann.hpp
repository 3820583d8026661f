#pragma once

// Exact global solutions of the radial pseudo-Riemann problem.
//
// Case structure (rho_l, rho_r > 0 unless noted):
//   u_l < u_r              two vacuum edges, separating slabs
//   u_l = u_r              contact
//   u_l > u_r              shadow wave with speed v0 (first root);
//     u_l > 0              interior vacuum opens at the origin and catches the
//                          front at t_in; afterwards the front decelerates
//                          towards u_r and reaches r = 0 iff u_r < 0
//     u_l <= 0             interior drains into the origin; the front reaches
//                          r = 0 at -R/v0 exactly when the interior is gone
//   u_l > u_r, one vacuum  a single vacuum edge (VacuumLeft/RightShock)
//
// The origin mass m0 is accounted from first principles: regular inflow
// |S| k (-u) while material with u < 0 touches r = 0, plus the front mass
// |S| p at the instant a shadow wave arrives there.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "radial_sw/core.hpp"
#include "radial_sw/plan.hpp"

namespace rsw {

inline CaseTag classify(const PseudoRiemannData& d) {
  d.validate();
  CaseTag tag;
  tag.left_drains = d.u_l < 0.0 && d.rho_l > 0.0;
  if (d.rho_l == 0.0 && d.rho_r == 0.0) {
    tag.kind = CaseKind::AllVacuum;
    tag.left_drains = false;
  } else if (d.u_l < d.u_r) {
    tag.kind = CaseKind::VacuumFan;
  } else if (d.u_l == d.u_r) {
    tag.kind = CaseKind::Contact;
  } else if (d.rho_l == 0.0) {
    tag.kind = CaseKind::VacuumLeftShock;
  } else if (d.rho_r == 0.0) {
    tag.kind = CaseKind::VacuumRightShock;
  } else {
    tag.kind = CaseKind::DeltaShock;
    tag.has_absorption = d.u_l > 0.0;
    // For u_l <= 0 the speed v0 < u_l <= 0; otherwise only u_r < 0 brings
    // the decelerating front back to the origin.
    tag.hits_origin = d.u_l <= 0.0 || d.u_r < 0.0;
  }
  return tag;
}

/// Entropic shadow-wave speed (u1 sqrt(rho1) + u0 sqrt(rho0)) / (sqrt(rho1) + sqrt(rho0)).
inline double first_root_speed(double rho0, double u0, double rho1, double u1) {
  if (rho0 < 0.0 || rho1 < 0.0) throw DomainError("first_root_speed: negative density");
  if (rho0 == 0.0 && rho1 == 0.0) throw DomainError("first_root_speed: both states are vacuum");
  if (rho0 == rho1) return 0.5 * (u0 + u1);
  const double a = std::sqrt(rho0);
  const double b = std::sqrt(rho1);
  return (u1 * b + u0 * a) / (b + a);
}

/// Second root of v kappa1 = kappa2; none when the densities coincide.
inline std::optional<double> second_root_speed(double rho0, double u0, double rho1, double u1) {
  if (rho0 < 0.0 || rho1 < 0.0) throw DomainError("second_root_speed: negative density");
  const double a = std::sqrt(rho0);
  const double b = std::sqrt(rho1);
  if (a == b) return std::nullopt;
  return (u1 * b - u0 * a) / (b - a);
}

namespace detail {

inline void require_delta_shock(const PseudoRiemannData& d, const char* what) {
  if (classify(d).kind != CaseKind::DeltaShock) {
    throw PreconditionError(std::string(what) + ": data is not a delta-shock case");
  }
}

inline double v0_of(const PseudoRiemannData& d) { return first_root_speed(d.rho_l, d.u_l, d.rho_r, d.u_r); }

/// d/dt of sigma xi^{n-1} during the constant-speed phase.
inline double kappa_of(const PseudoRiemannData& d) { return std::sqrt(d.rho_l * d.rho_r) * (d.u_l - d.u_r); }

inline double constant_phase_end(const PseudoRiemannData& d) {
  const double v0 = v0_of(d);
  if (d.u_l > 0.0) return d.R / (d.u_l - v0);
  return -d.R / v0;  // v0 < 0 here
}

}  // namespace detail

inline std::optional<double> absorption_time(const PseudoRiemannData& d) {
  detail::require_delta_shock(d, "absorption_time");
  if (d.u_l <= 0.0) return std::nullopt;
  const double a = std::sqrt(d.rho_l);
  const double b = std::sqrt(d.rho_r);
  return d.R * (b + a) / (b * (d.u_l - d.u_r));
}

/// Lineal mass of the constant-speed shadow wave,
/// sigma(t) = t sqrt(rho_l rho_r) (u_l - u_r) (R + v0 t)^{1-n}.
inline double sigma_const(const PseudoRiemannData& d, double t) {
  detail::require_delta_shock(d, "sigma_const");
  const double t_end = detail::constant_phase_end(d);
  if (t < 0.0 || t > t_end) throw OutOfPhaseError("sigma_const: t outside the constant-speed phase");
  const double xi = d.R + detail::v0_of(d) * t;
  const double p = detail::kappa_of(d) * t;
  return d.n == 1 ? p : p * std::pow(xi, 1 - d.n);
}

/// Front evolution after the interior has been absorbed.
struct PostAbsorption {
  PostAbsorptionConstants constants;
  double t_in;
  Front front;
  int n;

  double position(double t) const { return front.position(checked(t)); }
  double speed(double t) const { return front.speed(checked(t)); }
  double sigma(double t) const { return front.lineal_mass(checked(t), n); }
  double solid_angle_mass(double t) const { return front.solid_angle_mass(checked(t)); }

 private:
  double checked(double t) const {
    if (t < t_in) throw OutOfPhaseError("post_absorption: t before absorption time");
    return t;
  }
};

inline PostAbsorption post_absorption(const PseudoRiemannData& d) {
  detail::require_delta_shock(d, "post_absorption");
  const auto t_in = absorption_time(d);
  if (!t_in) throw PreconditionError("post_absorption: no absorption event (u_l <= 0)");
  const double du = d.u_l - d.u_r;
  PostAbsorptionConstants c{2.0 * d.rho_r / (d.R * d.rho_l * du), (d.rho_l - d.rho_r) / (d.rho_l * du * du),
                            d.R * (d.rho_r - d.rho_l) / d.rho_r};
  Front f;
  f.kind = FrontKind::ShadowWave;
  f.motion = AbsorbedMotion{d.u_r, c.C, c.D, c.E};
  f.mass = SqrtMass{d.rho_r, c.C, c.D};
  return PostAbsorption{c, *t_in, f, d.n};
}

inline std::optional<double> origin_hit_time(const PseudoRiemannData& d) {
  detail::require_delta_shock(d, "origin_hit_time");
  const double v0 = detail::v0_of(d);
  if (d.u_l <= 0.0) {
    if (v0 < 0.0) return -d.R / v0;
    return std::nullopt;
  }
  if (d.u_r >= 0.0) return std::nullopt;

  const PostAbsorption pa = post_absorption(d);
  const auto [C, D, E] = pa.constants;
  // xi = 0  <=>  u_r s^2 + 2 s + (E C - u_r D) = 0 with s = sqrt(C t + D).
  // u_r < 0 and xi(t_in) > 0 put sqrt(C t_in + D) strictly between the two
  // roots, so the larger one is the first crossing.
  const double c0 = E * C - d.u_r * D;
  const double q = 1.0 - d.u_r * c0;
  double t_hit = kInf;
  if (q >= 0.0) {
    const double s = (-1.0 - std::sqrt(q)) / d.u_r;
    t_hit = (s * s - D) / C;
  }
  const double tol = 1e-12 * d.R;
  auto xi = [&](double t) { return pa.front.position(t); };
  if (std::isfinite(t_hit) && t_hit > pa.t_in && std::abs(xi(t_hit)) <= 1e3 * tol) return t_hit;

  // Bisection on the closed-form position.
  double lo = pa.t_in;
  double hi = pa.t_in + d.R / -d.u_r + 1.0;
  while (xi(hi) > 0.0) hi = lo + 2.0 * (hi - lo);
  while (hi - lo > 1e-15 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (xi(mid) > 0.0) lo = mid; else hi = mid;
    if (std::abs(xi(mid)) <= tol && hi - lo < 1e-12 * hi) break;
  }
  return 0.5 * (lo + hi);
}

namespace detail {

/// Ballistic material occupying [a + u t, b + u t] (clipped at the origin).
struct Slab {
  double coeff;
  double u;
  double a;
  double b;  // may be +inf
};

struct PlanBuilder {
  WavePlan plan;
  double area;

  explicit PlanBuilder(const PseudoRiemannData& d, double t_max) : area(surface_area(d.n)) {
    plan.data = d;
    plan.t_max = t_max;
  }

  // Appends origin-account pieces for a phase starting at t_begin with the
  // given inflow (mass and momentum rates) and instantaneous jumps.
  void account(double t_begin, double mass_rate, double mom_rate, double mass_jump = 0.0,
               double mom_jump = 0.0) {
    auto push = [t_begin](PiecewiseLinearLaw& law, double rate, double jump) {
      const double base = law(t_begin) + jump;
      law.pieces.push_back({t_begin, base, rate});
    };
    push(plan.m0_law, mass_rate, mass_jump);
    push(plan.origin_momentum, mom_rate, mom_jump);
  }
};

inline void build_slabs(PlanBuilder& b, const std::vector<Slab>& slabs) {
  std::vector<double> times{0.0};
  for (const Slab& s : slabs) {
    if (s.u < 0.0) {
      if (s.a > 0.0) times.push_back(-s.a / s.u);
      if (std::isfinite(s.b)) times.push_back(-s.b / s.u);
    }
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  for (std::size_t k = 0; k < times.size(); ++k) {
    Phase ph;
    ph.t_begin = times[k];
    ph.t_end = k + 1 < times.size() ? times[k + 1] : kInf;
    const double probe = std::isfinite(ph.t_end) ? 0.5 * (ph.t_begin + ph.t_end) : ph.t_begin + 1.0;

    double mass_rate = 0.0;
    double mom_rate = 0.0;
    std::optional<LinearMotion> prev_hi;  // upper edge of the previous slab
    for (const Slab& s : slabs) {
      if (std::isfinite(s.b) && s.b + s.u * probe <= 0.0) continue;  // drained
      const RegionProfile body = RegionProfile::power_law(s.coeff, s.u);
      const LinearMotion lo{s.a, s.u};
      if (ph.regions.empty() && s.a + s.u * probe <= 0.0) {
        ph.regions.push_back(body);
        if (s.u < 0.0) {
          mass_rate += b.area * s.coeff * -s.u;
          mom_rate -= b.area * s.coeff * s.u * s.u;
        }
      } else if (prev_hi && prev_hi->x0 == lo.x0 && prev_hi->v == lo.v) {
        ph.fronts.back().kind = FrontKind::Contact;
        ph.regions.back() = body;
      } else {
        if (ph.regions.empty()) ph.regions.push_back(RegionProfile::vacuum());
        ph.fronts.push_back(Front{FrontKind::VacuumEdge, lo, NoMass{}});
        ph.regions.push_back(body);
      }
      prev_hi.reset();
      if (std::isfinite(s.b)) {
        prev_hi = LinearMotion{s.b, s.u};
        ph.fronts.push_back(Front{FrontKind::VacuumEdge, *prev_hi, NoMass{}});
        ph.regions.push_back(RegionProfile::vacuum());
      }
    }
    if (ph.regions.empty()) ph.regions.push_back(RegionProfile::vacuum());
    b.account(ph.t_begin, mass_rate, mom_rate);
    b.plan.phases.push_back(std::move(ph));
  }
}

}  // namespace detail

inline WavePlan solve(const PseudoRiemannData& d, double t_max) {
  d.validate();
  if (!(t_max > 0.0)) throw DomainError("solve: t_max must be > 0");
  detail::PlanBuilder b(d, t_max);
  b.plan.tag = classify(d);
  const double area = b.area;

  if (b.plan.tag.kind != CaseKind::DeltaShock) {
    std::vector<detail::Slab> slabs;
    if (d.rho_l > 0.0) slabs.push_back({d.rho_l, d.u_l, 0.0, d.R});
    if (d.rho_r > 0.0) slabs.push_back({d.rho_r, d.u_r, d.R, kInf});
    detail::build_slabs(b, slabs);
    if (d.rho_l > 0.0 && d.u_l < 0.0) b.plan.events.t_origin_left = -d.R / d.u_l;
    if (d.rho_r > 0.0 && d.u_r < 0.0) b.plan.events.t_vacuum_close = -d.R / d.u_r;
    return b.plan;
  }

  const double v0 = detail::v0_of(d);
  const double kappa = detail::kappa_of(d);
  b.plan.v0 = v0;
  const RegionProfile left = RegionProfile::power_law(d.rho_l, d.u_l);
  const RegionProfile right = RegionProfile::power_law(d.rho_r, d.u_r);
  const Front sw{FrontKind::ShadowWave, LinearMotion{d.R, v0}, LinearMass{kappa}};
  const double inflow_r = d.u_r < 0.0 ? area * d.rho_r * -d.u_r : 0.0;
  const double inflow_r_mom = d.u_r < 0.0 ? -area * d.rho_r * d.u_r * d.u_r : 0.0;

  if (d.u_l > 0.0) {
    const PostAbsorption pa = post_absorption(d);
    b.plan.constants = pa.constants;
    b.plan.events.t_in = pa.t_in;

    Phase p0;
    p0.t_begin = 0.0;
    p0.t_end = pa.t_in;
    p0.fronts = {Front{FrontKind::VacuumEdge, LinearMotion{0.0, d.u_l}, NoMass{}}, sw};
    p0.regions = {RegionProfile::vacuum(), left, right};
    b.account(0.0, 0.0, 0.0);
    b.plan.phases.push_back(p0);

    const auto t_hit = origin_hit_time(d);
    Phase p1;
    p1.t_begin = pa.t_in;
    p1.t_end = t_hit ? *t_hit : kInf;
    p1.fronts = {pa.front};
    p1.regions = {RegionProfile::vacuum(), right};
    b.plan.phases.push_back(p1);

    if (t_hit) {
      b.plan.tag.hits_origin = true;
      b.plan.events.t_sw0 = *t_hit;
      const double p = pa.front.solid_angle_mass(*t_hit);
      Phase p2;
      p2.t_begin = *t_hit;
      p2.regions = {right};
      b.account(*t_hit, inflow_r, inflow_r_mom, area * p, area * p * pa.front.speed(*t_hit));
      b.plan.phases.push_back(p2);
    }
    return b.plan;
  }

  // u_l <= 0: v0 < 0, interior and front vanish together at t0 = -R/v0.
  const double t0 = -d.R / v0;
  b.plan.events.t_sw0 = t0;
  if (d.u_l < 0.0) b.plan.events.t_origin_left = t0;

  Phase p0;
  p0.t_begin = 0.0;
  p0.t_end = t0;
  p0.fronts = {sw};
  p0.regions = {left, right};
  b.account(0.0, area * d.rho_l * -d.u_l, -area * d.rho_l * d.u_l * d.u_l);
  b.plan.phases.push_back(p0);

  Phase p1;
  p1.t_begin = t0;
  p1.regions = {right};
  b.account(t0, inflow_r, inflow_r_mom, area * kappa * t0, area * kappa * t0 * v0);
  b.plan.phases.push_back(p1);
  return b.plan;
}

inline double origin_mass(const WavePlan& plan, double t) {
  if (t < 0.0) throw DomainError("origin_mass: t must be >= 0");
  return plan.m0(t);
}

inline SolutionSample evaluate(const WavePlan& plan, double r, double t) {
  if (r < 0.0 || t < 0.0) throw DomainError("evaluate: r and t must be >= 0");
  if (t > plan.t_max) throw OutOfRangeError("evaluate: t beyond plan horizon");
  SolutionSample s;
  s.r = r;
  s.t = t;
  const auto [rho, u] = plan.regular(r, t, &s.is_vacuum);
  s.rho = rho;
  s.u = u;
  s.m0 = plan.m0(t);
  const int n = plan.data.n;
  for (const Front& f : plan.phase_at(t).fronts) {
    if (f.kind != FrontKind::ShadowWave) continue;
    const double xi = f.position(t);
    if (std::abs(r - xi) < 1e-9 * std::max(plan.data.R, xi)) {
      const double sigma = f.lineal_mass(t, n);
      s.atom = Atom{xi, sigma, surface_area(n) * f.solid_angle_mass(t)};
    }
  }
  return s;
}

}  // namespace rsw
