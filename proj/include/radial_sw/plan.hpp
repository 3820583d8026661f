#pragma once

// Global-in-time piecewise solutions (WavePlan) and their epsilon
// realizations. Built by exact_riemann::solve; read by verify and the CLI.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "radial_sw/core.hpp"

namespace rsw {

/// xi(t) = x0 + v t
struct LinearMotion {
  double x0;
  double v;
};

/// Front after the interior has been swept up:
/// xi(t) = u_r t + E + (2/C) sqrt(C t + D), speed = u_r + (C t + D)^{-1/2}.
struct AbsorbedMotion {
  double u_r;
  double C;
  double D;
  double E;
};

using FrontMotion = std::variant<LinearMotion, AbsorbedMotion>;

// Front mass laws are written for p(t) = sigma(t) xi(t)^{n-1}, the mass per
// unit solid angle; sigma itself follows from the position.
struct NoMass {};

/// p(t) = kappa t
struct LinearMass {
  double kappa;
};

/// p(t) = (2 rho_r / C) sqrt(C t + D)
struct SqrtMass {
  double rho_r;
  double C;
  double D;
};

using FrontMass = std::variant<NoMass, LinearMass, SqrtMass>;

struct Front {
  FrontKind kind = FrontKind::VacuumEdge;
  FrontMotion motion = LinearMotion{0.0, 0.0};
  FrontMass mass = NoMass{};

  double position(double t) const {
    return std::visit(
        [t](const auto& m) -> double {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, LinearMotion>) {
            return m.x0 + m.v * t;
          } else {
            return m.u_r * t + m.E + (2.0 / m.C) * std::sqrt(m.C * t + m.D);
          }
        },
        motion);
  }

  double speed(double t) const {
    return std::visit(
        [t](const auto& m) -> double {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, LinearMotion>) {
            return m.v;
          } else {
            return m.u_r + 1.0 / std::sqrt(m.C * t + m.D);
          }
        },
        motion);
  }

  double acceleration(double t) const {
    return std::visit(
        [t](const auto& m) -> double {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, LinearMotion>) {
            return 0.0;
          } else {
            return -0.5 * m.C * std::pow(m.C * t + m.D, -1.5);
          }
        },
        motion);
  }

  /// sigma xi^{n-1}
  double solid_angle_mass(double t) const {
    return std::visit(
        [t](const auto& m) -> double {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, NoMass>) {
            return 0.0;
          } else if constexpr (std::is_same_v<T, LinearMass>) {
            return m.kappa * t;
          } else {
            return (2.0 * m.rho_r / m.C) * std::sqrt(m.C * t + m.D);
          }
        },
        mass);
  }

  double lineal_mass(double t, int n) const {
    const double p = solid_angle_mass(t);
    if (p == 0.0 || n == 1) return p;
    return p * std::pow(position(t), 1 - n);
  }

  FrontState state(double t, int n) const {
    return FrontState{kind, position(t), speed(t), lineal_mass(t, n)};
  }
};

/// Time slab [t_begin, t_end) with a fixed wave pattern. regions[i] lies
/// between fronts[i-1] (or the origin) and fronts[i] (or infinity).
struct Phase {
  double t_begin = 0.0;
  double t_end = kInf;
  std::vector<Front> fronts;
  std::vector<RegionProfile> regions;
};

/// Piecewise-linear account with jumps, right-continuous.
struct PiecewiseLinearLaw {
  struct Piece {
    double t_begin;
    double value;  // value at t_begin, after any jump
    double rate;
  };
  std::vector<Piece> pieces;

  double operator()(double t) const {
    if (pieces.empty() || t < pieces.front().t_begin) return 0.0;
    auto it = std::upper_bound(pieces.begin(), pieces.end(), t,
                               [](double x, const Piece& p) { return x < p.t_begin; });
    const Piece& p = *std::prev(it);
    return p.value + p.rate * (t - p.t_begin);
  }
};

enum class CaseKind { AllVacuum, VacuumFan, Contact, DeltaShock, VacuumLeftShock, VacuumRightShock };

inline const char* to_string(CaseKind k) {
  switch (k) {
    case CaseKind::AllVacuum: return "AllVacuum";
    case CaseKind::VacuumFan: return "VacuumFan";
    case CaseKind::Contact: return "Contact";
    case CaseKind::DeltaShock: return "DeltaShock";
    case CaseKind::VacuumLeftShock: return "VacuumLeftShock";
    case CaseKind::VacuumRightShock: return "VacuumRightShock";
  }
  return "?";
}

struct CaseTag {
  CaseKind kind = CaseKind::AllVacuum;
  bool has_absorption = false;  // finite t_in
  bool hits_origin = false;     // a shadow wave reaches r = 0
  bool left_drains = false;     // u_l < 0
};

struct EventTimes {
  std::optional<double> t_vacuum_close;  // outer material closes the vacuum at the origin
  std::optional<double> t_in;            // interior fully absorbed by the shadow wave
  std::optional<double> t_sw0;           // shadow wave reaches the origin
  std::optional<double> t_origin_left;   // interior material fully drained into the origin

  std::vector<std::pair<std::string, double>> named() const {
    std::vector<std::pair<std::string, double>> out;
    if (t_vacuum_close) out.emplace_back("t_vacuum_close", *t_vacuum_close);
    if (t_in) out.emplace_back("t_in", *t_in);
    if (t_sw0) out.emplace_back("t_sw0", *t_sw0);
    if (t_origin_left) out.emplace_back("t_origin_left", *t_origin_left);
    return out;
  }
};

struct PostAbsorptionConstants {
  double C;
  double D;
  double E;
};

struct WavePlan {
  PseudoRiemannData data;
  CaseTag tag;
  double t_max = 0.0;
  std::vector<Phase> phases;  // partition of [0, inf)
  EventTimes events;
  PiecewiseLinearLaw m0_law;          // origin mass
  PiecewiseLinearLaw origin_momentum; // momentum carried into the origin (then lost)
  std::optional<double> v0;           // constant shadow-wave speed, if any
  std::optional<PostAbsorptionConstants> constants;

  const Phase& phase_at(double t) const {
    for (const Phase& ph : phases) {
      if (t >= ph.t_begin && t < ph.t_end) return ph;
    }
    return phases.back();
  }

  double m0(double t) const { return m0_law(t); }

  std::vector<FrontState> fronts_at(double t) const {
    std::vector<FrontState> out;
    for (const Front& f : phase_at(t).fronts) out.push_back(f.state(t, data.n));
    return out;
  }

  /// Index of the region containing r at time t (r on a front goes right).
  std::size_t region_index(const Phase& ph, double r, double t) const {
    std::size_t i = 0;
    while (i < ph.fronts.size() && r >= ph.fronts[i].position(t)) ++i;
    return i;
  }

  /// Regular part (rho, u) at (r, t); vacuum velocity is interpolated
  /// linearly between the bounding front speeds (origin counts as speed 0).
  std::pair<double, double> regular(double r, double t, bool* vacuum = nullptr) const {
    const Phase& ph = phase_at(t);
    const std::size_t i = region_index(ph, r, t);
    const RegionProfile& reg = ph.regions[i];
    if (vacuum) *vacuum = reg.is_vacuum();
    if (!reg.is_vacuum()) return {reg.density_at(r, data.n), reg.velocity};
    const double lo = i == 0 ? 0.0 : ph.fronts[i - 1].position(t);
    const double v_lo = i == 0 ? 0.0 : ph.fronts[i - 1].speed(t);
    if (i == ph.fronts.size()) return {0.0, v_lo};
    const double hi = ph.fronts[i].position(t);
    const double v_hi = ph.fronts[i].speed(t);
    if (hi <= lo) return {0.0, v_lo};
    return {0.0, v_lo + (v_hi - v_lo) * (r - lo) / (hi - lo)};
  }
};

/// Epsilon realization of a plan: inside [xi - eps/2, xi + eps/2] around each
/// shadow-wave front the density is sigma/eps and the velocity is xi'.
class EpsFamily {
 public:
  EpsFamily(const WavePlan& plan, double eps) : plan_(&plan), eps_(eps) {
    if (!(eps > 0.0)) throw DomainError("EpsFamily: eps must be > 0");
  }

  const WavePlan& plan() const { return *plan_; }
  double eps() const { return eps_; }

  std::pair<double, double> at(double r, double t) const {
    const Phase& ph = plan_->phase_at(t);
    for (const Front& f : ph.fronts) {
      if (f.kind != FrontKind::ShadowWave) continue;
      const double xi = f.position(t);
      if (std::abs(r - xi) < 0.5 * eps_) {
        return {f.lineal_mass(t, plan_->data.n) / eps_, f.speed(t)};
      }
    }
    return plan_->regular(r, t);
  }

 private:
  const WavePlan* plan_;
  double eps_;
};

}  // namespace rsw
