#pragma once

// Shadow-wave front ODEs for non-constant speed
//
//   sigma' + (n-1) xi' sigma / xi = kappa1
//   sigma xi'' + xi' kappa1       = kappa2
//
// Integration runs on (xi, xi', p) with p = sigma xi^{n-1}, which stays
// bounded as the front approaches the origin.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "radial_sw/core.hpp"
#include "radial_sw/dopri5.hpp"
#include "radial_sw/quadrature.hpp"

namespace rsw {

/// Outer states at time t, evaluated at front position xi.
using OuterFn = std::function<OuterStates(double t, double xi)>;

struct FrontDerivatives {
  double dsigma;
  double dspeed;
};

inline FrontDerivatives front_rhs(double xi, double speed, double sigma, const OuterStates& outer, int n) {
  if (!(xi > 0.0)) throw DomainError("front_rhs: xi must be > 0");
  if (sigma < 0.0) throw DomainError("front_rhs: sigma must be >= 0");
  const Fluxes k = influx(outer, speed);
  const double dsigma = k.kappa1 - (n - 1) * speed * sigma / xi;
  const double f = k.kappa2 - speed * k.kappa1;
  if (sigma == 0.0) {
    const double scale = std::abs(k.kappa2) + std::abs(speed * k.kappa1) + 1e-300;
    if (std::abs(f) > 1e-12 * scale) {
      throw SingularStartError("front_rhs: sigma = 0 requires xi' kappa1 = kappa2; start at an algebraic root");
    }
    return {dsigma, 0.0};
  }
  return {dsigma, f / sigma};
}

struct FrontIVP {
  double t0 = 0.0;
  double xi0 = 1.0;
  double speed0 = 0.0;
  double sigma0 = 0.0;
  OuterFn outer;
  int n = 1;
  std::vector<double> breakpoints;  // times where the outer states jump

  void validate() const {
    if (!(xi0 > 0.0)) throw DomainError("FrontIVP: xi0 must be > 0");
    if (!(sigma0 >= 0.0)) throw DomainError("FrontIVP: sigma0 must be >= 0");
    if (n < 1) throw DomainError("FrontIVP: n must be >= 1");
    if (!outer) throw DomainError("FrontIVP: outer states missing");
  }
};

struct TrajectorySample {
  double t;
  double xi;
  double speed;
  double sigma;
};

class FrontTrajectory {
 public:
  using State = ode::Vec<3>;  // xi, speed, p

  const std::vector<TrajectorySample>& samples() const { return samples_; }
  std::optional<double> hit_origin() const { return hit_; }
  double t_begin() const { return t0_; }
  double t_end() const { return t_end_; }
  int n() const { return n_; }

  /// Dense state at t in [t_begin, t_end].
  FrontState at(double t) const {
    if (t < t0_ || t > t_end_) throw OutOfRangeError("FrontTrajectory: t outside trajectory");
    State y;
    if (algebraic_ && t <= t_alg_) {
      y = algebraic_(t);
    } else {
      auto it = std::upper_bound(steps_.begin(), steps_.end(), t,
                                 [](double x, const ode::DenseStep<3>& s) { return x < s.t0; });
      if (it != steps_.begin()) --it;
      y = (*it)(t);
    }
    const double sigma = n_ == 1 ? y[2] : y[2] * std::pow(y[0], 1 - n_);
    return FrontState{FrontKind::ShadowWave, y[0], y[1], sigma};
  }

 private:
  friend FrontTrajectory integrate_front(const FrontIVP&, double, double);

  std::vector<TrajectorySample> samples_;
  std::vector<ode::DenseStep<3>> steps_;
  std::function<State(double)> algebraic_;
  double t0_ = 0.0;
  double t_alg_ = 0.0;  // end of the algebraic start phase (== t0 when unused)
  double t_end_ = 0.0;
  std::optional<double> hit_;
  int n_ = 1;
};

namespace detail {

inline ode::Vec<3> front_system(const FrontIVP& ivp, double t, const ode::Vec<3>& y) {
  const double xi = y[0];
  const double v = y[1];
  const double p = y[2];
  const OuterStates s = ivp.outer(t, xi);
  const Fluxes k = influx(s, v);
  const double w = ivp.n == 1 ? 1.0 : std::pow(xi, ivp.n - 1);
  return {v, (k.kappa2 - v * k.kappa1) * w / p, k.kappa1 * w};
}

}  // namespace detail

/// Adaptive DOPRI5 integration of the front ODEs up to t_end or xi = 0.
/// A start with sigma0 = 0 needs speed0 to be a root of xi' kappa1 = kappa2;
/// the first 1e-6 of the interval is then covered by a second-order Taylor
/// model with p seeded by quadrature.
inline FrontTrajectory integrate_front(const FrontIVP& ivp, double t_end, double tol = 1e-10) {
  ivp.validate();
  if (!(tol > 0.0)) throw DomainError("integrate_front: tol must be > 0");
  if (!(t_end > ivp.t0)) throw DomainError("integrate_front: t_end must exceed t0");

  FrontTrajectory tr;
  tr.t0_ = ivp.t0;
  tr.t_alg_ = ivp.t0;
  tr.n_ = ivp.n;
  const int n = ivp.n;
  const double span = t_end - ivp.t0;

  ode::Vec<3> y{ivp.xi0, ivp.speed0, ivp.sigma0 * (n == 1 ? 1.0 : std::pow(ivp.xi0, n - 1))};
  double t = ivp.t0;
  auto push_sample = [&](double tt, const ode::Vec<3>& yy) {
    const double sigma = n == 1 ? yy[2] : yy[2] * std::pow(yy[0], 1 - n);
    tr.samples_.push_back({tt, yy[0], yy[1], sigma});
  };
  push_sample(t, y);

  if (ivp.sigma0 == 0.0) {
    const double v0 = ivp.speed0;
    const double x0 = ivp.xi0;
    auto mismatch = [&](double tau) {
      const OuterStates s = ivp.outer(ivp.t0 + tau, x0 + v0 * tau);
      const Fluxes k = influx(s, v0);
      return k.kappa2 - v0 * k.kappa1;
    };
    const Fluxes k0 = influx(ivp.outer(ivp.t0, x0), v0);
    const double scale = std::abs(k0.kappa2) + std::abs(v0 * k0.kappa1) + 1e-300;
    if (std::abs(mismatch(0.0)) > 1e-10 * scale) {
      throw SingularStartError("integrate_front: sigma0 = 0 but speed0 is not a root of xi' kappa1 = kappa2");
    }
    if (!(k0.kappa1 > 0.0)) throw SingularStartError("integrate_front: sigma0 = 0 with no mass influx");
    // sigma ~ kappa1 tau and f ~ f' tau - 2 kappa1 (v - v0) give xi'' = f' / (3 kappa1).
    const double hd = 1e-4 * span;
    const double df = (4.0 * mismatch(hd) - mismatch(2.0 * hd) - 3.0 * mismatch(0.0)) / (2.0 * hd);
    const double a = df / (3.0 * k0.kappa1);
    const double delta = 1e-6 * span;
    const double t0 = ivp.t0;
    auto kin = [=](double tau) { return std::pair{x0 + v0 * tau + 0.5 * a * tau * tau, v0 + a * tau}; };
    OuterFn outer = ivp.outer;
    tr.algebraic_ = [=](double tt) {
      const double tau = tt - t0;
      const auto [xi, v] = kin(tau);
      const double p = quad::integrate(
          [&](double s) {
            const auto [xs, vs] = kin(s);
            const double w = n == 1 ? 1.0 : std::pow(xs, n - 1);
            return influx(outer(t0 + s, xs), vs).kappa1 * w;
          },
          0.0, tau);
      return ode::Vec<3>{xi, v, p};
    };
    t = t0 + delta;
    tr.t_alg_ = t;
    y = tr.algebraic_(t);
    push_sample(t, y);
  }

  std::vector<double> stops;
  for (double b : ivp.breakpoints) {
    if (b > t && b < t_end) stops.push_back(b);
  }
  std::sort(stops.begin(), stops.end());
  stops.push_back(t_end);

  ode::StepControl ctl;
  ctl.rtol = tol;
  ctl.atol = 1e-2 * tol;
  auto f = [&](double tt, const ode::Vec<3>& yy) { return detail::front_system(ivp, tt, yy); };

  double h = 1e-3 * span;
  for (double stop : stops) {
    ode::Vec<3> k1 = f(t, y);
    bool last_rejected = false;
    while (t < stop) {
      if (stop - t < h * 1.0000001) h = stop - t;
      if (h < ctl.h_min * std::max(1.0, std::abs(t))) {
        if (y[0] <= 1e-8 * ivp.xi0) {  // numerically at the origin
          tr.hit_ = t;
          tr.t_end_ = t;
          return tr;
        }
        throw SingularTrajectoryError("integrate_front: step size underflow");
      }
      const auto r = ode::dopri_step<3>(f, t, y, k1, h, ctl);
      if (!r.finite || r.err > 1.0) {
        h *= r.finite ? std::max(ctl.fac_min, ode::step_factor(r.err, ctl)) : 0.25;
        last_rejected = true;
        continue;
      }
      if (r.y[2] <= 0.0) {
        throw SingularTrajectoryError("integrate_front: front mass vanished");
      }
      if (r.y[0] <= 0.0) {
        // locate xi = 0 on the dense output
        double lo = t;
        double hi = t + h;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
          const double mid = 0.5 * (lo + hi);
          if (r.dense(mid)[0] > 0.0) lo = mid; else hi = mid;
        }
        const double th = 0.5 * (lo + hi);
        tr.steps_.push_back(r.dense);
        tr.hit_ = th;
        tr.t_end_ = th;
        ode::Vec<3> yh = r.dense(th);
        yh[0] = std::max(yh[0], 0.0);
        tr.samples_.push_back({th, yh[0], yh[1], kInf});
        return tr;
      }
      tr.steps_.push_back(r.dense);
      t = (stop - (t + h) < 1e-14 * std::max(1.0, std::abs(stop))) ? stop : t + h;
      y = r.y;
      k1 = r.k_end;
      push_sample(t, y);
      const double fac = ode::step_factor(r.err, ctl);
      h *= last_rejected ? std::min(1.0, fac) : fac;
      last_rejected = false;
    }
  }
  tr.t_end_ = t_end;
  return tr;
}

/// Closed-form front kinematics: position, speed, acceleration, sigma, sigma'.
struct FrontKinematics {
  double xi;
  double speed;
  double accel;
  double sigma;
  double dsigma;
};

/// Non-entropic two-dimensional example with R = 1 and initial data
/// rho = 1/r, u = -1 for r < 1 and rho = 1/r, u = 0 for r > 1.
struct NonentropicState {
  FrontKinematics front;
  double rho_l;  // pointwise traces at the front
  double u_l;
  double du_l;
  double rho_r;
  double u_r;
};

inline NonentropicState nonentropic_example(double t) {
  if (!(t >= 0.0)) throw DomainError("nonentropic_example: t must be >= 0");
  const double s = std::sqrt(t + 1.0);
  const double q = t + s;
  NonentropicState e;
  e.front.xi = 1.0 + t / s;
  e.front.speed = (t + 2.0) / (2.0 * s * s * s);
  e.front.accel = -(t + 4.0) / (4.0 * s * s * s * s * s);
  e.front.sigma = t / (2.0 * q);
  e.front.dsigma = (t + 2.0) / (4.0 * s * q * q);
  e.rho_l = (t + 2.0) * (t + 2.0) * s / (2.0 * q * (t * t + 4.0 * t + 8.0));
  e.u_l = -2.0 / (s * s * s * (t + 2.0));
  e.du_l = 3.0 / (s * s * s * s * s * (t + 2.0)) + 2.0 / (s * s * s * (t + 2.0) * (t + 2.0));
  e.rho_r = 1.0 / e.front.xi;
  e.u_r = 0.0;
  return e;
}

/// Outer states of the non-entropic example, depending on time only.
inline OuterFn nonentropic_outer() {
  return [](double t, double) {
    const NonentropicState e = nonentropic_example(t);
    return OuterStates{e.rho_l, e.u_l, e.rho_r, e.u_r};
  };
}

struct ResidualNorms {
  double mass;      // max |sigma' + (n-1) xi' sigma / xi - kappa1|
  double momentum;  // max |sigma xi'' + xi' kappa1 - kappa2|
};

template <class Kin>
ResidualNorms ode_residual(Kin&& kinematics, const OuterFn& outer, int n, const std::vector<double>& grid) {
  ResidualNorms out{0.0, 0.0};
  for (double t : grid) {
    const FrontKinematics k = kinematics(t);
    const Fluxes fl = influx(outer(t, k.xi), k.speed);
    const double r1 = k.dsigma + (n - 1) * k.speed * k.sigma / k.xi - fl.kappa1;
    const double r2 = k.sigma * k.accel + k.speed * fl.kappa1 - fl.kappa2;
    out.mass = std::max(out.mass, std::abs(r1));
    out.momentum = std::max(out.momentum, std::abs(r2));
  }
  return out;
}

/// Residuals of an integrated trajectory; sigma' and xi'' by fourth-order
/// central differences of the dense output.
inline ResidualNorms ode_residual(const FrontTrajectory& tr, const OuterFn& outer, const std::vector<double>& grid,
                                  double h = 1e-3) {
  auto kin = [&](double t) {
    const double hh = std::min({h, 0.25 * (t - tr.t_begin()), 0.25 * (tr.t_end() - t)});
    if (!(hh > 0.0)) throw DomainError("ode_residual: grid point too close to trajectory ends");
    auto d = [&](auto get) {
      return (get(tr.at(t - 2 * hh)) - 8 * get(tr.at(t - hh)) + 8 * get(tr.at(t + hh)) - get(tr.at(t + 2 * hh))) /
             (12 * hh);
    };
    const FrontState s = tr.at(t);
    return FrontKinematics{s.xi, s.speed, d([](const FrontState& x) { return x.speed; }), s.sigma,
                           d([](const FrontState& x) { return x.sigma; })};
  };
  return ode_residual(kin, outer, tr.n(), grid);
}

}  // namespace rsw
