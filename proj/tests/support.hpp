#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "radial_sw/radial_sw.hpp"

namespace rsw::testing {

inline constexpr rsw::CaseKind kAllKinds[] = {
    rsw::CaseKind::AllVacuum,       rsw::CaseKind::VacuumFan,       rsw::CaseKind::Contact,
    rsw::CaseKind::DeltaShock,      rsw::CaseKind::VacuumLeftShock, rsw::CaseKind::VacuumRightShock,
};

class DataGen {
 public:
  explicit DataGen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  int dim() { return std::uniform_int_distribution<int>(1, 5)(rng_); }

  /// Random data of the requested kind.
  rsw::PseudoRiemannData of_kind(rsw::CaseKind kind) {
    rsw::PseudoRiemannData d;
    d.n = dim();
    d.R = uniform(0.5, 3.0);
    d.rho_l = uniform(0.1, 5.0);
    d.rho_r = uniform(0.1, 5.0);
    double a = uniform(-3.0, 3.0);
    double b = uniform(-3.0, 3.0);
    if (std::abs(a - b) < 1e-3) b = a + 0.5;
    switch (kind) {
      case rsw::CaseKind::AllVacuum:
        d.rho_l = d.rho_r = 0.0;
        d.u_l = a;
        d.u_r = b;
        break;
      case rsw::CaseKind::VacuumFan:
        d.u_l = std::min(a, b);
        d.u_r = std::max(a, b);
        break;
      case rsw::CaseKind::Contact:
        d.u_l = d.u_r = a;
        break;
      case rsw::CaseKind::DeltaShock:
        d.u_l = std::max(a, b);
        d.u_r = std::min(a, b);
        break;
      case rsw::CaseKind::VacuumLeftShock:
        d.rho_l = 0.0;
        d.u_l = std::max(a, b);
        d.u_r = std::min(a, b);
        break;
      case rsw::CaseKind::VacuumRightShock:
        d.rho_r = 0.0;
        d.u_l = std::max(a, b);
        d.u_r = std::min(a, b);
        break;
    }
    return d;
  }

  rsw::PseudoRiemannData delta_shock() { return of_kind(rsw::CaseKind::DeltaShock); }

 private:
  std::mt19937_64 rng_;
};

/// Horizon covering every event of the plan, and a truncation radius that no
/// front reaches before it.
struct Window {
  double t_end;
  double r_max;
};

inline Window window_for(const rsw::WavePlan& plan) {
  double t_last = plan.data.R;
  for (const auto& [name, t] : plan.events.named()) t_last = std::max(t_last, t);
  const double t_end = 1.5 * t_last;
  const double umax = std::max({std::abs(plan.data.u_l), std::abs(plan.data.u_r), 1.0});
  return {t_end, plan.data.R + 2.0 * umax * t_end + 1.0};
}

/// n samples on [0, t_end] that include every event time and points just
/// before and after it.
inline std::vector<double> times_spanning(const rsw::WavePlan& plan, double t_end, std::size_t count) {
  std::vector<double> ts;
  for (const auto& [name, t] : plan.events.named()) {
    if (t > 0.0 && t <= t_end) {
      ts.push_back(t);
      ts.push_back(t * (1.0 - 1e-9));
      ts.push_back(std::min(t_end, t * (1.0 + 1e-9)));
    }
  }
  ts.push_back(0.0);
  ts.push_back(t_end);
  const std::size_t fill = count > ts.size() ? count - ts.size() : 0;
  for (std::size_t k = 1; k <= fill; ++k) ts.push_back(t_end * static_cast<double>(k) / (fill + 1));
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

/// Composite Simpson rule, an integrator independent of the library's.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels = 2000) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Outer states of constant pseudo-Riemann data evaluated at the front.
inline rsw::OuterFn pseudo_riemann_outer(const rsw::PseudoRiemannData& d, double t_left_gone = rsw::kInf) {
  return [d, t_left_gone](double t, double xi) {
    const double w = d.n == 1 ? 1.0 : std::pow(xi, 1 - d.n);
    return rsw::OuterStates{t < t_left_gone ? d.rho_l * w : 0.0, d.u_l, d.rho_r * w, d.u_r};
  };
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace rsw::testing
