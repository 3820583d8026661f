#pragma once

// Sticky-particle discretization of the radial system. Each particle is a
// spherical shell; its mass carries the r^{n-1} weight so that shells move
// ballistically and merge like one-dimensional sticky particles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "radial_sw/core.hpp"
#include "radial_sw/exact_riemann.hpp"
#include "radial_sw/plan.hpp"

namespace rsw {

struct Particle {
  double r;
  double m;
  double u;
};

struct Absorption {
  double t;
  double m;
};

class ParticleSystem {
 public:
  ParticleSystem() = default;

  /// Particles ordered by radius, all at time t0.
  explicit ParticleSystem(const std::vector<Particle>& ps, double t0 = 0.0) : time_(t0) {
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (!(ps[i].m >= 0.0)) throw DomainError("ParticleSystem: negative mass");
      if (i > 0 && !(ps[i].r > ps[i - 1].r)) throw DomainError("ParticleSystem: radii must increase");
      if (ps[i].r < 0.0) throw DomainError("ParticleSystem: negative radius");
      nodes_.push_back(Node{ps[i].r, t0, ps[i].m, ps[i].u, static_cast<int>(i) - 1,
                            i + 1 < ps.size() ? static_cast<int>(i) + 1 : -1, 0, true});
      initial_mass_ = std::max(initial_mass_, ps[i].m);
    }
    head_ = ps.empty() ? -1 : 0;
    count_ = ps.size();
    for (std::size_t i = 0; i < nodes_.size(); ++i) schedule(static_cast<int>(i));
  }

  double time() const { return time_; }
  double m0() const { return m0_; }
  /// Momentum carried into the origin so far.
  double absorbed_momentum() const { return absorbed_momentum_; }
  double initial_particle_mass() const { return initial_mass_; }
  std::size_t size() const { return count_; }
  const std::vector<Absorption>& absorptions() const { return log_; }

  std::vector<Particle> particles() const {
    std::vector<Particle> out;
    out.reserve(count_);
    for (int i = head_; i >= 0; i = nodes_[i].next) out.push_back({pos(i, time_), nodes_[i].m, nodes_[i].u});
    return out;
  }

  double particle_mass() const {
    double s = 0.0;
    for (int i = head_; i >= 0; i = nodes_[i].next) s += nodes_[i].m;
    return s;
  }
  double particle_momentum() const {
    double s = 0.0;
    for (int i = head_; i >= 0; i = nodes_[i].next) s += nodes_[i].m * nodes_[i].u;
    return s;
  }
  double total_mass() const { return particle_mass() + m0_; }

  void run_until(double t_end) {
    if (t_end < time_) throw DomainError("run_until: t_end precedes current time");
    while (!queue_.empty()) {
      const Event ev = queue_.top();
      if (ev.t > t_end) break;
      queue_.pop();
      if (!valid(ev)) continue;
      time_ = std::max(time_, ev.t);
      if (ev.j < 0) absorb(ev.i); else merge(ev.i, ev.j);
    }
    time_ = t_end;
  }

 private:
  struct Node {
    double r_ref;
    double t_ref;
    double m;
    double u;
    int prev;
    int next;
    std::uint32_t version;
    bool alive;
  };

  struct Event {
    double t;
    int i;
    int j;  // -1 for origin arrival of i
    std::uint32_t vi;
    std::uint32_t vj;
    bool operator>(const Event& o) const {
      if (t != o.t) return t > o.t;
      return i > o.i;
    }
  };

  double pos(int i, double t) const { return nodes_[i].r_ref + nodes_[i].u * (t - nodes_[i].t_ref); }

  bool valid(const Event& ev) const {
    const Node& a = nodes_[ev.i];
    if (!a.alive || a.version != ev.vi) return false;
    if (ev.j < 0) return a.prev < 0;
    const Node& b = nodes_[ev.j];
    return b.alive && b.version == ev.vj && a.next == ev.j;
  }

  // Events owned by particle i: collision with its right neighbour, and
  // origin arrival when it is the innermost particle.
  void schedule(int i) {
    const Node& a = nodes_[i];
    if (a.next >= 0) {
      const Node& b = nodes_[a.next];
      if (a.u > b.u) {
        const double gap = std::max(0.0, pos(a.next, time_) - pos(i, time_));
        queue_.push(Event{time_ + gap / (a.u - b.u), i, a.next, a.version, b.version});
      }
    }
    if (a.prev < 0 && a.u < 0.0) {
      queue_.push(Event{time_ + std::max(0.0, pos(i, time_)) / -a.u, i, -1, a.version, 0});
    }
  }

  void merge(int i, int j) {
    Node& a = nodes_[i];
    Node& b = nodes_[j];
    const double r = pos(i, time_);
    const double m = a.m + b.m;
    const double u = m > 0.0 ? (a.m * a.u + b.m * b.u) / m : 0.5 * (a.u + b.u);
    a.r_ref = r;
    a.t_ref = time_;
    a.m = m;
    a.u = u;
    ++a.version;
    b.alive = false;
    ++b.version;
    a.next = b.next;
    if (b.next >= 0) nodes_[b.next].prev = i;
    --count_;
    schedule(i);
    if (a.prev >= 0) schedule(a.prev);
  }

  void absorb(int i) {
    Node& a = nodes_[i];
    m0_ += a.m;
    absorbed_momentum_ += a.m * a.u;
    log_.push_back({time_, a.m});
    a.alive = false;
    ++a.version;
    head_ = a.next;
    if (head_ >= 0) {
      nodes_[head_].prev = -1;
      schedule(head_);
    }
    --count_;
  }

  std::vector<Node> nodes_;
  std::priority_queue<Event, std::vector<Event>, std::greater<Event>> queue_;
  std::vector<Absorption> log_;
  int head_ = -1;
  std::size_t count_ = 0;
  double time_ = 0.0;
  double m0_ = 0.0;
  double absorbed_momentum_ = 0.0;
  double initial_mass_ = 0.0;
};

/// Cells on (0, R] and (R, r_max] in proportion to their lengths, one
/// particle per non-vacuum cell at its mass centroid.
inline ParticleSystem discretize(const PseudoRiemannData& d, int N, double r_max) {
  d.validate();
  if (N < 2) throw DomainError("discretize: N must be >= 2");
  if (!(r_max > d.R)) throw DomainError("discretize: r_max must exceed R");
  const int n_left = std::clamp(static_cast<int>(std::lround(N * d.R / r_max)), 1, N - 1);
  const int n_right = N - n_left;
  const double area = surface_area(d.n);
  std::vector<Particle> ps;
  ps.reserve(static_cast<std::size_t>(N));
  auto emit = [&](double a, double b, int cells, double coeff, double u) {
    if (coeff == 0.0) return;
    const double w = (b - a) / cells;
    for (int k = 0; k < cells; ++k) ps.push_back({a + (k + 0.5) * w, area * coeff * w, u});
  };
  emit(0.0, d.R, n_left, d.rho_l, d.u_l);
  emit(d.R, r_max, n_right, d.rho_r, d.u_r);
  return ParticleSystem(ps);
}

inline ParticleSystem run_until(ParticleSystem ps, double t_end) {
  ps.run_until(t_end);
  return ps;
}

struct Cluster {
  double r;
  double m;
  double u;
};

/// Heaviest particle, if heavier than 10x the initial particle mass and
/// than mass_fraction of the total mass.
inline std::optional<Cluster> front_extract(const ParticleSystem& ps, double mass_fraction = 0.05) {
  if (!(mass_fraction > 0.0 && mass_fraction < 1.0)) throw DomainError("front_extract: fraction must be in (0, 1)");
  std::optional<Cluster> best;
  for (const Particle& p : ps.particles()) {
    if (!best || p.m > best->m) best = Cluster{p.r, p.m, p.u};
  }
  if (!best) return std::nullopt;
  if (best->m <= 10.0 * ps.initial_particle_mass()) return std::nullopt;
  if (best->m <= mass_fraction * ps.total_mass()) return std::nullopt;
  return best;
}

/// Arrival time of the heaviest absorbed particle, if any cluster reached the origin.
inline std::optional<Absorption> heaviest_absorption(const ParticleSystem& ps) {
  std::optional<Absorption> best;
  for (const Absorption& a : ps.absorptions()) {
    if (a.m > 10.0 * ps.initial_particle_mass() && (!best || a.m > best->m)) best = a;
  }
  return best;
}

struct Discrepancy {
  double t;
  std::optional<double> pos_exact;
  std::optional<double> pos_oracle;
  std::optional<double> mass_exact;
  std::optional<double> mass_oracle;
  double m0_exact;
  double m0_oracle;
  double q_exact;  // conserved total of the exact plan
  double q_oracle;

  std::optional<double> position_error() const {
    if (!pos_exact || !pos_oracle) return std::nullopt;
    return std::abs(*pos_exact - *pos_oracle);
  }
  std::optional<double> mass_error() const {
    if (!mass_exact || !mass_oracle) return std::nullopt;
    return std::abs(*mass_exact - *mass_oracle);
  }
  double m0_error() const { return std::abs(m0_exact - m0_oracle); }
  double q_error() const { return std::abs(q_exact - q_oracle); }
};

/// Oracle against the exact plan at the oracle's current time. q_exact is
/// the initial mass on (0, r_max], which the oracle conserves exactly.
inline Discrepancy compare(const WavePlan& plan, const ParticleSystem& ps, double r_max,
                           double mass_fraction = 0.05) {
  const double t = ps.time();
  Discrepancy d{};
  d.t = t;
  for (const Front& f : plan.phase_at(t).fronts) {
    if (f.kind != FrontKind::ShadowWave) continue;
    d.pos_exact = f.position(t);
    d.mass_exact = surface_area(plan.data.n) * f.solid_angle_mass(t);
    break;
  }
  if (const auto c = front_extract(ps, mass_fraction)) {
    d.pos_oracle = c->r;
    d.mass_oracle = c->m;
  }
  d.m0_exact = plan.m0(t);
  d.m0_oracle = ps.m0();
  const PseudoRiemannData& s = plan.data;
  d.q_exact = surface_area(s.n) * (s.rho_l * s.R + s.rho_r * (r_max - s.R));
  d.q_oracle = ps.total_mass();
  return d;
}

}  // namespace rsw
