#pragma once

// Domain types for the radially symmetric pressureless Euler system
//
//   d_t rho + d_r(rho u) + (n-1)/r rho u = 0
//   d_t(rho u) + d_r(rho u^2) + (n-1)/r rho u^2 = 0
//
// Densities are stored as coefficients k of the stationary profile
// rho(r) = k r^{1-n}; pointwise values are produced on demand.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace rsw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Evaluation outside the time window where a closed form is valid.
class OutOfPhaseError : public Error {
 public:
  using Error::Error;
};

class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

class SingularStartError : public Error {
 public:
  using Error::Error;
};

class SingularTrajectoryError : public Error {
 public:
  using Error::Error;
};

class UnsupportedRegionError : public Error {
 public:
  using Error::Error;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Surface area |S^{n-1}| of the unit sphere in R^n.
///
/// Uses |S^{n-1}| = 2 pi |S^{n-3}| / (n-2) starting from |S^0| = 2 and
/// |S^1| = 2 pi, which is exact up to rounding for every integer n.
inline double surface_area(int n) {
  if (n < 1) throw DomainError("surface_area: dimension must be >= 1");
  double area = (n % 2 == 1) ? 2.0 : 2.0 * std::numbers::pi;
  for (int k = (n % 2 == 1) ? 3 : 4; k <= n; k += 2) {
    area *= 2.0 * std::numbers::pi / static_cast<double>(k - 2);
  }
  return area;
}

/// Jumps [q] = q_1 - q_0 of density, momentum and the two higher moments.
struct Jumps {
  double rho;
  double rho_u;
  double rho_u2;
  double rho_u3;
};

inline Jumps jump_brackets(double rho0, double u0, double rho1, double u1) {
  return Jumps{rho1 - rho0, rho1 * u1 - rho0 * u0, rho1 * u1 * u1 - rho0 * u0 * u0,
               rho1 * u1 * u1 * u1 - rho0 * u0 * u0 * u0};
}

/// Pointwise states on the two sides of a front.
struct OuterStates {
  double rho0;
  double u0;
  double rho1;
  double u1;
};

/// Mass and momentum influx into a front moving with `speed`.
struct Fluxes {
  double kappa1;
  double kappa2;
};

inline Fluxes influx(const OuterStates& s, double speed) {
  const Jumps j = jump_brackets(s.rho0, s.u0, s.rho1, s.u1);
  return Fluxes{speed * j.rho - j.rho_u, speed * j.rho_u - j.rho_u2};
}

/// Initial data rho = rho_l r^{1-n}, u = u_l for r < R and
/// rho = rho_r r^{1-n}, u = u_r for r > R.
struct PseudoRiemannData {
  int n = 1;
  double R = 1.0;
  double rho_l = 0.0;
  double u_l = 0.0;
  double rho_r = 0.0;
  double u_r = 0.0;

  void validate() const {
    if (n < 1) throw DomainError("pseudo-Riemann data: n must be >= 1");
    if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("pseudo-Riemann data: R must be > 0");
    if (!(rho_l >= 0.0) || !(rho_r >= 0.0) || !std::isfinite(rho_l) || !std::isfinite(rho_r)) {
      throw DomainError("pseudo-Riemann data: densities must be finite and >= 0");
    }
    if (!std::isfinite(u_l) || !std::isfinite(u_r)) {
      throw DomainError("pseudo-Riemann data: velocities must be finite");
    }
  }

  /// Pointwise states at radius r on both sides of the initial jump.
  OuterStates states_at(double r) const {
    const double w = std::pow(r, 1 - n);
    return OuterStates{rho_l * w, u_l, rho_r * w, u_r};
  }
};

struct RegionProfile {
  enum class Kind { PowerLaw, Vacuum };

  Kind kind = Kind::Vacuum;
  double coeff = 0.0;
  double velocity = 0.0;  // unused for Vacuum

  static RegionProfile power_law(double coeff, double velocity) {
    return RegionProfile{Kind::PowerLaw, coeff, velocity};
  }
  static RegionProfile vacuum() { return RegionProfile{}; }

  bool is_vacuum() const { return kind == Kind::Vacuum; }

  double density_at(double r, int n) const {
    if (is_vacuum()) return 0.0;
    if (n == 1) return coeff;
    if (r == 0.0) return coeff == 0.0 ? 0.0 : kInf;
    return coeff * std::pow(r, 1 - n);
  }
};

enum class FrontKind { ShadowWave, Shock, Contact, VacuumEdge };

inline const char* to_string(FrontKind k) {
  switch (k) {
    case FrontKind::ShadowWave: return "ShadowWave";
    case FrontKind::Shock: return "Shock";
    case FrontKind::Contact: return "Contact";
    case FrontKind::VacuumEdge: return "VacuumEdge";
  }
  return "?";
}

/// Instantaneous front data; `xi` is the absolute radius of the front.
struct FrontState {
  FrontKind kind = FrontKind::ShadowWave;
  double xi = 0.0;
  double speed = 0.0;
  double sigma = 0.0;
};

/// Singular part reported by point sampling: a delta on the sphere |x| = xi.
struct Atom {
  double xi;
  double sigma;
  double total_mass;  // surface_area(n) * xi^{n-1} * sigma
};

struct SolutionSample {
  double r = 0.0;
  double t = 0.0;
  double rho = 0.0;
  double u = 0.0;
  bool is_vacuum = false;  // u is then an interpolated placeholder
  double m0 = 0.0;
  std::optional<Atom> atom;
};

struct ConservedPair {
  double Q;  // total mass
  double M;  // total radial momentum
};

}  // namespace rsw
