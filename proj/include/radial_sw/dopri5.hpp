#pragma once

// Dormand-Prince 5(4) with Hairer's 4th-order continuous extension.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace rsw::ode {

template <std::size_t N>
using Vec = std::array<double, N>;

/// Dense-output record of one accepted step.
template <std::size_t N>
struct DenseStep {
  double t0;
  double h;
  std::array<Vec<N>, 5> rcont;

  Vec<N> operator()(double t) const {
    const double th = (t - t0) / h;
    const double th1 = 1.0 - th;
    Vec<N> y;
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = rcont[0][i] +
             th * (rcont[1][i] + th1 * (rcont[2][i] + th * (rcont[3][i] + th1 * rcont[4][i])));
    }
    return y;
  }
};

struct StepControl {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_min = 1e-14;
  double safety = 0.9;
  double fac_min = 0.2;
  double fac_max = 5.0;
};

template <std::size_t N>
struct StepResult {
  Vec<N> y;
  Vec<N> k_end;  // f(t + h, y), reusable as the next first stage
  double err;    // scaled RMS error estimate
  DenseStep<N> dense;
  bool finite;
};

namespace tableau {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                        a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
}  // namespace tableau

/// One trial step from (t, y) with first stage k1 = f(t, y).
template <std::size_t N, class F>
StepResult<N> dopri_step(F& f, double t, const Vec<N>& y, const Vec<N>& k1, double h, const StepControl& ctl) {
  using namespace tableau;
  auto comb = [&](auto... terms) {
    Vec<N> out = y;
    for (std::size_t i = 0; i < N; ++i) {
      double s = 0.0;
      ((s += terms.first * (*terms.second)[i]), ...);
      out[i] += h * s;
    }
    return out;
  };
  auto P = [](double c, const Vec<N>& k) { return std::pair<double, const Vec<N>*>{c, &k}; };

  const Vec<N> k2 = f(t + c2 * h, comb(P(a21, k1)));
  const Vec<N> k3 = f(t + c3 * h, comb(P(a31, k1), P(a32, k2)));
  const Vec<N> k4 = f(t + c4 * h, comb(P(a41, k1), P(a42, k2), P(a43, k3)));
  const Vec<N> k5 = f(t + c5 * h, comb(P(a51, k1), P(a52, k2), P(a53, k3), P(a54, k4)));
  const Vec<N> k6 = f(t + h, comb(P(a61, k1), P(a62, k2), P(a63, k3), P(a64, k4), P(a65, k5)));
  const Vec<N> y1 = comb(P(a71, k1), P(a73, k3), P(a74, k4), P(a75, k5), P(a76, k6));
  const Vec<N> k7 = f(t + h, y1);

  StepResult<N> r;
  r.y = y1;
  r.k_end = k7;
  r.finite = true;
  double acc = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    const double sc = ctl.atol + ctl.rtol * std::max(std::abs(y[i]), std::abs(y1[i]));
    acc += (e / sc) * (e / sc);
    if (!std::isfinite(y1[i]) || !std::isfinite(k7[i])) r.finite = false;
  }
  r.err = std::sqrt(acc / static_cast<double>(N));
  if (!std::isfinite(r.err)) r.finite = false;

  r.dense.t0 = t;
  r.dense.h = h;
  for (std::size_t i = 0; i < N; ++i) {
    const double ydiff = y1[i] - y[i];
    const double bspl = h * k1[i] - ydiff;
    r.dense.rcont[0][i] = y[i];
    r.dense.rcont[1][i] = ydiff;
    r.dense.rcont[2][i] = bspl;
    r.dense.rcont[3][i] = ydiff - h * k7[i] - bspl;
    r.dense.rcont[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
  }
  return r;
}

/// Step-size factor from a scaled error estimate.
inline double step_factor(double err, const StepControl& ctl) {
  if (err == 0.0) return ctl.fac_max;
  return std::clamp(ctl.safety * std::pow(err, -0.2), ctl.fac_min, ctl.fac_max);
}

}  // namespace rsw::ode
