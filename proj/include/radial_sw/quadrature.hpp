#pragma once

// Composite Gauss-Legendre quadrature for piecewise-smooth integrands.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace rsw::quad {

template <std::size_t K>
struct GaussRule {
  std::array<double, K> x;  // nodes on [-1, 1]
  std::array<double, K> w;
};

/// Nodes by Newton iteration on P_K, accurate to a few ulps.
template <std::size_t K>
const GaussRule<K>& gauss_legendre() {
  static const GaussRule<K> rule = [] {
    GaussRule<K> g;
    for (std::size_t i = 0; i < K; ++i) {
      double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(K) + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = z;
        for (std::size_t k = 2; k <= K; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / static_cast<double>(k);
          p0 = p1;
          p1 = p2;
        }
        dp = static_cast<double>(K) * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      g.x[i] = z;
      g.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return g;
  }();
  return rule;
}

inline constexpr std::size_t kNodes = 16;

/// Single 16-node panel on [a, b].
template <class F>
double panel(F&& f, double a, double b) {
  const auto& g = gauss_legendre<kNodes>();
  const double m = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < kNodes; ++i) s += g.w[i] * f(m + h * g.x[i]);
  return h * s;
}

/// Sorted, deduplicated breakpoints clipped to [a, b], endpoints included.
inline std::vector<double> breakpoints(double a, double b, std::vector<double> inner) {
  std::vector<double> pts{a, b};
  for (double x : inner) {
    if (x > a && x < b) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

/// Composite rule: `sub` equal panels inside each interval between breakpoints.
template <class F>
double integrate(F&& f, const std::vector<double>& pts, int sub = 1) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = pts[i];
    const double h = (pts[i + 1] - a) / sub;
    for (int k = 0; k < sub; ++k) s += panel(f, a + k * h, a + (k + 1) * h);
  }
  return s;
}

template <class F>
double integrate(F&& f, double a, double b, int sub = 1) {
  return integrate(f, std::vector<double>{a, b}, sub);
}

}  // namespace rsw::quad
