// Reference formulas written out independently of the library, for checking it.

#ifndef NCSHOCK_TESTS_ORACLES_HPP_
#define NCSHOCK_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <functional>

#include "ncshock/model.hpp"

namespace oracle {

inline double sigma(double m, double w) { return w * w * w + m * w; }

/// Chord slope of sigma, by direct division.
inline double chord(double m, double a, double b) {
  if (a == b) return 3.0 * a * a + m;
  return (sigma(m, a) - sigma(m, b)) / (a - b);
}

/// Adaptive Simpson quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol,
                      int depth = 0) {
  const double c = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fc = f(c);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fc + fb);
  const double l = (c - a) / 6.0 * (fa + 4.0 * f(0.5 * (a + c)) + fc);
  const double r = (b - c) / 6.0 * (fc + 4.0 * f(0.5 * (c + b)) + fb);
  if (depth > 40 || std::abs(l + r - whole) <= 15.0 * tol) return l + r + (l + r - whole) / 15.0;
  return simpson(f, a, c, 0.5 * tol, depth + 1) + simpson(f, c, b, 0.5 * tol, depth + 1);
}

/// int_0^w sqrt(3 z^2 + m) dz by quadrature.
inline double sound_integral(double m, double w) {
  const auto f = [m](double z) { return std::sqrt(3.0 * z * z + m); };
  return w >= 0.0 ? simpson(f, 0.0, w, 1e-15) : -simpson(f, w, 0.0, 1e-15);
}

/// Liu's condition by brute force: the chord slope from the upstream strain to
/// any strain between the two ends never exceeds the shock's own chord slope.
inline bool liu_by_chords(double m, double upstream, double downstream, int samples = 2000) {
  const double s2 = chord(m, upstream, downstream);
  const double scale = std::max({1.0, std::abs(s2)});
  for (int i = 0; i <= samples; ++i) {
    const double w = upstream + (downstream - upstream) * i / samples;
    if (chord(m, upstream, w) > s2 + 1e-10 * scale) return false;
  }
  return true;
}

/// Entropy dissipation of a jump moving at `speed`, from the entropy pair
/// U = v^2/2 + w^4/4 + m w^2/2, F = -v sigma(w).
inline double dissipation(double m, const ncshock::State& l, const ncshock::State& r,
                          double speed) {
  const auto U = [m](const ncshock::State& u) {
    return 0.5 * u.v * u.v + 0.25 * std::pow(u.w, 4) + 0.5 * m * u.w * u.w;
  };
  const auto F = [m](const ncshock::State& u) { return -u.v * sigma(m, u.w); };
  return speed * (U(l) - U(r)) - (F(l) - F(r));
}

/// Mean over [a, b] of a step from `left` to `right` at x_s.
inline ncshock::State step_average(const ncshock::State& left, const ncshock::State& right,
                                   double x_s, double a, double b) {
  const double frac = std::clamp((x_s - a) / (b - a), 0.0, 1.0);
  return {frac * left.v + (1.0 - frac) * right.v, frac * left.w + (1.0 - frac) * right.w};
}

}  // namespace oracle

#endif  // NCSHOCK_TESTS_ORACLES_HPP_
