// Property audit of a Riemann fan, shared by the unit tests and the
// acceptance run. Returns an empty string when every property holds.

#ifndef NCSHOCK_TESTS_PROPERTIES_HPP_
#define NCSHOCK_TESTS_PROPERTIES_HPP_

#include <cmath>
#include <sstream>
#include <string>

#include "ncshock/riemann.hpp"
#include "oracles.hpp"

namespace props {

using ncshock::ElementaryWave;
using ncshock::ModelParams;
using ncshock::State;
using ncshock::WaveFan;
using ncshock::WaveKind;

inline double rh_residual(double m, const State& l, const State& r, double speed) {
  // speed (U_L - U_R) = f(U_L) - f(U_R), f = (-sigma(w), -v).
  const double r1 = speed * (l.v - r.v) + oracle::sigma(m, l.w) - oracle::sigma(m, r.w);
  const double r2 = speed * (l.w - r.w) + l.v - r.v;
  const double s1 = std::max({1.0, std::abs(speed * (l.v - r.v))});
  const double s2 = std::max({1.0, std::abs(speed * (l.w - r.w))});
  return std::max(std::abs(r1) / s1, std::abs(r2) / s2);
}

inline std::string audit_fan(const ModelParams& p, const State& left, const State& right,
                             const WaveFan& fan) {
  std::ostringstream why;
  const double m = p.m();
  const auto waves = fan.waves();
  if (!(fan.left_data == left) || !(fan.right_data == right)) why << "data not kept; ";
  if (left == right && !waves.empty()) why << "fan of equal states not empty; ";
  if (waves.empty()) {
    if (!(left == right)) why << "empty fan for distinct states; ";
    return why.str();
  }
  if (!(waves.front().left == left)) why << "first wave does not start at left data; ";
  if (!(waves.back().right == right)) why << "last wave does not end at right data; ";
  int last_family = 1;
  double last_speed = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < waves.size(); ++i) {
    const ElementaryWave& wv = waves[i];
    if (i > 0 && !(waves[i - 1].right == wv.left)) why << "chain broken at " << i << "; ";
    if (wv.family < last_family) why << "families out of order; ";
    last_family = wv.family;
    if (wv.speed_lo > wv.speed_hi) why << "wave " << i << " speeds reversed; ";
    if (wv.speed_lo < last_speed - 1e-12 * std::max(1.0, std::abs(last_speed))) {
      why << "wave " << i << " overlaps the previous one; ";
    }
    last_speed = wv.speed_hi;
    if ((wv.family == 1 && wv.speed_hi > 1e-12) || (wv.family == 2 && wv.speed_lo < -1e-12)) {
      why << "wave " << i << " on the wrong side; ";
    }
    const double upstream = wv.family == 1 ? wv.left.w : wv.right.w;
    const double downstream = wv.family == 1 ? wv.right.w : wv.left.w;
    if (wv.kind == WaveKind::Rarefaction) {
      const double sign = wv.family == 1 ? -1.0 : 1.0;
      const double cl = std::sqrt(3 * wv.left.w * wv.left.w + m);
      const double cr = std::sqrt(3 * wv.right.w * wv.right.w + m);
      if (std::abs(wv.speed_lo - sign * cl) > 1e-10 * cl ||
          std::abs(wv.speed_hi - sign * cr) > 1e-10 * cr) {
        why << "rarefaction " << i << " edges are not characteristic; ";
      }
      // Riemann invariant v -/+ int c dw constant across the fan.
      const double gl = oracle::sound_integral(m, wv.left.w);
      const double gr = oracle::sound_integral(m, wv.right.w);
      const double inv = wv.family == 1 ? (wv.right.v - gr) - (wv.left.v - gl)
                                        : (wv.right.v + gr) - (wv.left.v + gl);
      if (std::abs(inv) > 1e-9 * std::max(1.0, std::abs(wv.left.v))) {
        why << "rarefaction " << i << " breaks its Riemann invariant; ";
      }
      continue;
    }
    const double s = std::sqrt(oracle::chord(m, wv.left.w, wv.right.w));
    const double speed = wv.family == 1 ? -s : s;
    if (std::abs(wv.speed_lo - speed) > 1e-10 * s || wv.speed_lo != wv.speed_hi) {
      why << "shock " << i << " speed mismatch; ";
    }
    if (rh_residual(m, wv.left, wv.right, speed) > 1e-9) why << "shock " << i << " RH residual; ";
    if (wv.kind == WaveKind::ClassicalShock) {
      if (!oracle::liu_by_chords(m, upstream, downstream)) {
        why << "classical shock " << i << " fails the Liu chord test; ";
      }
    } else {
      if (std::abs(upstream + p.beta() * downstream) > 1e-9 * std::max(1.0, std::abs(upstream))) {
        why << "nonclassical shock " << i << " off the kinetic relation; ";
      }
      const double d = oracle::dissipation(m, wv.left, wv.right, speed);
      const double scale = std::max(1.0, std::abs(speed) * std::pow(upstream, 4));
      if (d > 1e-10 * scale) why << "nonclassical shock " << i << " produces entropy; ";
    }
  }
  const State beyond = ncshock::sample_fan(p, fan, waves.back().speed_hi + 1.0);
  if (!(beyond == right)) why << "sampling beyond the fan does not give right data; ";
  return why.str();
}

}  // namespace props

#endif  // NCSHOCK_TESTS_PROPERTIES_HPP_
