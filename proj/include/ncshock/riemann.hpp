// Exact Riemann solver for the elastodynamics system under a linear kinetic
// relation. The solution is a 1-wave followed by a 2-wave; each may be a
// composite of a classical wave and a nonclassical (undercompressive) shock.

#ifndef NCSHOCK_RIEMANN_HPP_
#define NCSHOCK_RIEMANN_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

#include "ncshock/model.hpp"

namespace ncshock {

enum class WaveKind { ClassicalShock, NonclassicalShock, Rarefaction };

inline const char* to_string(WaveKind k) {
  switch (k) {
    case WaveKind::ClassicalShock: return "ClassicalShock";
    case WaveKind::NonclassicalShock: return "NonclassicalShock";
    case WaveKind::Rarefaction: return "Rarefaction";
  }
  return "?";
}

struct ElementaryWave {
  int family = 1;
  WaveKind kind = WaveKind::ClassicalShock;
  State left;
  State right;
  double speed_lo = 0.0;
  double speed_hi = 0.0;

  bool is_shock() const { return kind != WaveKind::Rarefaction; }
};

/// Self-similar solution of one Riemann problem. Holds at most two elementary
/// waves per family, stored inline so solving never allocates.
class WaveFan {
 public:
  static constexpr std::size_t kMaxWaves = 4;

  State left_data;
  State right_data;
  /// State between the 1-wave and the 2-wave.
  State middle;

  std::span<const ElementaryWave> waves() const { return {waves_.data(), count_}; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  void push_back(const ElementaryWave& wave) {
    if (count_ == kMaxWaves) throw std::logic_error("wave fan overflow");
    waves_[count_++] = wave;
  }

 private:
  std::array<ElementaryWave, kMaxWaves> waves_{};
  std::size_t count_ = 0;
};

class NoIntersectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RiemannOptions {
  double w_tolerance = 1e-13;
  double v_tolerance = 1e-12;
  /// Bracket expansion limit for the intermediate strain.
  double w_max = 1e6;
  /// Waves whose jump is below this relative size are dropped from the fan.
  double degenerate_tolerance = 1e-10;
};

/// Shape of the 1-wave (resp. 2-wave) joining a fixed state to strain w_far.
/// For composite branches `pivot` is the state on the classical side of the
/// nonclassical shock.
enum class WaveBranch {
  Empty,
  Shock,
  Rarefaction,
  RarefactionAndNonclassical,
  ClassicalAndNonclassical,
  TransonicClassical,
};

struct OneSidedWave {
  WaveBranch branch = WaveBranch::Empty;
  State pivot;
  State far;
};

/// States reachable from `left` through a 1-wave, parametrized by the strain.
inline OneSidedWave forward_1_wave(const ModelParams& p, const State& left, double w_far) {
  const double wl = left.w;
  OneSidedWave out;
  out.far.w = w_far;
  if (w_far == wl) {
    out.far.v = left.v;
    return out;
  }
  const double prod = wl * w_far;
  const double G_left = sound_speed_antiderivative(p, wl);
  if (prod > wl * wl || wl == 0.0) {
    out.branch = WaveBranch::Shock;
    out.far.v = hugoniot_forward_v(p, w_far, left.v, wl);
  } else if (prod >= 0.0) {
    out.branch = WaveBranch::Rarefaction;
    out.far.v = left.v + sound_speed_antiderivative(p, w_far) - G_left;
  } else {
    const double w_dag = phi_flat(p, w_far);
    out.pivot.w = w_dag;
    if (wl * phi_flat_inverse(p, wl) < prod) {
      out.branch = WaveBranch::RarefactionAndNonclassical;
      out.pivot.v = left.v + sound_speed_antiderivative(p, w_dag) - G_left;
      out.far.v = hugoniot_forward_v(p, w_far, out.pivot.v, w_dag);
    } else if (shock_speed(p, wl, w_dag) > shock_speed(p, w_dag, w_far)) {
      // Leading classical shock strictly faster (more negative) than the
      // nonclassical one. Ties go to the single transonic shock.
      out.branch = WaveBranch::ClassicalAndNonclassical;
      out.pivot.v = hugoniot_forward_v(p, w_dag, left.v, wl);
      out.far.v = hugoniot_forward_v(p, w_far, out.pivot.v, w_dag);
    } else {
      out.branch = WaveBranch::TransonicClassical;
      out.far.v = hugoniot_forward_v(p, w_far, left.v, wl);
    }
  }
  return out;
}

/// States from which `right` is reached through a 2-wave.
inline OneSidedWave backward_2_wave(const ModelParams& p, const State& right, double w_far) {
  const double wr = right.w;
  OneSidedWave out;
  out.far.w = w_far;
  if (w_far == wr) {
    out.far.v = right.v;
    return out;
  }
  const double prod = wr * w_far;
  const double G_right = sound_speed_antiderivative(p, wr);
  if (prod > wr * wr || wr == 0.0) {
    out.branch = WaveBranch::Shock;
    out.far.v = hugoniot_backward_v(p, w_far, right.v, wr);
  } else if (prod >= 0.0) {
    out.branch = WaveBranch::Rarefaction;
    out.far.v = right.v + G_right - sound_speed_antiderivative(p, w_far);
  } else {
    const double w_dag = phi_flat(p, w_far);
    out.pivot.w = w_dag;
    if (wr * phi_flat_inverse(p, wr) < prod) {
      out.branch = WaveBranch::RarefactionAndNonclassical;
      out.pivot.v = right.v + G_right - sound_speed_antiderivative(p, w_dag);
      out.far.v = hugoniot_backward_v(p, w_far, out.pivot.v, w_dag);
    } else if (shock_speed(p, w_far, w_dag) < shock_speed(p, w_dag, wr)) {
      out.branch = WaveBranch::ClassicalAndNonclassical;
      out.pivot.v = hugoniot_backward_v(p, w_dag, right.v, wr);
      out.far.v = hugoniot_backward_v(p, w_far, out.pivot.v, w_dag);
    } else {
      out.branch = WaveBranch::TransonicClassical;
      out.far.v = hugoniot_backward_v(p, w_far, right.v, wr);
    }
  }
  return out;
}

/// Velocity reached from `left` along the forward 1-wave curve; strictly
/// increasing in w_mid.
inline double forward_1_curve_v(const ModelParams& p, const State& left, double w_mid) {
  return forward_1_wave(p, left, w_mid).far.v;
}

/// Velocity on the backward 2-wave curve through `right`; strictly decreasing.
inline double backward_2_curve_v(const ModelParams& p, const State& right, double w_mid) {
  return backward_2_wave(p, right, w_mid).far.v;
}

namespace detail {

inline double wave_speed_at(const ModelParams& p, int family, double w) {
  const double c = sound_speed(p, w);
  return family == 1 ? -c : c;
}

inline bool negligible_jump(const State& a, const State& b, double tol) {
  return std::abs(a.w - b.w) <= tol * (1.0 + std::abs(a.w)) &&
         std::abs(a.v - b.v) <= tol * (1.0 + std::abs(a.v));
}

struct Piece {
  int family;
  WaveKind kind;
  State left;
  State right;
};

// Appends the pieces of one family in space order.
inline std::size_t expand_wave(const OneSidedWave& wave, int family, const State& left,
                               const State& right, std::array<Piece, 4>& out,
                               std::size_t n) {
  const State& pivot = wave.pivot;
  switch (wave.branch) {
    case WaveBranch::Empty:
      break;
    case WaveBranch::Shock:
    case WaveBranch::TransonicClassical:
      out[n++] = {family, WaveKind::ClassicalShock, left, right};
      break;
    case WaveBranch::Rarefaction:
      out[n++] = {family, WaveKind::Rarefaction, left, right};
      break;
    case WaveBranch::RarefactionAndNonclassical:
      if (family == 1) {
        out[n++] = {1, WaveKind::Rarefaction, left, pivot};
        out[n++] = {1, WaveKind::NonclassicalShock, pivot, right};
      } else {
        out[n++] = {2, WaveKind::NonclassicalShock, left, pivot};
        out[n++] = {2, WaveKind::Rarefaction, pivot, right};
      }
      break;
    case WaveBranch::ClassicalAndNonclassical:
      if (family == 1) {
        out[n++] = {1, WaveKind::ClassicalShock, left, pivot};
        out[n++] = {1, WaveKind::NonclassicalShock, pivot, right};
      } else {
        out[n++] = {2, WaveKind::NonclassicalShock, left, pivot};
        out[n++] = {2, WaveKind::ClassicalShock, pivot, right};
      }
      break;
  }
  return n;
}

}  // namespace detail

/// Solves the Riemann problem with data `left` | `right`.
inline WaveFan solve_riemann(const ModelParams& p, const State& left, const State& right,
                             const RiemannOptions& opt = {}) {
  WaveFan fan;
  fan.left_data = left;
  fan.right_data = right;
  fan.middle = left;
  if (left == right) return fan;

  auto mismatch = [&](double w) {
    return forward_1_curve_v(p, left, w) - backward_2_curve_v(p, right, w);
  };

  // Start from a small bracket around the acoustic (linearized) estimate of
  // the intermediate strain and widen it geometrically until it holds a sign
  // change of the increasing mismatch.
  const double c_left = sound_speed(p, left.w);
  const double c_right = sound_speed(p, right.w);
  const double w_guess =
      (right.v - left.v + c_left * left.w + c_right * right.w) / (c_left + c_right);
  double half = 0.25 * (std::abs(right.w - left.w) + std::abs(right.v - left.v) /
                                                         (c_left + c_right)) +
                1e-9 * (1.0 + std::abs(w_guess));
  double lo = w_guess - half;
  double hi = w_guess + half;
  double f_lo = mismatch(lo);
  double f_hi = mismatch(hi);
  while (f_lo > 0.0) {
    hi = lo;
    f_hi = f_lo;
    half *= 2.0;
    lo -= half;
    if (std::abs(lo) > opt.w_max) throw NoIntersectionError("no intersection of wave curves");
    f_lo = mismatch(lo);
  }
  while (f_hi < 0.0) {
    lo = hi;
    f_lo = f_hi;
    half *= 2.0;
    hi += half;
    if (std::abs(hi) > opt.w_max) throw NoIntersectionError("no intersection of wave curves");
    f_hi = mismatch(hi);
  }

  // Bracketed root search on the monotone mismatch. Illinois-modified
  // regula falsi steps, with a bisection step whenever the bracket fails to
  // halve; the curves are only piecewise smooth.
  double w_star = f_lo == 0.0 ? lo : hi;
  if (f_lo != 0.0 && f_hi != 0.0) {
    int stale_side = 0;
    double width = hi - lo;
    for (int it = 0; it < 200; ++it) {
      double mid = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
      if (it % 4 == 3) {
        if (hi - lo > 0.5 * width) mid = 0.5 * (lo + hi);
        width = hi - lo;
      }
      if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
      const double f_mid = mismatch(mid);
      w_star = mid;
      if (std::abs(f_mid) <= opt.v_tolerance || hi - lo <= opt.w_tolerance) break;
      if (f_mid < 0.0) {
        lo = mid;
        f_lo = f_mid;
        if (stale_side == -1) f_hi *= 0.5;
        stale_side = -1;
      } else {
        hi = mid;
        f_hi = f_mid;
        if (stale_side == 1) f_lo *= 0.5;
        stale_side = 1;
      }
    }
  }

  const OneSidedWave one = forward_1_wave(p, left, w_star);
  const OneSidedWave two = backward_2_wave(p, right, w_star);
  const State star{0.5 * (one.far.v + two.far.v), w_star};

  std::array<detail::Piece, 4> pieces{};
  std::size_t n = detail::expand_wave(one, 1, left, star, pieces, 0);
  n = detail::expand_wave(two, 2, star, right, pieces, n);

  // Drop negligible pieces, keeping the chain of states connected and its
  // ends pinned to the data.
  std::array<detail::Piece, 4> kept{};
  std::size_t n_kept = 0;
  State chain = left;
  for (std::size_t i = 0; i < n; ++i) {
    detail::Piece piece = pieces[i];
    piece.left = chain;
    if (detail::negligible_jump(piece.left, piece.right, opt.degenerate_tolerance)) continue;
    kept[n_kept++] = piece;
    chain = piece.right;
  }
  if (n_kept > 0) {
    kept[n_kept - 1].right = right;
    if (detail::negligible_jump(kept[n_kept - 1].left, right, opt.degenerate_tolerance)) {
      --n_kept;
      if (n_kept > 0) kept[n_kept - 1].right = right;
    }
  }

  fan.middle = left;
  for (std::size_t i = 0; i < n_kept; ++i) {
    const detail::Piece& piece = kept[i];
    ElementaryWave wave;
    wave.family = piece.family;
    wave.kind = piece.kind;
    wave.left = piece.left;
    wave.right = piece.right;
    if (wave.kind == WaveKind::Rarefaction) {
      wave.speed_lo = detail::wave_speed_at(p, wave.family, wave.left.w);
      wave.speed_hi = detail::wave_speed_at(p, wave.family, wave.right.w);
    } else {
      wave.speed_lo = wave.speed_hi =
          signed_shock_speed(p, wave.left.w, wave.right.w, wave.family);
    }
    if (wave.family == 1) fan.middle = wave.right;
    fan.push_back(wave);
  }
  return fan;
}

/// Solution value on the ray x / t = xi. On a discontinuity ray the right
/// limit is returned.
inline State sample_fan(const ModelParams& p, const WaveFan& fan, double xi) {
  for (const ElementaryWave& wave : fan.waves()) {
    if (xi < wave.speed_lo) return wave.left;
    if (wave.kind == WaveKind::Rarefaction && xi < wave.speed_hi) {
      // (-1)^family c(w) = xi, with the sign of w taken from the fan edges.
      const double c2 = xi * xi;
      const double w_abs = std::sqrt(std::max(0.0, (c2 - p.m()) / 3.0));
      const double edge = wave.left.w != 0.0 ? wave.left.w : wave.right.w;
      const double w = std::copysign(w_abs, edge);
      const double dG = sound_speed_antiderivative(p, w) -
                        sound_speed_antiderivative(p, wave.left.w);
      const double v = wave.family == 1 ? wave.left.v + dG : wave.left.v - dG;
      return {v, w};
    }
  }
  return fan.right_data;
}

/// Mean of the self-similar solution over [a, b] at time t > 0, for a fan
/// centred at x0. Constant parts are integrated exactly, rarefactions with
/// composite Gauss-Legendre quadrature.
inline State fan_average(const ModelParams& p, const WaveFan& fan, double t, double x0,
                         double a, double b) {
  static constexpr std::array<double, 5> kNodes = {
      0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640, 0.9061798459386640};
  static constexpr std::array<double, 5> kWeights = {
      0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
      0.2369268850561891};
  if (b <= a) return sample_fan(p, fan, (a - x0) / t);

  double sum_v = 0.0;
  double sum_w = 0.0;
  auto add_constant = [&](const State& u, double lo, double hi) {
    if (hi <= lo) return;
    sum_v += u.v * (hi - lo);
    sum_w += u.w * (hi - lo);
  };
  auto add_smooth = [&](double lo, double hi) {
    if (hi <= lo) return;
    constexpr int kPanels = 16;
    const double h = (hi - lo) / kPanels;
    for (int k = 0; k < kPanels; ++k) {
      const double mid = lo + (k + 0.5) * h;
      for (std::size_t q = 0; q < kNodes.size(); ++q) {
        const double x = mid + 0.5 * h * kNodes[q];
        const State u = sample_fan(p, fan, (x - x0) / t);
        sum_v += 0.5 * h * kWeights[q] * u.v;
        sum_w += 0.5 * h * kWeights[q] * u.w;
      }
    }
  };

  double cursor = a;
  State current = fan.left_data;
  for (const ElementaryWave& wave : fan.waves()) {
    const double x_lo = std::clamp(x0 + wave.speed_lo * t, a, b);
    const double x_hi = std::clamp(x0 + wave.speed_hi * t, a, b);
    add_constant(current, cursor, x_lo);
    cursor = std::max(cursor, x_lo);
    if (wave.kind == WaveKind::Rarefaction) {
      add_smooth(cursor, x_hi);
      cursor = std::max(cursor, x_hi);
    }
    current = wave.right;
  }
  add_constant(current, cursor, b);
  return {sum_v / (b - a), sum_w / (b - a)};
}

/// Bundles model parameters and solver tolerances for the schemes.
class RiemannSolver {
 public:
  explicit RiemannSolver(ModelParams params, RiemannOptions options = {})
      : params_(params), options_(options) {}

  const ModelParams& params() const { return params_; }
  const RiemannOptions& options() const { return options_; }

  WaveFan solve(const State& left, const State& right) const {
    return solve_riemann(params_, left, right, options_);
  }
  State sample(const WaveFan& fan, double xi) const { return sample_fan(params_, fan, xi); }

 private:
  ModelParams params_;
  RiemannOptions options_;
};

}  // namespace ncshock

#endif  // NCSHOCK_RIEMANN_HPP_
