// Closed-form ingredients of the nonlinear elastodynamics system
//
//     v_t - sigma(w)_x = 0,   w_t - v_x = 0,   sigma(w) = w^3 + m w,
//
// with linear kinetic functions Phi_flat(w) = -beta w for both families.

#ifndef NCSHOCK_MODEL_HPP_
#define NCSHOCK_MODEL_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ncshock {

class ModelParams {
 public:
  ModelParams(double m, double beta) : m_(m), beta_(beta) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw std::invalid_argument("stress coefficient m must be > 0, got " +
                                  std::to_string(m));
    }
    if (!(beta >= 0.5 && beta <= 1.0)) {
      throw std::invalid_argument("kinetic slope beta must lie in [1/2, 1], got " +
                                  std::to_string(beta));
    }
  }

  double m() const { return m_; }
  double beta() const { return beta_; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double m_;
  double beta_;
};

/// Velocity and deformation gradient at a point or as a cell mean.
struct State {
  double v = 0.0;
  double w = 0.0;

  friend bool operator==(const State&, const State&) = default;
};

inline double stress(const ModelParams& p, double w) { return w * w * w + p.m() * w; }

inline double stress_derivative(const ModelParams& p, double w) {
  return 3.0 * w * w + p.m();
}

inline double sound_speed(const ModelParams& p, double w) {
  return std::sqrt(stress_derivative(p, w));
}

/// Antiderivative of sigma with base point 0.
inline double stress_antiderivative(const ModelParams& p, double w) {
  const double w2 = w * w;
  return 0.25 * w2 * w2 + 0.5 * p.m() * w2;
}

/// Antiderivative of the sound speed sqrt(3 z^2 + m) with base point 0. The
/// family-1 Riemann invariant is v - G(w), the family-2 one is v + G(w).
inline double sound_speed_antiderivative(const ModelParams& p, double w) {
  const double m = p.m();
  const double root3 = std::sqrt(3.0);
  return 0.5 * w * std::sqrt(3.0 * w * w + m) +
         m / (2.0 * root3) * std::asinh(root3 * w / std::sqrt(m));
}

/// Magnitude of the shock speed between strains wL and wR (square root of the
/// chord slope of sigma). Coincident arguments return the sound speed.
inline double shock_speed(const ModelParams& p, double wl, double wr) {
  // (sigma(a) - sigma(b)) / (a - b) = a^2 + ab + b^2 + m, exact for the cubic.
  return std::sqrt(wl * wl + wl * wr + wr * wr + p.m());
}

/// H1: velocity on the right of a 1-shock from (vL, wL) to strain wR.
inline double hugoniot_forward_v(const ModelParams& p, double wr, double vl, double wl) {
  return vl + shock_speed(p, wl, wr) * (wr - wl);
}

/// H2: velocity on the left of a 2-shock from strain wL to (vR, wR).
inline double hugoniot_backward_v(const ModelParams& p, double wl, double vr, double wr) {
  return vr - shock_speed(p, wl, wr) * (wl - wr);
}

inline double phi_natural(double w) { return -0.5 * w; }
inline double phi_natural_inverse(double w) { return -2.0 * w; }
inline double phi_flat_inf(double w) { return -w; }
inline double phi_sharp(double w, double w_other) { return -w - w_other; }
inline double phi_flat(const ModelParams& p, double w) { return -p.beta() * w; }
inline double phi_flat_inverse(const ModelParams& p, double w) { return -w / p.beta(); }

/// Mathematical entropy v^2/2 + int_0^w sigma.
inline double entropy(const ModelParams& p, const State& u) {
  return 0.5 * u.v * u.v + stress_antiderivative(p, u.w);
}

inline double entropy_flux(const ModelParams& p, const State& u) {
  return -u.v * stress(p, u.w);
}

/// Signed propagation speed of a shock of the given family: -s for 1-shocks,
/// +s for 2-shocks.
inline double signed_shock_speed(const ModelParams& p, double wl, double wr, int family) {
  const double s = shock_speed(p, wl, wr);
  return family == 1 ? -s : s;
}

class NotAShockError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest relative Rankine-Hugoniot residual of the pair at speed (-1)^family s.
inline double rankine_hugoniot_residual(const ModelParams& p, const State& left,
                                        const State& right, int family) {
  const double speed = signed_shock_speed(p, left.w, right.w, family);
  const double sl = stress(p, left.w);
  const double sr = stress(p, right.w);
  // s (U_L - U_R) = f(U_L) - f(U_R) with f(v, w) = (-sigma(w), -v).
  const double r1 = speed * (left.v - right.v) + sl - sr;
  const double r2 = speed * (left.w - right.w) + left.v - right.v;
  const double scale1 = std::max({1.0, std::abs(speed * (left.v - right.v)), std::abs(sl - sr)});
  const double scale2 =
      std::max({1.0, std::abs(speed * (left.w - right.w)), std::abs(left.v - right.v)});
  return std::max(std::abs(r1) / scale1, std::abs(r2) / scale2);
}

/// Entropy dissipation s (U(L) - U(R)) - (W(L) - W(R)) of a shock; negative
/// for entropy-satisfying shocks, zero when wR = Phi_flat_inf(wL).
inline double entropy_dissipation(const ModelParams& p, const State& left, const State& right,
                                  int family, double rh_tolerance = 1e-9) {
  if (left == right) return 0.0;
  if (rankine_hugoniot_residual(p, left, right, family) > rh_tolerance) {
    throw NotAShockError("not a shock: Rankine-Hugoniot residual above tolerance");
  }
  const double speed = signed_shock_speed(p, left.w, right.w, family);
  return speed * (entropy(p, left) - entropy(p, right)) -
         (entropy_flux(p, left) - entropy_flux(p, right));
}

enum class ShockClass { LiuClassical, Nonclassical, NotEntropySatisfying };

inline const char* to_string(ShockClass c) {
  switch (c) {
    case ShockClass::LiuClassical: return "LiuClassical";
    case ShockClass::Nonclassical: return "Nonclassical";
    case ShockClass::NotEntropySatisfying: return "NotEntropySatisfying";
  }
  return "?";
}

/// Admissibility of a jump between strains wL and wR. For family 2 the roles of
/// the two strains are exchanged.
inline ShockClass classify_shock(const ModelParams& /*p*/, double wl, double wr,
                                 int family = 1) {
  const double upstream = family == 1 ? wl : wr;
  const double downstream = family == 1 ? wr : wl;
  const double prod = upstream * downstream;
  const double u2 = upstream * upstream;
  if (u2 <= prod || prod <= phi_natural_inverse(upstream) * upstream) {
    return ShockClass::LiuClassical;
  }
  if (prod <= phi_flat_inf(upstream) * upstream) return ShockClass::Nonclassical;
  return ShockClass::NotEntropySatisfying;
}

}  // namespace ncshock

#endif  // NCSHOCK_MODEL_HPP_
