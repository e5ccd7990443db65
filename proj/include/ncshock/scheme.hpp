// Discontinuous-reconstruction finite volume scheme on a uniformly translating
// mesh. Each step:
//   1. detect cells whose mean is the average of a shock linking its neighbours,
//   2. reconstruct that shock conservatively inside the cell,
//   3. move the mesh faster than every wave and integrate the flux exactly
//      through each moving interface.
// Without active reconstructions the update is the staggered one-sided
// (Lax-Friedrichs) scheme in the moving frame.

#ifndef NCSHOCK_SCHEME_HPP_
#define NCSHOCK_SCHEME_HPP_

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ncshock/model.hpp"
#include "ncshock/riemann.hpp"

namespace ncshock {

enum class Boundary { Periodic, ConstantExtrapolation };

/// Uniform cells of width dx whose left end sits at `left_edge`. The mesh
/// translates as a whole between steps; the width never changes.
struct MovingGrid {
  double dx = 1.0;
  double left_edge = 0.0;
  double time = 0.0;
  std::size_t steps = 0;
  Boundary boundary = Boundary::ConstantExtrapolation;
  std::vector<double> v;
  std::vector<double> w;

  std::size_t n_cells() const { return v.size(); }
  double cell_left(std::size_t j) const { return left_edge + static_cast<double>(j) * dx; }
  double cell_center(std::size_t j) const { return cell_left(j) + 0.5 * dx; }
  State cell(std::size_t j) const { return {v[j], w[j]}; }
  double length() const { return dx * static_cast<double>(n_cells()); }
};

struct GridSpec {
  std::size_t n_cells = 0;
  double x_lo = 0.0;
  double x_hi = 1.0;
  Boundary boundary = Boundary::ConstantExtrapolation;

  double dx() const { return (x_hi - x_lo) / static_cast<double>(n_cells); }
};

/// Piecewise constant profile: states[i] holds on (breaks[i-1], breaks[i]),
/// with the first and last pieces unbounded.
struct PiecewiseConstantData {
  std::vector<double> breaks;
  std::vector<State> states;

  static PiecewiseConstantData riemann(const State& left, const State& right, double x0 = 0.0) {
    return {{x0}, {left, right}};
  }

  State at(double x) const {
    const auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
    return states[static_cast<std::size_t>(it - breaks.begin())];
  }

  /// Exact mean over [a, b].
  State average(double a, double b) const {
    double sv = 0.0;
    double sw = 0.0;
    double lo = a;
    for (std::size_t i = 0; i <= breaks.size() && lo < b; ++i) {
      const double hi = i < breaks.size() ? std::min(b, breaks[i]) : b;
      if (hi > lo) {
        sv += states[i].v * (hi - lo);
        sw += states[i].w * (hi - lo);
        lo = hi;
      }
    }
    return {sv / (b - a), sw / (b - a)};
  }
};

using SmoothData = std::function<State(double)>;

inline MovingGrid make_grid(const GridSpec& spec) {
  if (spec.n_cells == 0 || !(spec.x_hi > spec.x_lo)) {
    throw std::invalid_argument("grid needs at least one cell and x_hi > x_lo");
  }
  MovingGrid grid;
  grid.dx = spec.dx();
  grid.left_edge = spec.x_lo;
  grid.boundary = spec.boundary;
  grid.v.assign(spec.n_cells, 0.0);
  grid.w.assign(spec.n_cells, 0.0);
  return grid;
}

inline MovingGrid initialize(const GridSpec& spec, const PiecewiseConstantData& data) {
  if (data.states.size() != data.breaks.size() + 1) {
    throw std::invalid_argument("piecewise data needs one more state than breaks");
  }
  MovingGrid grid = make_grid(spec);
  for (std::size_t j = 0; j < grid.n_cells(); ++j) {
    const double a = grid.cell_left(j);
    const State mean = data.average(a, a + grid.dx);
    grid.v[j] = mean.v;
    grid.w[j] = mean.w;
  }
  return grid;
}

/// Cell means by 5-point Gauss-Legendre quadrature.
inline MovingGrid initialize(const GridSpec& spec, const SmoothData& data) {
  static constexpr std::array<double, 5> kNodes = {
      0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640, 0.9061798459386640};
  static constexpr std::array<double, 5> kWeights = {
      0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
      0.2369268850561891};
  MovingGrid grid = make_grid(spec);
  for (std::size_t j = 0; j < grid.n_cells(); ++j) {
    const double c = grid.cell_center(j);
    double sv = 0.0;
    double sw = 0.0;
    for (std::size_t q = 0; q < kNodes.size(); ++q) {
      const State u = data(c + 0.5 * grid.dx * kNodes[q]);
      sv += 0.5 * kWeights[q] * u.v;
      sw += 0.5 * kWeights[q] * u.w;
    }
    grid.v[j] = sv;
    grid.w[j] = sw;
  }
  return grid;
}

/// Two-state profile placed inside one cell. `d_v` and `d_w` are the
/// discontinuity offsets from the cell's left end for each variable.
struct Reconstruction {
  bool active = false;
  State left;
  State right;
  double d_v = 0.0;
  double d_w = 0.0;
  double speed = 0.0;

  static Reconstruction inactive(const ModelParams& p, const State& mean) {
    Reconstruction r;
    r.left = mean;
    r.right = mean;
    r.speed = sound_speed(p, mean.w);
    return r;
  }
};

enum class MeshSignPolicy { Alternate, FixedNegative, FixedPositive };

struct SchemeConfig {
  double cfl = 0.45;
  double mesh_speed_margin = 0.05;
  /// Master switch; false gives the plain staggered scheme.
  bool reconstruct = true;
  /// Also reconstruct shocks in which w keeps its sign (RecNC+C).
  bool detect_classical = false;
  MeshSignPolicy mesh_sign_policy = MeshSignPolicy::Alternate;

  void validate() const {
    if (!(cfl > 0.0 && cfl < 1.0)) throw std::invalid_argument("cfl must lie in (0, 1)");
    if (!(mesh_speed_margin > 0.0)) throw std::invalid_argument("mesh speed margin must be > 0");
  }
};

/// Shock to be rebuilt inside a cell.
struct DesiredStates {
  State left;
  State right;
  int family = 1;
  WaveKind kind = WaveKind::NonclassicalShock;
};

// Necessary conditions for two states to be joined by a nonclassical shock of
// the given family: w changes sign, the jumps have the sign dictated by the
// Rankine-Hugoniot relations, and the shock is slower than the characteristic
// on its upstream side (Phi_sharp test).
inline bool passes_nonclassical_filter_1(const State& l, const State& r) {
  return l.w * r.w < 0.0 && (l.w - r.w) * (l.v - r.v) > 0.0 &&
         l.w * l.w >= l.w * phi_sharp(l.w, r.w);
}

inline bool passes_nonclassical_filter_2(const State& l, const State& r) {
  return l.w * r.w < 0.0 && (l.w - r.w) * (l.v - r.v) < 0.0 &&
         r.w * r.w >= r.w * phi_sharp(l.w, r.w);
}

/// Sign patterns of shocks in which w keeps its sign.
inline bool passes_classical_filter_1(const State& l, const State& r) {
  return (r.w < l.w && l.w <= 0.0 && r.v < l.v) || (0.0 <= l.w && l.w < r.w && r.v > l.v);
}

inline bool passes_classical_filter_2(const State& l, const State& r) {
  return (l.w < r.w && r.w <= 0.0 && r.v < l.v) || (0.0 <= r.w && r.w < l.w && r.v > l.v);
}

namespace detail {

// The shock of `family` in the fan in which w changes sign.
inline const ElementaryWave* sign_changing_shock(const WaveFan& fan, int family) {
  for (const ElementaryWave& wave : fan.waves()) {
    if (wave.family == family && wave.is_shock() && wave.left.w * wave.right.w < 0.0) {
      return &wave;
    }
  }
  return nullptr;
}

// The lone classical shock making up the whole wave of `family`.
inline const ElementaryWave* single_classical_shock(const WaveFan& fan, int family) {
  const ElementaryWave* found = nullptr;
  for (const ElementaryWave& wave : fan.waves()) {
    if (wave.family != family) continue;
    if (found != nullptr || wave.kind != WaveKind::ClassicalShock) return nullptr;
    found = &wave;
  }
  return found;
}

}  // namespace detail

/// Looks for a shock to reconstruct in the cell between `left_nb` and
/// `right_nb`. The cheap sign filters run first; the Riemann problem between
/// the neighbours is only solved for cells that pass them.
inline std::optional<DesiredStates> detect(const RiemannSolver& solver, const State& left_nb,
                                           const State& right_nb, bool detect_classical) {
  int family = 0;
  bool classical = false;
  if (passes_nonclassical_filter_1(left_nb, right_nb)) {
    family = 1;
  } else if (passes_nonclassical_filter_2(left_nb, right_nb)) {
    family = 2;
  } else if (detect_classical && passes_classical_filter_1(left_nb, right_nb)) {
    family = 1;
    classical = true;
  } else if (detect_classical && passes_classical_filter_2(left_nb, right_nb)) {
    family = 2;
    classical = true;
  } else {
    return std::nullopt;
  }

  const WaveFan fan = solver.solve(left_nb, right_nb);
  const ElementaryWave* shock = nullptr;
  if (!classical) {
    const double w_side = family == 1 ? left_nb.w : right_nb.w;
    if (!(w_side * fan.middle.w < 0.0)) return std::nullopt;
    shock = detail::sign_changing_shock(fan, family);
  } else {
    shock = detail::single_classical_shock(fan, family);
  }
  if (shock == nullptr) return std::nullopt;

  // Dropping negligible waves pins the shock ends to the data, which moves the
  // residual by up to the degenerate tolerance times the jump sizes involved.
  assert(rankine_hugoniot_residual(solver.params(), shock->left, shock->right, family) <
         1e-8 + 10.0 * solver.options().degenerate_tolerance *
                    (1.0 + std::abs(shock->left.v)) *
                    (1.0 + stress_derivative(solver.params(), shock->left.w)));
  return DesiredStates{shock->left, shock->right, family, shock->kind};
}

/// Neighbour of cell j on the given side, honouring the boundary treatment.
inline State neighbor(const MovingGrid& grid, std::size_t j, int side) {
  const std::size_t n = grid.n_cells();
  if (side < 0) {
    if (j > 0) return grid.cell(j - 1);
    return grid.boundary == Boundary::Periodic ? grid.cell(n - 1) : grid.cell(0);
  }
  if (j + 1 < n) return grid.cell(j + 1);
  return grid.boundary == Boundary::Periodic ? grid.cell(0) : grid.cell(n - 1);
}

inline std::optional<DesiredStates> detect(const RiemannSolver& solver, const MovingGrid& grid,
                                           std::size_t j, bool detect_classical) {
  return detect(solver, neighbor(grid, j, -1), neighbor(grid, j, +1), detect_classical);
}

/// Places the jump desired_left | desired_right inside the cell so that both
/// cell means are preserved. Cancelled unless both offsets fall strictly
/// inside the cell.
inline Reconstruction reconstruct(const ModelParams& p, const State& mean,
                                  const State& desired_left, const State& desired_right,
                                  double dx) {
  const double jump_v = desired_left.v - desired_right.v;
  const double jump_w = desired_left.w - desired_right.w;
  if (jump_v == 0.0 || jump_w == 0.0) return Reconstruction::inactive(p, mean);
  const double d_v = dx * (mean.v - desired_right.v) / jump_v;
  const double d_w = dx * (mean.w - desired_right.w) / jump_w;
  if (!(d_v > 0.0 && d_v < dx && d_w > 0.0 && d_w < dx)) {
    return Reconstruction::inactive(p, mean);
  }
  Reconstruction r;
  r.active = true;
  r.left = desired_left;
  r.right = desired_right;
  r.d_v = d_v;
  r.d_w = d_w;
  r.speed = (desired_right.v - desired_left.v) / (desired_left.w - desired_right.w);
  return r;
}

/// Largest wave speed the step has to accommodate: sound speeds of the cell
/// means and of active reconstructed states, and reconstructed shock speeds.
inline double wave_speed_bound(const ModelParams& p, const MovingGrid& grid,
                               const std::vector<Reconstruction>& recs) {
  double max_abs_w = 0.0;
  for (double w : grid.w) max_abs_w = std::max(max_abs_w, std::abs(w));
  double bound = sound_speed(p, max_abs_w);
  for (const Reconstruction& r : recs) {
    if (!r.active) continue;
    bound = std::max({bound, sound_speed(p, r.left.w), sound_speed(p, r.right.w),
                      std::abs(r.speed)});
  }
  return bound;
}

inline double mesh_speed(double v_waves, const SchemeConfig& config, std::size_t step_index) {
  const double magnitude = (1.0 + config.mesh_speed_margin) * v_waves;
  switch (config.mesh_sign_policy) {
    case MeshSignPolicy::FixedNegative: return -magnitude;
    case MeshSignPolicy::FixedPositive: return magnitude;
    case MeshSignPolicy::Alternate: break;
  }
  return step_index % 2 == 0 ? -magnitude : magnitude;
}

inline double mesh_speed(const ModelParams& p, const MovingGrid& grid,
                         const std::vector<Reconstruction>& recs, const SchemeConfig& config) {
  return mesh_speed(wave_speed_bound(p, grid, recs), config, grid.steps);
}

inline double time_step(double dx, double v_mesh, double v_waves, double cfl) {
  return cfl * dx / (std::abs(v_mesh) + v_waves);
}

/// Time-integrated flux (v, w components) through one moving interface.
struct InterfaceFlux {
  double v = 0.0;
  double w = 0.0;
};

/// Physical flux seen in a frame moving at v_mesh.
inline InterfaceFlux moving_frame_flux(const ModelParams& p, const State& u, double v_mesh) {
  return {-stress(p, u.w) - v_mesh * u.v, -u.v - v_mesh * u.w};
}

/// Flux through the interface swept by the mesh into the upwind cell `rec`
/// during dt. For v_mesh < 0 that is the cell's right interface, otherwise its
/// left interface. The reconstructed jump crosses the interface after a time
/// computed separately for v and w.
inline InterfaceFlux upwind_flux(const ModelParams& p, const Reconstruction& rec,
                                 double v_mesh, double dt, double dx) {
  if (!rec.active) {
    const InterfaceFlux f = moving_frame_flux(p, rec.left, v_mesh);
    return {dt * f.v, dt * f.w};
  }
  const InterfaceFlux f_left = moving_frame_flux(p, rec.left, v_mesh);
  const InterfaceFlux f_right = moving_frame_flux(p, rec.right, v_mesh);
  if (v_mesh < 0.0) {
    const double t_v = std::min(dt, (dx - rec.d_v) / (rec.speed - v_mesh));
    const double t_w = std::min(dt, (dx - rec.d_w) / (rec.speed - v_mesh));
    return {f_right.v * t_v + f_left.v * (dt - t_v), f_right.w * t_w + f_left.w * (dt - t_w)};
  }
  const double t_v = std::min(dt, rec.d_v / (v_mesh - rec.speed));
  const double t_w = std::min(dt, rec.d_w / (v_mesh - rec.speed));
  return {f_left.v * t_v + f_right.v * (dt - t_v), f_left.w * t_w + f_right.w * (dt - t_w)};
}

/// Upwind cell reconstruction for interface k (between cells k-1 and k).
/// Ghost cells outside a non-periodic grid are never reconstructed.
inline Reconstruction upwind_reconstruction(const ModelParams& p, std::size_t k,
                                            const MovingGrid& grid,
                                            const std::vector<Reconstruction>& recs,
                                            double v_mesh) {
  const std::size_t n = grid.n_cells();
  const bool periodic = grid.boundary == Boundary::Periodic;
  if (v_mesh < 0.0) {
    if (k > 0) return recs[k - 1];
    return periodic ? recs[n - 1] : Reconstruction::inactive(p, grid.cell(0));
  }
  if (k < n) return recs[k];
  return periodic ? recs[0] : Reconstruction::inactive(p, grid.cell(n - 1));
}

inline InterfaceFlux interface_flux(const ModelParams& p, std::size_t k, const MovingGrid& grid,
                                    const std::vector<Reconstruction>& recs, double v_mesh,
                                    double dt) {
  return upwind_flux(p, upwind_reconstruction(p, k, grid, recs, v_mesh), v_mesh, dt, grid.dx);
}

struct StepInfo {
  double dt = 0.0;
  double v_mesh = 0.0;
  double v_waves = 0.0;
  std::size_t active_cells = 0;
};

/// The reconstruction scheme with reusable work arrays.
class ReconstructionScheme {
 public:
  ReconstructionScheme(RiemannSolver solver, SchemeConfig config)
      : solver_(solver), config_(config) {
    config_.validate();
  }

  const SchemeConfig& config() const { return config_; }
  const RiemannSolver& solver() const { return solver_; }

  /// Reconstruction of every cell for the current grid state.
  const std::vector<Reconstruction>& reconstruct_all(const MovingGrid& grid) {
    const ModelParams& p = solver_.params();
    const std::size_t n = grid.n_cells();
    recs_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const State mean = grid.cell(j);
      recs_[j] = Reconstruction::inactive(p, mean);
      if (!config_.reconstruct) continue;
      const auto desired = detect(solver_, grid, j, config_.detect_classical);
      if (desired) recs_[j] = reconstruct(p, mean, desired->left, desired->right, grid.dx);
    }
    return recs_;
  }

  /// Advances the grid by one step of at most dt_max.
  StepInfo advance(MovingGrid& grid, double dt_max = std::numeric_limits<double>::infinity()) {
    const ModelParams& p = solver_.params();
    const std::size_t n = grid.n_cells();
    reconstruct_all(grid);

    StepInfo info;
    info.v_waves = wave_speed_bound(p, grid, recs_);
    info.v_mesh = mesh_speed(info.v_waves, config_, grid.steps);
    info.dt = std::min(dt_max, time_step(grid.dx, info.v_mesh, info.v_waves, config_.cfl));
    for (const Reconstruction& r : recs_) info.active_cells += r.active ? 1 : 0;

    flux_v_.resize(n + 1);
    flux_w_.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      const InterfaceFlux f = interface_flux(p, k, grid, recs_, info.v_mesh, info.dt);
      flux_v_[k] = f.v;
      flux_w_[k] = f.w;
    }
    for (std::size_t j = 0; j < n; ++j) {
      grid.v[j] -= (flux_v_[j + 1] - flux_v_[j]) / grid.dx;
      grid.w[j] -= (flux_w_[j + 1] - flux_w_[j]) / grid.dx;
    }
    grid.left_edge += info.v_mesh * info.dt;
    grid.time += info.dt;
    ++grid.steps;
    return info;
  }

 private:
  RiemannSolver solver_;
  SchemeConfig config_;
  std::vector<Reconstruction> recs_;
  std::vector<double> flux_v_;
  std::vector<double> flux_w_;
};

/// One step on a copy of the grid.
inline MovingGrid step(const MovingGrid& grid, const SchemeConfig& config,
                       const RiemannSolver& solver,
                       double dt_max = std::numeric_limits<double>::infinity()) {
  MovingGrid next = grid;
  ReconstructionScheme scheme(solver, config);
  scheme.advance(next, dt_max);
  return next;
}

}  // namespace ncshock

#endif  // NCSHOCK_SCHEME_HPP_
