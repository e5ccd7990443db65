// Drives one scheme over a RunConfig, landing exactly on the snapshot times.

#ifndef NCSHOCK_HARNESS_RUN_HPP_
#define NCSHOCK_HARNESS_RUN_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncshock/harness/config.hpp"
#include "ncshock/reference.hpp"
#include "ncshock/scheme.hpp"

namespace ncshock::harness {

struct Snapshot {
  double time = 0.0;
  double left_edge = 0.0;
  double dx = 0.0;
  Boundary boundary = Boundary::ConstantExtrapolation;
  std::vector<double> v;
  std::vector<double> w;

  std::size_t n_cells() const { return v.size(); }
  double x_center(std::size_t j) const {
    return left_edge + (static_cast<double>(j) + 0.5) * dx;
  }

  static Snapshot of(const MovingGrid& g) {
    return {g.time, g.left_edge, g.dx, g.boundary, g.v, g.w};
  }

  MovingGrid grid() const {
    MovingGrid g;
    g.dx = dx;
    g.left_edge = left_edge;
    g.time = time;
    g.boundary = boundary;
    g.v = v;
    g.w = w;
    return g;
  }
};

struct MassSample {
  double time = 0.0;
  double v = 0.0;
  double w = 0.0;
};

struct RunMetadata {
  std::string name;
  std::string scheme;
  double m = 0.0;
  double beta = 0.0;
  std::size_t n_cells = 0;
  double cfl = 0.0;
  std::uint64_t seed = 0;
  std::string rng;
  std::size_t steps = 0;
  double dt_min = std::numeric_limits<double>::infinity();
  double dt_max = 0.0;
  double dt_mean = 0.0;
  double wall_seconds = 0.0;
  MassSample mass_initial;
  MassSample mass_final;
  /// Total of |v| and |w| at the start, the scale for relative drift.
  double mass_scale_v = 0.0;
  double mass_scale_w = 0.0;
  std::vector<MassSample> mass_series;

  double relative_drift_v() const {
    return std::abs(mass_final.v - mass_initial.v) / std::max(mass_scale_v, 1e-300);
  }
  double relative_drift_w() const {
    return std::abs(mass_final.w - mass_initial.w) / std::max(mass_scale_w, 1e-300);
  }
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  RunMetadata meta;

  const Snapshot& final_snapshot() const { return snapshots.back(); }
};

/// Raised when a run breaks down. The message names the step and, when known,
/// the first offending cell.
class RunError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline MassSample mass(const MovingGrid& g) {
  double sv = 0.0;
  double sw = 0.0;
  for (std::size_t j = 0; j < g.n_cells(); ++j) {
    sv += g.v[j];
    sw += g.w[j];
  }
  return {g.time, sv * g.dx, sw * g.dx};
}

inline MovingGrid initial_grid(const RunConfig& c) {
  if (c.data.kind == InitialData::Kind::Piecewise) return initialize(c.grid_spec(), c.data.piecewise());
  return initialize(c.grid_spec(), c.data.smooth());
}

/// Called after every step with the current grid.
using StepObserver = std::function<void(const MovingGrid&)>;

inline RunResult run(const RunConfig& config, const StepObserver& observer = {},
                     std::size_t mass_every = 100) {
  config.validate();
  const auto wall_start = std::chrono::steady_clock::now();
  const RiemannSolver solver(config.model());

  MovingGrid grid = initial_grid(config);

  RunResult result;
  RunMetadata& meta = result.meta;
  meta.name = config.name;
  meta.scheme = to_string(config.scheme);
  meta.m = config.m;
  meta.beta = config.beta;
  meta.n_cells = config.n_cells;
  meta.cfl = config.scheme == SchemeKind::Glimm ? 0.9 : config.scheme_config.cfl;
  meta.seed = config.seed;
  meta.rng = config.scheme == SchemeKind::Glimm ? RngStream::algorithm() : "";
  meta.mass_initial = mass(grid);
  for (std::size_t j = 0; j < grid.n_cells(); ++j) {
    meta.mass_scale_v += std::abs(grid.v[j]) * grid.dx;
    meta.mass_scale_w += std::abs(grid.w[j]) * grid.dx;
  }
  meta.mass_series.push_back(meta.mass_initial);

  std::vector<double> targets = config.snapshot_times;
  targets.push_back(config.t_final);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  ReconstructionScheme recnc(solver, config.effective_scheme_config());
  GlimmScheme glimm(solver);
  GodunovScheme godunov(solver, config.scheme_config.cfl);
  RngStream rng(config.seed);

  double dt_sum = 0.0;
  for (double target : targets) {
    while (grid.time < target) {
      const double dt_cap = target - grid.time;
      double dt = 0.0;
      try {
        switch (config.scheme) {
          case SchemeKind::RecNC:
          case SchemeKind::RecNCC: dt = recnc.advance(grid, dt_cap).dt; break;
          case SchemeKind::Glimm: dt = glimm.advance(grid, rng, dt_cap).dt; break;
          case SchemeKind::Godunov: dt = godunov.advance(grid, dt_cap).dt; break;
        }
      } catch (const std::exception& e) {
        throw RunError("step " + std::to_string(grid.steps) + " (t = " +
                       std::to_string(grid.time) + "): " + e.what());
      }
      if (dt == dt_cap) grid.time = target;
      for (std::size_t j = 0; j < grid.n_cells(); ++j) {
        if (!std::isfinite(grid.v[j]) || !std::isfinite(grid.w[j])) {
          throw RunError("step " + std::to_string(grid.steps) + ": non-finite state in cell " +
                         std::to_string(j));
        }
      }
      dt_sum += dt;
      meta.dt_min = std::min(meta.dt_min, dt);
      meta.dt_max = std::max(meta.dt_max, dt);
      if (mass_every > 0 && grid.steps % mass_every == 0) meta.mass_series.push_back(mass(grid));
      if (observer) observer(grid);
    }
    result.snapshots.push_back(Snapshot::of(grid));
  }

  meta.steps = grid.steps;
  meta.dt_mean = grid.steps > 0 ? dt_sum / static_cast<double>(grid.steps) : 0.0;
  meta.mass_final = mass(grid);
  if (meta.mass_series.back().time != grid.time) meta.mass_series.push_back(meta.mass_final);
  meta.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return result;
}

}  // namespace ncshock::harness

#endif  // NCSHOCK_HARNESS_RUN_HPP_
