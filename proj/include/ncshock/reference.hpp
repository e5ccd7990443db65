// Reference schemes on a fixed uniform grid, both built on the exact
// nonclassical Riemann solver:
//   - Glimm random choice: samples the juxtaposed Riemann fans at one random
//     point per step. No numerical diffusion, not conservative.
//   - Godunov: conservative update with the exact flux at each interface.
//     Its numerical diffusion drives it to classical solutions.

#ifndef NCSHOCK_REFERENCE_HPP_
#define NCSHOCK_REFERENCE_HPP_

#include <algorithm>
#include <cmath>
#include <array>
#include <cstdint>
#include <cstring>
#include <limits>
#include <random>
#include <unordered_map>
#include <vector>

#include "ncshock/model.hpp"
#include "ncshock/riemann.hpp"
#include "ncshock/scheme.hpp"

namespace ncshock {

/// A grid that never moves; the schemes below leave left_edge untouched.
using FixedGrid = MovingGrid;

/// Seedable uniform stream on [0, 1). Uses the raw 64-bit output of
/// std::mt19937_64 (fully specified by the standard) and keeps the top 53
/// bits, so a seed gives the same sequence on every platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  static constexpr const char* algorithm() { return "mt19937_64/top53"; }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

struct ReferenceStepInfo {
  double dt = 0.0;
  double max_speed = 0.0;
  double sample = 0.0;
};

namespace detail {

inline State cell_or_ghost(const FixedGrid& grid, std::ptrdiff_t j) {
  const auto n = static_cast<std::ptrdiff_t>(grid.n_cells());
  if (j >= 0 && j < n) return grid.cell(static_cast<std::size_t>(j));
  if (grid.boundary == Boundary::Periodic) {
    return grid.cell(static_cast<std::size_t>((j % n + n) % n));
  }
  return grid.cell(j < 0 ? 0 : static_cast<std::size_t>(n - 1));
}

inline double fan_max_speed(const WaveFan& fan) {
  double s = 0.0;
  for (const ElementaryWave& wave : fan.waves()) {
    s = std::max({s, std::abs(wave.speed_lo), std::abs(wave.speed_hi)});
  }
  return s;
}

struct StatePairHash {
  std::size_t operator()(const std::array<double, 4>& k) const {
    std::size_t h = 1469598103934665603ull;
    for (double x : k) {
      std::uint64_t bits = 0;
      std::memcpy(&bits, &x, sizeof bits);
      h ^= bits + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace detail

/// Solves the Riemann problem at every interface k (between cells k-1 and k)
/// of a fixed grid. Interfaces between equal states get no fan. Fans from the
/// previous call are reused when the same pair of states reappears, which is
/// the common case for Glimm staircases.
class InterfaceFans {
 public:
  explicit InterfaceFans(RiemannSolver solver) : solver_(solver) {}

  const RiemannSolver& solver() const { return solver_; }

  /// Returns the largest wave speed over all interfaces, bounded below by the
  /// largest sound speed of the cell states.
  double solve_all(const FixedGrid& grid) {
    const std::size_t n = grid.n_cells();
    slot_.assign(n + 1, kNoFan);
    std::swap(store_, previous_store_);
    std::swap(index_, previous_index_);
    store_.clear();
    index_.clear();
    double max_speed = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      const State l = detail::cell_or_ghost(grid, static_cast<std::ptrdiff_t>(k) - 1);
      const State r = detail::cell_or_ghost(grid, static_cast<std::ptrdiff_t>(k));
      if (l == r) continue;
      const Key key{l.v, l.w, r.v, r.w};
      auto [it, inserted] = index_.try_emplace(key, static_cast<std::uint32_t>(store_.size()));
      if (inserted) {
        if (auto old = previous_index_.find(key); old != previous_index_.end()) {
          store_.push_back(previous_store_[old->second]);
        } else {
          store_.push_back(solver_.solve(l, r));
        }
        max_speed = std::max(max_speed, detail::fan_max_speed(store_.back()));
      }
      slot_[k] = it->second;
    }
    double max_abs_w = 0.0;
    for (double w : grid.w) max_abs_w = std::max(max_abs_w, std::abs(w));
    return std::max(max_speed, sound_speed(solver_.params(), max_abs_w));
  }

  /// Fan at interface k, or nullptr when both sides hold the same state.
  const WaveFan* fan(std::size_t k) const {
    return slot_[k] == kNoFan ? nullptr : &store_[slot_[k]];
  }

  /// Solution of the interface-k Riemann problem on the ray xi.
  State sample(const FixedGrid& grid, std::size_t k, double xi) const {
    const WaveFan* f = fan(k);
    if (f == nullptr) {
      return detail::cell_or_ghost(grid, static_cast<std::ptrdiff_t>(k) - (k > 0 ? 1 : 0));
    }
    return solver_.sample(*f, xi);
  }

 private:
  using Key = std::array<double, 4>;
  static constexpr std::uint32_t kNoFan = 0xffffffffu;
  RiemannSolver solver_;
  std::vector<std::uint32_t> slot_;
  std::vector<WaveFan> store_;
  std::vector<WaveFan> previous_store_;
  std::unordered_map<Key, std::uint32_t, detail::StatePairHash> index_;
  std::unordered_map<Key, std::uint32_t, detail::StatePairHash> previous_index_;
};

/// Glimm random choice on a fixed grid. The step keeps every fan inside half
/// a cell: dt * max|lambda| <= cfl * dx / 2.
class GlimmScheme {
 public:
  GlimmScheme(RiemannSolver solver, double cfl = 0.9) : fans_(solver), cfl_(cfl) {}

  ReferenceStepInfo advance(FixedGrid& grid, RngStream& rng,
                            double dt_max = std::numeric_limits<double>::infinity()) {
    const std::size_t n = grid.n_cells();
    ReferenceStepInfo info;
    info.max_speed = fans_.solve_all(grid);
    info.dt = std::min(dt_max, 0.5 * cfl_ * grid.dx / info.max_speed);
    // One shared draw per step, uniform on [0, dx).
    const double r = rng.uniform() * grid.dx;
    info.sample = r;
    next_v_.resize(n);
    next_w_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const State u = r <= 0.5 * grid.dx ? fans_.sample(grid, j, r / info.dt)
                                         : fans_.sample(grid, j + 1, (r - grid.dx) / info.dt);
      next_v_[j] = u.v;
      next_w_[j] = u.w;
    }
    grid.v.swap(next_v_);
    grid.w.swap(next_w_);
    grid.time += info.dt;
    ++grid.steps;
    return info;
  }

 private:
  InterfaceFans fans_;
  double cfl_;
  std::vector<double> next_v_;
  std::vector<double> next_w_;
};

/// Godunov scheme with the exact nonclassical Riemann solver.
class GodunovScheme {
 public:
  GodunovScheme(RiemannSolver solver, double cfl = 0.45) : fans_(solver), cfl_(cfl) {}

  ReferenceStepInfo advance(FixedGrid& grid,
                            double dt_max = std::numeric_limits<double>::infinity()) {
    const ModelParams& p = fans_.solver().params();
    const std::size_t n = grid.n_cells();
    ReferenceStepInfo info;
    info.max_speed = fans_.solve_all(grid);
    info.dt = std::min(dt_max, cfl_ * grid.dx / info.max_speed);
    flux_v_.resize(n + 1);
    flux_w_.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      const State u = fans_.sample(grid, k, 0.0);
      const InterfaceFlux f = moving_frame_flux(p, u, 0.0);
      flux_v_[k] = info.dt * f.v;
      flux_w_[k] = info.dt * f.w;
    }
    for (std::size_t j = 0; j < n; ++j) {
      grid.v[j] -= (flux_v_[j + 1] - flux_v_[j]) / grid.dx;
      grid.w[j] -= (flux_w_[j + 1] - flux_w_[j]) / grid.dx;
    }
    grid.time += info.dt;
    ++grid.steps;
    return info;
  }

 private:
  InterfaceFans fans_;
  double cfl_;
  std::vector<double> flux_v_;
  std::vector<double> flux_w_;
};

inline FixedGrid glimm_step(const FixedGrid& grid, const RiemannSolver& solver, RngStream& rng,
                            double dt_max = std::numeric_limits<double>::infinity()) {
  FixedGrid next = grid;
  GlimmScheme(solver).advance(next, rng, dt_max);
  return next;
}

inline FixedGrid godunov_step(const FixedGrid& grid, const RiemannSolver& solver,
                              double dt_max = std::numeric_limits<double>::infinity()) {
  FixedGrid next = grid;
  GodunovScheme(solver).advance(next, dt_max);
  return next;
}

}  // namespace ncshock

#endif  // NCSHOCK_REFERENCE_HPP_
