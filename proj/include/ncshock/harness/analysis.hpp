// Post-processing of snapshots: projection onto a fixed grid, L1 errors
// against an exact solution, shock location and spike diagnostics.

#ifndef NCSHOCK_HARNESS_ANALYSIS_HPP_
#define NCSHOCK_HARNESS_ANALYSIS_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "ncshock/harness/run.hpp"
#include "ncshock/riemann.hpp"

namespace ncshock::harness {

struct FieldPair {
  std::vector<double> v;
  std::vector<double> w;
};

namespace detail {

// Integral of a piecewise-constant field from the snapshot's left edge to x.
// Periodic snapshots repeat; others extend their end cells.
class CellIntegral {
 public:
  CellIntegral(const Snapshot& s, const std::vector<double>& u)
      : s_(s), u_(u), prefix_(u.size() + 1, 0.0) {
    for (std::size_t j = 0; j < u.size(); ++j) prefix_[j + 1] = prefix_[j] + u[j] * s.dx;
  }

  double operator()(double x) const {
    const auto n = static_cast<double>(u_.size());
    double pos = (x - s_.left_edge) / s_.dx;
    double base = 0.0;
    if (s_.boundary == Boundary::Periodic) {
      const double turns = std::floor(pos / n);
      pos -= turns * n;
      base = turns * prefix_.back();
    } else if (pos < 0.0) {
      return pos * s_.dx * u_.front();
    } else if (pos >= n) {
      return prefix_.back() + (pos - n) * s_.dx * u_.back();
    }
    auto j = static_cast<std::size_t>(pos);
    if (j >= u_.size()) j = u_.size() - 1;
    return base + prefix_[j] + (pos - static_cast<double>(j)) * s_.dx * u_[j];
  }

 private:
  const Snapshot& s_;
  const std::vector<double>& u_;
  std::vector<double> prefix_;
};

}  // namespace detail

/// Overlap-weighted cell means of the snapshot on the target grid.
inline FieldPair resample_to_fixed_grid(const Snapshot& s, const GridSpec& target) {
  const detail::CellIntegral iv(s, s.v);
  const detail::CellIntegral iw(s, s.w);
  const double dx = target.dx();
  FieldPair out;
  out.v.resize(target.n_cells);
  out.w.resize(target.n_cells);
  double a = target.x_lo;
  double fv = iv(a);
  double fw = iw(a);
  for (std::size_t j = 0; j < target.n_cells; ++j) {
    const double b = target.x_lo + static_cast<double>(j + 1) * dx;
    const double gv = iv(b);
    const double gw = iw(b);
    out.v[j] = (gv - fv) / (b - a);
    out.w[j] = (gw - fw) / (b - a);
    a = b;
    fv = gv;
    fw = gw;
  }
  return out;
}

struct L1Error {
  double v = 0.0;
  double w = 0.0;
};

/// Exact mean of the reference solution over [a, b].
using CellAverager = std::function<State(double a, double b)>;

inline L1Error l1_error(const Snapshot& s, const CellAverager& exact) {
  L1Error e;
  for (std::size_t j = 0; j < s.n_cells(); ++j) {
    const double a = s.left_edge + static_cast<double>(j) * s.dx;
    const State u = exact(a, a + s.dx);
    e.v += std::abs(s.v[j] - u.v) * s.dx;
    e.w += std::abs(s.w[j] - u.w) * s.dx;
  }
  return e;
}

/// L1 error against the self-similar solution of a Riemann problem centred at x0.
inline L1Error l1_error(const Snapshot& s, const ModelParams& p, const WaveFan& fan, double x0) {
  return l1_error(s, [&](double a, double b) { return fan_average(p, fan, s.time, x0, a, b); });
}

/// Number of sign changes of w along the cells, zeros skipped. The periodic
/// wrap is not counted, so a periodic field can give an odd count.
inline std::size_t sign_changes(const std::vector<double>& w) {
  std::size_t count = 0;
  double last = 0.0;
  for (double x : w) {
    if (x == 0.0) continue;
    if (last != 0.0 && (x > 0.0) != (last > 0.0)) ++count;
    last = x;
  }
  return count;
}

/// Sign changes counted around the periodic domain (always even).
inline std::size_t cyclic_sign_changes(const std::vector<double>& w) {
  std::size_t count = sign_changes(w);
  double first = 0.0;
  double last = 0.0;
  for (double x : w) {
    if (x != 0.0) {
      if (first == 0.0) first = x;
      last = x;
    }
  }
  if (first != 0.0 && (first > 0.0) != (last > 0.0)) ++count;
  return count;
}

/// A sharp transition of w: a maximal run of interfaces whose jump exceeds a
/// threshold. `cells` counts the cells strictly inside the run.
struct Front {
  double position = 0.0;
  double w_left = 0.0;
  double w_right = 0.0;
  std::size_t first_cell = 0;
  std::size_t cells = 0;
};

/// Fronts located by mass balance: the run's cells are split between the
/// two flanking values so that their total is preserved.
inline std::vector<Front> fronts(const Snapshot& s, double jump_threshold) {
  std::vector<Front> out;
  const std::size_t n = s.n_cells();
  std::size_t k = 0;
  while (k + 1 < n) {
    if (std::abs(s.w[k + 1] - s.w[k]) <= jump_threshold) {
      ++k;
      continue;
    }
    std::size_t end = k;
    while (end + 2 < n && std::abs(s.w[end + 2] - s.w[end + 1]) > jump_threshold) ++end;
    Front f;
    f.w_left = s.w[k];
    f.w_right = s.w[end + 1];
    f.first_cell = k + 1;
    f.cells = end - k;
    double offset = 0.0;
    if (f.w_left != f.w_right) {
      for (std::size_t j = k + 1; j <= end; ++j) {
        offset += (s.w[j] - f.w_right) / (f.w_left - f.w_right);
      }
    }
    f.position = s.left_edge + (static_cast<double>(k + 1) + offset) * s.dx;
    out.push_back(f);
    k = end + 1;
  }
  return out;
}

/// Positions where w changes sign, each refined inside the steepest pair of
/// cells around the crossing.
inline std::vector<double> shock_positions(const Snapshot& s) {
  std::vector<double> out;
  const std::size_t n = s.n_cells();
  std::size_t prev = n;
  for (std::size_t j = 0; j < n; ++j) {
    if (s.w[j] == 0.0) continue;
    if (prev != n && (s.w[j] > 0.0) != (s.w[prev] > 0.0)) {
      // Steepest interface between prev and j, widened by one cell each side.
      const std::size_t lo = prev > 0 ? prev - 1 : 0;
      const std::size_t hi = std::min(n - 1, j + 1);
      std::size_t k = lo;
      for (std::size_t i = lo; i < hi; ++i) {
        if (std::abs(s.w[i + 1] - s.w[i]) > std::abs(s.w[k + 1] - s.w[k])) k = i;
      }
      double x = s.left_edge + static_cast<double>(k + 1) * s.dx;
      // A single intermediate cell next to the steep pair gives a sub-cell estimate.
      for (std::size_t c : {k, k + 1}) {
        if (c == 0 || c + 1 >= n) continue;
        const double wl = s.w[c - 1];
        const double wr = s.w[c + 1];
        const double wc = s.w[c];
        if ((wc - wl) * (wc - wr) < 0.0) {
          x = s.left_edge + (static_cast<double>(c) + (wc - wr) / (wl - wr)) * s.dx;
          break;
        }
      }
      out.push_back(x);
    }
    prev = j;
  }
  return out;
}

/// Cells of w outside the band spanned by two plateau values.
struct SpikeReport {
  std::size_t width_cells = 0;
  double peak = 0.0;
  double height = 0.0;
  double position = 0.0;
};

inline SpikeReport spike_diagnostics(const Snapshot& s, double w_plateau_a, double w_plateau_b,
                                     double tolerance = 1e-6) {
  const double lo = std::min(w_plateau_a, w_plateau_b) - tolerance;
  const double hi = std::max(w_plateau_a, w_plateau_b) + tolerance;
  SpikeReport r;
  for (std::size_t j = 0; j < s.n_cells(); ++j) {
    const double x = s.w[j];
    if (x >= lo && x <= hi) continue;
    ++r.width_cells;
    const double dev = x > hi ? x - (hi - tolerance) : (lo + tolerance) - x;
    if (dev > r.height) {
      r.height = dev;
      r.peak = x;
      r.position = s.x_center(j);
    }
  }
  return r;
}

}  // namespace ncshock::harness

#endif  // NCSHOCK_HARNESS_ANALYSIS_HPP_
