// Repeated seeded Glimm runs of one configuration: first shock position and
// whether two sign changes of w sit close together.

#ifndef NCSHOCK_HARNESS_HISTOGRAM_HPP_
#define NCSHOCK_HARNESS_HISTOGRAM_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "ncshock/harness/analysis.hpp"
#include "ncshock/harness/run.hpp"

namespace ncshock::harness {

struct Realization {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  /// Smallest sign-change position reduced to [x_lo, x_hi); NaN without one.
  double first_shock = std::numeric_limits<double>::quiet_NaN();
  std::size_t sign_changes = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  bool close_pair = false;
};

struct HistogramOptions {
  std::size_t realizations = 100;
  std::uint64_t seed_base = 1;
  /// Two neighbouring sign changes nearer than this form a close pair.
  double close_pair_gap = 0.05;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Sign-change positions mapped into the periodic window, sorted.
inline std::vector<double> wrapped_positions(const Snapshot& s, double x_lo, double x_hi) {
  std::vector<double> xs = shock_positions(s);
  const double len = x_hi - x_lo;
  for (double& x : xs) x = x - std::floor((x - x_lo) / len) * len;
  std::sort(xs.begin(), xs.end());
  return xs;
}

inline Realization analyse_realization(const Snapshot& s, double x_lo, double x_hi,
                                       double close_pair_gap) {
  Realization r;
  const std::vector<double> xs = wrapped_positions(s, x_lo, x_hi);
  r.sign_changes = cyclic_sign_changes(s.w);
  if (!xs.empty()) r.first_shock = xs.front();
  const double len = x_hi - x_lo;
  for (std::size_t i = 0; i < xs.size() && xs.size() > 1; ++i) {
    const double next = i + 1 < xs.size() ? xs[i + 1] : xs.front() + len;
    r.min_gap = std::min(r.min_gap, next - xs[i]);
  }
  r.close_pair = r.sign_changes >= 4 && r.min_gap < close_pair_gap;
  return r;
}

/// Runs the realizations on a pool of threads. Results come back ordered by
/// index whatever the scheduling; `progress` is called as each one finishes.
inline std::vector<Realization> histogram_study(
    RunConfig config, const HistogramOptions& opt,
    const std::function<void(const Realization&)>& progress = {}) {
  config.scheme = SchemeKind::Glimm;
  config.snapshot_times.clear();
  config.validate();
  std::vector<Realization> out(opt.realizations);
  std::size_t next = 0;
  std::mutex mutex;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      std::size_t i = 0;
      {
        std::lock_guard<std::mutex> lock(mutex);
        if (next >= opt.realizations || failure) return;
        i = next++;
      }
      try {
        RunConfig c = config;
        c.seed = opt.seed_base + i;
        const RunResult res = run(c, {}, 0);
        Realization r =
            analyse_realization(res.final_snapshot(), c.x_lo, c.x_hi, opt.close_pair_gap);
        r.index = i;
        r.seed = c.seed;
        std::lock_guard<std::mutex> lock(mutex);
        out[i] = r;
        if (progress) progress(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  unsigned n_threads = opt.threads > 0 ? opt.threads : std::thread::hardware_concurrency();
  n_threads = std::max(1u, std::min<unsigned>(n_threads, static_cast<unsigned>(opt.realizations)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

inline std::size_t close_pair_count(const std::vector<Realization>& rs) {
  return static_cast<std::size_t>(
      std::count_if(rs.begin(), rs.end(), [](const Realization& r) { return r.close_pair; }));
}

inline std::string histogram_csv(const std::vector<Realization>& rs) {
  std::string out = "realization,seed,first_shock,sign_changes,min_gap,close_pair\n";
  char buf[160];
  for (const Realization& r : rs) {
    std::snprintf(buf, sizeof buf, "%zu,%llu,%.17g,%zu,%.17g,%d\n", r.index,
                  static_cast<unsigned long long>(r.seed), r.first_shock, r.sign_changes,
                  r.min_gap, r.close_pair ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace ncshock::harness

#endif  // NCSHOCK_HARNESS_HISTOGRAM_HPP_
