// CSV snapshots and JSON metadata. Needs nlohmann json.hpp on the include path.

#ifndef NCSHOCK_HARNESS_IO_HPP_
#define NCSHOCK_HARNESS_IO_HPP_

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncshock/harness/config.hpp"
#include "ncshock/harness/run.hpp"
#include "ncshock/riemann.hpp"

namespace ncshock::harness {

inline std::string snapshot_csv(const Snapshot& s) {
  std::string out = "x_center,v,w\n";
  char buf[96];
  for (std::size_t j = 0; j < s.n_cells(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.x_center(j), s.v[j], s.w[j]);
    out += buf;
  }
  return out;
}

/// Columns x_center followed by v_<name>, w_<name> for each field set.
inline std::string aligned_csv(const std::vector<double>& x_center,
                               const std::vector<std::string>& names,
                               const std::vector<const std::vector<double>*>& v,
                               const std::vector<const std::vector<double>*>& w) {
  std::string out = "x_center";
  for (const std::string& n : names) out += ",v_" + n + ",w_" + n;
  out += '\n';
  char buf[40];
  for (std::size_t j = 0; j < x_center.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", x_center[j]);
    out += buf;
    for (std::size_t k = 0; k < names.size(); ++k) {
      std::snprintf(buf, sizeof buf, ",%.17g", (*v[k])[j]);
      out += buf;
      std::snprintf(buf, sizeof buf, ",%.17g", (*w[k])[j]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

inline nlohmann::json to_json(const ElementaryWave& wave) {
  return {{"family", wave.family},
          {"kind", to_string(wave.kind)},
          {"left", {wave.left.v, wave.left.w}},
          {"right", {wave.right.v, wave.right.w}},
          {"speed_lo", wave.speed_lo},
          {"speed_hi", wave.speed_hi}};
}

inline nlohmann::json to_json(const WaveFan& fan) {
  nlohmann::json waves = nlohmann::json::array();
  for (const ElementaryWave& wave : fan.waves()) waves.push_back(to_json(wave));
  return {{"left", {fan.left_data.v, fan.left_data.w}},
          {"right", {fan.right_data.v, fan.right_data.w}},
          {"middle", {fan.middle.v, fan.middle.w}},
          {"waves", waves}};
}

inline nlohmann::json to_json(const RunMetadata& m) {
  nlohmann::json series = nlohmann::json::array();
  for (const MassSample& s : m.mass_series) series.push_back({s.time, s.v, s.w});
  return {{"name", m.name},
          {"scheme", m.scheme},
          {"m", m.m},
          {"beta", m.beta},
          {"cells", m.n_cells},
          {"cfl", m.cfl},
          {"seed", m.seed},
          {"rng", m.rng},
          {"steps", m.steps},
          {"dt", {{"min", m.dt_min}, {"max", m.dt_max}, {"mean", m.dt_mean}}},
          {"wall_seconds", m.wall_seconds},
          {"mass",
           {{"initial", {m.mass_initial.v, m.mass_initial.w}},
            {"final", {m.mass_final.v, m.mass_final.w}},
            {"relative_drift", {m.relative_drift_v(), m.relative_drift_w()}},
            {"series_columns", {"time", "v", "w"}},
            {"series", series}}}};
}

inline std::string time_tag(double t) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

/// Writes one CSV per snapshot plus a JSON sidecar; returns the written paths.
inline std::vector<std::filesystem::path> write_run(const RunConfig& config,
                                                    const RunResult& result) {
  const std::filesystem::path dir(config.output_dir);
  const std::string stem = config.name + "_" + to_string(config.scheme);
  std::vector<std::filesystem::path> written;
  nlohmann::json files = nlohmann::json::array();
  for (const Snapshot& s : result.snapshots) {
    const std::string file = stem + "_t" + time_tag(s.time) + ".csv";
    write_text(dir / file, snapshot_csv(s));
    written.push_back(dir / file);
    files.push_back({{"time", s.time}, {"left_edge", s.left_edge}, {"dx", s.dx}, {"file", file}});
  }
  nlohmann::json meta = to_json(result.meta);
  meta["snapshots"] = files;
  meta["config"] = to_config_text(config);
  write_text(dir / (stem + ".json"), meta.dump(2) + "\n");
  written.push_back(dir / (stem + ".json"));
  return written;
}

}  // namespace ncshock::harness

#endif  // NCSHOCK_HARNESS_IO_HPP_
