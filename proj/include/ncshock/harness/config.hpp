// Run configurations, the built-in test problems and a flat key = value file
// format for them.

#ifndef NCSHOCK_HARNESS_CONFIG_HPP_
#define NCSHOCK_HARNESS_CONFIG_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncshock/model.hpp"
#include "ncshock/scheme.hpp"

namespace ncshock::harness {

enum class SchemeKind { RecNC, RecNCC, Godunov, Glimm };

inline const char* to_string(SchemeKind s) {
  switch (s) {
    case SchemeKind::RecNC: return "recnc";
    case SchemeKind::RecNCC: return "recncc";
    case SchemeKind::Godunov: return "godunov";
    case SchemeKind::Glimm: return "glimm";
  }
  return "?";
}

inline SchemeKind parse_scheme(const std::string& s) {
  if (s == "recnc") return SchemeKind::RecNC;
  if (s == "recncc" || s == "recnc+c") return SchemeKind::RecNCC;
  if (s == "godunov") return SchemeKind::Godunov;
  if (s == "glimm") return SchemeKind::Glimm;
  throw std::invalid_argument("unknown scheme '" + s + "'");
}

inline bool is_reconstruction(SchemeKind s) {
  return s == SchemeKind::RecNC || s == SchemeKind::RecNCC;
}

/// Initial data: piecewise constant (breaks, states) or the trigonometric
/// profile v = a_v sin(2 pi k_v x), w = w0 + a_w cos(2 pi k_w x).
struct InitialData {
  enum class Kind { Piecewise, Trigonometric };
  Kind kind = Kind::Piecewise;
  std::vector<double> breaks;
  std::vector<State> states;
  double v_amplitude = 0.0;
  double v_wavenumber = 1.0;
  double w_mean = 0.0;
  double w_amplitude = 0.0;
  double w_wavenumber = 1.0;

  PiecewiseConstantData piecewise() const { return {breaks, states}; }

  SmoothData smooth() const {
    const InitialData d = *this;
    return [d](double x) {
      const double two_pi = 2.0 * std::numbers::pi;
      return State{d.v_amplitude * std::sin(two_pi * d.v_wavenumber * x),
                   d.w_mean + d.w_amplitude * std::cos(two_pi * d.w_wavenumber * x)};
    };
  }

  bool is_riemann() const { return kind == Kind::Piecewise && breaks.size() == 1; }
};

struct RunConfig {
  std::string name = "custom";
  double m = 1.0;
  double beta = 2.0 / 3.0;
  SchemeKind scheme = SchemeKind::RecNC;
  SchemeConfig scheme_config;
  double x_lo = -0.5;
  double x_hi = 0.5;
  std::size_t n_cells = 200;
  double t_final = 0.1;
  std::vector<double> snapshot_times;
  Boundary boundary = Boundary::ConstantExtrapolation;
  std::uint64_t seed = 1;
  std::string output_dir = ".";
  InitialData data;

  ModelParams model() const { return ModelParams(m, beta); }
  GridSpec grid_spec() const { return {n_cells, x_lo, x_hi, boundary}; }

  /// Scheme settings as used by a run: RecNC+C switches on classical detection.
  SchemeConfig effective_scheme_config() const {
    SchemeConfig c = scheme_config;
    c.detect_classical = scheme == SchemeKind::RecNCC;
    return c;
  }

  void validate() const {
    model();
    scheme_config.validate();
    if (!(t_final > 0.0)) throw std::invalid_argument("t_final must be > 0");
    if (n_cells < 4) throw std::invalid_argument("n_cells must be >= 4");
    if (!(x_hi > x_lo)) throw std::invalid_argument("x_hi must exceed x_lo");
    for (double t : snapshot_times) {
      if (!(t >= 0.0 && t <= t_final)) {
        throw std::invalid_argument("snapshot time outside [0, t_final]");
      }
    }
    if (data.kind == InitialData::Kind::Piecewise &&
        data.states.size() != data.breaks.size() + 1) {
      throw std::invalid_argument("piecewise data needs one more state than breaks");
    }
  }
};

inline RunConfig builtin_test(const std::string& id) {
  RunConfig c;
  c.name = "test" + id;
  c.scheme_config.cfl = 0.45;
  if (id == "1") {
    c.m = 1.0;
    c.beta = 2.0 / 3.0;
    c.x_lo = -0.5;
    c.x_hi = 0.5;
    c.n_cells = 200;
    c.t_final = 0.038;
    c.data.breaks = {0.0};
    c.data.states = {{-10.0, -6.0}, {110.0, 9.0}};
  } else if (id == "2") {
    c.m = 1.0;
    c.beta = 2.0 / 3.0;
    c.x_lo = -1.0;
    c.x_hi = 1.0;
    c.n_cells = 200;
    c.t_final = 0.15;
    c.data.breaks = {0.0};
    c.data.states = {{6.0, 1.0}, {-10.0, 2.0}};
  } else if (id == "3a" || id == "3b" || id == "3c") {
    const double eps = id == "3a" ? 0.0 : id == "3b" ? 0.05 : 0.1;
    c.m = 2.0;
    c.beta = 2.0 / 3.0;
    // Wide enough on the right for the fast 2-waves to leave cleanly.
    c.x_lo = -2.0;
    c.x_hi = 3.0;
    c.n_cells = 3000;
    c.t_final = 0.4;
    c.scheme = SchemeKind::RecNCC;
    c.data.breaks = {0.0};
    c.data.states = {{1.0, 1.0 + eps}, {-11.0, -3.0}};
  } else if (id == "4") {
    c.m = 1.0;
    c.beta = 0.95;
    c.x_lo = 0.0;
    c.x_hi = 1.0;
    c.n_cells = 1000;
    c.boundary = Boundary::Periodic;
    c.t_final = 1.0;
    c.snapshot_times = {0.015, 0.06, 0.1, 1.0};
    c.data.kind = InitialData::Kind::Trigonometric;
    c.data.v_amplitude = 3.0;
    c.data.v_wavenumber = 1.0;
    c.data.w_mean = 1.0;
    c.data.w_amplitude = 3.0;
    c.data.w_wavenumber = 4.0;
  } else if (id == "5") {
    c.m = 0.05;
    c.beta = 1.0;
    c.x_lo = 0.0;
    c.x_hi = 1.0;
    c.n_cells = 2000;
    c.boundary = Boundary::Periodic;
    c.t_final = 40.0;
    c.snapshot_times = {20.0, 40.0};
    c.data.breaks = {0.3, 0.3 + 2.0 / 3.0};
    c.data.states = {{0.3, 0.4}, {0.15, -0.2}, {0.1, 0.4}};
  } else {
    throw std::invalid_argument("unknown test id '" + id + "' (expected 1, 2, 3a, 3b, 3c, 4, 5)");
  }
  return c;
}

// ---------------------------------------------------------------------------
// Flat key = value format. Reals are written with 17 significant digits so a
// file round-trips bit for bit.

namespace detail {

inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline double parse_real(const std::string& key, const std::string& s) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || s.find_first_not_of(" \t", used) != std::string::npos) {
    throw std::invalid_argument("bad number for '" + key + "': '" + s + "'");
  }
  return x;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::string join_reals(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ',';
    out += format_real(xs[i]);
  }
  return out;
}

inline std::vector<double> parse_reals(const std::string& key, const std::string& s) {
  std::vector<double> out;
  for (const std::string& item : split(s, ',')) out.push_back(parse_real(key, trim(item)));
  return out;
}

}  // namespace detail

inline std::string to_config_text(const RunConfig& c) {
  using detail::format_real;
  std::ostringstream os;
  os << "name = " << c.name << '\n';
  os << "m = " << format_real(c.m) << '\n';
  os << "beta = " << format_real(c.beta) << '\n';
  os << "scheme = " << to_string(c.scheme) << '\n';
  os << "cfl = " << format_real(c.scheme_config.cfl) << '\n';
  os << "mesh_speed_margin = " << format_real(c.scheme_config.mesh_speed_margin) << '\n';
  os << "reconstruct = " << (c.scheme_config.reconstruct ? "true" : "false") << '\n';
  const char* policy = c.scheme_config.mesh_sign_policy == MeshSignPolicy::Alternate ? "alternate"
                       : c.scheme_config.mesh_sign_policy == MeshSignPolicy::FixedNegative
                           ? "negative"
                           : "positive";
  os << "mesh_sign = " << policy << '\n';
  os << "x_lo = " << format_real(c.x_lo) << '\n';
  os << "x_hi = " << format_real(c.x_hi) << '\n';
  os << "cells = " << c.n_cells << '\n';
  os << "t_final = " << format_real(c.t_final) << '\n';
  os << "snapshots = " << detail::join_reals(c.snapshot_times) << '\n';
  os << "boundary = " << (c.boundary == Boundary::Periodic ? "periodic" : "extrapolate") << '\n';
  os << "seed = " << c.seed << '\n';
  os << "output_dir = " << c.output_dir << '\n';
  if (c.data.kind == InitialData::Kind::Piecewise) {
    os << "data = piecewise\n";
    os << "breaks = " << detail::join_reals(c.data.breaks) << '\n';
    os << "states = ";
    for (std::size_t i = 0; i < c.data.states.size(); ++i) {
      if (i > 0) os << ';';
      os << format_real(c.data.states[i].v) << ',' << format_real(c.data.states[i].w);
    }
    os << '\n';
  } else {
    os << "data = trigonometric\n";
    os << "v_amplitude = " << format_real(c.data.v_amplitude) << '\n';
    os << "v_wavenumber = " << format_real(c.data.v_wavenumber) << '\n';
    os << "w_mean = " << format_real(c.data.w_mean) << '\n';
    os << "w_amplitude = " << format_real(c.data.w_amplitude) << '\n';
    os << "w_wavenumber = " << format_real(c.data.w_wavenumber) << '\n';
  }
  return os.str();
}

/// Applies one key = value setting to a config.
inline void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  using detail::parse_real;
  if (key == "name") {
    c.name = value;
  } else if (key == "m") {
    c.m = parse_real(key, value);
  } else if (key == "beta") {
    c.beta = parse_real(key, value);
  } else if (key == "scheme") {
    c.scheme = parse_scheme(value);
  } else if (key == "cfl") {
    c.scheme_config.cfl = parse_real(key, value);
  } else if (key == "mesh_speed_margin") {
    c.scheme_config.mesh_speed_margin = parse_real(key, value);
  } else if (key == "reconstruct") {
    if (value != "true" && value != "false") throw std::invalid_argument("reconstruct: true|false");
    c.scheme_config.reconstruct = value == "true";
  } else if (key == "mesh_sign") {
    if (value == "alternate") {
      c.scheme_config.mesh_sign_policy = MeshSignPolicy::Alternate;
    } else if (value == "negative") {
      c.scheme_config.mesh_sign_policy = MeshSignPolicy::FixedNegative;
    } else if (value == "positive") {
      c.scheme_config.mesh_sign_policy = MeshSignPolicy::FixedPositive;
    } else {
      throw std::invalid_argument("mesh_sign: alternate|negative|positive");
    }
  } else if (key == "x_lo") {
    c.x_lo = parse_real(key, value);
  } else if (key == "x_hi") {
    c.x_hi = parse_real(key, value);
  } else if (key == "cells") {
    const double n = parse_real(key, value);
    if (!(n >= 0.0) || n != std::floor(n)) throw std::invalid_argument("cells must be an integer");
    c.n_cells = static_cast<std::size_t>(n);
  } else if (key == "t_final") {
    c.t_final = parse_real(key, value);
  } else if (key == "snapshots") {
    c.snapshot_times = detail::parse_reals(key, value);
  } else if (key == "boundary") {
    if (value == "periodic") {
      c.boundary = Boundary::Periodic;
    } else if (value == "extrapolate") {
      c.boundary = Boundary::ConstantExtrapolation;
    } else {
      throw std::invalid_argument("boundary: periodic|extrapolate");
    }
  } else if (key == "seed") {
    c.seed = std::stoull(value);
  } else if (key == "output_dir") {
    c.output_dir = value;
  } else if (key == "data") {
    if (value == "piecewise") {
      c.data.kind = InitialData::Kind::Piecewise;
    } else if (value == "trigonometric") {
      c.data.kind = InitialData::Kind::Trigonometric;
    } else {
      throw std::invalid_argument("data: piecewise|trigonometric");
    }
  } else if (key == "breaks") {
    c.data.breaks = detail::parse_reals(key, value);
  } else if (key == "states") {
    c.data.states.clear();
    for (const std::string& pair : detail::split(value, ';')) {
      const std::vector<double> vw = detail::parse_reals(key, pair);
      if (vw.size() != 2) throw std::invalid_argument("states: expected v,w;v,w;...");
      c.data.states.push_back({vw[0], vw[1]});
    }
  } else if (key == "v_amplitude") {
    c.data.v_amplitude = parse_real(key, value);
  } else if (key == "v_wavenumber") {
    c.data.v_wavenumber = parse_real(key, value);
  } else if (key == "w_mean") {
    c.data.w_mean = parse_real(key, value);
  } else if (key == "w_amplitude") {
    c.data.w_amplitude = parse_real(key, value);
  } else if (key == "w_wavenumber") {
    c.data.w_wavenumber = parse_real(key, value);
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

/// Parses config text on top of `base`. Blank lines and '#' comments are skipped.
inline RunConfig parse_config_text(const std::string& text, RunConfig base = {}) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected key = value");
    }
    try {
      apply_setting(base, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

inline void save_config(const RunConfig& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file " + path);
  out << to_config_text(c);
}

}  // namespace ncshock::harness

#endif  // NCSHOCK_HARNESS_CONFIG_HPP_
