// Command-line front end: single runs, Riemann fans, scheme comparisons and
// the Glimm histogram study.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncshock/harness/analysis.hpp"
#include "ncshock/harness/config.hpp"
#include "ncshock/harness/histogram.hpp"
#include "ncshock/harness/io.hpp"
#include "ncshock/harness/run.hpp"
#include "ncshock/riemann.hpp"

namespace fs = std::filesystem;
using namespace ncshock;
using namespace ncshock::harness;

namespace {

State parse_state(const std::string& text) {
  std::vector<double> xs = harness::detail::parse_reals("state", text);
  if (xs.size() != 2) throw std::invalid_argument("expected a state as v,w but got '" + text + "'");
  return {xs[0], xs[1]};
}

struct Overrides {
  std::optional<std::string> scheme;
  std::optional<std::size_t> cells;
  std::optional<double> cfl;
  std::optional<double> t_final;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

void add_overrides(CLI::App* app, Overrides& o) {
  app->add_option("--scheme", o.scheme, "recnc, recncc, godunov or glimm");
  app->add_option("--cells", o.cells, "number of cells")->check(CLI::PositiveNumber);
  app->add_option("--cfl", o.cfl, "CFL number");
  app->add_option("--t-final", o.t_final, "final time");
  app->add_option("--seed", o.seed, "Glimm seed");
  app->add_option("--out", o.out, "output directory");
}

void apply(RunConfig& c, const Overrides& o) {
  if (o.scheme) c.scheme = parse_scheme(*o.scheme);
  if (o.cells) c.n_cells = *o.cells;
  if (o.cfl) c.scheme_config.cfl = *o.cfl;
  if (o.t_final) {
    c.t_final = *o.t_final;
    std::erase_if(c.snapshot_times, [&](double t) { return t > c.t_final; });
  }
  if (o.seed) c.seed = *o.seed;
  if (o.out) c.output_dir = *o.out;
}

RunConfig base_config(const std::string& test, const std::string& file) {
  if (!file.empty()) return load_config(file);
  if (!test.empty()) return builtin_test(test);
  throw std::invalid_argument("give --test or --config");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonclassical shock solvers for the cubic elastodynamics system"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "run one scheme and write snapshots");
  std::string run_test, run_file;
  Overrides run_over;
  run_cmd->add_option("--test", run_test, "built-in test: 1, 2, 3a, 3b, 3c, 4, 5");
  run_cmd->add_option("--config", run_file, "config file (key = value)");
  add_overrides(run_cmd, run_over);

  // riemann
  auto* rp_cmd = app.add_subcommand("riemann", "solve a Riemann problem, print the fan as JSON");
  std::string rp_left, rp_right;
  double rp_m = 1.0, rp_beta = 2.0 / 3.0;
  std::optional<double> rp_sample;
  rp_cmd->add_option("--left", rp_left, "left state v,w")->required();
  rp_cmd->add_option("--right", rp_right, "right state v,w")->required();
  rp_cmd->add_option("--m", rp_m, "stress coefficient m");
  rp_cmd->add_option("--beta", rp_beta, "kinetic slope beta");
  rp_cmd->add_option("--sample", rp_sample, "also report the state on the ray x/t = XI");

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "run several schemes, write aligned CSVs");
  std::string cmp_test, cmp_file, cmp_schemes = "recnc,recncc,godunov,glimm";
  Overrides cmp_over;
  cmp_cmd->add_option("--test", cmp_test, "built-in test id");
  cmp_cmd->add_option("--config", cmp_file, "config file");
  cmp_cmd->add_option("--schemes", cmp_schemes, "comma separated scheme list");
  std::optional<std::size_t> cmp_refine;
  std::uint64_t cmp_ref_seed = 1;
  cmp_cmd->add_option("--reference-refine", cmp_refine,
                      "Glimm reference on a grid this many times finer (default 8 for "
                      "non-Riemann data, 0 for none)");
  cmp_cmd->add_option("--reference-seed", cmp_ref_seed, "seed of the Glimm reference");
  add_overrides(cmp_cmd, cmp_over);

  // histogram
  auto* hist_cmd = app.add_subcommand("histogram", "seeded Glimm realizations of one test");
  std::string hist_test = "5";
  std::size_t hist_n = 100;
  std::uint64_t hist_seed = 1;
  double hist_time = 20.0, hist_gap = 0.05;
  unsigned hist_threads = 0;
  std::optional<std::size_t> hist_cells;
  std::string hist_out = ".";
  hist_cmd->add_option("--test", hist_test, "built-in test id");
  hist_cmd->add_option("--n", hist_n, "number of realizations");
  hist_cmd->add_option("--seed-base", hist_seed, "seed of the first realization");
  hist_cmd->add_option("--time", hist_time, "observation time");
  hist_cmd->add_option("--gap", hist_gap, "largest distance of a close pair of shocks");
  hist_cmd->add_option("--threads", hist_threads, "worker threads (0: all cores)");
  hist_cmd->add_option("--cells", hist_cells, "number of cells");
  hist_cmd->add_option("--out", hist_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      RunConfig c = base_config(run_test, run_file);
      apply(c, run_over);
      const RunResult res = run(c);
      for (const fs::path& p : write_run(c, res)) std::cout << p.string() << '\n';
      std::fprintf(stderr, "%s: %zu steps, %.3f s, mass drift v %.3g w %.3g\n",
                   res.meta.scheme.c_str(), res.meta.steps, res.meta.wall_seconds,
                   res.meta.relative_drift_v(), res.meta.relative_drift_w());
    } else if (*rp_cmd) {
      const RiemannSolver solver(ModelParams(rp_m, rp_beta));
      const WaveFan fan = solver.solve(parse_state(rp_left), parse_state(rp_right));
      nlohmann::json j = to_json(fan);
      if (rp_sample) {
        const State u = solver.sample(fan, *rp_sample);
        j["sample"] = {{"xi", *rp_sample}, {"state", {u.v, u.w}}};
      }
      std::cout << j.dump(2) << '\n';
    } else if (*cmp_cmd) {
      RunConfig base = base_config(cmp_test, cmp_file);
      apply(base, cmp_over);
      const GridSpec target = base.grid_spec();
      std::vector<std::string> names;
      std::vector<RunResult> results;
      for (const std::string& s : harness::detail::split(cmp_schemes, ',')) {
        RunConfig c = base;
        c.scheme = parse_scheme(harness::detail::trim(s));
        names.push_back(to_string(c.scheme));
        results.push_back(run(c));
        std::fprintf(stderr, "%s: %zu steps, %.3f s\n", names.back().c_str(),
                     results.back().meta.steps, results.back().meta.wall_seconds);
      }
      const std::size_t refine = cmp_refine.value_or(base.data.is_riemann() ? 0 : 8);
      if (refine > 0) {
        RunConfig c = base;
        c.scheme = SchemeKind::Glimm;
        c.n_cells = base.n_cells * refine;
        c.seed = cmp_ref_seed;
        names.push_back("glimm_x" + std::to_string(refine));
        results.push_back(run(c));
        std::fprintf(stderr, "%s (seed %llu): %zu steps, %.3f s\n", names.back().c_str(),
                     static_cast<unsigned long long>(c.seed), results.back().meta.steps,
                     results.back().meta.wall_seconds);
      }
      std::vector<double> x(target.n_cells);
      for (std::size_t j = 0; j < x.size(); ++j) {
        x[j] = target.x_lo + (static_cast<double>(j) + 0.5) * target.dx();
      }
      const std::size_t n_snap = results.front().snapshots.size();
      for (std::size_t k = 0; k < n_snap; ++k) {
        std::vector<FieldPair> fields;
        std::vector<std::string> cols = names;
        for (const RunResult& r : results) {
          fields.push_back(resample_to_fixed_grid(r.snapshots[k], target));
        }
        const double t = results.front().snapshots[k].time;
        if (base.data.is_riemann()) {
          const ModelParams p = base.model();
          const WaveFan fan = solve_riemann(p, base.data.states[0], base.data.states[1]);
          FieldPair exact;
          for (std::size_t j = 0; j < target.n_cells; ++j) {
            const double a = target.x_lo + static_cast<double>(j) * target.dx();
            const State u = fan_average(p, fan, t, base.data.breaks[0], a, a + target.dx());
            exact.v.push_back(u.v);
            exact.w.push_back(u.w);
          }
          fields.push_back(exact);
          cols.push_back("exact");
        }
        std::vector<const std::vector<double>*> vs, ws;
        for (const FieldPair& f : fields) {
          vs.push_back(&f.v);
          ws.push_back(&f.w);
        }
        const fs::path path =
            fs::path(base.output_dir) / (base.name + "_compare_t" + time_tag(t) + ".csv");
        write_text(path, aligned_csv(x, cols, vs, ws));
        std::cout << path.string() << '\n';
      }
    } else if (*hist_cmd) {
      RunConfig c = builtin_test(hist_test);
      c.t_final = hist_time;
      if (hist_cells) c.n_cells = *hist_cells;
      HistogramOptions opt;
      opt.realizations = hist_n;
      opt.seed_base = hist_seed;
      opt.close_pair_gap = hist_gap;
      opt.threads = hist_threads;
      const auto rs = histogram_study(c, opt, [](const Realization& r) {
        std::fprintf(stderr, "realization %zu seed %llu: first shock %.6f, %zu sign changes%s\n",
                     r.index, static_cast<unsigned long long>(r.seed), r.first_shock,
                     r.sign_changes, r.close_pair ? ", close pair" : "");
      });
      const fs::path path = fs::path(hist_out) / (c.name + "_histogram.csv");
      write_text(path, histogram_csv(rs));
      std::cout << path.string() << '\n';
      std::fprintf(stderr, "close pairs: %zu of %zu\n", close_pair_count(rs), rs.size());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
