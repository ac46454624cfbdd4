#include "gridmob/cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "gridmob/coverage.hpp"
#include "gridmob/csv_io.hpp"
#include "gridmob/degree_map.hpp"
#include "gridmob/distribution.hpp"
#include "gridmob/error.hpp"
#include "gridmob/grid_env.hpp"
#include "gridmob/monte_carlo.hpp"
#include "gridmob/rng.hpp"
#include "json.hpp"

namespace gridmob {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::size_t kReferenceNodeLimit = 2500;
constexpr double kFastReferenceTolerance = 1e-12;

struct Options {
  std::string config;
  std::string out;
  std::string mode = "per-trip";
  std::string sim_mode;
  bool reference = false;
  bool fast = false;
  bool edges = false;
  bool exclude_self = false;
  int rays = kDefaultRays;
  std::uint64_t trips = 1'000'000;
  std::uint64_t seed = 1;
  int snapshots = 0;
  unsigned threads = 0;
  double tv_tolerance = 0.02;
};

struct LoadedConfig {
  std::string bytes;
  GridEnvironment env;
};

LoadedConfig load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string bytes = ss.str();
  return {bytes, build_environment(parse_config(bytes))};
}

fs::path output_dir(const Options& opt) {
  if (!opt.out.empty()) return opt.out;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
  return "gridmob_out";
}

// Collects written files and emits the run manifest last.
class RunWriter {
 public:
  RunWriter(std::string subcommand, const Options& opt, const std::string& config_bytes)
      : dir_(output_dir(opt)), start_(std::chrono::steady_clock::now()) {
    manifest_["tool"] = "gridmob";
    manifest_["tool_version"] = std::string(kToolVersion);
    manifest_["subcommand"] = std::move(subcommand);
    manifest_["config_path"] = opt.config;
    manifest_["config_digest"] = "sha256:" + sha256_hex(config_bytes);
    manifest_["parameters"] = json::object();
  }

  void param(const std::string& key, json value) { manifest_["parameters"][key] = std::move(value); }
  void meta(const std::string& key, json value) { manifest_[key] = std::move(value); }

  void write(const std::string& name, std::string_view contents) {
    write_file(dir_ / name, contents);
    files_.push_back(name);
  }

  fs::path finish() {
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    manifest_["timing_s"] = seconds;
    manifest_["outputs"] = files_;
    write_file(dir_ / "manifest.json", manifest_.dump(2) + "\n");
    return dir_;
  }

 private:
  fs::path dir_;
  std::chrono::steady_clock::time_point start_;
  json manifest_;
  std::vector<std::string> files_;
};

PresenceDistribution compute_distribution(const GridEnvironment& env, const Options& opt) {
  AggregationOptions agg{parse_aggregation_mode(opt.mode), opt.edges, opt.threads};
  return opt.reference ? aggregate_distribution(env, agg) : aggregate_fast(env, agg);
}

std::string edges_csv(const GridEnvironment& env, std::span<const double> values) {
  std::string out = "ax_m,ay_m,bx_m,by_m,probability\n";
  for (EdgeIndex e = 0; e < env.edge_count(); ++e) {
    const Edge& edge = env.edges()[e];
    Point a = env.position(edge.a), b = env.position(edge.b);
    out += format_value(a.x) + ',' + format_value(a.y) + ',' + format_value(b.x) + ',' +
           format_value(b.y) + ',' + format_value(values[e]) + '\n';
  }
  return out;
}

std::string point_text(const GridEnvironment& env, NodeIndex i) {
  Point p = env.position(i);
  return "(" + format_value(p.x) + ", " + format_value(p.y) + ")";
}

int cmd_distribution(const Options& opt, std::ostream& out) {
  auto cfg = load(opt.config);
  RunWriter run("distribution", opt, cfg.bytes);
  run.param("mode", opt.mode);
  run.param("method", opt.reference ? "reference" : "fast");
  run.param("edges", opt.edges);
  run.param("threads", opt.threads);
  PresenceDistribution dist = compute_distribution(cfg.env, opt);
  run.write("distribution_matrix.csv", matrix_csv(cfg.env, dist.node));
  run.write("distribution_long.csv", long_csv(cfg.env, dist.node, "probability"));
  run.write("mask.csv", mask_csv(cfg.env));
  if (opt.edges) run.write("distribution_edges.csv", edges_csv(cfg.env, dist.edge));
  fs::path dir = run.finish();
  out << "distribution (" << opt.mode << ", " << (opt.reference ? "reference" : "fast") << ") over "
      << cfg.env.node_count() << " nodes written to " << dir.string() << "\n";
  return kExitOk;
}

void report_spacing(const GridEnvironment& env, std::ostream& err) {
  for (const auto& w : validate_zone_spacing(env)) err << "warning: " << w.message << "\n";
}

int cmd_coverage(const Options& opt, std::ostream& out, std::ostream& err) {
  auto cfg = load(opt.config);
  report_spacing(cfg.env, err);
  RunWriter run("coverage", opt, cfg.bytes);
  run.param("rays", opt.rays);
  run.param("threads", opt.threads);
  CoverageMap cov = coverage_map(cfg.env, cfg.env.radio_range(), opt.rays, opt.threads);
  run.write("coverage_matrix.csv", matrix_csv(cfg.env, cov.area));
  run.write("coverage_long.csv", long_csv(cfg.env, cov.area, "area_m2"));
  run.write("mask.csv", mask_csv(cfg.env));
  std::string diag = "x_m,y_m,case,analytic_m2,numeric_m2,relative_error\n";
  for (const auto& d : cov.diagnostics) {
    Point p = cfg.env.position(d.node);
    diag += format_value(p.x) + ',' + format_value(p.y) + ',' + std::string(to_string(d.kind)) + ',' +
            format_value(d.analytic) + ',' + format_value(d.numeric) + ',' +
            format_value(d.relative_error) + '\n';
  }
  run.write("coverage_diagnostics.csv", diag);
  run.meta("analytic_cross_checks", cov.analytic_checked);
  run.meta("analytic_discrepancies", cov.diagnostics.size());
  fs::path dir = run.finish();
  out << "coverage over " << cfg.env.node_count() << " nodes (" << opt.rays << " rays), "
      << cov.analytic_checked << " analytic cross-checks, " << cov.diagnostics.size()
      << " above 1%; written to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_degree(const Options& opt, std::ostream& out, std::ostream& err) {
  auto cfg = load(opt.config);
  report_spacing(cfg.env, err);
  const GridEnvironment& env = cfg.env;
  RunWriter run("degree", opt, cfg.bytes);
  run.param("mode", opt.mode);
  run.param("method", opt.reference ? "reference" : "fast");
  run.param("rays", opt.rays);
  run.param("exclude_self", opt.exclude_self);
  run.param("threads", opt.threads);

  PresenceDistribution dist = compute_distribution(env, opt);
  CoverageMap cov = coverage_map(env, env.radio_range(), opt.rays, opt.threads);
  DegreeMap deg = compose_degree_map(env, dist, cov, {opt.exclude_self});

  NodeIndex lo = 0, hi = 0;
  for (NodeIndex i = 1; i < env.node_count(); ++i) {
    if (deg.degree[i] < deg.degree[lo]) lo = i;
    if (deg.degree[i] > deg.degree[hi]) hi = i;
  }
  std::ostringstream summary;
  summary << "stations " << env.station_count() << "\n"
          << "radio_range_m " << format_value(env.radio_range()) << "\n"
          << "mode " << opt.mode << "\n"
          << "global_mean_degree " << format_value(deg.global_mean) << "\n"
          << "min_node_degree " << format_value(deg.degree[lo]) << " at " << point_text(env, lo) << "\n"
          << "max_node_degree " << format_value(deg.degree[hi]) << " at " << point_text(env, hi) << "\n";

  run.write("degree_matrix.csv", matrix_csv(env, deg.degree));
  run.write("degree_long.csv", long_csv(env, deg.degree, "degree"));
  run.write("density_long.csv", long_csv(env, deg.density, "stations_per_m2"));
  run.write("distribution_matrix.csv", matrix_csv(env, dist.node));
  run.write("coverage_matrix.csv", matrix_csv(env, cov.area));
  run.write("mask.csv", mask_csv(env));
  run.write("summary.txt", summary.str());
  run.meta("global_mean_degree", deg.global_mean);
  fs::path dir = run.finish();
  out << summary.str() << "written to " << dir.string() << "\n";
  return kExitOk;
}

SimulationConfig simulation_config(const Options& opt, const std::string& mode) {
  SimulationConfig sim;
  sim.trips = opt.trips;
  sim.seed = opt.seed;
  sim.mode = parse_aggregation_mode(mode);
  sim.snapshots = opt.snapshots;
  sim.threads = opt.threads;
  return sim;
}

int cmd_simulate(const Options& opt, std::ostream& out) {
  auto cfg = load(opt.config);
  const GridEnvironment& env = cfg.env;
  RunWriter run("simulate", opt, cfg.bytes);
  run.param("mode", opt.mode);
  run.param("trips", opt.trips);
  run.param("seed", opt.seed);
  run.param("snapshots", opt.snapshots);
  run.param("threads", opt.threads);
  run.meta("rng", std::string(kRngAlgorithm));

  SimulationConfig sim = simulation_config(opt, opt.mode);
  EmpiricalDistribution emp = run_occupancy(env, sim);
  run.write("occupancy_matrix.csv", matrix_csv(env, emp.node));
  run.write("occupancy_long.csv", long_csv(env, emp.node, "probability"));
  run.write("occupancy_stderr_long.csv", long_csv(env, emp.standard_error, "standard_error"));
  run.write("mask.csv", mask_csv(env));
  out << "simulated " << opt.trips << " trips (" << opt.mode << ", seed " << opt.seed << ")\n";

  if (opt.snapshots > 0) {
    PresenceDistribution dist = aggregate_fast(env, {sim.mode, false, opt.threads});
    SnapshotDegree snap = snapshot_degree(env, dist, sim, env.radio_range());
    run.write("snapshot_degree_long.csv", long_csv(env, snap.node_mean, "degree"));
    run.meta("snapshot_global_mean_degree", snap.global_mean);
    out << "snapshot global mean degree " << format_value(snap.global_mean) << " over "
        << opt.snapshots << " snapshots\n";
  }
  fs::path dir = run.finish();
  out << "written to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_validate(const Options& opt, std::ostream& out) {
  auto cfg = load(opt.config);
  const GridEnvironment& env = cfg.env;
  if (env.node_count() > kReferenceNodeLimit) {
    throw Error(ErrorCode::GridTooLargeForReference,
                std::to_string(env.node_count()) + " free nodes exceed the reference limit of " +
                    std::to_string(kReferenceNodeLimit));
  }
  const std::string sim_mode = opt.sim_mode.empty() ? opt.mode : opt.sim_mode;
  RunWriter run("validate", opt, cfg.bytes);
  run.param("mode", opt.mode);
  run.param("sim_mode", sim_mode);
  run.param("trips", opt.trips);
  run.param("seed", opt.seed);
  run.param("tv_tolerance", opt.tv_tolerance);
  run.param("threads", opt.threads);
  run.meta("rng", std::string(kRngAlgorithm));

  AggregationOptions agg{parse_aggregation_mode(opt.mode), false, opt.threads};
  PresenceDistribution fast = aggregate_fast(env, agg);
  PresenceDistribution reference = aggregate_distribution(env, agg);
  double max_delta = 0.0;
  for (std::size_t i = 0; i < fast.node.size(); ++i) {
    max_delta = std::max(max_delta, std::abs(fast.node[i] - reference.node[i]));
  }
  EmpiricalDistribution emp = run_occupancy(env, simulation_config(opt, sim_mode));
  ComparisonReport cmp = compare(fast, emp);

  const bool tv_ok = cmp.total_variation <= opt.tv_tolerance;
  const bool ref_ok = max_delta <= kFastReferenceTolerance;
  std::ostringstream report;
  report << "analytic_mode " << opt.mode << "\n"
         << "simulation_mode " << sim_mode << "\n"
         << "trips " << opt.trips << "\n"
         << "seed " << opt.seed << "\n"
         << "total_variation " << format_value(cmp.total_variation) << " (tolerance "
         << format_value(opt.tv_tolerance) << ") " << (tv_ok ? "PASS" : "FAIL") << "\n"
         << "fast_vs_reference_max_delta " << format_value(max_delta) << " (tolerance "
         << format_value(kFastReferenceTolerance) << ") " << (ref_ok ? "PASS" : "FAIL") << "\n"
         << "max_abs_delta " << format_value(cmp.max_abs_delta) << " at "
         << point_text(env, cmp.max_delta_node) << "\n";

  std::string deltas = "x_m,y_m,analytic,empirical,delta,z_score\n";
  for (NodeIndex i = 0; i < env.node_count(); ++i) {
    Point p = env.position(i);
    deltas += format_value(p.x) + ',' + format_value(p.y) + ',' + format_value(fast.node[i]) + ',' +
              format_value(emp.node[i]) + ',' + format_value(cmp.delta[i]) + ',' +
              format_value(cmp.z_score[i]) + '\n';
  }
  run.write("report.txt", report.str());
  run.write("deltas.csv", deltas);
  run.meta("total_variation", cmp.total_variation);
  run.meta("fast_vs_reference_max_delta", max_delta);
  run.finish();
  out << report.str();
  return tv_ok && ref_ok ? kExitOk : kExitFailure;
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Presence distribution, LOS coverage and mean degree of stations moving on "
               "shortest grid paths around obstacles"};
  app.name("gridmob");
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config, "Environment config (JSON)")->required();
    cmd->add_option("--out", opt.out,
                    std::string("Output directory (default: $") + kOutDirEnv + " or ./gridmob_out)");
    cmd->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
  };
  auto add_mode = [&](CLI::App* cmd) {
    cmd->add_option("--mode", opt.mode, "Aggregation mode")
        ->check(CLI::IsMember({"per-trip", "time-weighted"}));
  };
  auto add_method = [&](CLI::App* cmd) {
    auto* fast = cmd->add_flag("--fast", opt.fast, "Single backward pass per source (default)");
    auto* ref = cmd->add_flag("--reference", opt.reference, "Per-pair two-pass labelling");
    fast->excludes(ref);
  };
  auto add_rays = [&](CLI::App* cmd) {
    cmd->add_option("--rays", opt.rays, "Rays per coverage evaluation");
  };
  auto add_sim = [&](CLI::App* cmd) {
    cmd->add_option("--trips", opt.trips, "Simulated trips");
    cmd->add_option("--seed", opt.seed, "Random seed");
  };

  auto* distribution = app.add_subcommand("distribution", "Stationary presence distribution");
  add_common(distribution);
  add_mode(distribution);
  add_method(distribution);
  distribution->add_flag("--edges", opt.edges, "Also write per-edge presence");

  auto* coverage = app.add_subcommand("coverage", "Line-of-sight coverage area per node");
  add_common(coverage);
  add_rays(coverage);

  auto* degree = app.add_subcommand("degree", "Mean degree per node");
  add_common(degree);
  add_mode(degree);
  add_method(degree);
  add_rays(degree);
  degree->add_flag("--exclude-self", opt.exclude_self, "Scale density by (N-1)/N");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo occupancy (and snapshot degree)");
  add_common(simulate);
  add_mode(simulate);
  add_sim(simulate);
  simulate->add_option("--snapshots", opt.snapshots, "Connection-graph snapshots (0 = none)");

  auto* validate = app.add_subcommand("validate", "Analytic vs Monte Carlo vs reference");
  add_common(validate);
  add_mode(validate);
  add_sim(validate);
  validate->add_option("--sim-mode", opt.sim_mode, "Simulation mode (default: --mode)")
      ->check(CLI::IsMember({"per-trip", "time-weighted"}));
  validate->add_option("--tv-tol", opt.tv_tolerance, "Total-variation tolerance");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    if (*distribution) return cmd_distribution(opt, out);
    if (*coverage) return cmd_coverage(opt, out, err);
    if (*degree) return cmd_degree(opt, out, err);
    if (*simulate) return cmd_simulate(opt, out);
    if (*validate) return cmd_validate(opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_config_error(e.code()) ? kExitConfigError : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace gridmob
