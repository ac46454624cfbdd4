// Acceptance checks: one PASS/FAIL line per criterion; exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "gridmob/cli.hpp"
#include "gridmob/coverage.hpp"
#include "gridmob/degree_map.hpp"
#include "gridmob/distribution.hpp"
#include "gridmob/error.hpp"
#include "gridmob/monte_carlo.hpp"
#include "gridmob/path_count.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace gridmob;
using gridmob::testing::grid;
using gridmob::testing::grid_config;
using gridmob::testing::node_blocker;
using std::numbers::pi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first few failures of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) detail_ += (detail_.empty() ? "" : "; ") + what;
  }
  void note(const std::string& text) { notes_ += (notes_.empty() ? "" : ", ") + text; }
  Outcome outcome() const {
    std::string d = notes_;
    if (failures_ > 0) {
      d += (d.empty() ? "" : "; ") + std::to_string(failures_) + " failure(s): " + detail_;
    }
    return {failures_ == 0, d};
  }

 private:
  int failures_ = 0;
  std::string detail_;
  std::string notes_;
};

std::string fmt(double v, int precision = 6) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

std::string tmp_dir(const std::string& name) {
  fs::path dir = fs::path(GRIDMOB_ACCEPTANCE_TMP) / name;
  fs::remove_all(dir);
  return dir.string();
}

std::string config(const std::string& name) { return std::string(GRIDMOB_CONFIG_DIR) + "/" + name; }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> read_matrix(const fs::path& path) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(slurp(path));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

// Pascal's triangle: number of monotone lattice paths with dx, dy steps.
mpz_class lattice_paths(int dx, int dy) {
  static std::vector<std::vector<mpz_class>> table;
  if (table.empty()) {
    table.assign(64, std::vector<mpz_class>(64, 1));
    for (int i = 1; i < 64; ++i) {
      for (int j = 1; j < 64; ++j) table[i][j] = table[i - 1][j] + table[i][j - 1];
    }
  }
  return table[std::abs(dx)][std::abs(dy)];
}

// Hop distances by breadth-first search.
std::vector<int> hop_distances(const GridEnvironment& env, NodeIndex s) {
  std::vector<int> dist(env.node_count(), -1);
  std::vector<NodeIndex> queue{s};
  dist[s] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeIndex u = queue[head];
    for (const Neighbor& nb : env.neighbors(env.node(u))) {
      NodeIndex v = env.require_index(nb.node);
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

// All s-t walks of exactly `length` hops that never exceed the remaining
// budget; on a unit-cost lattice these are the shortest paths.
void enumerate(const GridEnvironment& env, NodeIndex u, NodeIndex t, int budget,
               std::vector<NodeIndex>& path, const std::function<void(const std::vector<NodeIndex>&)>& emit) {
  if (u == t) {
    emit(path);
    return;
  }
  NodeId target = env.node(t);
  for (const Neighbor& nb : env.neighbors(env.node(u))) {
    int manhattan = std::abs(nb.node.col - target.col) + std::abs(nb.node.row - target.row);
    if (manhattan > budget - 1) continue;
    NodeIndex v = env.require_index(nb.node);
    path.push_back(v);
    enumerate(env, v, t, budget - 1, path, emit);
    path.pop_back();
  }
}

// 1. Closed-form path counts on an empty 8 x 8 grid.
Outcome criterion_closed_form() {
  Check check;
  auto env = grid(8, 8);
  auto start = Clock::now();
  std::size_t pairs = 0;
  for (NodeIndex s = 0; s < env.node_count(); ++s) {
    auto dag = single_source_dag(env, s);
    for (NodeIndex t = 0; t < env.node_count(); ++t) {
      if (s == t) continue;
      auto counts = through_counts(dag, t);
      NodeId a = env.node(s), b = env.node(t);
      check.expect(counts.path_count == lattice_paths(a.col - b.col, a.row - b.row),
                   "pair " + std::to_string(s) + "->" + std::to_string(t));
      ++pairs;
    }
  }
  double elapsed = seconds_since(start);
  check.expect(pairs == 4032, "pair count " + std::to_string(pairs));
  check.expect(elapsed < 5.0, "runtime " + fmt(elapsed) + " s");
  check.note(std::to_string(pairs) + " pairs in " + fmt(elapsed, 3) + " s");
  return check.outcome();
}

// 2. tag2(n) = N(s, n) N(n, t) on an empty 6 x 6 grid.
Outcome criterion_factorization() {
  Check check;
  auto env = grid(6, 6);
  std::size_t triples = 0;
  for (NodeIndex s = 0; s < env.node_count(); ++s) {
    auto dag = single_source_dag(env, s);
    for (NodeIndex t = 0; t < env.node_count(); ++t) {
      auto counts = through_counts(dag, t);
      NodeId a = env.node(s), b = env.node(t);
      for (NodeIndex n = 0; n < env.node_count(); ++n) {
        NodeId c = env.node(n);
        bool between = std::abs(a.col - c.col) + std::abs(c.col - b.col) == std::abs(a.col - b.col) &&
                       std::abs(a.row - c.row) + std::abs(c.row - b.row) == std::abs(a.row - b.row);
        check.expect(counts.on_path(n) == between, "support at " + std::to_string(n));
        if (!between) continue;
        mpz_class expected = lattice_paths(a.col - c.col, a.row - c.row) *
                             lattice_paths(c.col - b.col, c.row - b.row);
        check.expect(counts.tag2[n] == expected, "triple " + std::to_string(s) + "," +
                                                      std::to_string(n) + "," + std::to_string(t));
        ++triples;
      }
    }
  }
  check.note(std::to_string(triples) + " triples");
  return check.outcome();
}

// 3. Brute-force enumeration on every 5 x 5 environment with at most two
// blocked nodes.
Outcome criterion_bruteforce() {
  Check check;
  std::vector<std::vector<int>> layouts{{}};
  for (int a = 0; a < 25; ++a) {
    layouts.push_back({a});
    for (int b = a + 1; b < 25; ++b) layouts.push_back({a, b});
  }
  std::size_t environments = 0, disconnected = 0, pairs = 0;
  for (const auto& blocked : layouts) {
    std::vector<Obstacle> obstacles;
    for (int cell : blocked) obstacles.push_back(node_blocker(cell % 5, cell / 5, 5, 5));
    std::optional<GridEnvironment> built;
    try {
      built = grid(5, 5, obstacles);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DisconnectedEnvironment) throw;
      ++disconnected;
      continue;
    }
    const GridEnvironment& env = *built;
    ++environments;
    check.expect(env.node_count() == 25 - blocked.size(), "node count");
    for (NodeIndex s = 0; s < env.node_count(); ++s) {
      auto dag = single_source_dag(env, s);
      auto hops = hop_distances(env, s);
      for (NodeIndex t = 0; t < env.node_count(); ++t) {
        auto counts = through_counts(dag, t);
        std::vector<long> through(env.node_count(), 0);
        std::map<std::pair<NodeIndex, NodeIndex>, long> edge_paths;
        long total = 0;
        std::vector<NodeIndex> path{s};
        enumerate(env, s, t, hops[t], path, [&](const std::vector<NodeIndex>& p) {
          ++total;
          for (NodeIndex n : p) ++through[n];
          for (std::size_t i = 0; i + 1 < p.size(); ++i) ++edge_paths[{p[i + 1], p[i]}];
        });
        ++pairs;
        check.expect(counts.path_count == total, "path count");
        for (NodeIndex n = 0; n < env.node_count(); ++n) {
          check.expect(counts.tag2[n] == through[n], "node tag");
        }
        if (s == t) continue;
        check.expect(counts.edges.size() == edge_paths.size(), "edge set size");
        for (const EdgeTags& e : counts.edges) {
          auto it = edge_paths.find({e.from, e.to});
          check.expect(it != edge_paths.end() && e.tag2 == it->second, "edge tag");
        }
      }
    }
  }
  check.note(std::to_string(environments) + " environments (" + std::to_string(disconnected) +
             " disconnected skipped), " + std::to_string(pairs) + " pairs");
  return check.outcome();
}

// 4. Per-pair mass (L + 1) / L, exactly.
Outcome criterion_pair_mass() {
  Check check;
  std::vector<GridEnvironment> envs;
  envs.push_back(grid(6, 6));
  envs.push_back(grid(2, 1));
  envs.push_back(grid(7, 5, {node_blocker(3, 2, 7, 5), {0, 30, 15, 10}}));
  envs.push_back(grid(9, 9, {{20, 20, 20, 20}, {50, 50, 10, 30}}));
  std::size_t pairs = 0;
  for (const auto& env : envs) {
    for (NodeIndex s = 0; s < env.node_count(); ++s) {
      auto dag = single_source_dag(env, s);
      for (NodeIndex t = 0; t < env.node_count(); ++t) {
        if (s == t) continue;
        auto pres = pair_presence(through_counts(dag, t));
        mpq_class total = 0;
        for (const auto& v : pres.node) total += v;
        mpq_class length(dag.dist(t));
        check.expect(total == (length + 1) / length, "pair " + std::to_string(s) + "->" + std::to_string(t));
        ++pairs;
      }
    }
  }
  check.note(std::to_string(pairs) + " pairs, exact rationals");
  return check.outcome();
}

// 5. Shape of the empty 21 x 21 distribution.
Outcome criterion_shape() {
  Check check;
  const int n = 21;
  auto env = grid(n, n);
  auto d = aggregate_fast(env, {AggregationMode::PerTrip, false, 0});
  auto at = [&](int c, int r) { return d.node[env.require_index({c, r})]; };
  double centre = at(10, 10);
  double max_value = *std::max_element(d.node.begin(), d.node.end());
  check.expect(centre == max_value || max_value - centre <= 1e-12, "centre is not the maximum");
  for (int c = 10; c + 1 < n; ++c) check.expect(at(c + 1, 10) <= at(c, 10), "row rises at " + std::to_string(c));
  for (int c = 10; c > 0; --c) check.expect(at(c - 1, 10) <= at(c, 10), "row rises at " + std::to_string(c));
  double worst = 0.0;
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) {
      const int m = n - 1;
      const std::pair<int, int> images[] = {{c, r},         {m - c, r},     {c, m - r},
                                            {m - c, m - r}, {r, c},         {m - r, c},
                                            {r, m - c},     {m - r, m - c}};
      for (auto [ic, ir] : images) worst = std::max(worst, std::abs(at(ic, ir) - at(c, r)));
    }
  }
  check.expect(worst <= 1e-12, "symmetry defect " + fmt(worst));
  check.note("max symmetry defect " + fmt(worst, 3));
  return check.outcome();
}

// 6. Fast vs reference aggregation on grids up to 12 x 12 with 0-2 obstacles.
Outcome criterion_fast_vs_reference() {
  Check check;
  struct Case {
    int cols, rows;
    std::vector<Obstacle> obstacles;
  };
  const std::vector<Case> cases{
      {2, 2, {}},
      {3, 3, {}},
      {3, 3, {node_blocker(1, 1, 3, 3)}},
      {5, 7, {node_blocker(2, 3, 5, 7), node_blocker(3, 5, 5, 7)}},
      {8, 8, {{20, 20, 20, 20}}},
      {8, 6, {{10, 10, 10, 20}, {40, 20, 20, 10}}},
      {10, 10, {{30, 30, 30, 30}}},
      {12, 12, {}},
      {12, 12, {{40, 40, 20, 20}}},
      {12, 12, {{20, 20, 20, 20}, {70, 60, 10, 30}}},
      {12, 9, {{15, 15, 50, 3}, {60, 40, 20, 20}}},
  };
  double worst = 0.0;
  for (const Case& c : cases) {
    auto env = grid(c.cols, c.rows, c.obstacles);
    for (auto mode : {AggregationMode::PerTrip, AggregationMode::TimeWeighted}) {
      AggregationOptions opts{mode, false, 0};
      auto ref = aggregate_distribution(env, opts);
      auto fast = aggregate_fast(env, opts);
      double delta = 0.0;
      for (std::size_t i = 0; i < ref.node.size(); ++i) delta = std::max(delta, std::abs(ref.node[i] - fast.node[i]));
      worst = std::max(worst, delta);
      check.expect(delta <= 1e-12, std::to_string(c.cols) + "x" + std::to_string(c.rows) + " delta " + fmt(delta));
    }
  }
  check.note(std::to_string(cases.size()) + " environments x 2 modes, max |delta| " + fmt(worst, 3));
  return check.outcome();
}

// 7. Monte Carlo occupancy on 12 x 12 with one 2 x 2-cell obstacle.
Outcome criterion_monte_carlo() {
  Check check;
  auto env = build_environment(load_config(config("grid12_obstacle.json")));
  check.expect(env.node_count() == 144 - 9, "obstacle removes 9 nodes");
  for (auto mode : {AggregationMode::PerTrip, AggregationMode::TimeWeighted}) {
    SimulationConfig cfg;
    cfg.trips = 1'000'000;
    cfg.seed = 20240601;
    cfg.mode = mode;
    cfg.threads = 0;
    auto start = Clock::now();
    auto emp = run_occupancy(env, cfg);
    double elapsed = seconds_since(start);
    double tv = compare(aggregate_fast(env, {mode}), emp).total_variation;
    check.expect(tv <= 0.02, std::string(to_string(mode)) + " TV " + fmt(tv));
    check.expect(elapsed < 60.0, "runtime " + fmt(elapsed) + " s");
    check.note(std::string(to_string(mode)) + " TV " + fmt(tv, 3) + " in " + fmt(elapsed, 3) + " s");
  }
  return check.outcome();
}

// 8. Coverage geometry.
Outcome criterion_coverage() {
  Check check;
  const double r = 20.0;
  const double disk = pi * r * r;
  const Rect open{0, 0, 200, 200};
  auto rel = [](double a, double b) { return std::abs(a - b) / b; };

  double free_disk = coverage_numeric({100, 100}, r, open, {});
  check.expect(rel(free_disk, disk) <= 1e-3, "free disk " + fmt(free_disk));
  double half = coverage_numeric({0, 100}, r, open, {});
  check.expect(rel(half, disk / 2) <= 1e-3, "half disk " + fmt(half));

  // Circular-segment law at d = r / 2, against an independent formula.
  const double d = r / 2;
  double law = disk - (r * r * std::acos(d / r) - d * std::sqrt(r * r - d * d));
  std::vector<Rect> wall{{100 + d, 0, 20, 200}};
  double wall_numeric = coverage_numeric({100, 100}, r, open, wall);
  check.expect(rel(wall_numeric, law) <= 2e-3, "wall " + fmt(wall_numeric) + " vs " + fmt(law));
  check.expect(rel(wall_coverage(d, r), law) <= 1e-12, "wall_coverage");

  const std::vector<Rect> scene{{80, 80, 40, 40}};
  double worst = 0.0;
  int samples = 0;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      double x = (i + 0.5) * r / 20, y = (j + 0.5) * r / 20;
      if (x * x + y * y > r * r) continue;
      double analytic = coverage_zone6(x, y, r);
      double numeric = coverage_numeric({80 - x, 80 + y}, r, open, scene);
      worst = std::max(worst, rel(numeric, analytic));
      double analytic2 = coverage_zone6(x, y, r, Zone6Branch::BesideHorizontalFace);
      double numeric2 = coverage_numeric({80 + x, 80 - y}, r, open, scene);
      worst = std::max(worst, rel(numeric2, analytic2));
      ++samples;
    }
  }
  check.expect(worst <= 5e-3, "zone-6 worst relative error " + fmt(worst));
  check.expect(coverage_zone6(0, r, r) == disk / 2 || rel(coverage_zone6(0, r, r), disk / 2) <= 1e-15,
               "zone-6 at x = 0");
  check.note("zone-6 worst " + fmt(worst * 100, 3) + "% over " + std::to_string(samples) +
             " points x 2 branches");
  return check.outcome();
}

struct DegreeRun {
  int code = -1;
  double seconds = 0.0;
  std::string dir;
};

DegreeRun run_layout_degree() {
  DegreeRun run;
  run.dir = tmp_dir("layout_degree");
  std::ostringstream out, err;
  auto start = Clock::now();
  run.code = run_cli({"degree", "--config", config("layout_460.json"), "--fast", "--threads", "8",
                      "--out", run.dir},
                     out, err);
  run.seconds = seconds_since(start);
  if (run.code != 0) std::cerr << err.str();
  return run;
}

// 9. The 460 m layout through the full pipeline.
Outcome criterion_layout_460(const DegreeRun& run) {
  Check check;
  check.expect(run.code == 0, "degree exit code " + std::to_string(run.code));
  check.expect(run.seconds < 60.0, "runtime " + fmt(run.seconds) + " s");
  if (run.code != 0) return check.outcome();
  auto env = build_environment(load_config(config("layout_460.json")));
  auto deg = read_matrix(fs::path(run.dir) / "degree_matrix.csv");
  auto mask = read_matrix(fs::path(run.dir) / "mask.csv");
  const int n = env.cols();
  check.expect(static_cast<int>(deg.size()) == n, "matrix rows");
  auto value = [&](int col, int row) { return deg[n - 1 - row][col]; };
  double open_max = 0.0;
  int removed = 0;
  const double r = env.radio_range();
  for (int col = 0; col < n; ++col) {
    for (int row = 0; row < n; ++row) {
      bool free = mask[n - 1 - row][col] == 1.0;
      check.expect(free == env.is_free({col, row}), "mask");
      if (!free) {
        ++removed;
        check.expect(value(col, row) == 0.0, "degree on removed node");
        continue;
      }
      Point p = env.position(NodeId{col, row});
      double to_obstacle = 1e300;
      for (const Obstacle& o : env.obstacles()) to_obstacle = std::min(to_obstacle, point_rect_distance(p, o.rect()));
      double to_border = std::min({p.x, p.y, env.width() - p.x, env.height() - p.y});
      if (to_obstacle >= r && to_border >= r) open_max = std::max(open_max, value(col, row));
    }
  }
  check.expect(removed == 400, "removed nodes " + std::to_string(removed));
  const double corners[] = {value(0, 0), value(n - 1, 0), value(0, n - 1), value(n - 1, n - 1)};
  for (double c : corners) check.expect(c < 0.5 * open_max, "corner " + fmt(c) + " vs max " + fmt(open_max));

  // Every node beside the interior of an obstacle face sits below the node
  // one cell further out along the face normal. Nodes level with the
  // obstacle's corners are reported separately.
  const double a = env.cell_size();
  int band_nodes = 0, corner_rows = 0, corner_rows_higher = 0;
  double ratio_sum = 0.0, ratio_max = 0.0;
  for (const Obstacle& o : env.obstacles()) {
    const int c0 = static_cast<int>(std::lround(o.x_m / a)), c1 = static_cast<int>(std::lround((o.x_m + o.w_m) / a));
    const int r0 = static_cast<int>(std::lround(o.y_m / a)), r1 = static_cast<int>(std::lround((o.y_m + o.h_m) / a));
    std::vector<std::tuple<NodeId, NodeId, bool>> probes;
    for (int row = r0; row <= r1; ++row) {
      bool corner = row == r0 || row == r1;
      probes.push_back({{c0 - 1, row}, {c0 - 2, row}, corner});
      probes.push_back({{c1 + 1, row}, {c1 + 2, row}, corner});
    }
    for (int col = c0; col <= c1; ++col) {
      bool corner = col == c0 || col == c1;
      probes.push_back({{col, r0 - 1}, {col, r0 - 2}, corner});
      probes.push_back({{col, r1 + 1}, {col, r1 + 2}, corner});
    }
    for (auto [band, outer, corner] : probes) {
      double ratio = value(band.col, band.row) / value(outer.col, outer.row);
      if (corner) {
        ++corner_rows;
        corner_rows_higher += ratio >= 1.0 ? 1 : 0;
        continue;
      }
      check.expect(ratio < 1.0, "band node (" + std::to_string(band.col) + "," + std::to_string(band.row) +
                                    ") ratio " + fmt(ratio));
      ratio_sum += ratio;
      ratio_max = std::max(ratio_max, ratio);
      ++band_nodes;
    }
  }
  check.note(fmt(run.seconds, 3) + " s on 8 workers; corner " + fmt(corners[0], 4) + ", open max " +
             fmt(open_max, 4) + "; " + std::to_string(band_nodes) +
             " face-adjacent nodes below their outer neighbour (mean ratio " +
             fmt(ratio_sum / band_nodes, 3) + ", max " + fmt(ratio_max, 3) + "); " +
             std::to_string(corner_rows_higher) + "/" + std::to_string(corner_rows) +
             " corner-level nodes above theirs");
  return check.outcome();
}

// 10. Analytic vs snapshot global mean degree on the 460 m layout.
Outcome criterion_snapshot_degree() {
  Check check;
  auto env = build_environment(load_config(config("layout_460.json")));
  auto dist = aggregate_fast(env, {AggregationMode::PerTrip, false, 0});
  auto cov = coverage_map(env, env.radio_range(), kDefaultRays, 0);
  auto deg = compose_degree_map(env, dist, cov);
  SimulationConfig cfg;
  cfg.snapshots = 200;
  cfg.seed = 7;
  cfg.threads = 0;
  auto snap = snapshot_degree(env, dist, cfg, env.radio_range());
  double rel = std::abs(snap.global_mean - deg.global_mean) / deg.global_mean;
  check.expect(rel <= 0.05, "relative gap " + fmt(rel));
  check.note("analytic " + fmt(deg.global_mean, 5) + ", snapshots " + fmt(snap.global_mean, 5) +
             ", gap " + fmt(rel * 100, 3) + "%");
  // Control with uniform placement, where C(n) rho(n) is exact up to cell edges.
  auto uniform = uniform_distribution(env);
  double uniform_analytic = compose_degree_map(env, uniform, cov).global_mean;
  double uniform_snap = snapshot_degree(env, uniform, cfg, env.radio_range()).global_mean;
  check.note("uniform-placement control: analytic " + fmt(uniform_analytic, 5) + ", snapshots " +
             fmt(uniform_snap, 5) + ", gap " +
             fmt(std::abs(uniform_snap - uniform_analytic) / uniform_analytic * 100, 3) + "%");
  return check.outcome();
}

// 11. simulate is byte-identical for a fixed seed.
Outcome criterion_determinism() {
  Check check;
  std::string a = tmp_dir("sim_a"), b = tmp_dir("sim_b");
  for (const auto& [dir, threads] : {std::pair{a, "1"}, std::pair{b, "4"}}) {
    std::ostringstream out, err;
    int code = run_cli({"simulate", "--config", config("grid12_obstacle.json"), "--trips", "200000",
                        "--seed", "31337", "--snapshots", "10", "--threads", threads, "--out", dir},
                       out, err);
    check.expect(code == 0, "simulate exit " + std::to_string(code) + " " + err.str());
  }
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    if (entry.path().extension() != ".csv") continue;
    fs::path other = fs::path(b) / entry.path().filename();
    check.expect(fs::exists(other) && slurp(entry.path()) == slurp(other),
                 entry.path().filename().string() + " differs");
    ++compared;
  }
  check.expect(compared >= 4, "compared " + std::to_string(compared) + " CSVs");
  check.note(std::to_string(compared) + " CSVs identical across 1 and 4 workers");
  return check.outcome();
}

}  // namespace

int main() {
  fs::create_directories(GRIDMOB_ACCEPTANCE_TMP);
  DegreeRun layout_run;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"closed-form path counts (8x8, all ordered pairs)", criterion_closed_form},
      {"through-count factorization (6x6)", criterion_factorization},
      {"brute-force equivalence (5x5, <= 2 blocked nodes)", criterion_bruteforce},
      {"per-pair presence mass (L+1)/L", criterion_pair_mass},
      {"distribution shape (21x21)", criterion_shape},
      {"fast vs reference aggregation (<= 12x12)", criterion_fast_vs_reference},
      {"Monte Carlo occupancy (12x12, 1e6 trips)", criterion_monte_carlo},
      {"coverage geometry", criterion_coverage},
      {"460 m layout pipeline", [&] {
         layout_run = run_layout_degree();
         return criterion_layout_460(layout_run);
       }},
      {"analytic vs snapshot mean degree", criterion_snapshot_degree},
      {"simulate determinism", criterion_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first;
    if (!o.detail.empty()) std::cout << " -- " << o.detail;
    std::cout << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
