#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gridmob/distribution.hpp"
#include "gridmob/grid_env.hpp"
#include "gridmob/path_count.hpp"

namespace gridmob {

// Trips are simulated in fixed-size tasks, each with its own derived seed, so
// results are bit-identical for any number of workers.
inline constexpr std::uint64_t kTripsPerTask = 1u << 14;

struct SimulationConfig {
  std::uint64_t trips = 1'000'000;
  int stations = 0;  // 0: use the environment's station_count
  std::uint64_t seed = 1;
  AggregationMode mode = AggregationMode::PerTrip;
  int snapshots = 200;
  unsigned threads = 1;
};

struct EmpiricalDistribution {
  std::vector<double> node;            // normalized visit mass
  std::vector<double> standard_error;  // batch-means estimate, one batch per task
  std::uint64_t samples = 0;           // trips simulated
  AggregationMode mode = AggregationMode::PerTrip;
};

// Random trips: s, t drawn i.i.d. from the endpoint weights (s != t), a
// uniform shortest path between them, and mass deposited on every visited
// node (1/L_sp per node in per-trip mode, 1 per node in time-weighted mode).
EmpiricalDistribution run_occupancy(const GridEnvironment& env, const SimulationConfig& cfg);
EmpiricalDistribution run_occupancy(const GridEnvironment& env, const PathSampler& sampler,
                                    const SimulationConfig& cfg);

// Degree of every station in the LOS connection graph: an edge joins two
// stations within distance r that see each other.
std::vector<int> connection_degrees(std::span<const Point> stations, double r,
                                    const GridEnvironment& env);

struct SnapshotDegree {
  std::vector<double> node_mean;        // mean degree of stations binned to each node
  std::vector<std::uint64_t> node_hits;  // stations binned to each node, all snapshots
  double global_mean = 0.0;
  int snapshots = 0;
  int stations = 0;
};

// Places `stations` stations per snapshot i.i.d. from `dist` (uniformly
// jittered inside the node's cell, clipped to the environment and kept out of
// obstacles) and averages their connection-graph degrees.
SnapshotDegree snapshot_degree(const GridEnvironment& env, const PresenceDistribution& dist,
                               const SimulationConfig& cfg, double r);

struct ComparisonReport {
  double total_variation = 0.0;
  std::vector<double> delta;    // empirical - analytic
  std::vector<double> z_score;  // delta / standard error
  double max_abs_delta = 0.0;
  NodeIndex max_delta_node = 0;
};

// Throws Error(ShapeMismatch) when the node sets differ.
ComparisonReport compare(const PresenceDistribution& analytic, const EmpiricalDistribution& empirical);

double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace gridmob
