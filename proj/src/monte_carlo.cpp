#include "gridmob/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "gridmob/coverage.hpp"
#include "gridmob/error.hpp"
#include "gridmob/parallel.hpp"
#include "gridmob/rng.hpp"

namespace gridmob {
namespace {

// Snapshot streams live above all trip-task indices.
constexpr std::uint64_t kSnapshotStreamBase = std::uint64_t{1} << 40;

// Draws an index with probability proportional to its weight.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(std::span<const double> weights) : cumulative_(weights.size()) {
    std::partial_sum(weights.begin(), weights.end(), cumulative_.begin());
    uniform_ = std::all_of(weights.begin(), weights.end(),
                           [&](double w) { return w == weights.front(); });
  }

  NodeIndex operator()(Rng& rng) const {
    if (uniform_) return static_cast<NodeIndex>(rng.below(cumulative_.size()));
    double u = rng.uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<NodeIndex>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
  bool uniform_ = false;
};

Point jittered_position(const GridEnvironment& env, NodeIndex node, Rng& rng) {
  const Point c = env.position(node);
  const double h = env.cell_size() / 2.0;
  const Rect b = env.bounds();
  const double x0 = std::max(b.x, c.x - h), x1 = std::min(b.x_max(), c.x + h);
  const double y0 = std::max(b.y, c.y - h), y1 = std::min(b.y_max(), c.y + h);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Point p{rng.uniform(x0, x1), rng.uniform(y0, y1)};
    bool inside = false;
    for (const Obstacle& o : env.obstacles()) {
      if (o.rect().contains_open(p)) {
        inside = true;
        break;
      }
    }
    if (!inside) return p;
  }
  return c;
}

}  // namespace

EmpiricalDistribution run_occupancy(const GridEnvironment& env, const SimulationConfig& cfg) {
  PathSampler sampler(env, cfg.threads);
  return run_occupancy(env, sampler, cfg);
}

EmpiricalDistribution run_occupancy(const GridEnvironment& env, const PathSampler& sampler,
                                    const SimulationConfig& cfg) {
  const std::size_t n = env.node_count();
  if (n < 2) throw Error(ErrorCode::DomainError, "at least two free nodes are required");
  if (cfg.trips == 0) throw Error(ErrorCode::InvalidConfig, "trips must be positive");
  const std::uint64_t tasks = (cfg.trips + kTripsPerTask - 1) / kTripsPerTask;
  DiscreteSampler endpoints(env.endpoint_weights());
  const bool per_trip = cfg.mode == AggregationMode::PerTrip;

  std::vector<std::vector<double>> mass(tasks);
  parallel_for(tasks, cfg.threads, [&](std::size_t k) {
    Rng rng(derive_seed(cfg.seed, k));
    std::vector<double>& out = mass[k];
    out.assign(n, 0.0);
    const std::uint64_t count = std::min(kTripsPerTask, cfg.trips - k * kTripsPerTask);
    for (std::uint64_t trip = 0; trip < count; ++trip) {
      NodeIndex s, t;
      do {
        s = endpoints(rng);
        t = endpoints(rng);
      } while (t == s);
      std::vector<NodeIndex> path = sampler.sample(s, t, rng);
      const double deposit = per_trip ? 1.0 / sampler.distance(s, t) : 1.0;
      for (NodeIndex v : path) out[v] += deposit;
    }
  });

  EmpiricalDistribution result;
  result.samples = cfg.trips;
  result.mode = cfg.mode;
  result.node.assign(n, 0.0);
  result.standard_error.assign(n, 0.0);
  for (const auto& m : mass) {
    for (std::size_t i = 0; i < n; ++i) result.node[i] += m[i];
  }
  const double total = std::accumulate(result.node.begin(), result.node.end(), 0.0);
  for (double& x : result.node) x /= total;

  if (tasks >= 2) {
    std::vector<double> sum(n, 0.0), sum_sq(n, 0.0);
    for (const auto& m : mass) {
      const double task_total = std::accumulate(m.begin(), m.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        double share = m[i] / task_total;
        sum[i] += share;
        sum_sq[i] += share * share;
      }
    }
    const double b = static_cast<double>(tasks);
    for (std::size_t i = 0; i < n; ++i) {
      double mean = sum[i] / b;
      double var = std::max(0.0, (sum_sq[i] - b * mean * mean) / (b - 1.0));
      result.standard_error[i] = std::sqrt(var / b);
    }
  }
  return result;
}

std::vector<int> connection_degrees(std::span<const Point> stations, double r,
                                    const GridEnvironment& env) {
  std::vector<int> degree(stations.size(), 0);
  auto key = [&](long long cx, long long cy) { return (cx << 32) ^ (cy & 0xffffffffLL); };
  std::unordered_map<long long, std::vector<std::size_t>> buckets;
  auto cell = [&](double v) { return static_cast<long long>(std::floor(v / r)); };
  for (std::size_t i = 0; i < stations.size(); ++i) {
    buckets[key(cell(stations[i].x), cell(stations[i].y))].push_back(i);
  }
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const Point p = stations[i];
    const long long cx = cell(p.x), cy = cell(p.y);
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find(key(cx + dx, cy + dy));
        if (it == buckets.end()) continue;
        for (std::size_t j : it->second) {
          if (j <= i) continue;
          if (distance(p, stations[j]) <= r && los_visible(p, stations[j], env)) {
            ++degree[i];
            ++degree[j];
          }
        }
      }
    }
  }
  return degree;
}

SnapshotDegree snapshot_degree(const GridEnvironment& env, const PresenceDistribution& dist,
                               const SimulationConfig& cfg, double r) {
  const std::size_t n = env.node_count();
  if (dist.node.size() != n) {
    throw Error(ErrorCode::ShapeMismatch, "distribution does not match the environment");
  }
  const int stations = cfg.stations > 0 ? cfg.stations : env.station_count();
  DiscreteSampler placement(dist.node);

  struct Tally {
    std::vector<double> degree_sum;
    std::vector<std::uint64_t> hits;
    double total = 0.0;
  };
  std::vector<Tally> tallies(static_cast<std::size_t>(cfg.snapshots));
  parallel_for(tallies.size(), cfg.threads, [&](std::size_t k) {
    Rng rng(derive_seed(cfg.seed, kSnapshotStreamBase + k));
    std::vector<Point> positions(static_cast<std::size_t>(stations));
    for (Point& p : positions) p = jittered_position(env, placement(rng), rng);
    std::vector<int> degree = connection_degrees(positions, r, env);
    Tally& tally = tallies[k];
    tally.degree_sum.assign(n, 0.0);
    tally.hits.assign(n, 0);
    for (std::size_t i = 0; i < positions.size(); ++i) {
      NodeIndex bin = env.nearest_node(positions[i]);
      tally.degree_sum[bin] += degree[i];
      ++tally.hits[bin];
      tally.total += degree[i];
    }
  });

  SnapshotDegree result;
  result.snapshots = cfg.snapshots;
  result.stations = stations;
  result.node_mean.assign(n, 0.0);
  result.node_hits.assign(n, 0);
  std::vector<double> degree_sum(n, 0.0);
  double total = 0.0;
  for (const Tally& t : tallies) {
    for (std::size_t i = 0; i < n; ++i) {
      degree_sum[i] += t.degree_sum[i];
      result.node_hits[i] += t.hits[i];
    }
    total += t.total;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (result.node_hits[i] > 0) result.node_mean[i] = degree_sum[i] / result.node_hits[i];
  }
  const double placed = static_cast<double>(stations) * cfg.snapshots;
  result.global_mean = placed > 0 ? total / placed : 0.0;
  return result;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error(ErrorCode::ShapeMismatch, "distributions differ in size");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return 0.5 * sum;
}

ComparisonReport compare(const PresenceDistribution& analytic,
                         const EmpiricalDistribution& empirical) {
  const std::size_t n = analytic.node.size();
  if (empirical.node.size() != n) {
    throw Error(ErrorCode::ShapeMismatch, "analytic has " + std::to_string(n) +
                                              " nodes, empirical has " +
                                              std::to_string(empirical.node.size()));
  }
  ComparisonReport report;
  report.total_variation = total_variation(analytic.node, empirical.node);
  report.delta.resize(n);
  report.z_score.resize(n);
  for (NodeIndex i = 0; i < n; ++i) {
    double d = empirical.node[i] - analytic.node[i];
    report.delta[i] = d;
    double se = i < empirical.standard_error.size() ? empirical.standard_error[i] : 0.0;
    if (se > 0) {
      report.z_score[i] = d / se;
    } else {
      report.z_score[i] = d == 0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), d);
    }
    if (std::abs(d) > report.max_abs_delta) {
      report.max_abs_delta = std::abs(d);
      report.max_delta_node = i;
    }
  }
  return report;
}

}  // namespace gridmob
