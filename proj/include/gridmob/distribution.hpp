#pragma once

#include <gmpxx.h>

#include <string_view>
#include <utility>
#include <vector>

#include "gridmob/grid_env.hpp"
#include "gridmob/path_count.hpp"

namespace gridmob {

// How trips are weighted when per-pair presences are summed.
//  PerTrip:      every (s, t) trip contributes its presence
//                tag2(n) / (N_sp * L_sp) unweighted.
//  TimeWeighted: each trip is additionally weighted by its duration L_sp,
//                which is the time-ergodic occupancy of a moving station.
enum class AggregationMode { PerTrip, TimeWeighted };

std::string_view to_string(AggregationMode mode);
// Accepts "per-trip" and "time-weighted"; throws Error(InvalidConfig).
AggregationMode parse_aggregation_mode(std::string_view text);

struct PresenceDistribution {
  std::vector<double> node;  // per free node, sums to 1
  std::vector<double> edge;  // per environment edge, sums to 1; empty unless requested
  AggregationMode mode = AggregationMode::PerTrip;
  std::size_t pair_count = 0;
};

// Exact per-pair presence: tag2(n) / (N_sp * L_sp) on nodes, likewise on the
// edges of the shortest-path set.
struct PairPresence {
  std::vector<mpq_class> node;
  std::vector<std::pair<EdgeIndex, mpq_class>> edge;
};

// Throws Error(DegeneratePair) when s == t.
PairPresence pair_presence(const PathCounts& counts, bool with_edges = false);

struct AggregationOptions {
  AggregationMode mode = AggregationMode::PerTrip;
  bool with_edges = false;
  unsigned threads = 1;
};

// Sums pair_presence over every ordered pair s != t with weight w(s) w(t)
// (hotspot endpoint weights). Runs one two-pass labelling per pair.
PresenceDistribution aggregate_distribution(const GridEnvironment& env,
                                            const AggregationOptions& options = {});

// Same result as aggregate_distribution from one backward accumulation per
// source over its shortest-path DAG, O(n m) in total.
PresenceDistribution aggregate_fast(const GridEnvironment& env,
                                    const AggregationOptions& options = {});

// A distribution uniform over the free nodes (used for what-if studies).
PresenceDistribution uniform_distribution(const GridEnvironment& env);

}  // namespace gridmob
