#include "gridmob/distribution.hpp"

#include <algorithm>
#include <numeric>

#include "gridmob/error.hpp"
#include "gridmob/parallel.hpp"

namespace gridmob {
namespace {

// Sources are summed in fixed-size chunks, in index order, so the result does
// not depend on the number of workers.
constexpr std::size_t kSourcesPerChunk = 16;

struct Partial {
  std::vector<double> node;
  std::vector<double> edge;
};

template <class PerSource>
PresenceDistribution aggregate_by_source(const GridEnvironment& env,
                                         const AggregationOptions& options,
                                         PerSource&& per_source) {
  const std::size_t n = env.node_count();
  if (n < 2) throw Error(ErrorCode::DomainError, "at least two free nodes are required");
  const std::size_t chunks = (n + kSourcesPerChunk - 1) / kSourcesPerChunk;
  std::vector<Partial> partial(chunks);

  parallel_for(chunks, options.threads, [&](std::size_t c) {
    Partial& out = partial[c];
    out.node.assign(n, 0.0);
    if (options.with_edges) out.edge.assign(env.edge_count(), 0.0);
    std::size_t end = std::min(n, (c + 1) * kSourcesPerChunk);
    for (std::size_t s = c * kSourcesPerChunk; s < end; ++s) {
      per_source(static_cast<NodeIndex>(s), out);
    }
  });

  PresenceDistribution result;
  result.mode = options.mode;
  result.pair_count = n * (n - 1);
  result.node.assign(n, 0.0);
  if (options.with_edges) result.edge.assign(env.edge_count(), 0.0);
  for (const Partial& p : partial) {
    for (std::size_t i = 0; i < n; ++i) result.node[i] += p.node[i];
    for (std::size_t e = 0; e < result.edge.size(); ++e) result.edge[e] += p.edge[e];
  }
  auto normalize = [](std::vector<double>& v) {
    double total = std::accumulate(v.begin(), v.end(), 0.0);
    if (total > 0) {
      for (double& x : v) x /= total;
    }
  };
  normalize(result.node);
  normalize(result.edge);
  return result;
}

}  // namespace

std::string_view to_string(AggregationMode mode) {
  return mode == AggregationMode::PerTrip ? "per-trip" : "time-weighted";
}

AggregationMode parse_aggregation_mode(std::string_view text) {
  if (text == "per-trip") return AggregationMode::PerTrip;
  if (text == "time-weighted") return AggregationMode::TimeWeighted;
  throw Error(ErrorCode::InvalidConfig,
              "mode must be 'per-trip' or 'time-weighted', got '" + std::string(text) + "'");
}

PairPresence pair_presence(const PathCounts& counts, bool with_edges) {
  if (counts.source == counts.target) {
    throw Error(ErrorCode::DegeneratePair, "source and target coincide");
  }
  mpq_class length(counts.length);
  mpq_class denom = counts.path_count * length;
  PairPresence out;
  out.node.reserve(counts.tag2.size());
  for (const mpz_class& t : counts.tag2) {
    mpq_class v(t);
    v /= denom;
    out.node.push_back(std::move(v));
  }
  if (with_edges) {
    for (const EdgeTags& e : counts.edges) out.edge.push_back({e.edge, e.tag2 / denom});
  }
  return out;
}

PresenceDistribution aggregate_distribution(const GridEnvironment& env,
                                            const AggregationOptions& options) {
  const auto weights = env.endpoint_weights();
  const bool time_weighted = options.mode == AggregationMode::TimeWeighted;
  return aggregate_by_source(env, options, [&](NodeIndex s, Partial& out) {
    ShortestPathDag dag = single_source_dag(env, s);
    for (NodeIndex t = 0; t < env.node_count(); ++t) {
      if (t == s) continue;
      PathCounts counts = through_counts(dag, t);
      PairPresence presence = pair_presence(counts, options.with_edges);
      double w = weights[s] * weights[t] * (time_weighted ? counts.length : 1.0);
      for (NodeIndex n = 0; n < presence.node.size(); ++n) {
        if (sgn(presence.node[n]) != 0) out.node[n] += w * presence.node[n].get_d();
      }
      for (const auto& [e, value] : presence.edge) out.edge[e] += w * value.get_d();
    }
  });
}

PresenceDistribution aggregate_fast(const GridEnvironment& env,
                                    const AggregationOptions& options) {
  const auto weights = env.endpoint_weights();
  const bool time_weighted = options.mode == AggregationMode::TimeWeighted;
  const std::size_t n = env.node_count();
  return aggregate_by_source(env, options, [&](NodeIndex s, Partial& out) {
    ShortestPathDag dag = single_source_dag(env, s);
    std::vector<double> sigma = path_counts_from_source(dag);
    // dependency[v] = sum over targets t reachable through v of
    //   w(t) * (paths v -> t inside the DAG) / sigma[t],
    // where w(t) is the per-target weight (1/L for per-trip).
    std::vector<double> dependency(n, 0.0);
    auto order = dag.order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      NodeIndex v = *it;
      if (v != s) {
        double w = weights[v] * (time_weighted ? 1.0 : 1.0 / dag.dist(v));
        dependency[v] += w / sigma[v];
      }
      for (const DagArc& p : dag.predecessors(v)) dependency[p.node] += dependency[v];
    }
    const double ws = weights[s];
    for (NodeIndex v = 0; v < n; ++v) {
      out.node[v] += ws * sigma[v] * dependency[v];
      if (options.with_edges) {
        for (const DagArc& p : dag.predecessors(v)) {
          out.edge[p.edge] += ws * sigma[p.node] * dependency[v];
        }
      }
    }
  });
}

PresenceDistribution uniform_distribution(const GridEnvironment& env) {
  PresenceDistribution d;
  d.node.assign(env.node_count(), 1.0 / static_cast<double>(env.node_count()));
  return d;
}

}  // namespace gridmob
