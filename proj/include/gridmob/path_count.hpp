#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

#include "gridmob/grid_env.hpp"
#include "gridmob/rng.hpp"

namespace gridmob {

// One arc of the shortest-path DAG: `node` is the neighbour, `edge` the
// undirected environment edge, `slot` the position of the matching
// predecessor arc (used to address per-edge data).
struct DagArc {
  NodeIndex node;
  EdgeIndex edge;
  std::uint32_t slot;
};

// All shortest paths to a fixed source. DAG edges point toward the source:
// u -> v is present iff dist(v) = dist(u) - cost(u, v).
class ShortestPathDag {
 public:
  NodeIndex source() const { return source_; }
  std::span<const double> dist() const { return dist_; }
  double dist(NodeIndex n) const { return dist_[n]; }

  // Nodes by non-decreasing distance; source first.
  std::span<const NodeIndex> order() const { return order_; }

  // Outgoing DAG arcs of n (toward the source).
  std::span<const DagArc> predecessors(NodeIndex n) const {
    return {preds_.data() + pred_offsets_[n], preds_.data() + pred_offsets_[n + 1]};
  }
  // Incoming DAG arcs of n (from the nodes one step farther away).
  std::span<const DagArc> successors(NodeIndex n) const {
    return {succs_.data() + succ_offsets_[n], succs_.data() + succ_offsets_[n + 1]};
  }
  std::size_t arc_count() const { return preds_.size(); }
  std::size_t node_count() const { return dist_.size(); }

  friend ShortestPathDag single_source_dag(const GridEnvironment& env, NodeIndex s);

 private:
  NodeIndex source_ = 0;
  std::vector<double> dist_;
  std::vector<NodeIndex> order_;
  std::vector<std::size_t> pred_offsets_;
  std::vector<DagArc> preds_;
  std::vector<std::size_t> succ_offsets_;
  std::vector<DagArc> succs_;
};

// Breadth-first search on uniform-cost environments, Dijkstra otherwise.
ShortestPathDag single_source_dag(const GridEnvironment& env, NodeIndex s);
ShortestPathDag single_source_dag(const GridEnvironment& env, NodeId s);

// Equal-distance test used to build the DAG: exact on uniform costs, relative
// tolerance 1e-9 on weighted costs.
bool same_distance(double a, double b);

// Number of shortest paths from the source to every node, as doubles.
std::vector<double> path_counts_from_source(const ShortestPathDag& dag);

// A DAG edge lying on at least one shortest s-t path, oriented from the
// target side (`from`) toward the source side (`to`).
struct EdgeTags {
  NodeIndex from;
  NodeIndex to;
  EdgeIndex edge;
  mpz_class tag1;
  mpq_class tag2;
};

// Shortest-path counts through every node and edge for one (s, t) pair.
struct PathCounts {
  NodeIndex source = 0;
  NodeIndex target = 0;
  double length = 0.0;  // L_sp: cost of a shortest path
  mpz_class path_count;  // N_sp
  std::vector<mpz_class> tag1;  // per node, 0 off the shortest paths
  std::vector<mpz_class> tag2;  // per node: shortest s-t paths through it
  std::vector<EdgeTags> edges;
  // Indices into `edges` grouped by their `to` node, for walking from s to t.
  std::vector<std::size_t> edge_offsets;
  std::vector<std::uint32_t> edges_by_to;

  bool on_path(NodeIndex n) const { return sgn(tag2[n]) > 0; }
  std::span<const std::uint32_t> edges_toward_target(NodeIndex n) const {
    return {edges_by_to.data() + edge_offsets[n], edges_by_to.data() + edge_offsets[n + 1]};
  }
};

// Two-pass labelling of the DAG: tag1 flows from t toward s, tag2 flows back
// from s redistributing each node's paths over its edges in proportion to
// tag1. Throws UnreachableTarget / UnknownNode.
PathCounts through_counts(const ShortestPathDag& dag, NodeIndex t);

// (|dx| + |dy|)! / (|dx|! |dy|!) for lattice nodes s and t. Valid only on
// obstacle-free uniform-cost grids; the caller is responsible for that.
mpz_class closed_form_count(NodeId s, NodeId t);

// Every minimal-cost s-t path, by iterative-deepening depth-first search over
// simple paths (independent of the DAG machinery). Throws
// PathCountCapExceeded once more than `cap` paths are found.
std::vector<std::vector<NodeIndex>> enumerate_paths_bruteforce(const GridEnvironment& env,
                                                                NodeIndex s, NodeIndex t,
                                                                std::size_t cap = 1'000'000);

// Uniform draw among the N_sp shortest paths, walking from s and choosing
// each next edge with probability tag2(edge) / tag2(current node).
std::vector<NodeIndex> sample_shortest_path(const PathCounts& counts, Rng& rng);

// Precomputed per-target distances and path counts for drawing many uniform
// shortest paths quickly. Uses the same successor rule as
// sample_shortest_path, with counts held as doubles.
class PathSampler {
 public:
  PathSampler(const GridEnvironment& env, unsigned threads = 1);

  std::vector<NodeIndex> sample(NodeIndex s, NodeIndex t, Rng& rng) const;
  double distance(NodeIndex s, NodeIndex t) const { return dist_[index(t, s)]; }

 private:
  std::size_t index(NodeIndex t, NodeIndex n) const { return std::size_t{t} * n_ + n; }

  const GridEnvironment* env_;
  std::size_t n_;
  std::vector<double> dist_;   // dist_[t * n + n] = distance n -> t
  std::vector<double> count_;  // shortest paths n -> t
};

}  // namespace gridmob
