#include "gridmob/path_count.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

#include "gridmob/error.hpp"
#include "gridmob/parallel.hpp"

namespace gridmob {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

bool same_distance(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

ShortestPathDag single_source_dag(const GridEnvironment& env, NodeIndex s) {
  const std::size_t n = env.node_count();
  if (s >= n) throw Error(ErrorCode::UnknownNode, "source index out of range");

  ShortestPathDag dag;
  dag.source_ = s;
  dag.dist_.assign(n, kInf);
  dag.order_.reserve(n);
  dag.dist_[s] = 0.0;

  if (env.uniform_costs()) {
    std::queue<NodeIndex> frontier;
    frontier.push(s);
    while (!frontier.empty()) {
      NodeIndex u = frontier.front();
      frontier.pop();
      dag.order_.push_back(u);
      for (const Arc& a : env.arcs(u)) {
        if (dag.dist_[a.to] == kInf) {
          dag.dist_[a.to] = dag.dist_[u] + 1.0;
          frontier.push(a.to);
        }
      }
    }
  } else {
    using Item = std::pair<double, NodeIndex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    std::vector<bool> done(n, false);
    heap.push({0.0, s});
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (done[u]) continue;
      done[u] = true;
      dag.order_.push_back(u);
      for (const Arc& a : env.arcs(u)) {
        double nd = d + a.cost;
        if (nd < dag.dist_[a.to]) {
          dag.dist_[a.to] = nd;
          heap.push({nd, a.to});
        }
      }
    }
  }

  dag.pred_offsets_.assign(n + 1, 0);
  for (NodeIndex v = 0; v < n; ++v) {
    dag.pred_offsets_[v] = dag.preds_.size();
    if (v == s || dag.dist_[v] == kInf) continue;
    for (const Arc& a : env.arcs(v)) {
      if (dag.dist_[a.to] < dag.dist_[v] && same_distance(dag.dist_[a.to] + a.cost, dag.dist_[v])) {
        dag.preds_.push_back({a.to, a.edge, static_cast<std::uint32_t>(dag.preds_.size())});
      }
    }
  }
  dag.pred_offsets_[n] = dag.preds_.size();

  std::vector<std::size_t> succ_count(n + 1, 0);
  for (const DagArc& p : dag.preds_) ++succ_count[p.node + 1];
  dag.succ_offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) dag.succ_offsets_[i + 1] = dag.succ_offsets_[i] + succ_count[i + 1];
  dag.succs_.resize(dag.preds_.size());
  std::vector<std::size_t> fill(dag.succ_offsets_.begin(), dag.succ_offsets_.end() - 1);
  for (NodeIndex v = 0; v < n; ++v) {
    for (const DagArc& p : dag.predecessors(v)) {
      dag.succs_[fill[p.node]++] = {v, p.edge, p.slot};
    }
  }
  return dag;
}

ShortestPathDag single_source_dag(const GridEnvironment& env, NodeId s) {
  return single_source_dag(env, env.require_index(s));
}

std::vector<double> path_counts_from_source(const ShortestPathDag& dag) {
  std::vector<double> sigma(dag.node_count(), 0.0);
  sigma[dag.source()] = 1.0;
  for (NodeIndex v : dag.order()) {
    if (v == dag.source()) continue;
    double total = 0.0;
    for (const DagArc& p : dag.predecessors(v)) total += sigma[p.node];
    sigma[v] = total;
  }
  return sigma;
}

PathCounts through_counts(const ShortestPathDag& dag, NodeIndex t) {
  const std::size_t n = dag.node_count();
  if (t >= n) throw Error(ErrorCode::UnknownNode, "target index out of range");
  if (!std::isfinite(dag.dist(t))) {
    throw Error(ErrorCode::UnreachableTarget, "target not reachable from source");
  }

  PathCounts pc;
  pc.source = dag.source();
  pc.target = t;
  pc.length = dag.dist(t);
  pc.tag1.assign(n, 0);
  pc.tag2.assign(n, 0);

  // First search: from t toward s in order of decreasing distance, so every
  // incoming edge of a node is tagged before the node itself is used.
  std::vector<std::int64_t> slot_edge(dag.arc_count(), -1);
  pc.tag1[t] = 1;
  auto order = dag.order();
  auto start = std::find(order.rbegin(), order.rend(), t);
  for (auto it = start; it != order.rend(); ++it) {
    NodeIndex u = *it;
    if (sgn(pc.tag1[u]) == 0) continue;
    for (const DagArc& p : dag.predecessors(u)) {
      slot_edge[p.slot] = static_cast<std::int64_t>(pc.edges.size());
      pc.edges.push_back({u, p.node, p.edge, pc.tag1[u], 0});
      pc.tag1[p.node] += pc.tag1[u];
    }
  }
  pc.path_count = pc.tag1[pc.source];

  // Second search: from s back toward t. tag2(n) sums the outgoing edges
  // (toward s) and each incoming edge gets tag1(e) / tag1(n) * tag2(n).
  std::vector<mpq_class> node_tag2(n, 0);
  node_tag2[pc.source] = pc.tag1[pc.source];
  for (NodeIndex v : order) {
    if (sgn(pc.tag1[v]) == 0) continue;
    const mpq_class& here = node_tag2[v];
    if (here.get_den() != 1) throw std::logic_error("non-integral node path count");
    pc.tag2[v] = here.get_num();
    for (const DagArc& s : dag.successors(v)) {
      if (slot_edge[s.slot] < 0) continue;
      EdgeTags& e = pc.edges[static_cast<std::size_t>(slot_edge[s.slot])];
      e.tag2 = mpq_class(e.tag1 * pc.tag2[v], pc.tag1[v]);
      e.tag2.canonicalize();
      node_tag2[s.node] += e.tag2;
    }
    if (v == t) break;
  }

  pc.edge_offsets.assign(n + 1, 0);
  for (const EdgeTags& e : pc.edges) ++pc.edge_offsets[e.to + 1];
  for (std::size_t i = 0; i < n; ++i) pc.edge_offsets[i + 1] += pc.edge_offsets[i];
  pc.edges_by_to.resize(pc.edges.size());
  std::vector<std::size_t> fill(pc.edge_offsets.begin(), pc.edge_offsets.end() - 1);
  for (std::size_t k = 0; k < pc.edges.size(); ++k) {
    pc.edges_by_to[fill[pc.edges[k].to]++] = static_cast<std::uint32_t>(k);
  }
  return pc;
}

mpz_class closed_form_count(NodeId s, NodeId t) {
  unsigned long dx = static_cast<unsigned long>(std::abs(s.col - t.col));
  unsigned long dy = static_cast<unsigned long>(std::abs(s.row - t.row));
  mpz_class result;
  mpz_bin_uiui(result.get_mpz_t(), dx + dy, dx);
  return result;
}

std::vector<std::vector<NodeIndex>> enumerate_paths_bruteforce(const GridEnvironment& env,
                                                                NodeIndex s, NodeIndex t,
                                                                std::size_t cap) {
  const std::size_t n = env.node_count();
  if (s >= n || t >= n) throw Error(ErrorCode::UnknownNode, "node index out of range");

  double min_cost = kInf;
  for (const Edge& e : env.edges()) min_cost = std::min(min_cost, e.cost);
  if (!std::isfinite(min_cost)) min_cost = 1.0;
  const NodeId target = env.node(t);
  auto lower_bound = [&](NodeIndex v) {
    NodeId id = env.node(v);
    return (std::abs(id.col - target.col) + std::abs(id.row - target.row)) * min_cost;
  };

  std::vector<std::vector<NodeIndex>> found;
  std::vector<double> found_cost;
  std::vector<NodeIndex> path{s};
  std::vector<bool> on_path(n, false);
  on_path[s] = true;

  double bound = lower_bound(s);
  for (;;) {
    double next_bound = kInf;
    const double slack = 1e-9 * std::max(1.0, bound);
    std::function<void(NodeIndex, double)> dfs = [&](NodeIndex v, double cost) {
      double f = cost + lower_bound(v);
      if (f > bound + slack) {
        next_bound = std::min(next_bound, f);
        return;
      }
      if (v == t) {
        found.push_back(path);
        found_cost.push_back(cost);
        if (found.size() > cap) {
          throw Error(ErrorCode::PathCountCapExceeded,
                      "more than " + std::to_string(cap) + " shortest paths");
        }
        return;
      }
      for (const Arc& a : env.arcs(v)) {
        if (on_path[a.to]) continue;
        on_path[a.to] = true;
        path.push_back(a.to);
        dfs(a.to, cost + a.cost);
        path.pop_back();
        on_path[a.to] = false;
      }
    };
    dfs(s, 0.0);
    if (!found.empty()) break;
    if (!std::isfinite(next_bound)) {
      throw Error(ErrorCode::UnreachableTarget, "target not reachable from source");
    }
    bound = next_bound;
  }

  double best = *std::min_element(found_cost.begin(), found_cost.end());
  std::vector<std::vector<NodeIndex>> shortest;
  for (std::size_t k = 0; k < found.size(); ++k) {
    if (same_distance(found_cost[k], best)) shortest.push_back(std::move(found[k]));
  }
  return shortest;
}

std::vector<NodeIndex> sample_shortest_path(const PathCounts& counts, Rng& rng) {
  std::vector<NodeIndex> path{counts.source};
  NodeIndex v = counts.source;
  while (v != counts.target) {
    auto options = counts.edges_toward_target(v);
    double u = rng.uniform();
    NodeIndex next = counts.edges[options.back()].from;
    double acc = 0.0;
    for (std::uint32_t k : options) {
      const EdgeTags& e = counts.edges[k];
      acc += mpq_class(e.tag2 / counts.tag2[v]).get_d();
      if (u < acc) {
        next = e.from;
        break;
      }
    }
    path.push_back(next);
    v = next;
  }
  return path;
}

PathSampler::PathSampler(const GridEnvironment& env, unsigned threads)
    : env_(&env), n_(env.node_count()), dist_(n_ * n_), count_(n_ * n_) {
  parallel_for(n_, threads, [&](std::size_t t) {
    ShortestPathDag dag = single_source_dag(env, static_cast<NodeIndex>(t));
    std::vector<double> sigma = path_counts_from_source(dag);
    std::copy(dag.dist().begin(), dag.dist().end(), dist_.begin() + t * n_);
    std::copy(sigma.begin(), sigma.end(), count_.begin() + t * n_);
  });
}

std::vector<NodeIndex> PathSampler::sample(NodeIndex s, NodeIndex t, Rng& rng) const {
  std::vector<NodeIndex> path{s};
  NodeIndex v = s;
  while (v != t) {
    const double dv = dist_[index(t, v)];
    const double cv = count_[index(t, v)];
    double u = rng.uniform() * cv;
    NodeIndex next = v;
    double acc = 0.0;
    for (const Arc& a : env_->arcs(v)) {
      double du = dist_[index(t, a.to)];
      if (!(du < dv) || !same_distance(du + a.cost, dv)) continue;
      next = a.to;
      acc += count_[index(t, a.to)];
      if (u < acc) break;
    }
    path.push_back(next);
    v = next;
  }
  return path;
}

}  // namespace gridmob
