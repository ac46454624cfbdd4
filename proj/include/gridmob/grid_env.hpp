#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridmob/geometry.hpp"

namespace gridmob {

// Dense index of a free node inside a GridEnvironment.
using NodeIndex = std::uint32_t;
using EdgeIndex = std::uint32_t;

// Lattice position of a node: node (col, row) sits at (col * a, row * a).
struct NodeId {
  int col = 0;
  int row = 0;

  friend bool operator==(const NodeId&, const NodeId&) = default;
};

struct Obstacle {
  double x_m = 0.0;
  double y_m = 0.0;
  double w_m = 0.0;
  double h_m = 0.0;

  Rect rect() const { return {x_m, y_m, w_m, h_m}; }
};

// Edges whose midpoint lies in the closed region travel at `speed` times the
// nominal speed.
struct SpeedOverride {
  Rect region;
  double speed = 1.0;
};

// Free nodes inside the closed region are chosen as trip endpoints with
// relative weight `weight` (1 elsewhere).
struct HotspotWeight {
  Rect region;
  double weight = 1.0;
};

struct EnvironmentConfig {
  double width_m = 0.0;
  double height_m = 0.0;
  double cell_size_m = 0.0;
  double radio_range_m = 0.0;
  int station_count = 0;
  std::vector<Obstacle> obstacles;
  std::vector<SpeedOverride> edge_speed_overrides;
  std::vector<HotspotWeight> hotspot_weights;
};

// Parses the JSON environment document. Unknown fields, missing required
// fields and wrongly typed values raise Error(InvalidConfig) naming the field.
EnvironmentConfig parse_config(std::string_view json_text);
EnvironmentConfig load_config(const std::filesystem::path& path);
std::string to_json(const EnvironmentConfig& config);

struct Arc {
  NodeIndex to;
  double cost;
  EdgeIndex edge;
};

struct Edge {
  NodeIndex a;
  NodeIndex b;
  double cost;
};

struct Neighbor {
  NodeId node;
  double cost;
};

struct ZoneSpacingWarning {
  // Indices into obstacles(); `second` is empty for an obstacle/border pair.
  std::size_t first = 0;
  std::optional<std::size_t> second;
  double gap_m = 0.0;
  std::string message;
};

// Immutable lattice graph with obstacle-removed nodes and edges.
class GridEnvironment {
 public:
  const EnvironmentConfig& config() const { return config_; }
  double width() const { return config_.width_m; }
  double height() const { return config_.height_m; }
  double cell_size() const { return config_.cell_size_m; }
  double radio_range() const { return config_.radio_range_m; }
  int station_count() const { return config_.station_count; }
  Rect bounds() const { return {0.0, 0.0, config_.width_m, config_.height_m}; }
  std::span<const Obstacle> obstacles() const { return config_.obstacles; }

  // Lattice dimensions in nodes (free or not).
  int cols() const { return cols_; }
  int rows() const { return rows_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  NodeId node(NodeIndex i) const { return nodes_[i]; }
  Point position(NodeIndex i) const;
  Point position(NodeId n) const;
  std::optional<NodeIndex> index_of(NodeId n) const;
  // Throws Error(UnknownNode) when n is outside the lattice or removed.
  NodeIndex require_index(NodeId n) const;
  bool is_free(NodeId n) const { return index_of(n).has_value(); }

  std::span<const Arc> arcs(NodeIndex i) const {
    return {arcs_.data() + arc_offsets_[i], arcs_.data() + arc_offsets_[i + 1]};
  }
  std::span<const Edge> edges() const { return edges_; }

  std::vector<Neighbor> neighbors(NodeId n) const;

  // True when every edge costs exactly 1 (hop-count shortest paths).
  bool uniform_costs() const { return uniform_costs_; }

  // Endpoint selection weight per free node (all 1 without hotspots).
  std::span<const double> endpoint_weights() const { return endpoint_weights_; }
  bool has_hotspots() const { return !config_.hotspot_weights.empty(); }

  // Nearest free node to a point, by Euclidean distance.
  NodeIndex nearest_node(Point p) const;

  friend GridEnvironment build_environment(const EnvironmentConfig& config);

 private:
  EnvironmentConfig config_;
  int cols_ = 0;
  int rows_ = 0;
  std::vector<std::int64_t> lattice_to_index_;  // -1 for removed nodes
  std::vector<NodeId> nodes_;
  std::vector<std::size_t> arc_offsets_;
  std::vector<Arc> arcs_;
  std::vector<Edge> edges_;
  std::vector<double> endpoint_weights_;
  bool uniform_costs_ = true;
};

GridEnvironment build_environment(const EnvironmentConfig& config);

// Reports every obstacle/obstacle and obstacle/border gap narrower than twice
// the radio range. Never throws.
std::vector<ZoneSpacingWarning> validate_zone_spacing(const GridEnvironment& env);

}  // namespace gridmob
