#include "gridmob/grid_env.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

#include "gridmob/error.hpp"
#include "json.hpp"

namespace gridmob {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorCode::InvalidConfig, message);
}

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) config_error(where + ": unknown field '" + key + "'");
  }
}

double get_number(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) config_error(where + ": missing field '" + key + "'");
  if (!it->is_number()) config_error(where + ": field '" + key + "' must be a number");
  double v = it->get<double>();
  if (!std::isfinite(v)) config_error(where + ": field '" + key + "' must be finite");
  return v;
}

Rect parse_rect(const json& obj, const std::string& where) {
  return {get_number(obj, "x_m", where), get_number(obj, "y_m", where),
          get_number(obj, "w_m", where), get_number(obj, "h_m", where)};
}

const json& get_object_array(const json& root, const char* key) {
  const json& arr = root.at(key);
  if (!arr.is_array()) config_error(std::string("field '") + key + "' must be an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_object()) {
      config_error(std::string(key) + "[" + std::to_string(i) + "] must be an object");
    }
  }
  return arr;
}

// Number of lattice steps along a dimension, or nullopt when the dimension
// is not an integer multiple of the cell size.
std::optional<int> lattice_steps(double extent, double cell) {
  double q = extent / cell;
  double rounded = std::round(q);
  if (std::abs(q - rounded) > 1e-9 * std::max(1.0, q)) return std::nullopt;
  if (rounded > 1e6) return std::nullopt;
  return static_cast<int>(rounded);
}

}  // namespace

EnvironmentConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) config_error("top level must be an object");
  reject_unknown(root,
                 {"width_m", "height_m", "cell_size_m", "radio_range_m", "station_count",
                  "obstacles", "edge_speed_overrides", "hotspot_weights"},
                 "config");

  EnvironmentConfig cfg;
  cfg.width_m = get_number(root, "width_m", "config");
  cfg.height_m = get_number(root, "height_m", "config");
  cfg.cell_size_m = get_number(root, "cell_size_m", "config");
  cfg.radio_range_m = get_number(root, "radio_range_m", "config");
  {
    auto it = root.find("station_count");
    if (it == root.end()) config_error("config: missing field 'station_count'");
    if (!it->is_number_integer()) config_error("config: field 'station_count' must be an integer");
    auto n = it->get<std::int64_t>();
    if (n <= 0 || n > std::numeric_limits<int>::max()) {
      config_error("config: field 'station_count' must be a positive integer");
    }
    cfg.station_count = static_cast<int>(n);
  }

  if (root.contains("obstacles")) {
    const json& arr = get_object_array(root, "obstacles");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string where = "obstacles[" + std::to_string(i) + "]";
      reject_unknown(arr[i], {"x_m", "y_m", "w_m", "h_m"}, where);
      Rect r = parse_rect(arr[i], where);
      cfg.obstacles.push_back({r.x, r.y, r.w, r.h});
    }
  } else {
    config_error("config: missing field 'obstacles'");
  }
  if (root.contains("edge_speed_overrides")) {
    const json& arr = get_object_array(root, "edge_speed_overrides");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string where = "edge_speed_overrides[" + std::to_string(i) + "]";
      reject_unknown(arr[i], {"x_m", "y_m", "w_m", "h_m", "speed"}, where);
      cfg.edge_speed_overrides.push_back({parse_rect(arr[i], where), get_number(arr[i], "speed", where)});
    }
  }
  if (root.contains("hotspot_weights")) {
    const json& arr = get_object_array(root, "hotspot_weights");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string where = "hotspot_weights[" + std::to_string(i) + "]";
      reject_unknown(arr[i], {"x_m", "y_m", "w_m", "h_m", "weight"}, where);
      cfg.hotspot_weights.push_back({parse_rect(arr[i], where), get_number(arr[i], "weight", where)});
    }
  }
  return cfg;
}

EnvironmentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot read config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_json(const EnvironmentConfig& cfg) {
  json root;
  root["width_m"] = cfg.width_m;
  root["height_m"] = cfg.height_m;
  root["cell_size_m"] = cfg.cell_size_m;
  root["radio_range_m"] = cfg.radio_range_m;
  root["station_count"] = cfg.station_count;
  root["obstacles"] = json::array();
  for (const auto& o : cfg.obstacles) {
    root["obstacles"].push_back({{"x_m", o.x_m}, {"y_m", o.y_m}, {"w_m", o.w_m}, {"h_m", o.h_m}});
  }
  if (!cfg.edge_speed_overrides.empty()) {
    root["edge_speed_overrides"] = json::array();
    for (const auto& s : cfg.edge_speed_overrides) {
      root["edge_speed_overrides"].push_back({{"x_m", s.region.x}, {"y_m", s.region.y},
                                              {"w_m", s.region.w}, {"h_m", s.region.h},
                                              {"speed", s.speed}});
    }
  }
  if (!cfg.hotspot_weights.empty()) {
    root["hotspot_weights"] = json::array();
    for (const auto& h : cfg.hotspot_weights) {
      root["hotspot_weights"].push_back({{"x_m", h.region.x}, {"y_m", h.region.y},
                                         {"w_m", h.region.w}, {"h_m", h.region.h},
                                         {"weight", h.weight}});
    }
  }
  return root.dump();
}

Point GridEnvironment::position(NodeId n) const {
  return {n.col * config_.cell_size_m, n.row * config_.cell_size_m};
}

Point GridEnvironment::position(NodeIndex i) const { return position(nodes_[i]); }

std::optional<NodeIndex> GridEnvironment::index_of(NodeId n) const {
  if (n.col < 0 || n.row < 0 || n.col >= cols_ || n.row >= rows_) return std::nullopt;
  auto v = lattice_to_index_[static_cast<std::size_t>(n.row) * cols_ + n.col];
  if (v < 0) return std::nullopt;
  return static_cast<NodeIndex>(v);
}

NodeIndex GridEnvironment::require_index(NodeId n) const {
  auto i = index_of(n);
  if (!i) {
    throw Error(ErrorCode::UnknownNode, "node (" + std::to_string(n.col) + "," +
                                            std::to_string(n.row) + ") is not a free node");
  }
  return *i;
}

std::vector<Neighbor> GridEnvironment::neighbors(NodeId n) const {
  NodeIndex i = require_index(n);
  std::vector<Neighbor> out;
  for (const Arc& a : arcs(i)) out.push_back({nodes_[a.to], a.cost});
  return out;
}

NodeIndex GridEnvironment::nearest_node(Point p) const {
  int c = static_cast<int>(std::lround(p.x / config_.cell_size_m));
  int r = static_cast<int>(std::lround(p.y / config_.cell_size_m));
  if (auto i = index_of({c, r})) return *i;
  NodeIndex best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (NodeIndex k = 0; k < nodes_.size(); ++k) {
    double d = distance(p, position(k));
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

GridEnvironment build_environment(const EnvironmentConfig& config) {
  const double a = config.cell_size_m;
  if (!(a > 0.0)) config_error("cell_size_m must be positive");
  if (!(config.radio_range_m > 0.0)) config_error("radio_range_m must be positive");
  if (config.station_count <= 0) config_error("station_count must be positive");
  if (!(config.width_m >= 0.0) || !(config.height_m >= 0.0)) {
    config_error("width_m and height_m must be non-negative");
  }
  auto steps_x = lattice_steps(config.width_m, a);
  auto steps_y = lattice_steps(config.height_m, a);
  if (!steps_x || !steps_y) {
    throw Error(ErrorCode::NonDivisibleDimensions,
                "width_m and height_m must be integer multiples of cell_size_m");
  }

  for (std::size_t i = 0; i < config.obstacles.size(); ++i) {
    const Obstacle& o = config.obstacles[i];
    if (!(o.w_m > 0.0) || !(o.h_m > 0.0)) {
      config_error("obstacles[" + std::to_string(i) + "]: w_m and h_m must be positive");
    }
    if (o.x_m < 0.0 || o.y_m < 0.0 || o.x_m + o.w_m > config.width_m ||
        o.y_m + o.h_m > config.height_m) {
      throw Error(ErrorCode::ObstacleOutOfBounds,
                  "obstacles[" + std::to_string(i) + "] extends outside the environment");
    }
  }
  for (std::size_t i = 0; i < config.obstacles.size(); ++i) {
    for (std::size_t j = i + 1; j < config.obstacles.size(); ++j) {
      if (interiors_overlap(config.obstacles[i].rect(), config.obstacles[j].rect())) {
        throw Error(ErrorCode::OverlappingObstacles,
                    "obstacles[" + std::to_string(i) + "] and obstacles[" + std::to_string(j) +
                        "] overlap");
      }
    }
  }
  for (std::size_t i = 0; i < config.edge_speed_overrides.size(); ++i) {
    double s = config.edge_speed_overrides[i].speed;
    if (!(s > 0.0) || !std::isfinite(s)) {
      config_error("edge_speed_overrides[" + std::to_string(i) + "]: speed must be positive");
    }
  }
  for (std::size_t i = 0; i < config.hotspot_weights.size(); ++i) {
    double w = config.hotspot_weights[i].weight;
    if (!(w > 0.0) || !std::isfinite(w)) {
      config_error("hotspot_weights[" + std::to_string(i) + "]: weight must be positive");
    }
  }

  GridEnvironment env;
  env.config_ = config;
  env.cols_ = *steps_x + 1;
  env.rows_ = *steps_y + 1;
  env.lattice_to_index_.assign(static_cast<std::size_t>(env.cols_) * env.rows_, -1);

  for (int r = 0; r < env.rows_; ++r) {
    for (int c = 0; c < env.cols_; ++c) {
      Point p = env.position(NodeId{c, r});
      bool blocked = false;
      for (const auto& o : config.obstacles) {
        if (o.rect().contains_closed(p)) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      env.lattice_to_index_[static_cast<std::size_t>(r) * env.cols_ + c] =
          static_cast<std::int64_t>(env.nodes_.size());
      env.nodes_.push_back({c, r});
    }
  }
  if (env.nodes_.empty()) {
    throw Error(ErrorCode::DisconnectedEnvironment, "no free node left in the environment");
  }

  auto edge_cost = [&](Point p, Point q) {
    Point mid{(p.x + q.x) / 2, (p.y + q.y) / 2};
    double speed = 1.0;
    for (const auto& ov : config.edge_speed_overrides) {
      if (ov.region.contains_closed(mid)) speed = ov.speed;
    }
    return 1.0 / speed;
  };

  std::vector<std::vector<Arc>> adjacency(env.nodes_.size());
  for (NodeIndex i = 0; i < env.nodes_.size(); ++i) {
    NodeId n = env.nodes_[i];
    for (NodeId m : {NodeId{n.col + 1, n.row}, NodeId{n.col, n.row + 1}}) {
      auto j = env.index_of(m);
      if (!j) continue;
      Point p = env.position(n);
      Point q = env.position(m);
      bool crosses = false;
      for (const auto& o : config.obstacles) {
        if (segment_hits_interior(p, q, o.rect())) {
          crosses = true;
          break;
        }
      }
      if (crosses) continue;
      double cost = edge_cost(p, q);
      if (cost != 1.0) env.uniform_costs_ = false;
      auto e = static_cast<EdgeIndex>(env.edges_.size());
      env.edges_.push_back({i, *j, cost});
      adjacency[i].push_back({*j, cost, e});
      adjacency[*j].push_back({i, cost, e});
    }
  }
  env.arc_offsets_.assign(env.nodes_.size() + 1, 0);
  for (std::size_t i = 0; i < adjacency.size(); ++i) {
    env.arc_offsets_[i + 1] = env.arc_offsets_[i] + adjacency[i].size();
    env.arcs_.insert(env.arcs_.end(), adjacency[i].begin(), adjacency[i].end());
  }

  std::vector<bool> seen(env.nodes_.size(), false);
  std::queue<NodeIndex> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    NodeIndex u = frontier.front();
    frontier.pop();
    for (const Arc& arc : env.arcs(u)) {
      if (!seen[arc.to]) {
        seen[arc.to] = true;
        ++reached;
        frontier.push(arc.to);
      }
    }
  }
  if (reached != env.nodes_.size()) {
    throw Error(ErrorCode::DisconnectedEnvironment,
                "free nodes form " + std::string(reached == 1 ? "an isolated node" : "several components") +
                    "; " + std::to_string(env.nodes_.size() - reached) +
                    " node(s) unreachable from node (" + std::to_string(env.nodes_[0].col) + "," +
                    std::to_string(env.nodes_[0].row) + ")");
  }

  env.endpoint_weights_.assign(env.nodes_.size(), 1.0);
  for (NodeIndex i = 0; i < env.nodes_.size(); ++i) {
    for (const auto& h : config.hotspot_weights) {
      if (h.region.contains_closed(env.position(i))) env.endpoint_weights_[i] = h.weight;
    }
  }
  return env;
}

std::vector<ZoneSpacingWarning> validate_zone_spacing(const GridEnvironment& env) {
  std::vector<ZoneSpacingWarning> warnings;
  const double min_gap = 2.0 * env.radio_range();
  auto obstacles = env.obstacles();
  const Rect b = env.bounds();
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    Rect r = obstacles[i].rect();
    double border_gap = std::min({r.x - b.x, b.x_max() - r.x_max(), r.y - b.y, b.y_max() - r.y_max()});
    if (border_gap < min_gap) {
      std::ostringstream msg;
      msg << "obstacles[" << i << "] is " << border_gap << " m from the border (< " << min_gap << " m)";
      warnings.push_back({i, std::nullopt, border_gap, msg.str()});
    }
    for (std::size_t j = i + 1; j < obstacles.size(); ++j) {
      double gap = rect_distance(r, obstacles[j].rect());
      if (gap < min_gap) {
        std::ostringstream msg;
        msg << "obstacles[" << i << "] and obstacles[" << j << "] are " << gap << " m apart (< "
            << min_gap << " m)";
        warnings.push_back({i, j, gap, msg.str()});
      }
    }
  }
  return warnings;
}

}  // namespace gridmob
