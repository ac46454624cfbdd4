#include "gridmob/degree_map.hpp"

#include "gridmob/error.hpp"

namespace gridmob {

std::vector<double> local_density(const PresenceDistribution& dist, int station_count,
                                  double cell_size) {
  const double cell_area = cell_size * cell_size;
  std::vector<double> rho(dist.node.size());
  for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = station_count * dist.node[i] / cell_area;
  return rho;
}

DegreeMap mean_degree_map(const CoverageMap& coverage, std::span<const double> density,
                          int station_count, const DegreeOptions& options) {
  if (coverage.area.size() != density.size()) {
    throw Error(ErrorCode::ShapeMismatch,
                "coverage has " + std::to_string(coverage.area.size()) + " nodes, density has " +
                    std::to_string(density.size()));
  }
  DegreeMap map;
  map.station_count = station_count;
  map.density.assign(density.begin(), density.end());
  map.degree.resize(density.size());
  const double scale =
      options.exclude_self && station_count > 0 ? (station_count - 1.0) / station_count : 1.0;
  for (std::size_t i = 0; i < density.size(); ++i) {
    map.degree[i] = coverage.area[i] * density[i] * scale;
  }
  return map;
}

double global_mean_degree(const PresenceDistribution& dist, const DegreeMap& degrees) {
  if (dist.node.size() != degrees.degree.size()) {
    throw Error(ErrorCode::ShapeMismatch, "distribution and degree map differ in size");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < dist.node.size(); ++i) total += dist.node[i] * degrees.degree[i];
  return total;
}

DegreeMap compose_degree_map(const GridEnvironment& env, const PresenceDistribution& dist,
                             const CoverageMap& coverage, const DegreeOptions& options) {
  auto rho = local_density(dist, env.station_count(), env.cell_size());
  DegreeMap map = mean_degree_map(coverage, rho, env.station_count(), options);
  map.global_mean = global_mean_degree(dist, map);
  return map;
}

}  // namespace gridmob
