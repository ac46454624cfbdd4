#pragma once

#include <span>
#include <vector>

#include "gridmob/coverage.hpp"
#include "gridmob/distribution.hpp"

namespace gridmob {

struct DegreeMap {
  std::vector<double> density;  // stations / m^2
  std::vector<double> degree;   // expected number of LOS neighbours
  int station_count = 0;
  double global_mean = 0.0;
};

// rho(n) = N * P(n) / a^2: each node stands for one a x a cell.
std::vector<double> local_density(const PresenceDistribution& dist, int station_count,
                                  double cell_size);

struct DegreeOptions {
  // Scale by (N - 1) / N to exclude the station itself.
  bool exclude_self = false;
};

// deg(n) = C(n) * rho(n). Throws Error(ShapeMismatch) on differing sizes.
// global_mean is left at 0; see global_mean_degree.
DegreeMap mean_degree_map(const CoverageMap& coverage, std::span<const double> density,
                          int station_count, const DegreeOptions& options = {});

// Expected degree of a station drawn from the presence distribution:
// sum_n P(n) deg(n).
double global_mean_degree(const PresenceDistribution& dist, const DegreeMap& degrees);

// Full composition: density from the distribution, degree, global mean.
DegreeMap compose_degree_map(const GridEnvironment& env, const PresenceDistribution& dist,
                             const CoverageMap& coverage, const DegreeOptions& options = {});

}  // namespace gridmob
