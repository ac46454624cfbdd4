#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "gridmob/grid_env.hpp"

namespace gridmob {

// 12 significant digits, '.' decimal separator regardless of locale.
std::string format_value(double v);

// One line per lattice row, top row first; removed nodes are written as 0.
std::string matrix_csv(const GridEnvironment& env, std::span<const double> values);
// Same layout, 1 for free nodes and 0 for removed ones.
std::string mask_csv(const GridEnvironment& env);
// Header "x_m,y_m,<column>" then one line per free node in index order.
std::string long_csv(const GridEnvironment& env, std::span<const double> values,
                     std::string_view column);

// Writes bytes verbatim (LF line endings), creating parent directories.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace gridmob
