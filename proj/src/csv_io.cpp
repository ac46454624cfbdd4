#include "gridmob/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "gridmob/error.hpp"

namespace gridmob {

std::string format_value(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string matrix_csv(const GridEnvironment& env, std::span<const double> values) {
  if (values.size() != env.node_count()) {
    throw Error(ErrorCode::ShapeMismatch, "value count does not match the environment");
  }
  std::string out;
  for (int row = env.rows() - 1; row >= 0; --row) {
    for (int col = 0; col < env.cols(); ++col) {
      if (col > 0) out += ',';
      auto i = env.index_of({col, row});
      out += i ? format_value(values[*i]) : "0";
    }
    out += '\n';
  }
  return out;
}

std::string mask_csv(const GridEnvironment& env) {
  std::string out;
  for (int row = env.rows() - 1; row >= 0; --row) {
    for (int col = 0; col < env.cols(); ++col) {
      if (col > 0) out += ',';
      out += env.is_free({col, row}) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

std::string long_csv(const GridEnvironment& env, std::span<const double> values,
                     std::string_view column) {
  if (values.size() != env.node_count()) {
    throw Error(ErrorCode::ShapeMismatch, "value count does not match the environment");
  }
  std::string out = "x_m,y_m,";
  out += column;
  out += '\n';
  for (NodeIndex i = 0; i < env.node_count(); ++i) {
    Point p = env.position(i);
    out += format_value(p.x);
    out += ',';
    out += format_value(p.y);
    out += ',';
    out += format_value(values[i]);
    out += '\n';
  }
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!f) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace gridmob
