#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dotcavity/table.hpp"

namespace dotcavity {

struct PlotSpec {
  std::string title;
  std::size_t x_column = 0;
  std::vector<std::size_t> y_columns;  // empty: every column after x
  bool x_log = false;
  bool y_log = false;
  // Drop non-finite (or non-positive on a log axis) points instead of
  // failing.
  bool skip_missing = false;
  // Draw a table with a single usable x value as markers on a padded range
  // instead of failing.
  bool allow_single_point = false;
  double width = 720.0;
  double height = 480.0;
};

// Standalone SVG line plot of the selected columns. Throws InvalidInput for
// tables with fewer than two columns, for unusable data (listing the
// offending rows, 1-based) and for single-point tables unless allowed.
void write_svg(const ResultTable& table, const PlotSpec& spec, std::ostream& out);
void save_svg(const ResultTable& table, const PlotSpec& spec, const std::string& path);

}  // namespace dotcavity
