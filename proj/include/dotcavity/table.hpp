#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace dotcavity {

struct Column {
  std::string name;
  std::string unit;  // empty for dimensionless
};

// Column-labelled numeric rows plus free-form metadata (tool version,
// timestamp, config echo). NaN marks a missing value.
struct ResultTable {
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  void add_row(std::vector<double> row);
  // Index of the column called `name`; throws std::out_of_range.
  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(std::size_t index) const;
};

// `# key: value` metadata lines (multi-line values get one line each), then
// the names row, the units row ("-" for dimensionless) and %.12g data.
// Missing values are written as "nan".
void write_csv(const ResultTable& table, std::ostream& out);
// {"metadata": {...}, "columns": [{"name", "unit"}], "rows": [[...]]};
// missing values become null.
void write_json(const ResultTable& table, std::ostream& out);

// Inverse of write_csv for the numeric part and metadata.
ResultTable read_csv(std::istream& in);

}  // namespace dotcavity
