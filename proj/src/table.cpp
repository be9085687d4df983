#include "dotcavity/table.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dotcavity {

namespace {

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("row width " + std::to_string(row.size()) + " does not match " +
                                std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::size_t ResultTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == name) return i;
  }
  throw std::out_of_range("no column named '" + name + "'");
}

std::vector<double> ResultTable::column(std::size_t index) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.at(index));
  return out;
}

void write_csv(const ResultTable& table, std::ostream& out) {
  for (const auto& [key, value] : table.metadata) {
    std::istringstream lines(value);
    std::string line;
    bool any = false;
    while (std::getline(lines, line)) {
      out << "# " << key << ": " << line << '\n';
      any = true;
    }
    if (!any) out << "# " << key << ":\n";
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i].name;
  }
  out << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    const auto& u = table.columns[i].unit;
    out << (i ? "," : "") << (u.empty() ? "-" : u);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_value(row[i]);
    out << '\n';
  }
}

void write_json(const ResultTable& table, std::ostream& out) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.metadata) meta[key] = value;
  doc["metadata"] = meta;
  doc["columns"] = nlohmann::ordered_json::array();
  for (const auto& c : table.columns) doc["columns"].push_back({{"name", c.name}, {"unit", c.unit}});
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (double v : row) {
      if (std::isfinite(v)) {
        r.push_back(v);
      } else {
        r.push_back(nullptr);
      }
    }
    doc["rows"].push_back(r);
  }
  out << doc.dump(2) << '\n';
}

ResultTable read_csv(std::istream& in) {
  ResultTable table;
  std::string line;
  int header = 0;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      const auto colon = line.find(": ");
      const std::string key = line.substr(2, colon == std::string::npos ? std::string::npos
                                                                        : colon - 2);
      const std::string value = colon == std::string::npos ? "" : line.substr(colon + 2);
      if (!table.metadata.empty() && table.metadata.back().first == key) {
        table.metadata.back().second += "\n" + value;
      } else {
        table.metadata.emplace_back(key, value);
      }
      continue;
    }
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (header == 0) {
      for (const auto& c : cells) table.columns.push_back({c, ""});
      ++header;
    } else if (header == 1) {
      if (cells.size() != table.columns.size()) throw std::runtime_error("units row width mismatch");
      for (std::size_t i = 0; i < cells.size(); ++i) {
        table.columns[i].unit = cells[i] == "-" ? "" : cells[i];
      }
      ++header;
    } else {
      std::vector<double> row;
      for (const auto& c : cells) row.push_back(std::strtod(c.c_str(), nullptr));
      table.add_row(std::move(row));
    }
  }
  return table;
}

}  // namespace dotcavity
