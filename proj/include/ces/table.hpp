#pragma once

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ces/types.hpp"

// Plot-ready tabular output. CSV is RFC-4180 (header row, comma separated,
// LF line endings, numeric-only payload) with 17-significant-digit floats so
// every value round-trips; JSON carries the same rows plus a meta object.

namespace ces::table {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json meta = nlohmann::json::object();

  void set_columns(std::vector<std::string> names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      for (std::size_t j = i + 1; j < names.size(); ++j) {
        if (names[i] == names[j]) {
          throw ParameterError("table: duplicate column name '" + names[i] + "'");
        }
      }
    }
    columns = std::move(names);
  }

  void add_row(std::vector<double> row) {
    if (row.size() != columns.size()) {
      throw ParameterError("table: row width does not match the column count");
    }
    rows.push_back(std::move(row));
  }
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    os << (i ? "," : "") << t.columns[i];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << format_double(row[i]);
    }
    os << '\n';
  }
}

inline void write_json(std::ostream& os, const Table& t) {
  nlohmann::json doc;
  doc["meta"] = t.meta;
  doc["meta"]["columns"] = t.columns;
  doc["rows"] = t.rows;
  os << doc.dump(2) << '\n';
}

}  // namespace ces::table
