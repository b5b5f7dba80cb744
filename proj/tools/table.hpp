#pragma once

// Row-oriented result tables written as CSV or schema-tagged JSON.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qtst/error.hpp"
#include "qtst/io/csv.hpp"
#include "qtst/io/json.hpp"

namespace qtst::cli {

using Cell = std::variant<std::monostate, double, long, bool, std::string>;

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  nlohmann::ordered_json summary;  // optional extra JSON block

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

inline Cell number_or_empty(double v) {
  if (std::isfinite(v)) return v;
  return std::monostate{};
}

inline std::string csv_cell(const Cell& c) {
  return std::visit(::qtst::detail::overloaded{
                        [](std::monostate) { return std::string(); },
                        [](double v) { return io::format_number(v); },
                        [](long v) { return std::to_string(v); },
                        [](bool v) { return std::string(v ? "true" : "false"); },
                        [](const std::string& s) {
                          if (s.find_first_of(",\"\n") == std::string::npos) return s;
                          std::string q = "\"";
                          for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                          return q + "\"";
                        },
                    },
                    c);
}

inline nlohmann::ordered_json json_cell(const Cell& c) {
  return std::visit(::qtst::detail::overloaded{
                        [](std::monostate) { return nlohmann::ordered_json(nullptr); },
                        [](double v) { return nlohmann::ordered_json(v); },
                        [](long v) { return nlohmann::ordered_json(v); },
                        [](bool v) { return nlohmann::ordered_json(v); },
                        [](const std::string& s) { return nlohmann::ordered_json(s); },
                    },
                    c);
}

inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
    out += "\n";
  }
  return out;
}

inline std::string to_json_text(const Table& t) {
  nlohmann::ordered_json j;
  j["schema"] = io::schema_version;
  j["command"] = t.command;
  j["parameters"] = t.parameters;
  if (!t.summary.is_null()) j["summary"] = t.summary;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r;
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = json_cell(row[i]);
    j["rows"].push_back(r);
  }
  return j.dump(2) + "\n";
}

inline void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot write '" + path + "'");
  out << text;
}

/// Gnuplot script plotting columns `ys` of a CSV file against its first column.
inline std::string gnuplot_script(const Table& t, const std::string& csv_path, const std::vector<int>& ys,
                                  bool log_y = false) {
  std::string s;
  s += "# gnuplot script for '" + t.command + "'\n";
  s += "set datafile separator ','\n";
  s += "set key autotitle columnhead\n";
  s += "set xlabel '" + t.columns.at(0) + "'\n";
  if (log_y) s += "set logscale y\n";
  s += "plot ";
  for (std::size_t i = 0; i < ys.size(); ++i) {
    s += (i ? ", \\\n     " : "") + std::string("'") + csv_path + "' using 1:" + std::to_string(ys[i]) +
         " with linespoints";
  }
  s += "\n";
  return s;
}

}  // namespace qtst::cli
