#pragma once

// Bundled reference tables: classification limits, published KIE Arrhenius
// parameters and quantum-chemistry barrier frequencies.

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtst/error.hpp"
#include "qtst/io/csv.hpp"
#include "qtst/kie.hpp"

#ifndef QTST_DATA_DIR
#define QTST_DATA_DIR "data"
#endif

namespace qtst::io {

/// Directory holding the bundled data; QTST_DATA_DIR in the environment wins.
inline std::filesystem::path data_dir() {
  if (const char* env = std::getenv("QTST_DATA_DIR"); env && *env) return env;
  return QTST_DATA_DIR;
}

inline std::filesystem::path data_path(const std::string& name) { return data_dir() / name; }

inline nlohmann::json read_json(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw config_error(path.string() + ": " + e.what());
  }
}

inline ReferenceLimits limits_from_json(const nlohmann::json& j) {
  try {
    ReferenceLimits l;
    l.version = j.value("version", "");
    const auto& kk = j.at("kim_kreevoy");
    l.kim_kreevoy_kie = kk.at("kie_H_D_20C").get<double>();
    l.kim_kreevoy_dE = kk.at("dE_D_minus_H_kj_mol").get<double>();
    l.kim_kreevoy_A_ratio = kk.at("A_H_over_A_D").get<double>();
    l.citations["kim_kreevoy"] = kk.value("citation", "");
    for (const auto& [pair, r] : j.at("bell_ranges").items()) {
      l.bell[to_string(parse_pair(pair))] = {r.at("low").get<double>(), r.at("high").get<double>()};
      l.citations["bell " + pair] = r.value("citation", "");
    }
    return l;
  } catch (const nlohmann::json::exception& e) {
    throw config_error(std::string("limits file: ") + e.what());
  }
}

inline ReferenceLimits load_limits(const std::filesystem::path& path = data_path("limits.json")) {
  return limits_from_json(read_json(path));
}

struct Table1Row {
  std::string system;
  IsotopePair pair;
  std::string category;
  std::optional<double> kie_300K;
  std::optional<double> A_ratio;
  std::optional<double> dE;
  std::string ref;
};

inline std::vector<Table1Row> load_table1(const std::filesystem::path& path = data_path("table1_kie.json")) {
  const auto j = read_json(path);
  auto value = [](const nlohmann::json& cell) -> std::optional<double> {
    if (cell.is_null() || !cell.contains("value") || cell.at("value").is_null()) return std::nullopt;
    return cell.at("value").get<double>();
  };
  std::vector<Table1Row> rows;
  try {
    for (const auto& r : j.at("rows")) {
      Table1Row row;
      row.system = r.at("system").get<std::string>();
      row.pair = parse_pair(r.at("pair").get<std::string>());
      row.category = r.value("category", "");
      row.kie_300K = value(r.at("kie_300K"));
      row.A_ratio = value(r.at("A_ratio"));
      row.dE = value(r.at("dE_kj_mol"));
      row.ref = r.value("ref", "");
      rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw config_error(path.string() + ": " + e.what());
  }
  return rows;
}

struct Table3Row {
  std::string system;
  std::string level_of_theory;
  double omegab = 0.0;   // cm^-1
  double max_T0 = 0.0;   // K, as quoted
  std::string ref;
};

inline std::vector<Table3Row> load_table3(const std::filesystem::path& path = data_path("table3_omegab.json")) {
  const auto j = read_json(path);
  std::vector<Table3Row> rows;
  try {
    for (const auto& r : j.at("rows")) {
      rows.push_back({r.at("system").get<std::string>(), r.at("level_of_theory").get<std::string>(),
                      r.at("omegab_cm1").get<double>(), r.at("max_T0_K").get<double>(),
                      r.value("ref", "")});
    }
  } catch (const nlohmann::json::exception& e) {
    throw config_error(path.string() + ": " + e.what());
  }
  return rows;
}

}  // namespace qtst::io
