#pragma once

// Comma-separated input files: KIE datasets, tabulated potentials and rate data.
// Dialect: comma separator, '.' decimal point, one header row, '#' comments.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtst/error.hpp"
#include "qtst/fit.hpp"
#include "qtst/units.hpp"
#include "qtst/wkb.hpp"

namespace qtst::io {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index for `name`, or -1.
  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline double to_number(const std::string& cell, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw config_error(where + ": '" + cell + "' is not a number");
  }
}

}  // namespace detail

inline CsvTable parse_csv(const std::string& text, const std::string& source = "csv") {
  CsvTable t;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const auto trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    auto cells = detail::split(trimmed);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() > t.header.size()) {
      throw config_error(source + ": row has more cells than the header");
    }
    cells.resize(t.header.size());
    t.rows.push_back(std::move(cells));
  }
  if (t.header.empty()) throw config_error(source + ": file is empty");
  return t;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline CsvTable read_csv(const std::filesystem::path& path) {
  return parse_csv(read_text(path), path.string());
}

/// Dataset from a `T_K,kie[,sigma]` table.
inline fit::KIEDataset kie_dataset_from_csv(const CsvTable& t, IsotopePair pair, const std::string& source) {
  const int cT = t.column("T_K");
  const int cK = t.column("kie");
  const int cS = t.column("sigma");
  if (cT < 0 || cK < 0) throw config_error(source + ": header must contain T_K and kie");
  fit::KIEDataset d;
  d.pair = pair;
  d.source = source;
  for (const auto& row : t.rows) {
    fit::KIEPoint p;
    p.T = detail::to_number(row[static_cast<std::size_t>(cT)], source);
    p.kie = detail::to_number(row[static_cast<std::size_t>(cK)], source);
    if (cS >= 0 && !row[static_cast<std::size_t>(cS)].empty()) {
      p.sigma = detail::to_number(row[static_cast<std::size_t>(cS)], source);
    }
    d.points.push_back(p);
  }
  if (d.points.empty()) throw config_error(source + ": no data rows");
  return d;
}

/// Reads a KIE CSV and, when present, its sidecar JSON (same name, .json)
/// holding label, source and pair.  An explicit pair overrides the sidecar.
inline fit::KIEDataset read_kie_dataset(const std::filesystem::path& path,
                                        std::optional<IsotopePair> pair = std::nullopt) {
  IsotopePair p{Isotope::H, Isotope::D};
  std::string label = path.stem().string();
  std::string source = path.string();
  auto sidecar = path;
  sidecar.replace_extension(".json");
  if (std::filesystem::exists(sidecar)) {
    nlohmann::json meta;
    try {
      meta = nlohmann::json::parse(read_text(sidecar));
    } catch (const nlohmann::json::exception& e) {
      throw config_error(sidecar.string() + ": " + e.what());
    }
    if (meta.contains("pair")) p = parse_pair(meta.at("pair").get<std::string>());
    if (meta.contains("label")) label = meta.at("label").get<std::string>();
    if (meta.contains("source")) source = meta.at("source").get<std::string>();
  }
  if (pair) p = *pair;
  auto d = kie_dataset_from_csv(read_csv(path), p, path.string());
  d.label = label;
  d.source = source;
  return d;
}

/// Tabulated potential from an `x_angstrom,U_kJ_per_mol` table.
inline wkb::Tabulated potential_from_csv(const CsvTable& t, double mass, const std::string& source) {
  const int cx = t.column("x_angstrom");
  const int cu = t.column("U_kJ_per_mol");
  if (cx < 0 || cu < 0) throw config_error(source + ": header must contain x_angstrom and U_kJ_per_mol");
  std::vector<double> x, U;
  for (const auto& row : t.rows) {
    x.push_back(detail::to_number(row[static_cast<std::size_t>(cx)], source));
    U.push_back(detail::to_number(row[static_cast<std::size_t>(cu)], source));
  }
  try {
    return wkb::Tabulated(std::move(x), std::move(U), mass);
  } catch (const domain_error& e) {
    throw config_error(source + ": " + e.what());
  }
}

inline wkb::Tabulated read_potential_csv(const std::filesystem::path& path, double mass = 1.0) {
  return potential_from_csv(read_csv(path), mass, path.string());
}

/// Rate data from a `T_K,k` table.
inline std::vector<fit::RatePoint> read_rate_csv(const std::filesystem::path& path) {
  const auto t = read_csv(path);
  const int cT = t.column("T_K");
  const int ck = t.column("k");
  if (cT < 0 || ck < 0) throw config_error(path.string() + ": header must contain T_K and k");
  std::vector<fit::RatePoint> out;
  for (const auto& row : t.rows) {
    out.push_back({detail::to_number(row[static_cast<std::size_t>(cT)], path.string()),
                   detail::to_number(row[static_cast<std::size_t>(ck)], path.string())});
  }
  if (out.empty()) throw config_error(path.string() + ": no data rows");
  return out;
}

/// 12 significant digits, used for every CSV number.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace qtst::io
