#pragma once

// JSON representations of models and results.  Key names are stable.

#include <cmath>
#include <set>
#include <string>

#include <json.hpp>

#include "qtst/error.hpp"
#include "qtst/fit.hpp"
#include "qtst/kie.hpp"
#include "qtst/kramers.hpp"
#include "qtst/qcorr.hpp"
#include "qtst/spectral.hpp"

namespace qtst::io {

using json = nlohmann::json;

inline constexpr const char* schema_version = "qtst/1";

/// Object with the schema tag in front of `body`'s keys.
inline json tagged(json body) {
  body["schema"] = schema_version;
  return body;
}

namespace detail {

inline void expect_keys(const json& j, const std::set<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) throw config_error(what + ": expected a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) throw config_error(what + ": unknown key '" + k + "'");
  }
}

inline double number(const json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw config_error(what + ": missing key '" + key + "'");
  if (!j.at(key).is_number()) throw config_error(what + ": key '" + key + "' must be a number");
  return j.at(key).get<double>();
}

inline double number_or(const json& j, const char* key, double fallback, const std::string& what) {
  return j.contains(key) ? number(j, key, what) : fallback;
}

inline std::array<double, 4> four(const json& j, const char* key, std::array<double, 4> fallback,
                                  const std::string& what) {
  if (!j.contains(key)) return fallback;
  const auto& a = j.at(key);
  if (!a.is_array() || a.size() != 4) throw config_error(what + ": '" + key + "' must hold 4 numbers");
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!a[i].is_number()) throw config_error(what + ": '" + key + "' must hold 4 numbers");
    out[i] = a[i].get<double>();
  }
  return out;
}

}  // namespace detail

// --- friction models --------------------------------------------------------

inline json to_json(const spectral::FrictionModel& m) {
  using namespace spectral;
  return std::visit(
      ::qtst::detail::overloaded{
          [](const Ohmic& o) { return json{{"kind", "ohmic"}, {"gamma_cm1", o.gamma}}; },
          [](const Drude& d) {
            return json{{"kind", "drude"}, {"gamma_cm1", d.gamma}, {"omega_D_cm1", d.omega_D}};
          },
          [](const Peaked& p) {
            return json{{"kind", "peaked"},
                        {"gamma_r_cm1", p.gamma_r},
                        {"Gamma_cm1", p.width},
                        {"omega_r_cm1", p.omega_r}};
          },
          [](const DebyeDielectric& d) {
            return json{{"kind", "debye_dielectric"},
                        {"delta_eps", d.delta_eps},
                        {"tau_ps", d.tau_ps},
                        {"omega4_cm1", d.omega_4},
                        {"eps_inf", d.eps_inf},
                        {"eps_c", d.eps_c},
                        {"cavity_radius_angstrom", d.cavity_radius},
                        {"mass_number", d.mass_number}};
          },
          [](const LinearProtein& l) {
            return json{{"kind", "linear_protein"},
                        {"delta_gamma_cm1", l.delta_gamma},
                        {"slope_A", l.slope},
                        {"cutoff_cm1", l.cutoff}};
          },
      },
      m);
}

inline spectral::FrictionModel friction_from_json(const json& j) {
  using namespace spectral;
  const std::string what = "friction model";
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw config_error(what + ": expected an object with a string 'kind'");
  }
  const auto kind = j.at("kind").get<std::string>();
  FrictionModel m;
  if (kind == "ohmic") {
    detail::expect_keys(j, {"kind", "gamma_cm1"}, what);
    m = Ohmic{detail::number(j, "gamma_cm1", what)};
  } else if (kind == "drude") {
    detail::expect_keys(j, {"kind", "gamma_cm1", "omega_D_cm1"}, what);
    m = Drude{detail::number(j, "gamma_cm1", what), detail::number(j, "omega_D_cm1", what)};
  } else if (kind == "peaked") {
    detail::expect_keys(j, {"kind", "gamma_r_cm1", "Gamma_cm1", "omega_r_cm1"}, what);
    m = Peaked{detail::number(j, "gamma_r_cm1", what), detail::number(j, "Gamma_cm1", what),
               detail::number(j, "omega_r_cm1", what)};
  } else if (kind == "debye_dielectric") {
    detail::expect_keys(j,
                        {"kind", "delta_eps", "tau_ps", "omega4_cm1", "eps_inf", "eps_c",
                         "cavity_radius_angstrom", "mass_number"},
                        what);
    DebyeDielectric d;
    d.delta_eps = detail::four(j, "delta_eps", d.delta_eps, what);
    d.tau_ps = detail::four(j, "tau_ps", d.tau_ps, what);
    d.omega_4 = detail::number_or(j, "omega4_cm1", d.omega_4, what);
    d.eps_inf = detail::number_or(j, "eps_inf", d.eps_inf, what);
    d.eps_c = detail::number_or(j, "eps_c", d.eps_c, what);
    d.cavity_radius = detail::number_or(j, "cavity_radius_angstrom", d.cavity_radius, what);
    d.mass_number = detail::number_or(j, "mass_number", d.mass_number, what);
    m = d;
  } else if (kind == "linear_protein") {
    detail::expect_keys(j, {"kind", "delta_gamma_cm1", "slope_A", "cutoff_cm1"}, what);
    LinearProtein l;
    l.delta_gamma = detail::number_or(j, "delta_gamma_cm1", l.delta_gamma, what);
    l.slope = detail::number_or(j, "slope_A", l.slope, what);
    l.cutoff = detail::number_or(j, "cutoff_cm1", l.cutoff, what);
    m = l;
  } else {
    throw config_error(what + ": unknown kind '" + kind + "'");
  }
  try {
    spectral::validate(m);
  } catch (const domain_error& e) {
    throw config_error(e.what());
  }
  return m;
}

// --- barrier and results ----------------------------------------------------

inline json to_json(const BarrierSystem& s) {
  return json{{"omega0_cm1", s.omega0_H},
              {"omegab_cm1", s.omegab_H},
              {"barrier_kj_mol", s.barrier_kj_mol},
              {"isotope", std::string(to_string(s.isotope))}};
}

inline BarrierSystem barrier_from_json(const json& j) {
  const std::string what = "barrier";
  detail::expect_keys(j, {"omega0_cm1", "omegab_cm1", "barrier_kj_mol", "isotope"}, what);
  BarrierSystem s;
  s.omega0_H = detail::number(j, "omega0_cm1", what);
  s.omegab_H = detail::number(j, "omegab_cm1", what);
  s.barrier_kj_mol = detail::number_or(j, "barrier_kj_mol", s.barrier_kj_mol, what);
  if (j.contains("isotope")) s.isotope = parse_isotope(j.at("isotope").get<std::string>());
  return s;
}

inline json to_json(const EffectiveBarrier& e) {
  json j{{"mu_cm1", e.mu}, {"T0_K", e.T0}, {"residual", e.residual}, {"root_count", e.root_count}};
  if (e.cubic_root) j["cubic_root_cm1"] = *e.cubic_root;
  return j;
}

inline json to_json(const CorrectionResult& c) {
  return json{{"c_qm", c.c_qm},
              {"regime", std::string(to_string(c.regime))},
              {"terms_used", c.terms_used},
              {"tail_estimate", c.tail_estimate},
              {"T0_K", c.T0}};
}

inline json to_json(const Rate& r) {
  return json{{"cm1", r.wavenumber}, {"per_s", r.per_second}};
}

inline json to_json(const EquilibriumCheck& e) {
  return json{{"satisfied", e.satisfied},
              {"friction_side", e.friction_side},
              {"thermal_side", e.thermal_side},
              {"margin", e.margin}};
}

inline json to_json(const RateResult& r) {
  json j{{"T_K", r.T},
         {"classical", to_json(r.classical)},
         {"rate", to_json(r.rate)},
         {"c_qm", r.c_qm},
         {"mu_cm1", r.mu},
         {"T0_K", r.T0},
         {"regime", std::string(to_string(r.regime))},
         {"qtst_valid", r.qtst_valid()},
         {"crossover_region", r.crossover_region()},
         {"terms_used", r.terms_used}};
  j["equilibrium"] = r.equilibrium ? to_json(*r.equilibrium) : json(nullptr);
  return j;
}

inline json to_json(const KIEPrediction& k) {
  return json{{"ratio", k.ratio},
              {"T_K", k.T},
              {"pair", to_string(k.pair)},
              {"T0_light_K", k.T0_light},
              {"valid", k.valid}};
}

inline json to_json(const ApparentArrhenius& a) {
  return json{{"prefactor_ratio", a.prefactor_ratio},
              {"dE_kj_mol", a.dE},
              {"expansion_dubious", a.expansion_dubious}};
}

inline json to_json(const CrossoverParams& c) { return json{{"B", c.B}, {"kappa", c.kappa}}; }

inline json to_json(const ClassificationReport& r) {
  json j{{"pair", to_string(r.pair)},
         {"kie_300K", r.kie_300K},
         {"A_ratio", r.A_ratio},
         {"dE_kj_mol", r.dE},
         {"bell_range", {r.bell_range.low, r.bell_range.high}},
         {"bell_below", r.bell_below},
         {"bell_above", r.bell_above},
         {"outside_bell", r.outside_bell()},
         {"kim_kreevoy_applicable", r.kim_kreevoy_applicable},
         {"referenced_limits", r.referenced_limits}};
  if (r.kim_kreevoy_applicable) {
    j["kim_kreevoy"] = {{"kie_exceeds", r.kie_exceeds},
                        {"dE_exceeds", r.dE_exceeds},
                        {"A_ratio_below", r.A_ratio_below}};
  } else {
    j["kim_kreevoy"] = nullptr;
  }
  return j;
}

inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json to_json(const fit::FitResult& f) {
  json cov = json::array();
  for (const auto& row : f.covariance) cov.push_back({finite_or_null(row[0]), finite_or_null(row[1])});
  return json{{"omega0_cm1", f.omega0},
              {"omegab_cm1", f.omegab},
              {"residual_norm", f.residual_norm},
              {"objective", f.objective},
              {"covariance", cov},
              {"stderr_omega0_cm1", finite_or_null(f.stderr_omega0())},
              {"stderr_omegab_cm1", finite_or_null(f.stderr_omegab())},
              {"implied_T0_K", f.implied_T0},
              {"valid", f.valid},
              {"n_starts", f.n_starts},
              {"n_starts_converged", f.n_starts_converged},
              {"iterations", f.iterations},
              {"residuals", f.residuals}};
}

inline json to_json(const fit::ArrheniusFit& f) {
  return json{{"A", f.params.A},
              {"E_kj_mol", f.params.E},
              {"A_stderr", f.A_stderr},
              {"E_stderr_kj_mol", f.E_stderr},
              {"slope_K", f.slope},
              {"intercept", f.intercept},
              {"residual_norm", f.residual_norm},
              {"n_points", f.n_points}};
}

}  // namespace qtst::io
