// qtst: command-line front end for the rate, KIE, friction and WKB modules.
//
// Exit codes: 0 success, 2 configuration or input error, 3 domain error,
// 4 fit failure.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "json_config.hpp"
#include "qtst/io/csv.hpp"
#include "qtst/io/json.hpp"
#include "qtst/io/reference.hpp"
#include "qtst/qtst.hpp"
#include "table.hpp"

namespace {

using namespace qtst;
using cli::Cell;
using cli::Table;
using ojson = nlohmann::ordered_json;

constexpr int exit_config = 2;
constexpr int exit_domain = 3;
constexpr int exit_fit = 4;

struct Common {
  std::string output;
  std::string format = "csv";
  std::string gnuplot;
  std::string config;
  bool dump_config = false;
};

struct Output {
  Table table;
  std::vector<int> plot_columns{2};
  bool log_y = false;
};

struct Command {
  CLI::App* app = nullptr;
  std::unique_ptr<Common> common;
  std::function<Output()> run;
  std::function<void(const Output&, const Common&)> after;  // extra files
};

// --- helpers -----------------------------------------------------------------

IsotopePair pair_option(const std::string& s) {
  try {
    return parse_pair(s);
  } catch (const domain_error& e) {
    throw config_error(e.what());
  }
}

Isotope isotope_option(const std::string& s) {
  try {
    return parse_isotope(s);
  } catch (const domain_error& e) {
    throw config_error(e.what());
  }
}

std::vector<double> numbers_from_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw config_error(what + ": '" + item + "' is not a number");
    }
  }
  return out;
}

/// Friction model from a JSON object, a JSON file, or `kind[:p1,p2,...]`.
spectral::FrictionModel parse_friction(const std::string& text) {
  const auto s = io::detail::trim(text);
  if (!s.empty() && s.front() == '{') {
    auto j = nlohmann::json::parse(s, nullptr, false);
    if (j.is_discarded()) throw config_error("friction: invalid JSON");
    return io::friction_from_json(j);
  }
  if (s.size() > 5 && s.substr(s.size() - 5) == ".json") {
    return io::friction_from_json(io::read_json(s));
  }
  const auto colon = s.find(':');
  const std::string kind = s.substr(0, colon);
  const std::vector<double> p =
      colon == std::string::npos ? std::vector<double>{} : numbers_from_list(s.substr(colon + 1), "friction");
  auto need = [&](std::size_t n) {
    if (p.size() != n) {
      throw config_error("friction '" + kind + "' takes " + std::to_string(n) + " parameters");
    }
  };
  spectral::FrictionModel m;
  if (kind == "ohmic") {
    need(1);
    m = spectral::Ohmic{p[0]};
  } else if (kind == "drude") {
    need(2);
    m = spectral::Drude{p[0], p[1]};
  } else if (kind == "peaked") {
    need(3);
    m = spectral::Peaked{p[0], p[1], p[2]};
  } else if (kind == "debye" || kind == "debye_dielectric") {
    spectral::DebyeDielectric d;
    if (!p.empty()) {
      need(1);
      d.cavity_radius = p[0];
    }
    m = d;
  } else if (kind == "linear_protein") {
    spectral::LinearProtein l;
    if (!p.empty()) {
      need(3);
      l = {p[0], p[1], p[2]};
    }
    m = l;
  } else {
    throw config_error("unknown friction kind '" + kind + "'");
  }
  try {
    spectral::validate(m);
  } catch (const domain_error& e) {
    throw config_error(e.what());
  }
  return m;
}

std::vector<double> grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw config_error("temperature grid: need tmax >= tmin and tstep > 0");
  std::vector<double> out;
  const long n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  if (n > 1000000) throw config_error("temperature grid: too many points");
  for (long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw config_error("grid: need at least one point");
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  return out;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("-o,--output", c.output, "Output file; '-' or empty writes to standard output");
  sub->add_option("--format", c.format, "Output format: csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--gnuplot", c.gnuplot, "Also write a gnuplot script for the CSV output to this path");
  sub->add_flag("--dump-config", c.dump_config, "Print the effective configuration as JSON and exit")
      ->configurable(false);
  sub->add_option("--config", c.config, "JSON file with option values (command-line flags take precedence)")
      ->configurable(false);
  sub->config_formatter(std::make_shared<cli::JsonConfig>());
}

// CLI11 only reads config files for the top-level app, so subcommands load
// theirs here. Options already given on the command line are left alone.
void apply_config(CLI::App* app, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot read config file '" + path + "'");
  std::vector<CLI::ConfigItem> items;
  try {
    items = cli::JsonConfig().from_config(in);
  } catch (const CLI::ConversionError& e) {
    throw config_error(path + ": " + e.what());
  }
  for (const auto& item : items) {
    CLI::Option* opt = app->get_option_no_throw("--" + item.name);
    if (opt == nullptr || !opt->get_configurable()) {
      throw config_error(path + ": unknown key '" + item.name + "'");
    }
    if (opt->count() > 0) continue;
    try {
      opt->add_result(item.inputs);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw config_error(path + ": key '" + item.name + "': " + e.what());
    }
  }
}

Command& new_command(std::vector<Command>& cmds, CLI::App* parent, const std::string& name,
                     const std::string& help) {
  Command c;
  c.app = parent->add_subcommand(name, help);
  c.common = std::make_unique<Common>();
  add_common(c.app, *c.common);
  cmds.push_back(std::move(c));
  return cmds.back();
}

// --- commands ----------------------------------------------------------------

struct KiePredictArgs {
  double omega0 = 3000, omegab = 1000, tmin = 275, tmax = 325, tstep = 5;
  std::string pair = "H:D";
};

Output kie_predict(const KiePredictArgs& a) {
  const auto pair = pair_option(a.pair);
  Output out;
  out.table.command = "kie predict";
  out.table.columns = {"T_K", "kie", "T0_light_K", "valid"};
  out.table.parameters = {{"omega0_cm1", a.omega0}, {"omegab_cm1", a.omegab}, {"pair", to_string(pair)}};
  int flagged = 0;
  for (double T : grid(a.tmin, a.tmax, a.tstep)) {
    try {
      const auto k = kie_qtst(a.omega0, a.omegab, T, pair.light, pair.heavy);
      out.table.add({T, k.ratio, k.T0_light, true});
    } catch (const below_crossover_error& e) {
      out.table.add({T, std::monostate{}, e.crossover(), false});
      ++flagged;
    }
  }
  if (flagged > 0) {
    std::cerr << "warning: " << flagged
              << " temperature(s) at or below the crossover temperature; rows flagged valid=false\n";
  }
  return out;
}

struct KieArrheniusArgs {
  double omega0 = 3000, omegab = 1000, tref = 288;
  std::string pair = "H:T";
};

Output kie_arrhenius(const KieArrheniusArgs& a) {
  const auto pair = pair_option(a.pair);
  const auto r = apparent_arrhenius(a.omega0, a.omegab, a.tref, pair.light, pair.heavy);
  Output out;
  out.table.command = "kie arrhenius";
  out.table.columns = {"pair", "T_R_K", "A_ratio", "dE_kj_mol", "expansion_dubious"};
  out.table.parameters = {{"omega0_cm1", a.omega0}, {"omegab_cm1", a.omegab}};
  out.table.add({to_string(pair), a.tref, r.prefactor_ratio, r.dE, r.expansion_dubious});
  if (r.expansion_dubious) std::cerr << "warning: hbar*omega0 < 4 k_B T_R, the expansion is dubious\n";
  return out;
}

struct FitArgs {
  std::string data, pair, curve;
};

Output fit_command(const FitArgs& a, std::string& curve_text) {
  std::optional<IsotopePair> pair;
  if (!a.pair.empty()) pair = pair_option(a.pair);
  if (a.data.empty()) throw config_error("fit: --data is required");
  const auto d = io::read_kie_dataset(a.data, pair);
  const auto r = fit::fit_kie(d);
  Output out;
  out.table.command = "fit";
  out.table.columns = {"omega0_cm1", "omegab_cm1", "stderr_omega0_cm1", "stderr_omegab_cm1",
                       "implied_T0_K", "valid", "residual_norm", "n_starts_converged"};
  out.table.parameters = {{"data", a.data}, {"pair", to_string(d.pair)}, {"label", d.label}};
  out.table.add({r.omega0, r.omegab, cli::number_or_empty(r.stderr_omega0()),
                 cli::number_or_empty(r.stderr_omegab()), r.implied_T0, r.valid, r.residual_norm,
                 static_cast<long>(r.n_starts_converged)});
  ojson summary = ojson::parse(io::to_json(r).dump());
  summary["label"] = d.label;
  summary["source"] = d.source;
  summary["n_points"] = d.points.size();
  out.table.summary = summary;
  if (!r.valid) std::cerr << "warning: lowest data temperature is within 5% of the fitted T0\n";

  // Model curve over the data range for plotting.
  double lo = 1e300, hi = 0.0;
  for (const auto& p : d.points) {
    lo = std::min(lo, p.T);
    hi = std::max(hi, p.T);
  }
  Table curve;
  curve.command = "fit curve";
  curve.columns = {"T_K", "kie_model"};
  for (double T : linspace(lo, hi, 101)) {
    try {
      curve.add({T, kie_qtst(r.omega0, r.omegab, T, d.pair.light, d.pair.heavy).ratio});
    } catch (const below_crossover_error&) {
      curve.add({T, std::monostate{}});
    }
  }
  curve_text = cli::to_csv(curve);
  return out;
}

struct ArrheniusArgs {
  std::string data;
};

Output arrhenius_command(const ArrheniusArgs& a) {
  if (a.data.empty()) throw config_error("arrhenius: --data is required");
  const auto r = fit::fit_arrhenius(io::read_rate_csv(a.data));
  Output out;
  out.table.command = "arrhenius";
  out.table.columns = {"A", "E_kj_mol", "A_stderr", "E_stderr_kj_mol", "residual_norm", "n_points"};
  out.table.parameters = {{"data", a.data}};
  out.table.add({r.params.A, r.params.E, r.A_stderr, r.E_stderr, r.residual_norm, static_cast<long>(r.n_points)});
  return out;
}

struct CrossoverArgs {
  double omegab = 1000, gamma_max = 3000;
  int points = 31;
  std::string omega_D = "100,1000,10000";
};

Output crossover_command(const CrossoverArgs& a) {
  Output out;
  out.table.command = "crossover";
  out.table.columns = {"gamma_cm1", "omega_D_cm1", "mu_cm1", "T0_K"};
  out.table.parameters = {{"omegab_cm1", a.omegab}, {"omega_D_cm1", a.omega_D}};
  out.plot_columns = {4};
  const BarrierSystem sys{3000.0, a.omegab, 0.0, Isotope::H};
  for (double wD : numbers_from_list(a.omega_D, "omega-D")) {
    for (double g : linspace(0.0, a.gamma_max, a.points)) {
      const auto eb = effective_barrier_frequency(sys, spectral::Drude{g, wD});
      out.table.add({g, wD, eb.mu, eb.T0});
    }
  }
  return out;
}

struct ClassifyArgs {
  std::string dataset, row, pair = "H:D", limits;
  double kie = 0, A_ratio = 0, dE = 0;
};

Output classify_command(const ClassifyArgs& a, const CLI::App* app) {
  const auto limits = a.limits.empty() ? io::load_limits() : io::load_limits(a.limits);
  Output out;
  out.table.command = "classify";
  out.table.columns = {"system", "pair", "kie_300K", "A_ratio", "dE_kj_mol", "kk_kie", "kk_dE",
                       "kk_A_ratio", "bell_low", "bell_high", "outside_bell"};
  out.table.parameters = {{"limits_version", limits.version}};
  auto add_row = [&](const std::string& name, IsotopePair pair, std::optional<double> kie,
                     std::optional<double> A, std::optional<double> dE) {
    const auto r = classify(kie.value_or(NAN), A.value_or(NAN), dE.value_or(NAN), pair, limits);
    auto flag = [&](bool applicable, bool v) -> Cell {
      if (!applicable) return std::monostate{};
      return v;
    };
    const bool kk = r.kim_kreevoy_applicable;
    out.table.add({name, to_string(pair), cli::number_or_empty(r.kie_300K), cli::number_or_empty(r.A_ratio),
                   cli::number_or_empty(r.dE), flag(kk && kie, r.kie_exceeds), flag(kk && dE, r.dE_exceeds),
                   flag(kk && A, r.A_ratio_below), r.bell_range.low, r.bell_range.high,
                   flag(A.has_value(), r.outside_bell())});
  };
  if (!a.dataset.empty()) {
    if (a.dataset != "table1") throw config_error("classify: unknown dataset '" + a.dataset + "'");
    for (const auto& row : io::load_table1()) {
      if (!a.row.empty() && row.system.find(a.row) == std::string::npos) continue;
      add_row(row.system, row.pair, row.kie_300K, row.A_ratio, row.dE);
    }
    if (out.table.rows.empty()) throw config_error("classify: no table1 row matches '" + a.row + "'");
    out.table.parameters["dataset"] = a.dataset;
  } else {
    for (const char* name : {"--kie", "--A-ratio", "--dE"}) {
      if (app->get_option(name)->count() == 0) {
        throw config_error(std::string("classify: give --dataset table1 or all of --kie, --A-ratio, --dE (missing ") +
                           name + ")");
      }
    }
    add_row("user", pair_option(a.pair), a.kie, a.A_ratio, a.dE);
  }
  return out;
}

struct RateArgs {
  double omega0 = 3000, omegab = 1000, barrier = 40, tmin = 250, tmax = 350, tstep = 10;
  std::string isotope = "H", friction = "ohmic:0";
};

Output rate_command(const RateArgs& a) {
  const BarrierSystem sys{a.omega0, a.omegab, a.barrier, isotope_option(a.isotope)};
  const auto model = parse_friction(a.friction);
  Output out;
  out.table.command = "rate";
  out.table.columns = {"T_K", "k", "c_qm", "regime", "k_classical", "mu_cm1"};
  out.table.parameters = {{"barrier", ojson::parse(io::to_json(sys).dump())},
                          {"friction", ojson::parse(io::to_json(model).dump())},
                          {"rate_unit", "1/s"}};
  out.log_y = true;
  for (double T : grid(a.tmin, a.tmax, a.tstep)) {
    try {
      const auto r = quantum_rate(sys, model, T);
      out.table.add({T, r.rate.per_second, r.c_qm, std::string(to_string(r.regime)), r.classical.per_second, r.mu});
    } catch (const below_crossover_error&) {
      const auto k = classical_rate(sys, model, T);
      const auto eb = effective_barrier_frequency(sys, model);
      out.table.add({T, std::monostate{}, std::monostate{}, std::string(to_string(Regime::invalid_below_T0)),
                     k.per_second, eb.mu});
    }
  }
  return out;
}

struct CorrectionArgs {
  double omega0 = 3000, omegab = 1000, kappa = 10, tmin = 0, tmax = 0;
  int points = 60;
  std::string isotope = "H", friction = "ohmic:0";
};

Output correction_command(const CorrectionArgs& a) {
  const BarrierSystem sys{a.omega0, a.omegab, 0.0, isotope_option(a.isotope)};
  const auto model = parse_friction(a.friction);
  const double T0 = crossover_temperature(sys.omegab());
  const double lo = a.tmin > 0 ? a.tmin : 0.92 * T0;
  const double hi = a.tmax > 0 ? a.tmax : 3.0 * T0;
  Output out;
  out.table.command = "correction";
  out.table.columns = {"T_K", "T_over_T0", "c_closed", "c_product", "c_crossover", "regime"};
  out.table.parameters = {{"barrier", ojson::parse(io::to_json(sys).dump())},
                          {"friction", ojson::parse(io::to_json(model).dump())},
                          {"kappa", a.kappa},
                          {"T0_K", T0}};
  out.plot_columns = {3, 4, 5};
  out.log_y = true;
  for (double T : linspace(lo, hi, a.points)) {
    Cell closed = std::monostate{}, product = std::monostate{}, cross = std::monostate{};
    Regime regime = regime_for(T, T0);
    try {
      closed = correction_closed(sys.omega0(), sys.omegab(), T).c_qm;
    } catch (const below_crossover_error&) {
    }
    try {
      const auto p = correction_product(sys, model, T);
      product = p.c_qm;
      regime = p.regime;
    } catch (const below_crossover_error&) {
      regime = Regime::invalid_below_T0;
    }
    try {
      cross = correction_crossover(sys, T, a.kappa).c_qm;
    } catch (const below_crossover_error&) {
    }
    out.table.add({T, T / T0, closed, product, cross, std::string(to_string(regime))});
  }
  return out;
}

struct SpectralArgs {
  std::string friction = "drude:100,200";
  double mass = 1, wmin = 0, wmax = 2000, reorganisation = 0, dipole = 0;
  int points = 201;
};

Output spectral_command(const SpectralArgs& a, const CLI::App* app) {
  Output out;
  if (app->get_option("--dipole-change")->count() > 0) {
    const auto c = spectral::chromophore_estimate(a.reorganisation, a.dipole, a.mass);
    out.table.command = "spectral chromophore";
    out.table.columns = {"E_R_cm1", "delta_mu_D", "conversion_cm1", "Ke_per_mass_cm2", "bound_scale_cm1"};
    out.table.add({c.reorganisation_energy, c.dipole_change, c.conversion, c.curvature.per_mass, c.bound_scale});
    out.table.parameters = {{"mass_number", a.mass}};
    return out;
  }
  const auto model = parse_friction(a.friction);
  std::optional<double> ke;
  try {
    ke = spectral::effective_curvature(model, a.mass).per_mass;
  } catch (const divergence_error&) {
  }
  out.table.command = "spectral";
  out.table.columns = {"omega_cm1", "re_gamma_cm1", "J_cm2", "gamma_hat_cm1", "kernel_bound_cm1"};
  out.table.parameters = {{"friction", ojson::parse(io::to_json(model).dump())}, {"mass_number", a.mass}};
  out.table.summary = {{"Ke_per_mass_cm2", ke ? ojson(*ke) : ojson(nullptr)},
                       {"Ke_cm2", ke ? ojson(*ke * a.mass) : ojson(nullptr)}};
  out.plot_columns = {2, 4};
  for (double w : linspace(a.wmin, a.wmax, a.points)) {
    const Cell hat = w > 0 ? Cell(spectral::laplace_kernel(model, w)) : Cell(std::monostate{});
    const Cell bound = (w > 0 && ke) ? Cell(*ke / w) : Cell(std::monostate{});
    out.table.add({w, spectral::friction_spectrum(model, w), spectral::spectral_density(model, w, a.mass), hat, bound});
  }
  return out;
}

struct WkbArgs {
  std::string potential = "parabolic", table;
  double barrier = 40, omegab = 1000, omega0 = 3000, width = 0.5, mass = 1, emin = 0.05, emax = 0.95;
  int points = 19;
};

Output wkb_command(const WkbArgs& a) {
  wkb::Potential1D U;
  if (a.potential == "parabolic") {
    U = wkb::Parabolic{a.barrier, a.omegab, a.mass};
  } else if (a.potential == "eckart") {
    U = wkb::Eckart{a.barrier, a.width, a.mass};
  } else if (a.potential == "cubic") {
    U = wkb::Cubic{a.omega0, a.barrier, a.mass};
  } else if (a.potential == "tabulated") {
    if (a.table.empty()) throw config_error("wkb: --table is required for a tabulated potential");
    U = io::read_potential_csv(a.table, a.mass);
  } else {
    throw config_error("wkb: unknown potential '" + a.potential + "'");
  }
  const auto top = wkb::barrier_top(U);
  Output out;
  out.table.command = "wkb";
  out.table.columns = {"E_kj_mol", "E_over_Eb", "x1_angstrom", "x2_angstrom", "action_hbar", "transmission"};
  out.table.parameters = {{"potential", a.potential}, {"barrier_top_kj_mol", top.energy},
                          {"barrier_top_x_angstrom", top.x}, {"mass_number", wkb::mass_of(U)}};
  out.plot_columns = {6};
  out.log_y = true;
  for (double f : linspace(a.emin, a.emax, a.points)) {
    const double E = f * top.energy;
    const auto [x1, x2] = wkb::turning_points(U, E);
    const double S = wkb::wkb_action(U, E);
    out.table.add({E, f, x1, x2, S, wkb::transmission(U, E)});
  }
  return out;
}

struct SwainSchaadArgs {
  double kH = 0, kD = 0, kT = 0;
  bool semiclassical = false;
};

Output swain_schaad_command(const SwainSchaadArgs& a, const CLI::App* app) {
  Output out;
  out.table.command = "swain-schaad";
  out.table.columns = {"exponent", "mode"};
  if (a.semiclassical) {
    out.table.add({semiclassical_swain_schaad(), std::string("semiclassical")});
    return out;
  }
  for (const char* name : {"--kH", "--kD", "--kT"}) {
    if (app->get_option(name)->count() == 0) {
      throw config_error(std::string("swain-schaad: give --semiclassical or all of --kH, --kD, --kT (missing ") +
                         name + ")");
    }
  }
  out.table.add({swain_schaad(a.kH, a.kD, a.kT), std::string("rates")});
  out.table.parameters = {{"kH", a.kH}, {"kD", a.kD}, {"kT", a.kT}};
  return out;
}

// --- output --------------------------------------------------------------------

void emit(const Output& out, const Common& c) {
  const bool json = c.format == "json";
  cli::write_text(json ? cli::to_json_text(out.table) : cli::to_csv(out.table), c.output);
  if (!c.gnuplot.empty()) {
    if (json) throw config_error("--gnuplot needs --format csv");
    if (c.output.empty() || c.output == "-") throw config_error("--gnuplot needs --output FILE");
    cli::write_text(cli::gnuplot_script(out.table, c.output, out.plot_columns, out.log_y), c.gnuplot);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum transition state theory for hydrogen transfer: rates, KIEs, friction and tunneling"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  std::vector<Command> cmds;
  cmds.reserve(16);

  // kie predict / kie arrhenius
  auto* kie = app.add_subcommand("kie", "Kinetic isotope effect predictions");
  kie->require_subcommand(1);
  KiePredictArgs kp;
  {
    auto& c = new_command(cmds, kie, "predict", "KIE curve over a temperature grid");
    c.app->add_option("--omega0", kp.omega0, "Reactant-well frequency for H [cm^-1]");
    c.app->add_option("--omegab", kp.omegab, "Barrier frequency for H [cm^-1]");
    c.app->add_option("--pair", kp.pair, "Isotope pair light:heavy, e.g. H:D");
    c.app->add_option("--tmin", kp.tmin, "Lowest temperature [K]");
    c.app->add_option("--tmax", kp.tmax, "Highest temperature [K]");
    c.app->add_option("--tstep", kp.tstep, "Temperature step [K]");
    c.run = [&] { return kie_predict(kp); };
  }
  KieArrheniusArgs ka;
  {
    auto& c = new_command(cmds, kie, "arrhenius", "Apparent Arrhenius parameters of the KIE");
    c.app->add_option("--omega0", ka.omega0, "Reactant-well frequency for H [cm^-1]");
    c.app->add_option("--omegab", ka.omegab, "Barrier frequency for H [cm^-1]");
    c.app->add_option("--tref", ka.tref, "Expansion temperature T_R [K]");
    c.app->add_option("--pair", ka.pair, "Isotope pair light:heavy, e.g. H:T");
    c.run = [&] { return kie_arrhenius(ka); };
  }
  FitArgs fa;
  std::string curve_text;
  {
    auto& c = new_command(cmds, &app, "fit", "Fit omega0 and omegab to KIE(T) data (CSV: T_K,kie[,sigma])");
    c.app->add_option("--data", fa.data, "KIE data CSV [T_K in K, kie dimensionless, sigma absolute]");
    c.app->add_option("--pair", fa.pair, "Isotope pair light:heavy; overrides the dataset sidecar");
    c.app->add_option("--curve", fa.curve, "Model-curve CSV path (default: <output>_curve.csv)");
    c.run = [&] { return fit_command(fa, curve_text); };
    c.after = [&](const Output&, const Common& common) {
      std::string path = fa.curve;
      if (path.empty() && !common.output.empty() && common.output != "-") {
        std::filesystem::path p(common.output);
        path = (p.parent_path() / (p.stem().string() + "_curve.csv")).string();
      }
      if (!path.empty()) cli::write_text(curve_text, path);
    };
  }
  ArrheniusArgs aa;
  {
    auto& c = new_command(cmds, &app, "arrhenius", "Arrhenius regression of rate data (CSV: T_K,k)");
    c.app->add_option("--data", aa.data, "Rate CSV [T_K in K, k in any rate unit]");
    c.run = [&] { return arrhenius_command(aa); };
  }
  CrossoverArgs ca;
  {
    auto& c = new_command(cmds, &app, "crossover", "Crossover temperature versus Drude friction strength");
    c.app->add_option("--omegab", ca.omegab, "Barrier frequency [cm^-1]");
    c.app->add_option("--omega-D", ca.omega_D, "Comma-separated Drude bath frequencies [cm^-1]");
    c.app->add_option("--gamma-max", ca.gamma_max, "Largest friction strength gamma [cm^-1]");
    c.app->add_option("--points", ca.points, "Number of gamma values [count]");
    c.run = [&] { return crossover_command(ca); };
  }
  ClassifyArgs cl;
  {
    auto& c = new_command(cmds, &app, "classify", "Kim-Kreevoy and Bell-range flags");
    c.app->add_option("--dataset", cl.dataset, "Bundled dataset to classify: table1");
    c.app->add_option("--row", cl.row, "Only rows whose system name contains this text");
    c.app->add_option("--kie", cl.kie, "KIE at 300 K [dimensionless]");
    c.app->add_option("--A-ratio", cl.A_ratio, "Prefactor ratio A_light/A_heavy [dimensionless]");
    c.app->add_option("--dE", cl.dE, "Activation energy difference E_heavy - E_light [kJ/mol]");
    c.app->add_option("--pair", cl.pair, "Isotope pair light:heavy");
    c.app->add_option("--limits", cl.limits, "Limits JSON (default: bundled limits.json)");
    auto* app_ptr = c.app;
    c.run = [&, app_ptr] { return classify_command(cl, app_ptr); };
  }
  RateArgs ra;
  {
    auto& c = new_command(cmds, &app, "rate", "Classical and quantum rates over a temperature grid");
    c.app->add_option("--omega0", ra.omega0, "Reactant-well frequency for H [cm^-1]");
    c.app->add_option("--omegab", ra.omegab, "Barrier frequency for H [cm^-1]");
    c.app->add_option("--barrier", ra.barrier, "Activation barrier E_b [kJ/mol]");
    c.app->add_option("--isotope", ra.isotope, "Transferred isotope: H, D or T");
    c.app->add_option("--friction", ra.friction,
                      "Friction: kind[:params] with params in cm^-1 (ohmic:gamma, drude:gamma,omega_D, "
                      "peaked:gamma_r,Gamma,omega_r, debye[:radius_angstrom], "
                      "linear_protein[:delta_gamma,slope,cutoff]) or JSON");
    c.app->add_option("--tmin", ra.tmin, "Lowest temperature [K]");
    c.app->add_option("--tmax", ra.tmax, "Highest temperature [K]");
    c.app->add_option("--tstep", ra.tstep, "Temperature step [K]");
    c.run = [&] { return rate_command(ra); };
  }
  CorrectionArgs co;
  {
    auto& c = new_command(cmds, &app, "correction", "Quantum correction factors versus temperature");
    c.app->add_option("--omega0", co.omega0, "Reactant-well frequency for H [cm^-1]");
    c.app->add_option("--omegab", co.omegab, "Barrier frequency for H [cm^-1]");
    c.app->add_option("--isotope", co.isotope, "Transferred isotope: H, D or T");
    c.app->add_option("--kappa", co.kappa, "Non-parabolicity parameter kappa at T0 [dimensionless]");
    c.app->add_option("--friction", co.friction, "Friction model, as for 'rate' [cm^-1]");
    c.app->add_option("--tmin", co.tmin, "Lowest temperature [K]; 0 selects 0.92 T0");
    c.app->add_option("--tmax", co.tmax, "Highest temperature [K]; 0 selects 3 T0");
    c.app->add_option("--points", co.points, "Number of temperatures [count]");
    c.run = [&] { return correction_command(co); };
  }
  SpectralArgs sa;
  {
    auto& c = new_command(cmds, &app, "spectral", "Friction spectrum, spectral density and Laplace kernel");
    c.app->add_option("--friction", sa.friction, "Friction model, as for 'rate' [cm^-1]");
    c.app->add_option("--mass", sa.mass, "Particle mass [proton masses]");
    c.app->add_option("--wmin", sa.wmin, "Lowest frequency [cm^-1]");
    c.app->add_option("--wmax", sa.wmax, "Highest frequency [cm^-1]");
    c.app->add_option("--points", sa.points, "Number of frequencies [count]");
    c.app->add_option("--reorganisation-energy", sa.reorganisation,
                      "Chromophore reorganisation energy E_R [cm^-1]");
    c.app->add_option("--dipole-change", sa.dipole,
                      "Chromophore dipole change [debye]; selects the chromophore estimate");
    auto* app_ptr = c.app;
    c.run = [&, app_ptr] { return spectral_command(sa, app_ptr); };
  }
  WkbArgs wa;
  {
    auto& c = new_command(cmds, &app, "wkb", "WKB action and transmission below the barrier top");
    c.app->add_option("--potential", wa.potential, "parabolic, eckart, cubic or tabulated");
    c.app->add_option("--barrier", wa.barrier, "Barrier height E_b (Eckart V0) [kJ/mol]");
    c.app->add_option("--omegab", wa.omegab, "Barrier frequency, parabolic [cm^-1]");
    c.app->add_option("--omega0", wa.omega0, "Well frequency, cubic [cm^-1]");
    c.app->add_option("--width", wa.width, "Eckart width [angstrom]");
    c.app->add_option("--mass", wa.mass, "Particle mass [proton masses]");
    c.app->add_option("--table", wa.table, "Tabulated potential CSV [x_angstrom in angstrom, U_kJ_per_mol in kJ/mol]");
    c.app->add_option("--emin", wa.emin, "Lowest energy as a fraction of E_b [dimensionless]");
    c.app->add_option("--emax", wa.emax, "Highest energy as a fraction of E_b [dimensionless]");
    c.app->add_option("--points", wa.points, "Number of energies [count]");
    c.run = [&] { return wkb_command(wa); };
  }
  SwainSchaadArgs ss;
  {
    auto& c = new_command(cmds, &app, "swain-schaad", "Swain-Schaad exponent ln(kH/kT)/ln(kD/kT)");
    c.app->add_option("--kH", ss.kH, "H rate [any rate unit, same for all three]");
    c.app->add_option("--kD", ss.kD, "D rate [same unit as kH]");
    c.app->add_option("--kT", ss.kT, "T rate [same unit as kH]");
    c.app->add_flag("--semiclassical", ss.semiclassical, "Zero-point-energy limit with unit prefactor ratios");
    auto* app_ptr = c.app;
    c.run = [&, app_ptr] { return swain_schaad_command(ss, app_ptr); };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_config;
  }

  for (auto& c : cmds) {
    if (!c.app->parsed()) continue;
    try {
      if (!c.common->config.empty()) apply_config(c.app, c.common->config);
      if (c.common->dump_config) {
        std::cout << c.app->config_to_str(true, false);
        return 0;
      }
      const Output out = c.run();
      emit(out, *c.common);
      if (c.after) c.after(out, *c.common);
      return 0;
    } catch (const fit_error& e) {
      std::cerr << "fit failed: " << e.what() << "\n";
      return exit_fit;
    } catch (const config_error& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return exit_config;
    } catch (const incompatible_units_error& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return exit_config;
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return exit_config;
    } catch (const qtst::error& e) {
      std::cerr << "domain error: " << e.what() << "\n";
      return exit_domain;
    }
  }
  return exit_config;
}
