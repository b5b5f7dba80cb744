// Acceptance checks.  Prints one PASS/FAIL line per criterion with the measured
// quantities and exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qtst/io/reference.hpp"
#include "qtst/qtst.hpp"

using namespace qtst;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::vector<double> lin(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / (n - 1));
  return v;
}

Outcome table_two() {
  const auto t = std::chrono::steady_clock::now();
  const auto ht = apparent_arrhenius(3000.0, 1000.0, 288.0, Isotope::H, Isotope::T);
  const auto dt = apparent_arrhenius(3000.0, 1000.0, 288.0, Isotope::D, Isotope::T);
  const double s = seconds_since(t);
  const bool ok = std::abs(ht.dE - 16.0) <= 0.5 && std::abs(ht.prefactor_ratio - 0.08) <= 0.015 &&
                  std::abs(dt.dE - 3.6) <= 0.2 && std::abs(dt.prefactor_ratio - 0.70) <= 0.05 && s < 1.0;
  return {ok, fmt("E_T-E_H=%.4f kJ/mol A_H/A_T=%.4f E_T-E_D=%.4f kJ/mol A_D/A_T=%.4f (%.3g s)", ht.dE,
                  ht.prefactor_ratio, dt.dE, dt.prefactor_ratio, s)};
}

Outcome crossover_constant() {
  bool ok = true;
  std::string d;
  for (double mu : {100.0, 1000.0, 1300.0}) {
    const double T0 = crossover_temperature(mu);
    const double rel = std::abs(T0 / (0.2299 * mu) - 1.0);
    ok = ok && rel < 0.005;
    d += fmt("T0(%g)=%.4f K (%.2e) ", mu, T0, rel);
  }
  const double t1300 = crossover_temperature(1300.0);
  ok = ok && t1300 >= 295.0 && t1300 <= 305.0;
  return {ok, d};
}

Outcome product_identity() {
  const BarrierSystem sys{3000.0, 1000.0, 40.0, Isotope::H};
  const double T0 = crossover_temperature(1000.0);
  const auto t = std::chrono::steady_clock::now();
  double gap = 0.0;
  for (double r : lin(1.05, 5.0, 100)) {
    const double T = r * T0;
    const double p = correction_product(sys, spectral::Ohmic{0.0}, T).c_qm;
    gap = std::max(gap, std::abs(p / correction_closed(3000.0, 1000.0, T).c_qm - 1.0));
  }
  const double s = seconds_since(t);
  return {gap < 1e-6 && s < 5.0, fmt("max relative gap %.3e over 100 points (%.3g s)", gap, s)};
}

Outcome crossover_correction() {
  const BarrierSystem sys{3000.0, 1000.0, 40.0, Isotope::H};
  const double T0 = crossover_temperature(1000.0);
  double gap = 0.0, at = 0.0;
  for (double r : lin(1.1, 5.0, 391)) {
    const double T = r * T0;
    const double g = std::abs(correction_crossover(sys, T, 10.0).c_qm / correction_closed(3000.0, 1000.0, T).c_qm - 1.0);
    if (g > gap) {
      gap = g;
      at = r;
    }
  }
  const double c0 = correction_crossover(sys, T0, 10.0).c_qm;
  const bool finite = std::isfinite(c0);
  return {gap < 0.05 && finite,
          fmt("max |ratio-1| = %.4f at T = %.3f T0 (need < 0.05); value at T0 = %.6g (%s)", gap, at, c0,
              finite ? "finite" : "not finite")};
}

Outcome classical_bounds() {
  const BarrierSystem sys{3000.0, 1000.0, 40.0, Isotope::H};
  double worst = 0.0, lo_hd = 1e9, hi_hd = 0.0, lo_ht = 1e9, hi_ht = 0.0;
  for (double r : lin(0.0, 100.0, 1001)) {
    const spectral::Ohmic m{r * 1000.0};
    const double hd = classical_kie(sys, m, 300.0, Isotope::H, Isotope::D);
    const double ht = classical_kie(sys, m, 300.0, Isotope::H, Isotope::T);
    lo_hd = std::min(lo_hd, hd);
    hi_hd = std::max(hi_hd, hd);
    lo_ht = std::min(lo_ht, ht);
    hi_ht = std::max(hi_ht, ht);
    worst = std::max({worst, 1.0 - hd, hd - 1.41422, 1.0 - ht, ht - 1.73206});
  }
  return {worst < 1e-9, fmt("H/D in [%.9f, %.9f], H/T in [%.9f, %.9f]", lo_hd, hi_hd, lo_ht, hi_ht)};
}

Outcome swain_schaad_value() {
  const double v = semiclassical_swain_schaad();
  return {std::abs(v - 3.26) <= 0.01, fmt("exponent %.6f", v)};
}

fit::KIEDataset synthetic(double noise, std::uint64_t seed) {
  fit::KIEDataset d;
  d.pair = {Isotope::H, Isotope::D};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (double T : lin(275.0, 320.0, 10)) {
    const double k = kie_qtst(3000.0, 1000.0, T, Isotope::H, Isotope::D).ratio;
    d.points.push_back({T, k * (1.0 + noise * gauss(rng)), std::nullopt});
  }
  return d;
}

Outcome fit_recovery() {
  const auto t = std::chrono::steady_clock::now();
  const auto clean = fit::fit_kie(synthetic(0.0, 20240607ULL));
  const auto noisy = fit::fit_kie(synthetic(0.02, 20240607ULL));
  const double s = seconds_since(t);
  const double e0 = std::max(std::abs(clean.omega0 / 3000.0 - 1.0), std::abs(clean.omegab / 1000.0 - 1.0));
  const double e1 = std::max(std::abs(noisy.omega0 / 3000.0 - 1.0), std::abs(noisy.omegab / 1000.0 - 1.0));
  return {e0 < 1e-6 && e1 < 0.05 && s < 10.0,
          fmt("noiseless max rel err %.2e; 2%% noise (seed 20240607) w0=%.1f wb=%.1f max rel err %.4f (%.3g s)", e0,
              noisy.omega0, noisy.omegab, e1, s)};
}

Outcome digitized_fit() {
  const auto d = io::read_kie_dataset(io::data_path("fig4_mao.csv"));
  const auto r = fit::fit_kie(d);
  const bool ok = r.omega0 >= 1900.0 && r.omega0 <= 2300.0 && r.implied_T0 >= 220.0 && r.implied_T0 <= 260.0;
  return {ok, fmt("w0=%.1f cm^-1 wb=%.1f cm^-1 T0=%.1f K", r.omega0, r.omegab, r.implied_T0)};
}

Outcome wkb_parabolic() {
  const wkb::Parabolic p{40.0, 1000.0, 1.0};
  const double hw = wavenumber_to_kj_mol(1000.0);
  double es = 0.0, et = 0.0;
  for (double f : lin(0.05, 0.95, 91)) {
    const double E = f * 40.0;
    const double exact = std::numbers::pi * (40.0 - E) / hw;
    es = std::max(es, std::abs(wkb::wkb_action(p, E) / exact - 1.0));
    et = std::max(et, std::abs(wkb::transmission(p, E) / std::exp(-2.0 * exact) - 1.0));
  }
  return {es < 1e-8 && et < 1e-7, fmt("max rel err action %.2e, transmission %.2e", es, et)};
}

Outcome friction_bound() {
  const std::vector<spectral::FrictionModel> models{spectral::Drude{100.0, 200.0}, spectral::Drude{3000.0, 5.0},
                                                    spectral::Peaked{40.0, 10.0, 100.0},
                                                    spectral::Peaked{500.0, 1000.0, 20.0}};
  double worst = -1e300;
  int n = 0;
  for (const auto& m : models) {
    for (int i = 0; i <= 400; ++i) {
      const double z = std::pow(10.0, 4.0 * i / 400.0);
      const double bound = spectral::kernel_upper_bound(m, z);
      worst = std::max(worst, spectral::laplace_kernel(m, z) / bound - 1.0);
      ++n;
    }
  }
  return {worst <= 1e-9, fmt("max (kernel/bound - 1) = %.3e over %d points", worst, n)};
}

Outcome correction_at_least_one() {
  double lowest = 1e300;
  int n = 0;
  for (double w0 : {1500.0, 3000.0}) {
    for (double wb : {500.0, 1000.0}) {
      for (double g : {0.0, 0.1, 1.0}) {
        const BarrierSystem sys{w0, wb, 40.0, Isotope::H};
        const spectral::Ohmic m{g * wb};
        const double T0 = effective_barrier_frequency(sys, m).T0;
        for (double r : {1.0011, 1.01, 1.05, 1.1, 1.5, 2.0, 3.0, 5.0, 10.0}) {
          lowest = std::min(lowest, correction_product(sys, m, r * T0).c_qm);
          ++n;
        }
      }
    }
  }
  return {lowest >= 1.0, fmt("min c_qm = %.6f over %d grid points", lowest, n)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Table II apparent Arrhenius parameters", table_two},
      {"crossover temperature constant", crossover_constant},
      {"Matsubara product equals closed form", product_identity},
      {"crossover correction agreement", crossover_correction},
      {"classical KIE bounds", classical_bounds},
      {"semiclassical Swain-Schaad exponent", swain_schaad_value},
      {"fit recovery on synthetic data", fit_recovery},
      {"digitized monoamine oxidase fit", digitized_fit},
      {"WKB parabolic oracle", wkb_parabolic},
      {"friction kernel upper bound", friction_bound},
      {"quantum correction at least one", correction_at_least_one},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
