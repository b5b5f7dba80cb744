#pragma once

// Kinetic isotope effects in the weak-friction QTST limit.

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "qtst/error.hpp"
#include "qtst/kramers.hpp"
#include "qtst/numerics.hpp"
#include "qtst/units.hpp"

namespace qtst {

struct ArrheniusParams {
  double A = 1.0;  // prefactor (1/s for rates, dimensionless for ratios)
  double E = 0.0;  // activation energy, kJ/mol
};

struct KIEPrediction {
  double ratio = 1.0;
  double T = 0.0;
  IsotopePair pair;
  double T0_light = 0.0;
  bool valid = true;
};

struct ApparentArrhenius {
  double prefactor_ratio = 1.0;  // A_light / A_heavy
  double dE = 0.0;               // E_heavy - E_light, kJ/mol
  bool expansion_dubious = false;  // hbar w0 < 4 k_B T_R
};

namespace detail {

inline void check_pair(Isotope light, Isotope heavy, std::string_view who) {
  if (mass_number(light) > mass_number(heavy)) {
    throw domain_error(std::string(who) + ": light isotope " + std::string(to_string(light)) +
                       " is heavier than " + std::string(to_string(heavy)));
  }
}

}  // namespace detail

/// k_L/k_H = sqrt(mH/mL) sinh(x0/sqrt(mL))/sinh(x0/sqrt(mH)) sin(xb/sqrt(mH))/sin(xb/sqrt(mL))
/// with x = hbar w/(2 k_B T) for the hydrogen frequencies.  No validity check.
inline double kie_ratio(double omega0_H, double omegab_H, double T, double m_light, double m_heavy) {
  const double sl = std::sqrt(m_light);
  const double sh = std::sqrt(m_heavy);
  const double x0 = reduced_energy(omega0_H, T) / 2.0;
  const double xb = reduced_energy(omegab_H, T) / 2.0;
  // Both ratios tend to ratios of their arguments as the frequency vanishes.
  const double sinh_part = (x0 == 0.0 || sl == sh) ? sh / sl : numerics::sinh_ratio(x0 / sl, x0 / sh);
  const double sin_part = (xb == 0.0 || sl == sh) ? sl / sh : std::sin(xb / sh) / std::sin(xb / sl);
  return (sh / sl) * sinh_part * sin_part;
}

/// QTST KIE.  Valid only above the crossover temperature of the light isotope.
inline KIEPrediction kie_qtst(double omega0_H, double omegab_H, double T, Isotope light,
                              Isotope heavy) {
  if (!(omega0_H >= 0.0) || !(omegab_H >= 0.0)) {
    throw domain_error("kie_qtst: frequencies must be >= 0");
  }
  if (!(T > 0.0)) throw domain_error("kie_qtst: T must be > 0");
  detail::check_pair(light, heavy, "kie_qtst");
  KIEPrediction out;
  out.T = T;
  out.pair = {light, heavy};
  out.T0_light = crossover_temperature(isotope_frequency(omegab_H, light));
  if (!(T > out.T0_light)) {
    throw below_crossover_error("kie_qtst: T = " + std::to_string(T) +
                                    " K is not above the crossover temperature of isotope " +
                                    std::string(to_string(light)) + " (T0 = " +
                                    std::to_string(out.T0_light) + " K)",
                                T, out.T0_light);
  }
  out.ratio = kie_ratio(omega0_H, omegab_H, T, mass_number(light), mass_number(heavy));
  return out;
}

/// Apparent Arrhenius parameters of the KIE expanded linearly in 1/T around T_R.
inline ApparentArrhenius apparent_arrhenius(double omega0_H, double omegab_H, double T_R,
                                            Isotope light, Isotope heavy) {
  if (!(omega0_H > 0.0) || !(omegab_H > 0.0)) {
    throw domain_error("apparent_arrhenius: frequencies must be > 0");
  }
  if (!(T_R > 0.0)) throw domain_error("apparent_arrhenius: T_R must be > 0");
  detail::check_pair(light, heavy, "apparent_arrhenius");
  const double T0 = crossover_temperature(isotope_frequency(omegab_H, light));
  if (!(T_R > T0)) {
    throw below_crossover_error("apparent_arrhenius: T_R is not above the crossover temperature of " +
                                    std::string(to_string(light)),
                                T_R, T0);
  }
  const double sl = std::sqrt(mass_number(light));
  const double sh = std::sqrt(mass_number(heavy));
  const double bwb = reduced_energy(omegab_H, T_R);  // beta_R hbar wb
  const double al = bwb / (2.0 * sl);
  const double ah = bwb / (2.0 * sh);
  const double cot_diff = 1.0 / (std::tan(ah) * sh) - 1.0 / (std::tan(al) * sl);

  ApparentArrhenius out;
  if (light == heavy) {
    out.prefactor_ratio = 1.0;
    out.dE = 0.0;
  } else {
    out.prefactor_ratio = (sh / sl) * std::sin(ah) / std::sin(al) * std::exp(-bwb / 2.0 * cot_diff);
    out.dE = wavenumber_to_kj_mol(omega0_H) / 2.0 * (1.0 / sl - 1.0 / sh) +
             wavenumber_to_kj_mol(omegab_H) / 2.0 * cot_diff;
  }
  out.expansion_dubious = reduced_energy(omega0_H, T_R) < 4.0;
  return out;
}

/// ln(kH/kT) / ln(kD/kT).
inline double swain_schaad(double kH, double kD, double kT) {
  if (!(kH > 0.0) || !(kD > 0.0) || !(kT > 0.0)) {
    throw domain_error("swain_schaad: rates must be > 0");
  }
  const double den = std::log(kD / kT);
  if (den == 0.0) {
    throw domain_error("swain_schaad: ln(kD/kT) is zero");
  }
  return std::log(kH / kT) / den;
}

/// Zero-point-energy limit with unit prefactor ratios:
/// (1 - 1/sqrt 3) / (1/sqrt 2 - 1/sqrt 3).
inline double semiclassical_swain_schaad() {
  const double r2 = 1.0 / std::numbers::sqrt2;
  const double r3 = 1.0 / std::numbers::sqrt3;
  return (1.0 - r3) / (r2 - r3);
}

// ---------------------------------------------------------------------------
// Classification against the Kim-Kreevoy and Bell criteria.

struct Range {
  double low = 0.0;
  double high = 0.0;
};

/// Thresholds, normally read from the bundled reference file.
struct ReferenceLimits {
  std::string version;
  double kim_kreevoy_kie = 0.0;      // k_H/k_D above this at 20 C
  double kim_kreevoy_dE = 0.0;       // E_D - E_H above this, kJ/mol
  double kim_kreevoy_A_ratio = 0.0;  // A_H/A_D below this
  std::map<std::string, Range> bell;  // keyed by pair label "H:D", "H:T", "D:T"
  std::map<std::string, std::string> citations;
};

struct ClassificationReport {
  double kie_300K = 0.0;
  double A_ratio = 0.0;
  double dE = 0.0;
  IsotopePair pair;
  bool kim_kreevoy_applicable = false;
  bool kie_exceeds = false;        // KIE > threshold
  bool dE_exceeds = false;         // dE > threshold
  bool A_ratio_below = false;      // A ratio < threshold
  Range bell_range;
  bool bell_below = false;
  bool bell_above = false;
  std::map<std::string, double> referenced_limits;

  bool outside_bell() const { return bell_below || bell_above; }
  bool all_kim_kreevoy() const { return kie_exceeds && dE_exceeds && A_ratio_below; }
};

inline ClassificationReport classify(double kie_300K, double A_ratio, double dE, IsotopePair pair,
                                     const ReferenceLimits& limits) {
  const auto label = to_string(pair);
  const auto it = limits.bell.find(label);
  if (it == limits.bell.end()) {
    throw domain_error("classify: unsupported isotope pair " + label);
  }
  ClassificationReport r;
  r.kie_300K = kie_300K;
  r.A_ratio = A_ratio;
  r.dE = dE;
  r.pair = pair;
  r.bell_range = it->second;
  r.bell_below = A_ratio < it->second.low;
  r.bell_above = A_ratio > it->second.high;
  r.referenced_limits["bell_low"] = it->second.low;
  r.referenced_limits["bell_high"] = it->second.high;
  r.kim_kreevoy_applicable = pair == IsotopePair{Isotope::H, Isotope::D};
  if (r.kim_kreevoy_applicable) {
    r.kie_exceeds = kie_300K > limits.kim_kreevoy_kie;
    r.dE_exceeds = dE > limits.kim_kreevoy_dE;
    r.A_ratio_below = A_ratio < limits.kim_kreevoy_A_ratio;
    r.referenced_limits["kim_kreevoy_kie"] = limits.kim_kreevoy_kie;
    r.referenced_limits["kim_kreevoy_dE_kj_mol"] = limits.kim_kreevoy_dE;
    r.referenced_limits["kim_kreevoy_A_ratio"] = limits.kim_kreevoy_A_ratio;
  }
  return r;
}

}  // namespace qtst
