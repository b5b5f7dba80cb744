#pragma once

// Physical constants and unit conversions.
//
// Frequencies are angular frequencies expressed in wavenumbers: a frequency
// of w cm^-1 means hbar*omega = h*c*w.  Temperatures are in kelvin and
// molar energies in kJ/mol throughout the library.

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "qtst/error.hpp"

namespace qtst {

/// CODATA 2018.  Every derived factor below is computed from this table.
namespace constants {
inline constexpr double planck = 6.62607015e-34;              // J s
inline constexpr double hbar = planck / (2.0 * std::numbers::pi);
inline constexpr double boltzmann = 1.380649e-23;             // J/K
inline constexpr double speed_of_light = 299792458.0;         // m/s
inline constexpr double avogadro = 6.02214076e23;             // 1/mol
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double proton_mass = 1.67262192369e-27;      // kg
inline constexpr double debye = 1e-21 / speed_of_light;       // C m
inline constexpr double angstrom = 1e-10;                     // m

inline constexpr double speed_of_light_cm = speed_of_light * 100.0;
/// h c: joules per cm^-1.
inline constexpr double joule_per_wavenumber = planck * speed_of_light_cm;
/// h c / k_B (second radiation constant), K cm.
inline constexpr double kelvin_per_wavenumber = joule_per_wavenumber / boltzmann;
/// h c N_A in kJ/mol per cm^-1.
inline constexpr double kj_mol_per_wavenumber = joule_per_wavenumber * avogadro / 1e3;
/// Molar gas constant in kJ/(mol K).
inline constexpr double gas_constant = boltzmann * avogadro / 1e3;
/// 2 pi c: rad/s per cm^-1.
inline constexpr double rad_s_per_wavenumber = 2.0 * std::numbers::pi * speed_of_light_cm;
}  // namespace constants

enum class Unit { wavenumber, kelvin, kj_per_mol, radian_per_second, picosecond, debye };

inline std::string_view to_string(Unit u) {
  switch (u) {
    case Unit::wavenumber: return "cm^-1";
    case Unit::kelvin: return "K";
    case Unit::kj_per_mol: return "kJ/mol";
    case Unit::radian_per_second: return "rad/s";
    case Unit::picosecond: return "ps";
    case Unit::debye: return "D";
  }
  return "?";
}

struct Quantity {
  double value = 0.0;
  Unit unit = Unit::wavenumber;
};

namespace detail {

inline bool is_energy_like(Unit u) {
  return u == Unit::wavenumber || u == Unit::kelvin || u == Unit::kj_per_mol ||
         u == Unit::radian_per_second;
}

// Joules per particle represented by one unit of an energy-like quantity.
inline double joules_per_unit(Unit u) {
  using namespace constants;
  switch (u) {
    case Unit::wavenumber: return joule_per_wavenumber;
    case Unit::kelvin: return boltzmann;
    case Unit::kj_per_mol: return 1e3 / avogadro;
    case Unit::radian_per_second: return hbar;
    default: return 1.0;
  }
}

}  // namespace detail

/// Converts between the six supported units.  Wavenumber, kelvin, kJ/mol and
/// rad/s are interconvertible through hbar, k_B and h c N_A; picoseconds and
/// debye only convert to themselves.
inline Quantity convert(Quantity q, Unit target) {
  if (q.unit == target) return q;
  if (!detail::is_energy_like(q.unit) || !detail::is_energy_like(target)) {
    throw incompatible_units_error("cannot convert " + std::string(to_string(q.unit)) +
                                   " to " + std::string(to_string(target)));
  }
  return {q.value * (detail::joules_per_unit(q.unit) / detail::joules_per_unit(target)), target};
}

inline double wavenumber_to_kj_mol(double w) { return w * constants::kj_mol_per_wavenumber; }
inline double kj_mol_to_wavenumber(double e) { return e / constants::kj_mol_per_wavenumber; }

/// hbar*omega / (k_B T) for omega in cm^-1.
inline double reduced_energy(double omega, double T) {
  return constants::kelvin_per_wavenumber * omega / T;
}

/// E / (k_B T) for a molar energy in kJ/mol.
inline double reduced_molar_energy(double e_kj_mol, double T) {
  return e_kj_mol / (constants::gas_constant * T);
}

/// A rate written as an angular frequency in cm^-1, converted to 1/s.
inline double wavenumber_rate_to_per_second(double k) {
  return k * constants::rad_s_per_wavenumber;
}

// ---------------------------------------------------------------------------

enum class Isotope { H = 1, D = 2, T = 3 };

inline double mass_number(Isotope iso) { return static_cast<double>(static_cast<int>(iso)); }

inline std::string_view to_string(Isotope iso) {
  switch (iso) {
    case Isotope::H: return "H";
    case Isotope::D: return "D";
    case Isotope::T: return "T";
  }
  return "?";
}

inline Isotope parse_isotope(std::string_view s) {
  if (s == "H" || s == "h" || s == "P" || s == "1") return Isotope::H;
  if (s == "D" || s == "d" || s == "2") return Isotope::D;
  if (s == "T" || s == "t" || s == "3") return Isotope::T;
  throw domain_error("unknown isotope '" + std::string(s) + "' (expected H, D or T)");
}

struct IsotopePair {
  Isotope light = Isotope::H;
  Isotope heavy = Isotope::D;

  friend bool operator==(const IsotopePair&, const IsotopePair&) = default;
};

inline std::string to_string(IsotopePair p) {
  return std::string(to_string(p.light)) + ":" + std::string(to_string(p.heavy));
}

/// Parses "H:D", "H/T", "HD" style pair labels.
inline IsotopePair parse_pair(std::string_view s) {
  std::string_view a, b;
  if (auto pos = s.find_first_of(":/"); pos != std::string_view::npos) {
    a = s.substr(0, pos);
    b = s.substr(pos + 1);
  } else if (s.size() == 2) {
    a = s.substr(0, 1);
    b = s.substr(1, 1);
  } else {
    throw domain_error("malformed isotope pair '" + std::string(s) + "'");
  }
  return {parse_isotope(a), parse_isotope(b)};
}

/// Frequency of an isotope given the hydrogen value: omega_H / sqrt(m).
inline double isotope_frequency(double omega_H, Isotope iso) {
  return omega_H / std::sqrt(mass_number(iso));
}

}  // namespace qtst
