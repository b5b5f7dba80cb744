#pragma once

// Classical Kramers-Grote-Hynes rate with memory friction.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "qtst/error.hpp"
#include "qtst/numerics.hpp"
#include "qtst/spectral.hpp"
#include "qtst/units.hpp"

namespace qtst {

/// Reaction-coordinate parameters.  Frequencies are the hydrogen values; the
/// transferred isotope's frequencies are derived from them on demand.
struct BarrierSystem {
  double omega0_H = 3000.0;       // reactant-well frequency, cm^-1
  double omegab_H = 1000.0;       // barrier frequency, cm^-1
  double barrier_kj_mol = 40.0;   // E_b, kJ/mol
  Isotope isotope = Isotope::H;

  double omega0() const { return isotope_frequency(omega0_H, isotope); }
  double omegab() const { return isotope_frequency(omegab_H, isotope); }

  BarrierSystem with_isotope(Isotope iso) const {
    BarrierSystem s = *this;
    s.isotope = iso;
    return s;
  }
};

inline void validate(const BarrierSystem& s) {
  if (!(s.omega0_H > 0.0) || !std::isfinite(s.omega0_H)) {
    throw domain_error("barrier: omega0 must be a positive frequency");
  }
  if (!(s.omegab_H > 0.0) || !std::isfinite(s.omegab_H)) {
    throw domain_error("barrier: omegab must be a positive frequency");
  }
  if (!(s.barrier_kj_mol >= 0.0)) throw domain_error("barrier: E_b must be >= 0");
}

/// A rate expressed as an angular frequency (cm^-1) and in 1/s.
struct Rate {
  double wavenumber = 0.0;
  double per_second = 0.0;

  static Rate from_wavenumber(double k) { return {k, wavenumber_rate_to_per_second(k)}; }
  static Rate from_per_second(double k) { return {k / constants::rad_s_per_wavenumber, k}; }
};

struct EffectiveBarrier {
  double mu = 0.0;         // cm^-1
  double T0 = 0.0;         // K
  double residual = 0.0;   // mu - (sqrt(g^2/4 + wb^2) - g/2), cm^-1
  int root_count = 1;      // sign changes found by the Peaked scan
  std::optional<double> cubic_root;  // Drude only: positive root of the cubic
};

/// T0 = hbar mu / (2 pi k_B).
inline double crossover_temperature(double mu) {
  if (!(mu >= 0.0)) throw domain_error("crossover_temperature: mu must be >= 0");
  return constants::kelvin_per_wavenumber * mu / (2.0 * std::numbers::pi);
}

/// Largest positive root of mu^3 + wD mu^2 + (wD g - wb^2) mu - wb^2 wD = 0,
/// the Drude form of the mu equation.  Solved in closed form and refined by
/// Newton steps on the cubic itself.
inline double drude_cubic_root(double gamma, double omega_D, double omegab) {
  const double a = omega_D;
  const double b = omega_D * gamma - omegab * omegab;
  const double c = -omegab * omegab * omega_D;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  double x;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    x = std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s) - a / 3.0;
  } else {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double phi = std::acos(std::clamp(3.0 * q / (p * r), -1.0, 1.0)) / 3.0;
    x = -1e300;
    for (int k = 0; k < 3; ++k) {
      x = std::max(x, r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - a / 3.0);
    }
  }
  for (int it = 0; it < 4; ++it) {
    const double f = ((x + a) * x + b) * x + c;
    const double df = (3.0 * x + 2.0 * a) * x + b;
    if (df == 0.0) break;
    x -= f / df;
  }
  return x;
}

/// Solves mu^2 + mu gamma_hat(mu) - wb^2 = 0 on (0, wb] for the isotope's wb.
inline EffectiveBarrier effective_barrier_frequency(const BarrierSystem& sys,
                                                    const spectral::FrictionModel& model) {
  validate(sys);
  spectral::validate(model);
  const double wb = sys.omegab();
  auto kernel = [&](double z) { return spectral::laplace_kernel(model, z); };
  auto f = [&](double m) { return m > 0.0 ? m * m + m * kernel(m) - wb * wb : -wb * wb; };

  EffectiveBarrier out;
  double mu = wb;
  if (kernel(wb) > 0.0) {
    double lo = 0.0, hi = wb;
    if (std::holds_alternative<spectral::Peaked>(model)) {
      constexpr int n = 10000;
      int changes = 0;
      double prev = f(0.0);
      for (int i = 1; i <= n; ++i) {
        const double x = wb * i / n;
        const double fx = f(x);
        if ((fx >= 0.0) != (prev >= 0.0)) {
          ++changes;
          lo = wb * (i - 1) / n;
          hi = x;
        }
        prev = fx;
      }
      out.root_count = changes;
    }
    auto [a, b] = numerics::bisect(f, lo, hi, 1e-12 * wb);
    mu = 0.5 * (a + b);
    // One Newton polish, kept only if it stays in the bracket and helps.
    const double h = 1e-6 * mu;
    const double df = (f(mu + h) - f(mu - h)) / (2.0 * h);
    if (df > 0.0) {
      const double cand = mu - f(mu) / df;
      if (cand >= a && cand <= b && std::abs(f(cand)) <= std::abs(f(mu))) mu = cand;
    }
  }
  const double g = mu > 0.0 ? kernel(mu) : 0.0;
  out.mu = mu;
  out.residual = mu - (std::sqrt(g * g / 4.0 + wb * wb) - g / 2.0);
  if (!(std::abs(out.residual) < 1e-10 * wb)) {
    throw convergence_error("effective_barrier_frequency: residual " + std::to_string(out.residual) +
                            " exceeds tolerance");
  }
  out.T0 = crossover_temperature(mu);
  if (const auto* d = std::get_if<spectral::Drude>(&model); d && std::isfinite(d->omega_D)) {
    out.cubic_root = drude_cubic_root(d->gamma, d->omega_D, wb);
  }
  return out;
}

/// k = (mu/wb) (w0/2pi) exp(-E_b/k_B T) with isotope-scaled frequencies.
inline Rate classical_rate(const BarrierSystem& sys, const spectral::FrictionModel& model, double T) {
  if (!(T > 0.0)) throw domain_error("classical_rate: T must be > 0");
  const auto eb = effective_barrier_frequency(sys, model);
  const double k = eb.mu / sys.omegab() * sys.omega0() / (2.0 * std::numbers::pi) *
                   std::exp(-reduced_molar_energy(sys.barrier_kj_mol, T));
  return Rate::from_wavenumber(k);
}

/// [mu_L / wb_L] / [mu_H / wb_H] for the same friction model.  Independent of
/// T; the temperature is only checked.
inline double classical_kie(const BarrierSystem& sys, const spectral::FrictionModel& model, double T,
                            Isotope light, Isotope heavy) {
  if (!(T > 0.0)) throw domain_error("classical_kie: T must be > 0");
  if (mass_number(light) > mass_number(heavy)) {
    throw domain_error("classical_kie: light isotope must not be heavier than heavy isotope");
  }
  auto transmission = [&](Isotope iso) {
    const auto s = sys.with_isotope(iso);
    return effective_barrier_frequency(s, model).mu / s.omegab();
  };
  return transmission(light) / transmission(heavy);
}

}  // namespace qtst
