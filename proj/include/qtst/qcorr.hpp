#pragma once

// Quantum corrections to the Kramers rate above the crossover temperature.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "qtst/error.hpp"
#include "qtst/kramers.hpp"
#include "qtst/numerics.hpp"
#include "qtst/spectral.hpp"
#include "qtst/units.hpp"

namespace qtst {

enum class Regime { high_T, near_crossover, invalid_below_T0 };

inline std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::high_T: return "high_T";
    case Regime::near_crossover: return "near_crossover";
    case Regime::invalid_below_T0: return "invalid_below_T0";
  }
  return "?";
}

/// Temperatures below this multiple of T0 are reported as near_crossover.
inline constexpr double near_crossover_factor = 1.1;

inline Regime regime_for(double T, double T0) {
  if (!(T > T0)) return Regime::invalid_below_T0;
  return T < near_crossover_factor * T0 ? Regime::near_crossover : Regime::high_T;
}

struct CorrectionResult {
  double c_qm = 1.0;
  Regime regime = Regime::high_T;
  long terms_used = 0;
  double tail_estimate = 0.0;  // analytic tail added to log(c_qm)
  double T0 = 0.0;
};

struct CrossoverParams {
  double B = 0.0;      // 4 c3^2 / (3 wb^2) + 3 c4, cm^-2 / angstrom^2
  double kappa = 0.0;  // dimensionless
};

struct EquilibriumCheck {
  bool satisfied = false;
  double friction_side = 0.0;  // gamma_hat(mu) / wb
  double thermal_side = 0.0;   // k_B T / E_b
  double margin = 0.0;         // friction_side / thermal_side
};

struct RateResult {
  double T = 0.0;
  Rate classical;
  Rate rate;                  // classical * c_qm
  double c_qm = 1.0;
  double mu = 0.0;
  double T0 = 0.0;
  Regime regime = Regime::high_T;
  long terms_used = 0;
  std::optional<EquilibriumCheck> equilibrium;  // absent when E_b = 0

  bool qtst_valid() const { return regime != Regime::invalid_below_T0; }
  bool crossover_region() const { return regime == Regime::near_crossover; }
};

/// nu_n = 2 pi n k_B T / hbar in cm^-1.
inline double matsubara_frequency(long n, double T) {
  if (!(T > 0.0)) throw domain_error("matsubara_frequency: T must be > 0");
  if (n < 0) throw domain_error("matsubara_frequency: n must be >= 0");
  return 2.0 * std::numbers::pi * static_cast<double>(n) * T / constants::kelvin_per_wavenumber;
}

namespace detail {

[[noreturn]] inline void throw_below(std::string_view who, double T, double T0) {
  throw below_crossover_error(std::string(who) + ": T = " + std::to_string(T) +
                                  " K is not above the crossover temperature T0 = " +
                                  std::to_string(T0) + " K",
                              T, T0);
}

}  // namespace detail

/// Product over Matsubara frequencies
///   prod_n (w0^2 + n^2 nu^2 + n nu g(n nu)) / (-wb^2 + n^2 nu^2 + n nu g(n nu)).
///
/// log terms are summed until one falls below 1e-14, or until the analytic
/// tail stops moving.  The tail fits c(k) = k^2 log-term to A + B/k from the
/// terms at n/2 and n and sums it exactly with polygamma functions.
inline CorrectionResult correction_product(const BarrierSystem& sys,
                                           const spectral::FrictionModel& model, double T) {
  if (!(T > 0.0)) throw domain_error("correction_product: T must be > 0");
  const auto eb = effective_barrier_frequency(sys, model);
  if (!(T > eb.T0)) detail::throw_below("correction_product", T, eb.T0);

  const double w0 = sys.omega0();
  const double wb = sys.omegab();
  const double nu = matsubara_frequency(1, T);
  const double num_shift = w0 * w0 + wb * wb;

  auto log_term = [&](long n) {
    const double z = nu * static_cast<double>(n);
    const double den = -wb * wb + z * z + z * spectral::laplace_kernel(model, z);
    if (!(den > 0.0)) {
      throw below_crossover_error(
          "correction_product: nonpositive denominator at n = " + std::to_string(n) +
              " (T is at or below the crossover temperature)",
          T, eb.T0);
    }
    return std::log1p(num_shift / den);
  };

  constexpr long max_terms = 1L << 26;
  double sum = 0.0;
  double tail = 0.0;
  double c_half = 0.0;      // k^2 f(k) at the previous checkpoint
  double prev_total = 0.0;
  bool have_prev = false;
  long n = 1;
  long next_check = 64;
  for (; n <= max_terms; ++n) {
    const double f = log_term(n);
    sum += f;
    if (std::abs(f) < 1e-14) {
      // Remaining terms behave as f n^2 / k^2.
      tail = f * static_cast<double>(n) * static_cast<double>(n) * numerics::tail_inverse_square(n);
      break;
    }
    if (n == next_check / 2) c_half = f * static_cast<double>(n) * static_cast<double>(n);
    if (n == next_check) {
      const double dn = static_cast<double>(n);
      const double c_n = f * dn * dn;
      const double B = (c_half - c_n) * dn;
      const double A = c_n - B / dn;
      tail = A * numerics::tail_inverse_square(n) + B * numerics::tail_inverse_cube(n);
      const double total = sum + tail;
      if (have_prev && std::abs(total - prev_total) < 1e-13 * std::max(1.0, std::abs(total))) break;
      prev_total = total;
      have_prev = true;
      c_half = c_n;
      next_check *= 2;
    }
  }
  if (n > max_terms) throw convergence_error("correction_product: product did not converge");

  CorrectionResult out;
  out.c_qm = std::exp(sum + tail);
  out.regime = regime_for(T, eb.T0);
  out.terms_used = n;
  out.tail_estimate = tail;
  out.T0 = eb.T0;
  return out;
}

/// Weak-friction closed form (wb/w0) sinh(hbar w0/2k_BT) / sin(hbar wb/2k_BT).
inline CorrectionResult correction_closed(double omega0, double omegab, double T) {
  if (!(omega0 > 0.0) || !(omegab > 0.0)) {
    throw domain_error("correction_closed: frequencies must be > 0");
  }
  if (!(T > 0.0)) throw domain_error("correction_closed: T must be > 0");
  const double T0 = crossover_temperature(omegab);
  // Guard against the pole of 1/sin at T0.
  if (!(T > T0 * (1.0 + 1e-9))) detail::throw_below("correction_closed", T, T0);
  const double x0 = reduced_energy(omega0, T) / 2.0;
  const double xb = reduced_energy(omegab, T) / 2.0;
  CorrectionResult out;
  out.c_qm = omegab / omega0 * std::sinh(x0) / std::sin(xb);
  out.regime = regime_for(T, T0);
  out.T0 = T0;
  return out;
}

/// Frictionless rate in Wigner's form:
/// (wb/4pi) sinh(hbar w0/2k_BT) / sin(hbar wb/2k_BT) exp(-E_b/k_BT).
inline Rate wigner_rate(const BarrierSystem& sys, double T) {
  validate(sys);
  if (!(T > 0.0)) throw domain_error("wigner_rate: T must be > 0");
  const double w0 = sys.omega0();
  const double wb = sys.omegab();
  const double T0 = crossover_temperature(wb);
  if (!(T > T0 * (1.0 + 1e-9))) detail::throw_below("wigner_rate", T, T0);
  const double x0 = reduced_energy(w0, T) / 2.0;
  const double xb = reduced_energy(wb, T) / 2.0;
  const double k = wb / (4.0 * std::numbers::pi) * std::sinh(x0) / std::sin(xb) *
                   std::exp(-reduced_molar_energy(sys.barrier_kj_mol, T));
  return Rate::from_wavenumber(k);
}

/// (k_B T / h) exp(-(E_b - hbar w0/2) / k_B T).
inline Rate semiclassical_rate(const BarrierSystem& sys, double T) {
  validate(sys);
  if (!(T > 0.0)) throw domain_error("semiclassical_rate: T must be > 0");
  const double zpe = wavenumber_to_kj_mol(sys.omega0()) / 2.0;
  const double prefactor = constants::boltzmann * T / constants::planck;
  return Rate::from_per_second(prefactor * std::exp(-reduced_molar_energy(sys.barrier_kj_mol - zpe, T)));
}

/// Crossover-region correction for a non-parabolic barrier top:
///   c = (wb/w0) sinh(x0)/sin(xb) * sqrt(pi) y erfcx(y),  y = -eps (1 - eps/2) kappa,
/// with eps = (T0 - T)/T0.  Finite through T = T0.
inline CorrectionResult correction_crossover(const BarrierSystem& sys, double T, double kappa_at_T0) {
  validate(sys);
  if (!(kappa_at_T0 > 0.0)) throw domain_error("correction_crossover: kappa must be > 0");
  const double w0 = sys.omega0();
  const double wb = sys.omegab();
  const double T0 = crossover_temperature(wb);
  if (!(T > 0.9 * T0)) {
    throw below_crossover_error("correction_crossover: T = " + std::to_string(T) +
                                    " K is below 0.9 T0 = " + std::to_string(0.9 * T0) + " K",
                                T, T0);
  }
  const double eps = (T0 - T) / T0;
  const double y = -eps * (1.0 - eps / 2.0) * kappa_at_T0;
  const double x0 = reduced_energy(w0, T) / 2.0;
  double y_over_sin;
  if (std::abs(y) < 1e-6) {
    // sin(xb) = -sin(s) with s = pi eps/(1 - eps); expand s/sin(s).
    const double s = std::numbers::pi * eps / (1.0 - eps);
    const double s2 = s * s;
    y_over_sin = (1.0 - eps / 2.0) * kappa_at_T0 * (1.0 - eps) / std::numbers::pi *
                 (1.0 + s2 / 6.0 + 7.0 * s2 * s2 / 360.0);
  } else {
    y_over_sin = y / std::sin(reduced_energy(wb, T) / 2.0);
  }
  CorrectionResult out;
  out.c_qm = wb / w0 * std::sinh(x0) * y_over_sin * std::sqrt(std::numbers::pi) * numerics::erfcx(y);
  out.regime = T > T0 ? regime_for(T, T0) : Regime::near_crossover;
  out.T0 = T0;
  return out;
}

/// B and kappa for a barrier top V = E_b - M wb^2 x^2/2 + M c3 x^3/3 + M c4 x^4/4.
/// wb in cm^-1, c3 in cm^-2/angstrom, c4 in cm^-2/angstrom^2 (frequencies squared
/// per length, with cm^-1 converted to rad/s), T0 in K, mass in proton masses.
inline CrossoverParams kappa_parameter(double mass, double omegab, double c3, double c4, double T0) {
  if (!(mass > 0.0)) throw domain_error("kappa_parameter: mass must be > 0");
  if (!(omegab > 0.0)) throw domain_error("kappa_parameter: omegab must be > 0");
  if (!(T0 > 0.0)) throw domain_error("kappa_parameter: T0 must be > 0");
  CrossoverParams out;
  out.B = 4.0 * c3 * c3 / (3.0 * omegab * omegab) + 3.0 * c4;
  if (!(out.B > 0.0)) throw domain_error("kappa_parameter: B must be > 0");
  using namespace constants;
  const double w = omegab * rad_s_per_wavenumber;
  const double B_si = out.B * rad_s_per_wavenumber * rad_s_per_wavenumber / (angstrom * angstrom);
  out.kappa = w * w * std::sqrt(8.0 * mass * proton_mass / (B_si * boltzmann * T0));
  return out;
}

inline CrossoverParams kappa_parameter(Isotope iso, double omegab, double c3, double c4, double T0) {
  return kappa_parameter(mass_number(iso), omegab, c3, c4, T0);
}

/// Weak-friction validity: gamma_hat(mu)/wb > k_B T / E_b.
inline EquilibriumCheck equilibrium_condition(const BarrierSystem& sys,
                                              const spectral::FrictionModel& model, double T) {
  if (!(T > 0.0)) throw domain_error("equilibrium_condition: T must be > 0");
  if (!(sys.barrier_kj_mol > 0.0)) throw domain_error("equilibrium_condition: E_b must be > 0");
  const auto eb = effective_barrier_frequency(sys, model);
  EquilibriumCheck out;
  out.friction_side = spectral::laplace_kernel(model, eb.mu) / sys.omegab();
  out.thermal_side = constants::gas_constant * T / sys.barrier_kj_mol;
  out.margin = out.friction_side / out.thermal_side;
  out.satisfied = out.friction_side > out.thermal_side;
  return out;
}

/// classical_rate * correction_product.
inline RateResult quantum_rate(const BarrierSystem& sys, const spectral::FrictionModel& model,
                               double T) {
  const auto corr = correction_product(sys, model, T);
  const auto eb = effective_barrier_frequency(sys, model);
  RateResult out;
  out.T = T;
  out.classical = classical_rate(sys, model, T);
  out.c_qm = corr.c_qm;
  out.rate = Rate::from_wavenumber(out.classical.wavenumber * corr.c_qm);
  out.mu = eb.mu;
  out.T0 = eb.T0;
  out.regime = corr.regime;
  out.terms_used = corr.terms_used;
  if (sys.barrier_kj_mol > 0.0) out.equilibrium = equilibrium_condition(sys, model, T);
  return out;
}

}  // namespace qtst
