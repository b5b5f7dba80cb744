#pragma once

// Environment models: friction spectrum Re gamma(w), spectral density J(w),
// the Laplace-transformed memory kernel gamma_hat(z) and the curvature K_e the
// bath adds to the reaction-coordinate potential.
//
// All frequencies, friction strengths and kernel values are in cm^-1.  The
// models store the mass-free friction Re gamma(w) = J(w)/(M w); the particle
// mass (in proton masses) only enters K_e and J(w).

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qtst/error.hpp"
#include "qtst/numerics.hpp"
#include "qtst/units.hpp"

namespace qtst {

namespace detail {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace detail

namespace spectral {

/// Memoryless friction: gamma_hat(z) = gamma.
struct Ohmic {
  double gamma = 0.0;
};

/// Single bath time scale: gamma_hat(z) = gamma / (1 + z/omega_D).
/// omega_D may be +infinity (Ohmic limit).
struct Drude {
  double gamma = 0.0;
  double omega_D = 0.0;
};

/// Peak of height gamma_r and width `width` at omega_r in Re gamma(w).
struct Peaked {
  double gamma_r = 0.0;
  double width = 0.0;
  double omega_r = 0.0;
};

/// Proton in a spherical cavity of a Debye-relaxing dielectric (water).
/// Three Debye terms plus one damped resonance; defaults are water at 298 K.
struct DebyeDielectric {
  std::array<double, 4> delta_eps{71.5, 2.8, 1.6, 0.92};
  std::array<double, 4> tau_ps{8.3, 1.0, 0.1, 0.025};
  double omega_4 = 175.0;        // cm^-1
  double eps_inf = 1.54;
  double eps_c = 4.0;            // cavity (protein) dielectric constant
  double cavity_radius = 3.0;    // angstrom
  double mass_number = 1.0;      // particle mass in proton masses
};

/// Re gamma(w) = delta_gamma + slope*w, fitted for 100-400 cm^-1.  Above
/// `cutoff` the linear form is continued with an exponential decay
/// exp(-(w - cutoff)/cutoff).  cutoff <= 0 or infinite disables the decay.
struct LinearProtein {
  double delta_gamma = 20.0;
  double slope = 0.38;
  double cutoff = 400.0;
};

using FrictionModel = std::variant<Ohmic, Drude, Peaked, DebyeDielectric, LinearProtein>;

inline std::string_view kind_name(const FrictionModel& m) {
  return std::visit(::qtst::detail::overloaded{
                        [](const Ohmic&) { return std::string_view("ohmic"); },
                        [](const Drude&) { return std::string_view("drude"); },
                        [](const Peaked&) { return std::string_view("peaked"); },
                        [](const DebyeDielectric&) { return std::string_view("debye_dielectric"); },
                        [](const LinearProtein&) { return std::string_view("linear_protein"); },
                    },
                    m);
}

/// K_e split into its mass-free part K_e/M (cm^-2) and the mass.
struct EffectiveCurvature {
  double per_mass = 0.0;     // K_e / M, cm^-2
  double mass_number = 1.0;  // M in proton masses

  /// K_e in proton-mass * cm^-2.
  double value() const { return per_mass * mass_number; }
};

struct ChromophoreEstimate {
  double reorganisation_energy = 0.0;  // E_R, cm^-1
  double dipole_change = 0.0;          // delta mu, debye
  double conversion = 0.0;             // (hbar e / delta mu)^2 / M, cm^-1
  EffectiveCurvature curvature;        // K_e = (2/pi) (e/delta mu)^2 E_R
  double bound_scale = 0.0;            // z* with gamma_hat(z)/z <= (z*/z)^2, cm^-1
};

namespace detail {

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw domain_error(msg);
}

inline bool nonneg(double x) { return x >= 0.0; }

inline bool has_cutoff(const LinearProtein& m) {
  return m.cutoff > 0.0 && std::isfinite(m.cutoff);
}

// Dimensionless w*tau for w in cm^-1 and tau in ps.
inline double omega_tau(double omega, double tau_ps) {
  return omega * constants::rad_s_per_wavenumber * tau_ps * 1e-12;
}

// Relaxation time expressed as a length in cm (so that w[cm^-1] * tau = w tau).
inline double tau_cm(double tau_ps) { return omega_tau(1.0, tau_ps); }

inline double reaction_field_ratio_real(double eps, double eps_c) {
  return (eps - eps_c) / (2.0 * eps + eps_c);
}

// e^2 / (2 pi eps0 a^3 M) expressed in cm^-2.
inline double cavity_strength(const DebyeDielectric& p) {
  using namespace constants;
  const double a = p.cavity_radius * angstrom;
  const double rate2 = elementary_charge * elementary_charge /
                       (2.0 * std::numbers::pi * vacuum_permittivity * a * a * a *
                        p.mass_number * proton_mass);
  return rate2 / (rad_s_per_wavenumber * rad_s_per_wavenumber);
}

// Dielectric function continued to imaginary frequency w = i z (real valued).
inline double dielectric_imaginary_axis(const DebyeDielectric& p, double z) {
  double eps = p.eps_inf;
  for (int i = 0; i < 3; ++i) eps += p.delta_eps[i] / (1.0 + z * tau_cm(p.tau_ps[i]));
  eps += p.delta_eps[3] / (1.0 + z * tau_cm(p.tau_ps[3]) + z * z / (p.omega_4 * p.omega_4));
  return eps;
}

inline void validate(const Ohmic& m) { require(nonneg(m.gamma), "ohmic: gamma must be >= 0"); }

inline void validate(const Drude& m) {
  require(nonneg(m.gamma), "drude: gamma must be >= 0");
  require(m.omega_D > 0.0, "drude: omega_D must be > 0");
}

inline void validate(const Peaked& m) {
  require(nonneg(m.gamma_r) && nonneg(m.width) && nonneg(m.omega_r),
          "peaked: gamma_r, width and omega_r must be >= 0");
}

inline void validate(const DebyeDielectric& m) {
  for (int i = 0; i < 4; ++i) {
    require(nonneg(m.delta_eps[i]) && nonneg(m.tau_ps[i]),
            "debye_dielectric: delta_eps and tau must be >= 0");
  }
  require(m.omega_4 > 0.0, "debye_dielectric: omega_4 must be > 0");
  require(m.eps_inf > 0.0 && m.eps_c > 0.0, "debye_dielectric: eps_inf and eps_c must be > 0");
  require(m.cavity_radius > 0.0, "debye_dielectric: cavity radius must be > 0");
  require(m.mass_number > 0.0, "debye_dielectric: mass must be > 0");
}

inline void validate(const LinearProtein& m) {
  require(nonneg(m.delta_gamma) && nonneg(m.slope), "linear_protein: parameters must be >= 0");
}

// Frequencies where the spectrum changes character; used to split quadratures.
inline std::vector<double> characteristic_frequencies(const FrictionModel& model) {
  std::vector<double> out;
  auto decade = [&out](double w) {
    if (w > 0.0 && std::isfinite(w)) {
      out.push_back(0.1 * w);
      out.push_back(w);
      out.push_back(10.0 * w);
    }
  };
  std::visit(::qtst::detail::overloaded{
                 [](const Ohmic&) {},
                 [&](const Drude& m) { decade(m.omega_D); },
                 [&](const Peaked& m) {
                   decade(m.omega_r);
                   for (double k : {-20.0, -5.0, -1.0, 1.0, 5.0, 20.0}) {
                     out.push_back(m.omega_r + k * m.width);
                   }
                 },
                 [&](const DebyeDielectric& m) {
                   for (double t : m.tau_ps) {
                     if (t > 0.0) decade(1.0 / tau_cm(t));
                   }
                   decade(m.omega_4);
                 },
                 [&](const LinearProtein& m) {
                   if (has_cutoff(m)) decade(m.cutoff);
                 },
             },
             model);
  return out;
}

inline bool curvature_finite(const FrictionModel& model) {
  if (std::holds_alternative<Ohmic>(model)) return std::get<Ohmic>(model).gamma == 0.0;
  if (const auto* lp = std::get_if<LinearProtein>(&model)) {
    return has_cutoff(*lp) || (lp->delta_gamma == 0.0 && lp->slope == 0.0);
  }
  return true;
}

}  // namespace detail

inline void validate(const FrictionModel& model) {
  std::visit([](const auto& m) { detail::validate(m); }, model);
}

/// Complex dielectric function (loss convention: Im eps >= 0).
inline std::complex<double> debye_dielectric(const DebyeDielectric& p, double omega) {
  if (!(omega >= 0.0)) throw domain_error("debye_dielectric: omega must be >= 0");
  using namespace std::complex_literals;
  std::complex<double> eps = p.eps_inf;
  for (int i = 0; i < 3; ++i) {
    eps += p.delta_eps[i] / (1.0 - 1i * detail::omega_tau(omega, p.tau_ps[i]));
  }
  const double r = omega / p.omega_4;
  eps += p.delta_eps[3] / (1.0 - 1i * detail::omega_tau(omega, p.tau_ps[3]) - r * r);
  return eps;
}

/// Static limit eps_inf + sum(delta_eps).
inline double static_dielectric(const DebyeDielectric& p) {
  return p.eps_inf + p.delta_eps[0] + p.delta_eps[1] + p.delta_eps[2] + p.delta_eps[3];
}

/// Re gamma(w) of a proton at the centre of a spherical cavity:
/// e^2 / (2 pi eps0 a^3 M w) * Im[(eps - eps_c)/(2 eps + eps_c)].
inline double cavity_friction(const DebyeDielectric& p, double omega) {
  if (!(p.cavity_radius > 0.0)) throw domain_error("cavity_friction: cavity radius must be > 0");
  if (!(omega > 0.0)) throw domain_error("cavity_friction: omega must be > 0");
  const auto eps = debye_dielectric(p, omega);
  const auto ratio = (eps - p.eps_c) / (2.0 * eps + p.eps_c);
  return detail::cavity_strength(p) * ratio.imag() / omega;
}

/// Re gamma(w) = J(w) / (M w).
inline double friction_spectrum(const FrictionModel& model, double omega) {
  if (!(omega >= 0.0)) throw domain_error("friction_spectrum: omega must be >= 0");
  validate(model);
  return std::visit(
      ::qtst::detail::overloaded{
          [](const Ohmic& m) { return m.gamma; },
          [&](const Drude& m) {
            const double r = omega / m.omega_D;
            return m.gamma / (1.0 + r * r);
          },
          [&](const Peaked& m) {
            const double a = omega * m.width;
            const double b = omega * omega - m.omega_r * m.omega_r;
            if (a == 0.0) return (b == 0.0) ? m.gamma_r : 0.0;
            return m.gamma_r * a * a / (b * b + a * a);
          },
          [&](const DebyeDielectric& m) {
            // Below ~1e-9 of the fastest relaxation rate use the w -> 0 limit.
            if (omega < 1e-9 / detail::tau_cm(m.tau_ps[0] > 0 ? m.tau_ps[0] : 1.0)) {
              double slope = 0.0;  // d eps / d(i w) at w = 0
              for (int i = 0; i < 4; ++i) slope += m.delta_eps[i] * detail::tau_cm(m.tau_ps[i]);
              const double d = 2.0 * static_dielectric(m) + m.eps_c;
              return detail::cavity_strength(m) * 3.0 * m.eps_c * slope / (d * d);
            }
            return cavity_friction(m, omega);
          },
          [&](const LinearProtein& m) {
            const double linear = m.delta_gamma + m.slope * omega;
            if (!detail::has_cutoff(m) || omega <= m.cutoff) return linear;
            return linear * std::exp(-(omega - m.cutoff) / m.cutoff);
          },
      },
      model);
}

/// J(w) = M w Re gamma(w), in proton-mass * cm^-2.
inline double spectral_density(const FrictionModel& model, double omega, double mass_number = 1.0) {
  return mass_number * omega * friction_spectrum(model, omega);
}

/// gamma_hat(z) = (2 z / pi) * int_0^inf Re gamma(w) / (w^2 + z^2) dw, evaluated
/// by quadrature of the friction spectrum.  Works for every model with a
/// convergent integral.
inline double laplace_kernel_numeric(const FrictionModel& model, double z) {
  if (!(z > 0.0)) throw domain_error("laplace_kernel: z must be > 0");
  validate(model);
  if (const auto* lp = std::get_if<LinearProtein>(&model); lp && !detail::has_cutoff(*lp) && lp->slope > 0.0) {
    throw divergence_error("laplace_kernel: linear_protein without cutoff diverges");
  }
  auto breaks = detail::characteristic_frequencies(model);
  breaks.push_back(z);
  const double integral = numerics::integrate_half_line(
      [&](double w) { return friction_spectrum(model, w) / (w * w + z * z); }, breaks, 1e-11);
  return 2.0 * z / std::numbers::pi * integral;
}

/// Laplace transform of the memory-friction kernel, gamma_hat(z).
inline double laplace_kernel(const FrictionModel& model, double z) {
  if (!(z > 0.0)) throw domain_error("laplace_kernel: z must be > 0");
  validate(model);
  return std::visit(
      ::qtst::detail::overloaded{
          [](const Ohmic& m) { return m.gamma; },
          [&](const Drude& m) { return m.gamma / (1.0 + z / m.omega_D); },
          [&](const Peaked& m) {
            return m.gamma_r * z * m.width / (z * z + m.omega_r * m.omega_r + z * m.width);
          },
          [&](const DebyeDielectric& m) {
            // Analytic continuation of the causal response to w = i z.
            const double g0 = detail::reaction_field_ratio_real(static_dielectric(m), m.eps_c);
            const double gz =
                detail::reaction_field_ratio_real(detail::dielectric_imaginary_axis(m, z), m.eps_c);
            return detail::cavity_strength(m) * (g0 - gz) / z;
          },
          [&](const LinearProtein&) { return laplace_kernel_numeric(model, z); },
      },
      model);
}

/// K_e = (2/pi) M int_0^inf Re gamma(w) dw.
inline EffectiveCurvature effective_curvature(const FrictionModel& model, double mass_number = 1.0) {
  validate(model);
  if (!(mass_number > 0.0)) throw domain_error("effective_curvature: mass must be > 0");
  if (!detail::curvature_finite(model)) {
    throw divergence_error(std::string("effective_curvature: integral of Re gamma diverges for ") +
                           std::string(kind_name(model)) + " friction");
  }
  const double integral = numerics::integrate_half_line(
      [&](double w) { return friction_spectrum(model, w); },
      detail::characteristic_frequencies(model), 1e-11);
  return {2.0 / std::numbers::pi * integral, mass_number};
}

/// Upper bound gamma_hat(z) <= K_e / (M z), from z/(w^2+z^2) <= 1/z.
inline double kernel_upper_bound(const FrictionModel& model, double z) {
  if (!(z > 0.0)) throw domain_error("kernel_upper_bound: z must be > 0");
  return effective_curvature(model).per_mass / z;
}

/// Friction scale implied by a chromophore with reorganisation energy E_R
/// (cm^-1) and dipole change delta_mu (debye) at the same site.
inline ChromophoreEstimate chromophore_estimate(double reorganisation_energy, double dipole_change,
                                                double mass_number = 1.0) {
  if (!(dipole_change > 0.0)) throw domain_error("chromophore_estimate: dipole change must be > 0");
  if (!(reorganisation_energy >= 0.0)) {
    throw domain_error("chromophore_estimate: reorganisation energy must be >= 0");
  }
  if (!(mass_number > 0.0)) throw domain_error("chromophore_estimate: mass must be > 0");
  using namespace constants;
  const double hbar_e_over_mu = hbar * elementary_charge / (dipole_change * debye);
  const double conversion =
      hbar_e_over_mu * hbar_e_over_mu / (mass_number * proton_mass) / joule_per_wavenumber;
  ChromophoreEstimate out;
  out.reorganisation_energy = reorganisation_energy;
  out.dipole_change = dipole_change;
  out.conversion = conversion;
  out.curvature = {2.0 / std::numbers::pi * conversion * reorganisation_energy, mass_number};
  out.bound_scale = std::sqrt(out.curvature.per_mass);
  return out;
}

}  // namespace spectral
}  // namespace qtst
