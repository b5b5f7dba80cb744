#pragma once

// Zero-friction WKB action and transmission through one-dimensional barriers.
//
// Positions are in angstrom, energies in kJ/mol and masses in proton masses.
// Frequencies stored in a potential refer to the potential's own mass.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qtst/error.hpp"
#include "qtst/numerics.hpp"
#include "qtst/spectral.hpp"
#include "qtst/units.hpp"

namespace qtst::wkb {

/// U(x) = E_b - M wb^2 x^2 / 2, barrier top at x = 0.
struct Parabolic {
  double barrier = 40.0;   // kJ/mol
  double omega_b = 1000.0;  // cm^-1
  double mass = 1.0;
};

/// U(x) = V0 / cosh^2(x / width).
struct Eckart {
  double V0 = 40.0;      // kJ/mol
  double width = 0.5;    // angstrom
  double mass = 1.0;
};

/// U(x) = k x^2 (1 - 2x/(3 x_b)) / 2 with k = M w0^2 and x_b = sqrt(6 E_b / k):
/// a well at 0 and a barrier of height E_b at x_b.
struct Cubic {
  double omega_0 = 3000.0;  // cm^-1
  double barrier = 40.0;    // kJ/mol
  double mass = 1.0;
};

/// Monotone piecewise-cubic interpolation of sampled (x, U) points.
class Tabulated {
 public:
  Tabulated(std::vector<double> x, std::vector<double> U, double mass = 1.0)
      : x_(std::move(x)), U_(std::move(U)), mass_(mass) {
    if (x_.size() != U_.size()) throw domain_error("tabulated potential: x and U sizes differ");
    if (x_.size() < 3) throw domain_error("tabulated potential: need at least 3 points");
    if (!(mass_ > 0.0)) throw domain_error("tabulated potential: mass must be > 0");
    for (std::size_t i = 0; i < x_.size(); ++i) {
      if (!std::isfinite(x_[i]) || !std::isfinite(U_[i])) {
        throw domain_error("tabulated potential: non-finite sample");
      }
      if (i > 0 && !(x_[i] > x_[i - 1])) {
        throw domain_error("tabulated potential: x must be strictly increasing");
      }
    }
    build_slopes();
    top_ = static_cast<std::size_t>(std::max_element(U_.begin(), U_.end()) - U_.begin());
  }

  double mass() const { return mass_; }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& U() const { return U_; }
  std::size_t top_index() const { return top_; }

  double operator()(double x) const {
    if (x < x_.front() || x > x_.back()) {
      throw domain_error("tabulated potential: x = " + std::to_string(x) + " outside the grid");
    }
    std::size_t i = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
    i = std::clamp<std::size_t>(i, 1, x_.size() - 1) - 1;
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * U_[i] + (t3 - 2 * t2 + t) * h * d_[i] +
           (-2 * t3 + 3 * t2) * U_[i + 1] + (t3 - t2) * h * d_[i + 1];
  }

 private:
  // Three-point derivative estimates (exact for quadratics) limited with the
  // Fritsch-Carlson conditions so each interval stays monotone.
  void build_slopes() {
    const std::size_t n = x_.size();
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      delta[i] = (U_[i + 1] - U_[i]) / h[i];
    }
    d_.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      d_[i] = (h[i] * delta[i - 1] + h[i - 1] * delta[i]) / (h[i - 1] + h[i]);
    }
    d_[0] = ((2 * h[0] + h[1]) * delta[0] - h[0] * delta[1]) / (h[0] + h[1]);
    d_[n - 1] = ((2 * h[n - 2] + h[n - 3]) * delta[n - 2] - h[n - 2] * delta[n - 3]) /
                (h[n - 2] + h[n - 3]);
    auto sign = [](double v) { return (v > 0.0) - (v < 0.0); };
    for (std::size_t i = 0; i < n; ++i) {
      const double left = i > 0 ? delta[i - 1] : delta[0];
      const double right = i + 1 < n ? delta[i] : delta[n - 2];
      if (sign(left) * sign(right) <= 0 || sign(d_[i]) != sign(left)) {
        d_[i] = 0.0;
        continue;
      }
      const double lim = 3.0 * std::min(std::abs(left), std::abs(right));
      if (std::abs(d_[i]) > lim) d_[i] = std::copysign(lim, d_[i]);
    }
  }

  std::vector<double> x_;
  std::vector<double> U_;
  std::vector<double> d_;
  double mass_;
  std::size_t top_ = 0;
};

using Potential1D = std::variant<Parabolic, Eckart, Cubic, Tabulated>;

struct BarrierTop {
  double x = 0.0;       // angstrom
  double energy = 0.0;  // kJ/mol
};

namespace detail {

// M w^2 in kJ/mol per angstrom^2 for w in cm^-1 and M in proton masses.
inline double force_constant(double mass, double omega) {
  using namespace constants;
  const double w = omega * rad_s_per_wavenumber;
  return mass * proton_mass * w * w * avogadro / 1e3 * angstrom * angstrom;
}

inline double cubic_xb(const Cubic& c) {
  return std::sqrt(6.0 * c.barrier / force_constant(c.mass, c.omega_0));
}

inline void validate(const Parabolic& p) {
  if (!(p.barrier > 0.0) || !(p.omega_b > 0.0) || !(p.mass > 0.0)) {
    throw domain_error("parabolic potential: barrier, omega_b and mass must be > 0");
  }
}
inline void validate(const Eckart& p) {
  if (!(p.V0 > 0.0) || !(p.width > 0.0) || !(p.mass > 0.0)) {
    throw domain_error("eckart potential: V0, width and mass must be > 0");
  }
}
inline void validate(const Cubic& p) {
  if (!(p.barrier > 0.0) || !(p.omega_0 > 0.0) || !(p.mass > 0.0)) {
    throw domain_error("cubic potential: barrier, omega_0 and mass must be > 0");
  }
}
inline void validate(const Tabulated& p) {
  if (p.top_index() == 0 || p.top_index() + 1 == p.x().size()) {
    throw domain_error("tabulated potential: maximum lies on the grid boundary (no barrier)");
  }
}

}  // namespace detail

inline double mass_of(const Potential1D& U) {
  return std::visit(::qtst::detail::overloaded{
                        [](const Tabulated& t) { return t.mass(); },
                        [](const auto& p) { return p.mass; },
                    },
                    U);
}

inline double potential(const Potential1D& U, double x) {
  return std::visit(::qtst::detail::overloaded{
                        [&](const Parabolic& p) {
                          return p.barrier - 0.5 * detail::force_constant(p.mass, p.omega_b) * x * x;
                        },
                        [&](const Eckart& p) {
                          const double c = std::cosh(x / p.width);
                          return p.V0 / (c * c);
                        },
                        [&](const Cubic& p) {
                          const double k = detail::force_constant(p.mass, p.omega_0);
                          return 0.5 * k * x * x * (1.0 - 2.0 * x / (3.0 * detail::cubic_xb(p)));
                        },
                        [&](const Tabulated& t) { return t(x); },
                    },
                    U);
}

inline BarrierTop barrier_top(const Potential1D& U) {
  std::visit([](const auto& p) { detail::validate(p); }, U);
  return std::visit(::qtst::detail::overloaded{
                        [](const Parabolic& p) { return BarrierTop{0.0, p.barrier}; },
                        [](const Eckart& p) { return BarrierTop{0.0, p.V0}; },
                        [](const Cubic& p) { return BarrierTop{detail::cubic_xb(p), p.barrier}; },
                        [](const Tabulated& t) {
                          return BarrierTop{t.x()[t.top_index()], t.U()[t.top_index()]};
                        },
                    },
                    U);
}

namespace detail {

// A point on one side of the barrier top where U < E.
inline double outer_bracket(const Potential1D& U, const BarrierTop& top, double E, double dir) {
  if (const auto* t = std::get_if<Tabulated>(&U)) {
    const auto& xs = t->x();
    const auto& us = t->U();
    const long step = dir < 0 ? -1 : 1;
    for (long i = static_cast<long>(t->top_index()) + step; i >= 0 && i < static_cast<long>(xs.size());
         i += step) {
      if (us[static_cast<std::size_t>(i)] < E) return xs[static_cast<std::size_t>(i)];
    }
    throw domain_error("turning_points: tabulated potential does not bracket E = " +
                       std::to_string(E) + " kJ/mol");
  }
  double scale = 1.0;
  if (const auto* c = std::get_if<Cubic>(&U)) scale = cubic_xb(*c);
  if (const auto* e = std::get_if<Eckart>(&U)) scale = e->width;
  if (const auto* p = std::get_if<Parabolic>(&U)) {
    scale = std::sqrt(2.0 * p->barrier / force_constant(p->mass, p->omega_b));
  }
  if (std::holds_alternative<Cubic>(U) && dir < 0) return 0.0;  // U(0) = 0 < E
  double step = scale;
  for (int i = 0; i < 200; ++i) {
    const double x = top.x + dir * step;
    if (potential(U, x) < E) return x;
    step *= 2.0;
  }
  throw domain_error("turning_points: could not bracket E = " + std::to_string(E) + " kJ/mol");
}

}  // namespace detail

/// Roots x1 < x_b < x2 of U(x) = E, by bisection to 1e-12 relative in x.
inline std::pair<double, double> turning_points(const Potential1D& U, double E) {
  const auto top = barrier_top(U);
  if (!(E < top.energy)) {
    throw domain_error("turning_points: E = " + std::to_string(E) +
                       " kJ/mol is not below the barrier top " + std::to_string(top.energy));
  }
  if (!(E > 0.0) && !std::holds_alternative<Tabulated>(U)) {
    throw domain_error("turning_points: E must be > 0");
  }
  auto g = [&](double x) { return potential(U, x) - E; };
  auto root = [&](double dir) {
    const double outer = detail::outer_bracket(U, top, E, dir);
    const double lo = std::min(outer, top.x);
    const double hi = std::max(outer, top.x);
    const double width = 1e-13 * std::max({std::abs(lo), std::abs(hi), hi - lo});
    auto [a, b] = numerics::bisect(g, lo, hi, width);
    return 0.5 * (a + b);
  };
  return {root(-1.0), root(1.0)};
}

/// S(E)/hbar = sqrt(2M)/hbar int_{x1}^{x2} sqrt(U - E) dx, using x = xm + D sin(theta)
/// so the integrand is smooth at the turning points.
inline double wkb_action(const Potential1D& U, double E) {
  const auto [x1, x2] = turning_points(U, E);
  const double xm = 0.5 * (x1 + x2);
  const double half = 0.5 * (x2 - x1);
  const auto top = barrier_top(U);
  std::vector<double> cuts{-0.5 * std::numbers::pi, 0.5 * std::numbers::pi};
  // Split at the barrier top, and at grid nodes for a tabulated potential.
  auto add_cut = [&](double x) {
    const double s = (x - xm) / half;
    if (s > -1.0 && s < 1.0) cuts.push_back(std::asin(s));
  };
  add_cut(top.x);
  if (const auto* t = std::get_if<Tabulated>(&U)) {
    for (double x : t->x()) add_cut(x);
  }
  std::sort(cuts.begin(), cuts.end());
  auto integrand = [&](double th) {
    const double x = xm + half * std::sin(th);
    const double d = potential(U, x) - E;
    return d > 0.0 ? std::sqrt(d) * half * std::cos(th) : 0.0;
  };
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) integral += numerics::integrate(integrand, cuts[i], cuts[i + 1], 1e-12);
  }
  using namespace constants;
  const double mass = mass_of(U) * proton_mass;
  // sqrt(kJ/mol) -> sqrt(J), angstrom -> m.
  const double scale = std::sqrt(2.0 * mass * 1e3 / avogadro) * angstrom / hbar;
  return scale * integral;
}

/// exp(-2 S(E)/hbar).
inline double transmission(const Potential1D& U, double E) { return std::exp(-2.0 * wkb_action(U, E)); }

}  // namespace qtst::wkb
