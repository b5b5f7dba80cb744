#pragma once

// Least-squares estimation of (omega0, omegab) from KIE(T) data, and linear
// Arrhenius regression of rate data.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qtst/error.hpp"
#include "qtst/kie.hpp"
#include "qtst/kramers.hpp"
#include "qtst/units.hpp"

namespace qtst::fit {

struct KIEPoint {
  double T = 0.0;                // K
  double kie = 0.0;
  std::optional<double> sigma;   // absolute uncertainty of kie
};

struct KIEDataset {
  std::vector<KIEPoint> points;
  IsotopePair pair{Isotope::H, Isotope::D};
  std::string label;
  std::string source;
};

struct FitConfig {
  std::vector<double> omega0_starts{1500, 2000, 2500, 3000, 3500, 4000};
  std::vector<double> omegab_starts{300, 500, 700, 900, 1100, 1300, 1500, 1700, 1900, 2100, 2300, 2500};
  double omega0_min = 500.0, omega0_max = 5000.0;
  double omegab_min = 100.0, omegab_max = 3000.0;
  int max_iterations = 200;
  double fd_step = 1e-4;          // relative central-difference step
  double penalty_weight = 1e3;    // crossover penalty scale
  double crossover_margin = 0.02; // keep T_i >= (1 + margin) T0 without penalty
};

using Matrix2 = std::array<std::array<double, 2>, 2>;

struct FitResult {
  double omega0 = 0.0;          // cm^-1
  double omegab = 0.0;          // cm^-1
  double residual_norm = 0.0;   // sqrt of the weighted sum of squares
  double objective = 0.0;       // weighted sum of squares including penalties
  Matrix2 covariance{};         // (omega0, omegab), cm^-2
  double implied_T0 = 0.0;      // hydrogen crossover temperature, K
  bool valid = false;           // T_min > 1.05 implied_T0
  int n_starts = 0;
  int n_starts_converged = 0;
  int iterations = 0;           // of the winning start
  std::vector<double> residuals;  // data residuals in sorted point order

  double stderr_omega0() const { return std::sqrt(std::max(0.0, covariance[0][0])); }
  double stderr_omegab() const { return std::sqrt(std::max(0.0, covariance[1][1])); }
};

inline void validate(const KIEDataset& d) {
  if (d.points.size() < 3) throw domain_error("KIE dataset: need at least 3 points for a 2-parameter fit");
  std::vector<double> temps;
  for (const auto& p : d.points) {
    if (!(p.T > 0.0) || !std::isfinite(p.T)) throw domain_error("KIE dataset: temperatures must be > 0");
    if (!(p.kie > 0.0) || !std::isfinite(p.kie)) throw domain_error("KIE dataset: KIE values must be > 0");
    if (p.sigma && !(*p.sigma > 0.0)) throw domain_error("KIE dataset: sigma must be > 0");
    temps.push_back(p.T);
  }
  std::sort(temps.begin(), temps.end());
  if (std::adjacent_find(temps.begin(), temps.end()) != temps.end()) {
    throw domain_error("KIE dataset: temperatures must be distinct");
  }
  if (mass_number(d.pair.light) >= mass_number(d.pair.heavy)) {
    throw domain_error("KIE dataset: pair must be light:heavy with different isotopes");
  }
}

namespace detail {

// Points sorted so that results do not depend on input order.
struct Problem {
  std::vector<KIEPoint> points;
  double m_light = 1.0;
  double m_heavy = 2.0;
  double sigma_scale = 1.0;  // mean sigma, scales the penalty like the data
  FitConfig config;

  explicit Problem(const KIEDataset& d, const FitConfig& c) : points(d.points), config(c) {
    std::sort(points.begin(), points.end(), [](const KIEPoint& a, const KIEPoint& b) {
      return std::make_tuple(a.T, a.kie, a.sigma.value_or(0.0)) <
             std::make_tuple(b.T, b.kie, b.sigma.value_or(0.0));
    });
    m_light = mass_number(d.pair.light);
    m_heavy = mass_number(d.pair.heavy);
    double s = 0.0;
    for (const auto& p : points) s += p.sigma.value_or(1.0);
    sigma_scale = s / static_cast<double>(points.size());
  }

  // Largest omegab keeping T_i at least (1 + margin) above the light isotope's T0.
  double omegab_cap(double T) const {
    return std::sqrt(m_light) * crossover_temperature_inverse(T / (1.0 + config.crossover_margin));
  }

  static double crossover_temperature_inverse(double T0) { return T0 / crossover_temperature(1.0); }

  // Data residuals followed by penalty residuals.
  std::vector<double> residuals(double w0, double wb) const {
    std::vector<double> r;
    r.reserve(2 * points.size());
    for (const auto& p : points) {
      const double cap = omegab_cap(p.T);
      const double model = kie_ratio(w0, std::min(wb, cap), p.T, m_light, m_heavy);
      r.push_back((model - p.kie) / p.sigma.value_or(1.0));
    }
    for (const auto& p : points) {
      const double cap = omegab_cap(p.T);
      r.push_back(config.penalty_weight * std::max(0.0, wb - cap) / cap / sigma_scale);
    }
    return r;
  }

  static double sum_sq(const std::vector<double>& r) {
    double s = 0.0;
    for (double v : r) s += v * v;
    return s;
  }

  double objective(double w0, double wb) const { return sum_sq(residuals(w0, wb)); }

  std::array<double, 2> clamp(std::array<double, 2> p) const {
    p[0] = std::clamp(p[0], config.omega0_min, config.omega0_max);
    p[1] = std::clamp(p[1], config.omegab_min, config.omegab_max);
    return p;
  }

  // Central-difference Jacobian, one column per parameter.
  std::array<std::vector<double>, 2> jacobian(const std::array<double, 2>& p) const {
    std::array<std::vector<double>, 2> J;
    for (int j = 0; j < 2; ++j) {
      const double h = config.fd_step * std::abs(p[j]);
      auto plus = p, minus = p;
      plus[j] += h;
      minus[j] -= h;
      const auto rp = residuals(plus[0], plus[1]);
      const auto rm = residuals(minus[0], minus[1]);
      J[j].resize(rp.size());
      for (std::size_t i = 0; i < rp.size(); ++i) J[j][i] = (rp[i] - rm[i]) / (2.0 * h);
    }
    return J;
  }
};

struct LocalFit {
  std::array<double, 2> p{};
  double cost = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Levenberg-Marquardt with diagonal scaling, projected onto the box.
inline LocalFit levenberg_marquardt(const Problem& prob, std::array<double, 2> p) {
  p = prob.clamp(p);
  auto r = prob.residuals(p[0], p[1]);
  double cost = Problem::sum_sq(r);
  double lambda = 1e-3;
  LocalFit out;
  int it = 0;
  for (; it < prob.config.max_iterations; ++it) {
    const auto J = prob.jacobian(p);
    double A[2][2] = {{0, 0}, {0, 0}};
    double g[2] = {0, 0};
    for (std::size_t i = 0; i < r.size(); ++i) {
      for (int a = 0; a < 2; ++a) {
        g[a] += J[a][i] * r[i];
        for (int b = 0; b < 2; ++b) A[a][b] += J[a][i] * J[b][i];
      }
    }
    const double gnorm = std::hypot(g[0] * p[0], g[1] * p[1]);
    if (cost == 0.0 || gnorm <= 1e-14 * std::max(cost, 1e-300)) {
      out.converged = true;
      break;
    }
    bool accepted = false;
    while (lambda < 1e16) {
      const double a00 = A[0][0] * (1.0 + lambda), a11 = A[1][1] * (1.0 + lambda);
      const double det = a00 * a11 - A[0][1] * A[1][0];
      if (det == 0.0 || !std::isfinite(det)) {
        lambda *= 10.0;
        continue;
      }
      const double d0 = -(a11 * g[0] - A[0][1] * g[1]) / det;
      const double d1 = -(a00 * g[1] - A[1][0] * g[0]) / det;
      const auto cand = prob.clamp({p[0] + d0, p[1] + d1});
      const auto rc = prob.residuals(cand[0], cand[1]);
      const double cc = Problem::sum_sq(rc);
      if (std::isfinite(cc) && cc < cost) {
        const double step = std::max(std::abs(cand[0] - p[0]) / p[0], std::abs(cand[1] - p[1]) / p[1]);
        const double drop = (cost - cc) / cost;
        p = cand;
        r = rc;
        cost = cc;
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        if (step < 1e-12 || drop < 1e-15) out.converged = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted) {
      // No downhill step at any damping: a minimum up to rounding.
      out.converged = true;
      break;
    }
    if (out.converged) break;
  }
  out.p = p;
  out.cost = cost;
  out.iterations = it + 1;
  return out;
}

}  // namespace detail

/// Weighted objective sum w_i (model_i - kie_i)^2 plus crossover penalties.
inline double fit_objective(const KIEDataset& data, const FitConfig& config, double omega0,
                            double omegab) {
  return detail::Problem(data, config).objective(omega0, omegab);
}

/// Fits the QTST KIE expression to data by multi-start Levenberg-Marquardt.
inline FitResult fit_kie(const KIEDataset& data, const FitConfig& config = {}) {
  validate(data);
  const detail::Problem prob(data, config);

  FitResult best;
  best.objective = std::numeric_limits<double>::infinity();
  bool found = false;
  detail::LocalFit winner;
  for (double w0 : config.omega0_starts) {
    for (double wb : config.omegab_starts) {
      ++best.n_starts;
      const auto local = detail::levenberg_marquardt(prob, {w0, wb});
      if (!local.converged || !std::isfinite(local.cost)) continue;
      ++best.n_starts_converged;
      if (!found || local.cost < winner.cost) {
        winner = local;
        found = true;
      }
    }
  }
  if (!found) throw fit_error("fit_kie: no multi-start run converged");

  best.omega0 = winner.p[0];
  best.omegab = winner.p[1];
  best.objective = winner.cost;
  best.iterations = winner.iterations;
  const auto r = prob.residuals(best.omega0, best.omegab);
  const std::size_t n = prob.points.size();
  best.residuals.assign(r.begin(), r.begin() + static_cast<long>(n));
  best.residual_norm = std::sqrt(detail::Problem::sum_sq(best.residuals));
  best.implied_T0 = crossover_temperature(best.omegab);

  double t_max = 0.0, t_min = std::numeric_limits<double>::infinity();
  for (const auto& p : prob.points) {
    t_max = std::max(t_max, p.T);
    t_min = std::min(t_min, p.T);
  }
  const double T0_light = crossover_temperature(isotope_frequency(best.omegab, data.pair.light));
  if (!(t_max > T0_light)) {
    throw fit_error("fit_kie: every data point lies below the fitted crossover temperature");
  }
  best.valid = t_min > 1.05 * best.implied_T0;

  // Covariance s^2 (J^T W J)^-1 from the data rows; residuals are pre-weighted.
  const auto J = prob.jacobian(winner.p);
  double A[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < n; ++i) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) A[a][b] += J[a][i] * J[b][i];
    }
  }
  const double det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
  const double s2 = n > 2 ? best.residual_norm * best.residual_norm / static_cast<double>(n - 2) : 0.0;
  if (det > 0.0 && std::isfinite(det)) {
    best.covariance = {{{s2 * A[1][1] / det, -s2 * A[0][1] / det},
                        {-s2 * A[1][0] / det, s2 * A[0][0] / det}}};
    best.covariance[1][0] = best.covariance[0][1];
  } else {
    const double inf = std::numeric_limits<double>::infinity();
    best.covariance = {{{inf, 0.0}, {0.0, inf}}};
  }
  return best;
}

// ---------------------------------------------------------------------------

struct RatePoint {
  double T = 0.0;  // K
  double k = 0.0;  // rate or rate ratio
};

struct ArrheniusFit {
  ArrheniusParams params;   // A and E (kJ/mol)
  double A_stderr = 0.0;
  double E_stderr = 0.0;
  double slope = 0.0;       // d ln k / d(1/T), K
  double intercept = 0.0;   // ln A
  double residual_norm = 0.0;
  int n_points = 0;
};

/// Ordinary least squares of ln k on 1/T.
inline ArrheniusFit fit_arrhenius(const std::vector<RatePoint>& data) {
  if (data.size() < 2) throw domain_error("fit_arrhenius: need at least 2 points");
  for (const auto& p : data) {
    if (!(p.T > 0.0)) throw domain_error("fit_arrhenius: temperatures must be > 0");
    if (!(p.k > 0.0)) throw domain_error("fit_arrhenius: rates must be > 0");
  }
  std::vector<RatePoint> pts(data);
  std::sort(pts.begin(), pts.end(), [](const RatePoint& a, const RatePoint& b) {
    return std::tie(a.T, a.k) < std::tie(b.T, b.k);
  });
  const double n = static_cast<double>(pts.size());
  double xm = 0.0, ym = 0.0;
  for (const auto& p : pts) {
    xm += 1.0 / p.T;
    ym += std::log(p.k);
  }
  xm /= n;
  ym /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : pts) {
    const double dx = 1.0 / p.T - xm;
    sxx += dx * dx;
    sxy += dx * (std::log(p.k) - ym);
  }
  if (!(sxx > 0.0)) throw fit_error("fit_arrhenius: degenerate design (all temperatures equal)");

  ArrheniusFit out;
  out.slope = sxy / sxx;
  out.intercept = ym - out.slope * xm;
  double ssr = 0.0;
  for (const auto& p : pts) {
    const double e = std::log(p.k) - (out.intercept + out.slope / p.T);
    ssr += e * e;
  }
  out.residual_norm = std::sqrt(ssr);
  out.n_points = static_cast<int>(pts.size());
  out.params.A = std::exp(out.intercept);
  out.params.E = -out.slope * constants::gas_constant;
  if (pts.size() > 2) {
    const double s2 = ssr / (n - 2.0);
    out.E_stderr = std::sqrt(s2 / sxx) * constants::gas_constant;
    out.A_stderr = out.params.A * std::sqrt(s2 * (1.0 / n + xm * xm / sxx));
  }
  return out;
}

}  // namespace qtst::fit
