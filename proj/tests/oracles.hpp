#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "casimir/constants.hpp"

// Independent oracles for derived expected values.  Everything here is
// deliberately written with the dumbest possible algorithms (plain loops,
// long double accumulation, textbook formulas) and shares no code with the
// library paths it checks.

namespace oracles {

// Naive term-by-term core permittivity sum, reversed iteration order.
inline double core_permittivity(const std::vector<std::array<double, 3>>& osc,
                                double xi) {
  long double sum = 1.0L;
  for (auto it = osc.rbegin(); it != osc.rend(); ++it) {
    const long double f = (*it)[0], w = (*it)[1], g = (*it)[2];
    sum += f / (w * w + static_cast<long double>(xi) * xi + g * xi);
  }
  return static_cast<double>(sum);
}

// Brute-force regulated box energy: fixed index cube, no early exits.
// sides in meters, delta in seconds; returns joule.
inline double regulated_energy_brute(double ax, double ay, double az, double delta,
                                     bool electromagnetic, int n_max) {
  const long double pic = std::numbers::pi * casimir::constants::c_light;
  long double sum = 0.0L;
  auto omega = [&](int n, int l, int p) {
    const long double vx = n / static_cast<long double>(ax);
    const long double vy = l / static_cast<long double>(ay);
    const long double vz = p / static_cast<long double>(az);
    return pic * sqrtl(vx * vx + vy * vy + vz * vz);
  };
  for (int n = 1; n <= n_max; ++n)
    for (int l = 1; l <= n_max; ++l)
      for (int p = 1; p <= n_max; ++p) {
        const long double w = omega(n, l, p);
        sum += (electromagnetic ? 2.0L : 1.0L) * w * expl(-delta * w);
      }
  if (electromagnetic) {
    // modes with exactly one zero index, weight 1
    for (int l = 1; l <= n_max; ++l)
      for (int p = 1; p <= n_max; ++p) {
        const long double w = omega(0, l, p) + 0.0L;
        sum += w * expl(-delta * w);
      }
    for (int n = 1; n <= n_max; ++n)
      for (int p = 1; p <= n_max; ++p) {
        const long double w = omega(n, 0, p);
        sum += w * expl(-delta * w);
      }
    for (int n = 1; n <= n_max; ++n)
      for (int l = 1; l <= n_max; ++l) {
        const long double w = omega(n, l, 0);
        sum += w * expl(-delta * w);
      }
  }
  return static_cast<double>(0.5L * casimir::constants::hbar * sum);
}

// Brute-force thermal correction at temperature T (kelvin), joule.
inline double thermal_correction_brute(double ax, double ay, double az, double t_k,
                                       bool electromagnetic, int n_max) {
  const long double pic = std::numbers::pi * casimir::constants::c_light;
  const long double kt = casimir::constants::k_boltzmann * static_cast<long double>(t_k);
  const long double hbar = casimir::constants::hbar;
  long double sum = 0.0L;
  auto add = [&](int n, int l, int p, long double weight) {
    const long double vx = n / static_cast<long double>(ax);
    const long double vy = l / static_cast<long double>(ay);
    const long double vz = p / static_cast<long double>(az);
    const long double w = pic * sqrtl(vx * vx + vy * vy + vz * vz);
    const long double x = hbar * w / kt;
    if (x < 11000.0L) sum += weight * logl(1.0L - expl(-x));
  };
  for (int n = 1; n <= n_max; ++n)
    for (int l = 1; l <= n_max; ++l)
      for (int p = 1; p <= n_max; ++p) add(n, l, p, electromagnetic ? 2.0L : 1.0L);
  if (electromagnetic) {
    for (int l = 1; l <= n_max; ++l)
      for (int p = 1; p <= n_max; ++p) add(0, l, p, 1.0L);
    for (int n = 1; n <= n_max; ++n)
      for (int p = 1; p <= n_max; ++p) add(n, 0, p, 1.0L);
    for (int n = 1; n <= n_max; ++n)
      for (int l = 1; l <= n_max; ++l) add(n, l, 0, 1.0L);
  }
  return static_cast<double>(kt * sum);
}

// Epstein-zeta evaluation Lambda_d(-1), the analytic continuation at s = -1
// of sum'_{m in Z^d} [sum_i (m_i/a_i)^2]^(-s/2), through the completed
// theta-function representation.  Simpson quadrature on [1, inf) after the
// Jacobi split; integrands decay like exp(-pi t).
inline double lambda_epstein_minus1(const std::vector<double>& a) {
  const double pi = std::numbers::pi;
  const int d = static_cast<int>(a.size());
  double va = 1.0;
  for (double ai : a) va *= ai;
  auto theta_full = [&](double t, bool dual) {
    double prod = 1.0;
    for (double ai : a) {
      const double coef = dual ? pi * t * ai * ai : pi * t / (ai * ai);
      double s = 0.0;
      for (int n = 1; n < 8000; ++n) {
        const double term = std::exp(-coef * n * n);
        s += term;
        if (term < 1e-22) break;
      }
      prod *= 1.0 + 2.0 * s;
    }
    return prod;
  };
  // Simpson with geometric cut at t = 80 (integrand < 1e-30 there).
  auto simpson = [](auto f, double lo, double hi, int steps) {
    const double h = (hi - lo) / steps;
    double s = f(lo) + f(hi);
    for (int i = 1; i < steps; ++i) s += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
  };
  auto fa = [&](double t) { return std::pow(t, -1.5) * (theta_full(t, false) - 1.0); };
  auto fb = [&](double u) {
    return std::pow(u, 0.5 * (d + 1) - 1.0) * (theta_full(u, true) - 1.0);
  };
  const double ia = simpson(fa, 1.0, 80.0, 4000);
  const double ib = simpson(fb, 1.0, 80.0, 4000);
  return -(1.0 / (2.0 * pi)) * (ia + va * ib + 2.0 * va / (-1.0 - d) + 2.0);
}

// Zeta-regularized renormalized energies for a box with sides in meters:
// restricted octant sums decompose into full-lattice Epstein values with
// weights 1/8 (3d), -1/8 (each 2d pair), +1/8 (each axis, half of 1/4)
// for the Dirichlet scalar, and 1/4 (3d), -1/4 (each axis) for the
// electromagnetic field.  Returns joule.
inline double renormalized_energy_scalar_zeta(double ax, double ay, double az) {
  const double pi = std::numbers::pi;
  const double l3 = lambda_epstein_minus1({ax, ay, az});
  const double l2 = lambda_epstein_minus1({ax, ay}) + lambda_epstein_minus1({ax, az}) +
                    lambda_epstein_minus1({ay, az});
  const double zeta_m1 = -1.0 / 12.0;
  const double l1 = 2.0 * zeta_m1 * (1.0 / ax + 1.0 / ay + 1.0 / az);
  return 0.5 * casimir::constants::hbar * pi * casimir::constants::c_light *
         (l3 / 8.0 - l2 / 8.0 + l1 / 8.0);
}

inline double renormalized_energy_em_zeta(double ax, double ay, double az) {
  const double pi = std::numbers::pi;
  const double l3 = lambda_epstein_minus1({ax, ay, az});
  const double zeta_m1 = -1.0 / 12.0;
  const double l1 = 2.0 * zeta_m1 * (1.0 / ax + 1.0 / ay + 1.0 / az);
  return 0.5 * casimir::constants::hbar * pi * casimir::constants::c_light *
         (l3 / 4.0 - l1 / 4.0);
}

// Composite-Simpson quadrature of y * ln(1 - r(y)^2 e^-y) on [0, cut], used
// as the independent route for zero-frequency integrands.
template <class R>
double log_integral_simpson(R r, double cut = 80.0, int steps = 40000) {
  auto f = [&](double y) {
    if (y <= 0.0) return 0.0;
    const double c = r(y);
    return y * std::log1p(-c * c * std::exp(-y));
  };
  const double h = cut / steps;
  double s = f(0.0) + f(cut);
  for (int i = 1; i < steps; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracles
