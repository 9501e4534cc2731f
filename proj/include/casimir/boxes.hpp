#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/numeric/derivative.hpp"
#include "casimir/numeric/quadrature.hpp"
#include "casimir/numeric/reduction.hpp"
#include "casimir/numeric/richardson.hpp"

// Casimir energies, free energies and forces for ideal rectangular boxes:
// Dirichlet scalar and electromagnetic (ideal metal) mode sets, exponential
// cutoff regularization with geometric counterterms, a delta-ladder with
// Richardson extrapolation for the renormalized T = 0 energy, thermal mode
// sums, quantum-thermal subtractions and the ideal parallel-plate closed
// forms.
//
// The electromagnetic spectrum of a box counts modes with all three indices
// nonzero twice, modes with exactly one zero index once, and no modes with
// two zero indices.

namespace casimir::boxes {

struct BoxGeometry {
  double ax_nm = 0.0;
  double ay_nm = 0.0;
  double az_nm = 0.0;

  void validate() const {
    if (!(ax_nm > 0.0 && ay_nm > 0.0 && az_nm > 0.0)) {
      throw domain_error("box sides must be strictly positive");
    }
  }
  double volume_m3() const {
    return units::nm_to_m(ax_nm) * units::nm_to_m(ay_nm) * units::nm_to_m(az_nm);
  }
  // a_x a_y + a_x a_z + a_y a_z
  double face_area_sum_m2() const {
    const double x = units::nm_to_m(ax_nm), y = units::nm_to_m(ay_nm),
                 z = units::nm_to_m(az_nm);
    return x * y + x * z + y * z;
  }
  // a_x + a_y + a_z
  double edge_sum_m() const {
    return units::nm_to_m(ax_nm + ay_nm + az_nm);
  }
  double min_side_m() const {
    return units::nm_to_m(std::min({ax_nm, ay_nm, az_nm}));
  }
};

struct PistonedBox {
  BoxGeometry box;
  double partition_nm = 0.0;  // a_z1, 0 < a_z1 < a_z

  void validate() const {
    box.validate();
    if (!(partition_nm > 0.0 && partition_nm < box.az_nm)) {
      throw domain_error("piston position must lie strictly inside the box");
    }
  }
};

enum class FieldKind { DirichletScalar, ElectromagneticIdealMetal };

enum class Axis { X, Y, Z };

struct ComputeOptions {
  double delta0_side_factor = 0.5;   // delta_0 = factor * min side / c
  int ladder_rungs = 6;              // delta_k = delta_0 / 2^k, k = 0..rungs-1
  double tail_epsilon = 1e-12;       // relative tail target of mode sums
  long long term_budget = 1'000'000'000;
  bool accelerated = false;          // theta-integral fast path
  double ladder_rel_tolerance = 1e-4;
  double derivative_rel_step = 1e-3;
};

struct Counterterms {
  double i1 = 0.0;  // joule, ~ V / delta^4
  double i2 = 0.0;  // joule, ~ -S2 / delta^3
  double i3 = 0.0;  // joule, ~ S1 / delta^2
  double sum() const { return i1 + i2 + i3; }
};

struct CutoffEvaluation {
  double delta_s = 0.0;     // cutoff parameter, seconds
  double regulated_j = 0.0; // (hbar/2) sum over modes of omega exp(-delta omega)
  double subtracted_j = 0.0;
};

struct RenormalizedEnergy {
  double value_j = 0.0;
  double error_j = 0.0;
  double observed_order = 0.0;
  std::vector<CutoffEvaluation> ladder;
};

struct ValueWithError {
  double value = 0.0;
  double error = 0.0;
};

// omega_{nlp} = pi c sqrt((n/ax)^2 + (l/ay)^2 + (p/az)^2), rad/s.
inline double mode_frequency(const BoxGeometry& box, int n, int l, int p) {
  box.validate();
  if (n < 1 || l < 1 || p < 1) {
    throw domain_error("Dirichlet mode indices must be >= 1");
  }
  const double vx = n / units::nm_to_m(box.ax_nm);
  const double vy = l / units::nm_to_m(box.ay_nm);
  const double vz = p / units::nm_to_m(box.az_nm);
  return std::numbers::pi * constants::c_light *
         std::sqrt(vx * vx + vy * vy + vz * vz);
}

namespace detail {

// Solves x^3 e^-x ~ tail target for the dimensionless cutoff of triple sums.
inline double exponential_cap(double tail_epsilon) {
  double x = 30.0;
  for (int i = 0; i < 60; ++i) {
    const double f = std::exp(-x) * (x * x * x + 3 * x * x + 6 * x + 6) / 6.0;
    if (f < tail_epsilon) return x;
    x += 1.0;
  }
  return x;
}

// Number of terms the octant loops would evaluate for |v| <= cap (v in 1/m).
inline long long count_octant_terms(const std::array<double, 3>& sides_m, double cap) {
  long long count = 0;
  const double cap2 = cap * cap;
  const long long nx = static_cast<long long>(sides_m[0] * cap);
  for (long long n = 1; n <= nx; ++n) {
    const double vx2 = (n / sides_m[0]) * (n / sides_m[0]);
    if (vx2 >= cap2) break;
    const double ry = std::sqrt(cap2 - vx2);
    const long long ly = static_cast<long long>(sides_m[1] * ry);
    for (long long l = 1; l <= ly; ++l) {
      const double vxy2 = vx2 + (l / sides_m[1]) * (l / sides_m[1]);
      if (vxy2 >= cap2) break;
      count += static_cast<long long>(sides_m[2] * std::sqrt(cap2 - vxy2));
    }
  }
  return count;
}

inline long long count_quadrant_terms(double a_m, double b_m, double cap) {
  long long count = 0;
  const double cap2 = cap * cap;
  const long long na = static_cast<long long>(a_m * cap);
  for (long long n = 1; n <= na; ++n) {
    const double va2 = (n / a_m) * (n / a_m);
    if (va2 >= cap2) break;
    count += static_cast<long long>(b_m * std::sqrt(cap2 - va2));
  }
  return count;
}

// Sum of weight(omega) over the Dirichlet octant n,l,p >= 1 with
// omega <= pi c cap.  Deterministic slice-parallel reduction over n.
template <class Weight>
double octant_sum(const std::array<double, 3>& sides_m, double cap, Weight weight) {
  const double cap2 = cap * cap;
  const long long nx = static_cast<long long>(sides_m[0] * cap);
  if (nx < 1) return 0.0;
  const double pic = std::numbers::pi * constants::c_light;
  return numeric::parallel_slice_sum(nx, [&](long long slice) {
    const long long n = slice + 1;
    const double vx2 = (n / sides_m[0]) * (n / sides_m[0]);
    if (vx2 >= cap2) return 0.0;
    numeric::KahanAccumulator acc;
    const double ry = std::sqrt(cap2 - vx2);
    const long long ly = static_cast<long long>(sides_m[1] * ry);
    for (long long l = 1; l <= ly; ++l) {
      const double vxy2 = vx2 + (l / sides_m[1]) * (l / sides_m[1]);
      if (vxy2 >= cap2) break;
      const long long pz = static_cast<long long>(sides_m[2] * std::sqrt(cap2 - vxy2));
      for (long long p = 1; p <= pz; ++p) {
        const double v2 = vxy2 + (p / sides_m[2]) * (p / sides_m[2]);
        acc.add(weight(pic * std::sqrt(v2)));
      }
    }
    return acc.value();
  });
}

template <class Weight>
double quadrant_sum(double a_m, double b_m, double cap, Weight weight) {
  const double cap2 = cap * cap;
  const long long na = static_cast<long long>(a_m * cap);
  if (na < 1) return 0.0;
  const double pic = std::numbers::pi * constants::c_light;
  return numeric::parallel_slice_sum(na, [&](long long slice) {
    const long long n = slice + 1;
    const double va2 = (n / a_m) * (n / a_m);
    if (va2 >= cap2) return 0.0;
    numeric::KahanAccumulator acc;
    const long long lb = static_cast<long long>(b_m * std::sqrt(cap2 - va2));
    for (long long l = 1; l <= lb; ++l) {
      const double v2 = va2 + (l / b_m) * (l / b_m);
      acc.add(weight(pic * std::sqrt(v2)));
    }
    return acc.value();
  });
}

inline std::array<double, 3> sides_m(const BoxGeometry& box) {
  return {units::nm_to_m(box.ax_nm), units::nm_to_m(box.ay_nm),
          units::nm_to_m(box.az_nm)};
}

// Smallest mode frequency of the field's spectrum, rad/s.
inline double min_mode_frequency(const BoxGeometry& box, FieldKind field) {
  const auto s = sides_m(box);
  const double pic = std::numbers::pi * constants::c_light;
  if (field == FieldKind::DirichletScalar) {
    return pic * std::sqrt(1.0 / (s[0] * s[0]) + 1.0 / (s[1] * s[1]) +
                           1.0 / (s[2] * s[2]));
  }
  double best = 1e300;
  const std::array<std::array<double, 2>, 3> pairs = {
      {{s[1], s[2]}, {s[0], s[2]}, {s[0], s[1]}}};
  for (const auto& pr : pairs) {
    best = std::min(best,
                    pic * std::sqrt(1.0 / (pr[0] * pr[0]) + 1.0 / (pr[1] * pr[1])));
  }
  return best;
}

// Field-weighted mode sum of weight(omega) with |v| <= cap.  EM modes with
// all indices nonzero enter twice, one-zero-index modes once.
template <class Weight>
double field_mode_sum(const BoxGeometry& box, FieldKind field, double cap,
                      long long budget, Weight weight) {
  const auto s = sides_m(box);
  long long need = count_octant_terms(s, cap);
  if (field == FieldKind::ElectromagneticIdealMetal) {
    need += count_quadrant_terms(s[1], s[2], cap) +
            count_quadrant_terms(s[0], s[2], cap) +
            count_quadrant_terms(s[0], s[1], cap);
  }
  if (need > budget) {
    throw budget_exceeded_error(
        "mode sum would evaluate " + std::to_string(need) +
            " terms, exceeding the configured budget of " + std::to_string(budget),
        budget);
  }
  if (field == FieldKind::DirichletScalar) {
    return octant_sum(s, cap, weight);
  }
  double total = 2.0 * octant_sum(s, cap, weight);
  total += quadrant_sum(s[1], s[2], cap, weight);
  total += quadrant_sum(s[0], s[2], cap, weight);
  total += quadrant_sum(s[0], s[1], cap, weight);
  return total;
}

// ---- theta-integral fast path -------------------------------------------
//
// sum_{n >= 1} omega exp(-delta omega) over a separable spectrum
// omega = sqrt(sum (pi c n_i / a_i)^2) is written, through the subordination
// identity exp(-d w) = (d / 2 sqrt(pi)) Int t^{-3/2} exp(-d^2/4t - t w^2) dt,
// as a single integral over a product of one-dimensional theta sums.  This
// is the optional acceleration validated against the direct ladder.

// theta(x) = sum_{n>=1} exp(-x n^2), with the Jacobi transformation for
// small arguments.
inline double theta_sum(double x) {
  if (x <= 0.0) throw domain_error("theta_sum needs x > 0");
  if (x < 0.3) {
    double dual = 0.0;
    const double pi2 = std::numbers::pi * std::numbers::pi;
    for (int k = 1; k < 64; ++k) {
      const double term = std::exp(-pi2 * k * k / x);
      dual += term;
      if (term < 1e-18) break;
    }
    return 0.5 * (std::sqrt(std::numbers::pi / x) * (1.0 + 2.0 * dual) - 1.0);
  }
  double sum = 0.0;
  for (int n = 1; n < 1000; ++n) {
    const double term = std::exp(-x * n * n);
    sum += term;
    if (term < 1e-18 * (sum + 1e-300)) break;
  }
  return sum;
}

// Sum over n_i >= 1 (i = 1..D) of omega exp(-delta omega) for the given
// per-axis base frequencies y_i = pi c / a_i.
inline double separable_regulated_sum(const std::vector<double>& y, double delta_s) {
  const double d2 = delta_s * delta_s;
  double ymin2 = 1e300;
  for (double yi : y) ymin2 = std::min(ymin2, yi * yi);
  // Integrand support: exp(-d^2/4t) cuts the left end, theta decay the right.
  const double u_lo = std::log(d2 / 4.0 / 60.0);
  const double u_hi = std::log(60.0 / ymin2);
  if (u_lo >= u_hi) return 0.0;
  auto integrand = [&](double u) {
    const double t = std::exp(u);
    double prod = 1.0;
    for (double yi : y) prod *= theta_sum(t * yi * yi);
    const double gauss = std::exp(-d2 / (4.0 * t));
    return std::pow(t, -1.5) * (d2 / (2.0 * t) - 1.0) * gauss * prod * t;
  };
  auto res = numeric::integrate(integrand, u_lo, u_hi, 1e-12, 0.0, 20000);
  return res.value / (2.0 * std::sqrt(std::numbers::pi));
}

inline double accelerated_field_sum(const BoxGeometry& box, FieldKind field,
                                    double delta_s) {
  const auto s = sides_m(box);
  const double pic = std::numbers::pi * constants::c_light;
  const std::vector<double> y3 = {pic / s[0], pic / s[1], pic / s[2]};
  if (field == FieldKind::DirichletScalar) {
    return separable_regulated_sum(y3, delta_s);
  }
  double total = 2.0 * separable_regulated_sum(y3, delta_s);
  total += separable_regulated_sum({pic / s[1], pic / s[2]}, delta_s);
  total += separable_regulated_sum({pic / s[0], pic / s[2]}, delta_s);
  total += separable_regulated_sum({pic / s[0], pic / s[1]}, delta_s);
  return total;
}

}  // namespace detail

// Regulated vacuum energy (hbar/2) sum of omega exp(-delta omega) over the
// field's mode set, joule.  delta is in seconds.
inline double regulated_energy(const BoxGeometry& box, FieldKind field, double delta_s,
                               const ComputeOptions& opt = {}) {
  box.validate();
  if (!(delta_s > 0.0)) throw domain_error("cutoff delta must be > 0");
  if (opt.accelerated) {
    return 0.5 * constants::hbar * detail::accelerated_field_sum(box, field, delta_s);
  }
  const double x_cap = detail::exponential_cap(opt.tail_epsilon);
  // |v| cap in 1/m from delta * pi c |v| <= x_cap.
  const double cap = x_cap / (delta_s * std::numbers::pi * constants::c_light);
  const double sum = detail::field_mode_sum(
      box, field, cap, opt.term_budget,
      [delta_s](double w) { return w * std::exp(-delta_s * w); });
  return 0.5 * constants::hbar * sum;
}

// Geometric counterterms of the exponential cutoff:
//   I1 =  3 hbar V / (2 pi^2 c^3 delta^4)
//   I2 = -hbar S2 / (4 pi c^2 delta^3)
//   I3 =  hbar S1 / (8 pi c delta^2)
// for the Dirichlet scalar; the electromagnetic set is (2 I1, 0, -2 I3).
inline Counterterms counterterms(const BoxGeometry& box, FieldKind field,
                                 double delta_s) {
  box.validate();
  if (!(delta_s > 0.0)) throw domain_error("cutoff delta must be > 0");
  using namespace constants;
  const double pi = std::numbers::pi;
  const double d2 = delta_s * delta_s;
  const double i1 = 3.0 * hbar * box.volume_m3() /
                    (2.0 * pi * pi * c_light * c_light * c_light * d2 * d2);
  const double i2 = -hbar * box.face_area_sum_m2() /
                    (4.0 * pi * c_light * c_light * d2 * delta_s);
  const double i3 = hbar * box.edge_sum_m() / (8.0 * pi * c_light * d2);
  if (field == FieldKind::DirichletScalar) return {i1, i2, i3};
  return {2.0 * i1, 0.0, -2.0 * i3};
}

// Renormalized T = 0 Casimir energy: limit of the subtracted cutoff energy
// on a geometric delta ladder, Richardson-extrapolated with an empirically
// estimated convergence order.
inline RenormalizedEnergy renormalized_energy_T0(const BoxGeometry& box, FieldKind field,
                                                 const ComputeOptions& opt = {}) {
  box.validate();
  const double delta0 = opt.delta0_side_factor * box.min_side_m() / constants::c_light;
  ComputeOptions rung_opt = opt;
  rung_opt.tail_epsilon = std::min(opt.tail_epsilon, 1e-15);
  RenormalizedEnergy out;
  std::vector<double> subtracted;
  for (int k = 0; k < opt.ladder_rungs; ++k) {
    const double delta = delta0 / std::pow(2.0, k);
    const double reg = regulated_energy(box, field, delta, rung_opt);
    const double sub = reg - counterterms(box, field, delta).sum();
    out.ladder.push_back({delta, reg, sub});
    subtracted.push_back(sub);
  }
  auto extrap = numeric::richardson_extrapolate(subtracted, 2.0);
  out.value_j = extrap.value;
  out.error_j = extrap.error;
  out.observed_order = extrap.observed_order;
  if (!(out.error_j <= opt.ladder_rel_tolerance * std::abs(out.value_j)) &&
      out.error_j > 1e-30) {
    throw convergence_error("delta ladder did not converge: error estimate " +
                            std::to_string(out.error_j) + " J on value " +
                            std::to_string(out.value_j) + " J");
  }
  return out;
}

// Thermal part of the free energy, k_B T sum ln(1 - exp(-hbar omega / k_B T)),
// joule; always <= 0.
inline double thermal_correction(const BoxGeometry& box, FieldKind field,
                                 double temperature_k, const ComputeOptions& opt = {}) {
  box.validate();
  if (!(temperature_k > 0.0)) throw domain_error("temperature must be > 0");
  const double kt = constants::k_boltzmann * temperature_k;
  const double x_min = constants::hbar * detail::min_mode_frequency(box, field) / kt;
  if (x_min > 690.0) return 0.0;  // every Boltzmann factor underflows
  const double x_cap = x_min + 60.0;
  const double cap = x_cap * kt /
                     (constants::hbar * std::numbers::pi * constants::c_light);
  const double beta_hbar = constants::hbar / kt;
  const double sum = detail::field_mode_sum(
      box, field, cap, opt.term_budget, [beta_hbar](double w) {
        return std::log1p(-std::exp(-beta_hbar * w));
      });
  return kt * sum;
}

struct SubtractionCoefficients {
  double alpha1_m3 = 0.0;  // multiplies (k_B T)^4 / (hbar c)^3
  double alpha2_m2 = 0.0;  // multiplies (k_B T)^3 / (hbar c)^2
  double alpha3_m = 0.0;   // multiplies (k_B T)^2 / (hbar c)
};

// Blackbody, surface and edge coefficients of the high-temperature expansion.
// Scalar: alpha1 = -V pi^2/90, alpha2 = zeta(3) S2 / (4 pi), alpha3 = -pi S1/24.
// Electromagnetic: alpha1 doubles, alpha2 = 0, alpha3 = +pi S1 / 12.
inline SubtractionCoefficients subtraction_coefficients(const BoxGeometry& box,
                                                        FieldKind field) {
  box.validate();
  const double pi = std::numbers::pi;
  const double zeta3 = 1.2020569031595942854;
  const double v = box.volume_m3();
  const double s2 = box.face_area_sum_m2();
  const double s1 = box.edge_sum_m();
  if (field == FieldKind::DirichletScalar) {
    return {-v * pi * pi / 90.0, zeta3 * s2 / (4.0 * pi), -pi * s1 / 24.0};
  }
  return {-v * pi * pi / 45.0, 0.0, pi * s1 / 12.0};
}

// Free energy density of blackbody radiation in empty space, J/m^3.
inline double blackbody_free_energy_density(double temperature_k,
                                            FieldKind field = FieldKind::ElectromagneticIdealMetal) {
  if (temperature_k < 0.0) throw domain_error("temperature must be >= 0");
  const double kt = constants::k_boltzmann * temperature_k;
  const double pi = std::numbers::pi;
  const double scalar = -pi * pi * kt * kt * kt * kt /
                        (90.0 * constants::hbar_c * constants::hbar_c * constants::hbar_c);
  return field == FieldKind::DirichletScalar ? scalar : 2.0 * scalar;
}

// Physical Casimir free energy of the box: renormalized vacuum energy plus
// the thermal mode sum minus the blackbody, surface and edge quantum-thermal
// terms.  Equals the renormalized energy exactly at T = 0.
inline ValueWithError physical_free_energy(const BoxGeometry& box, FieldKind field,
                                           double temperature_k,
                                           const ComputeOptions& opt = {}) {
  box.validate();
  if (temperature_k < 0.0) throw domain_error("temperature must be >= 0");
  const auto e0 = renormalized_energy_T0(box, field, opt);
  if (temperature_k == 0.0) return {e0.value_j, e0.error_j};
  const double kt = constants::k_boltzmann * temperature_k;
  const auto alpha = subtraction_coefficients(box, field);
  const double hc = constants::hbar_c;
  const double subtractions = alpha.alpha1_m3 * kt * kt * kt * kt / (hc * hc * hc) +
                              alpha.alpha2_m2 * kt * kt * kt / (hc * hc) +
                              alpha.alpha3_m * kt * kt / hc;
  const double thermal = thermal_correction(box, field, temperature_k, opt);
  return {e0.value_j + thermal - subtractions, e0.error_j};
}

// Force on the pair of faces perpendicular to `axis`; positive = repulsive
// (outward).  Central finite difference of the physical free energy in the
// chosen side with one Richardson halving.
inline ValueWithError face_force(const BoxGeometry& box, FieldKind field,
                                 double temperature_k, Axis axis,
                                 const ComputeOptions& opt = {}) {
  box.validate();
  double side_nm = axis == Axis::X ? box.ax_nm : axis == Axis::Y ? box.ay_nm : box.az_nm;
  double worst_energy_error = 0.0;
  auto free_energy_at = [&](double s_nm) {
    BoxGeometry b = box;
    (axis == Axis::X ? b.ax_nm : axis == Axis::Y ? b.ay_nm : b.az_nm) = s_nm;
    auto f = physical_free_energy(b, field, temperature_k, opt);
    worst_energy_error = std::max(worst_energy_error, f.error);
    return f.value;
  };
  auto d = numeric::central_derivative(free_energy_at, side_nm, opt.derivative_rel_step);
  // d/d(nm) -> d/dm, and the force is the negative gradient.
  const double scale = 1.0 / units::nm_to_m(1.0);
  const double h_m = units::nm_to_m(side_nm) * opt.derivative_rel_step;
  const double noise = worst_energy_error / h_m;
  return {-d.value * scale, d.error * scale + noise};
}

// Force on the piston along z; positive pushes the partition toward larger
// a_z1.  Finite without renormalization because every counterterm and
// quantum-thermal subtraction is independent of the partition position.
inline ValueWithError piston_force(const PistonedBox& pistoned, FieldKind field,
                                   double temperature_k, const ComputeOptions& opt = {}) {
  pistoned.validate();
  const BoxGeometry& b = pistoned.box;
  double worst_energy_error = 0.0;
  auto sections_energy = [&](double az1_nm) {
    BoxGeometry s1 = b;
    s1.az_nm = az1_nm;
    BoxGeometry s2 = b;
    s2.az_nm = b.az_nm - az1_nm;
    auto f1 = physical_free_energy(s1, field, temperature_k, opt);
    auto f2 = physical_free_energy(s2, field, temperature_k, opt);
    worst_energy_error = std::max(worst_energy_error, f1.error + f2.error);
    return f1.value + f2.value;
  };
  auto d = numeric::central_derivative(sections_energy, pistoned.partition_nm,
                                       opt.derivative_rel_step);
  const double scale = 1.0 / units::nm_to_m(1.0);
  const double h_m = units::nm_to_m(pistoned.partition_nm) * opt.derivative_rel_step;
  return {-d.value * scale, d.error * scale + worst_energy_error / h_m};
}

// ---- ideal parallel plates ------------------------------------------------

// Electromagnetic Casimir free energy per unit area of two ideal metal
// plates at separation a and temperature T, J/m^2:
//   F = -(pi^2 hbar c / 720 a^3) { 1 + (45/pi^3) sum_l [coth(pi l t)/(t^3 l^3)
//       + pi/(t^2 l^2 sinh^2(pi l t))] - 1/t^4 },   t = T_eff / T,
// with k_B T_eff = hbar c / (2a).  The l-series is summed with the
// exponentially convergent rewriting coth z = 1 + 2/(e^{2z} - 1).
inline double plates_free_energy_ideal(double separation_nm, double temperature_k) {
  if (!(separation_nm > 0.0)) throw domain_error("plate separation must be > 0");
  if (temperature_k < 0.0) throw domain_error("temperature must be >= 0");
  const double a = units::nm_to_m(separation_nm);
  const double pi = std::numbers::pi;
  const double prefactor = -pi * pi * constants::hbar_c / (720.0 * a * a * a);
  if (temperature_k == 0.0) return prefactor;
  const double t_eff = constants::hbar_c / (2.0 * a * constants::k_boltzmann);
  const double t = t_eff / temperature_k;
  const double zeta3 = 1.2020569031595942854;
  double bracket = 1.0 + 45.0 * zeta3 / (pi * pi * pi) / (t * t * t) -
                   1.0 / (t * t * t * t);
  int quiet = 0;
  for (int l = 1; l < 200000 && quiet < 3; ++l) {
    const double z = pi * l * t;
    double term = 0.0;
    if (z < 350.0) {
      const double e2z = std::expm1(2.0 * z);
      const double sh = std::sinh(z);
      term = 45.0 / (pi * pi * pi) *
             (2.0 / (t * t * t * static_cast<double>(l) * l * l * e2z) +
              pi / (t * t * static_cast<double>(l) * l * sh * sh));
    }
    bracket += term;
    quiet = std::abs(term) < 1e-14 * std::abs(bracket) ? quiet + 1 : 0;
  }
  return prefactor * bracket;
}

struct PlatesPressure {
  double value_pa = 0.0;          // general path (exact series, differentiated)
  double low_t_expansion_pa = 0.0;
  bool low_t_valid = false;       // expansion regime T <= 0.3 T_eff
};

// Pressure between ideal metal plates.  Low-temperature path
// -pi^2 hbar c/(240 a^4) [1 + (1/3)(T/T_eff)^4]; the general path
// differentiates the full free-energy series in a.
inline PlatesPressure plates_pressure_ideal(double separation_nm, double temperature_k) {
  if (!(separation_nm > 0.0)) throw domain_error("plate separation must be > 0");
  if (temperature_k < 0.0) throw domain_error("temperature must be >= 0");
  const double a = units::nm_to_m(separation_nm);
  const double pi = std::numbers::pi;
  const double t_eff = constants::hbar_c / (2.0 * a * constants::k_boltzmann);
  const double tau = temperature_k / t_eff;
  PlatesPressure out;
  out.low_t_expansion_pa = -pi * pi * constants::hbar_c / (240.0 * a * a * a * a) *
                           (1.0 + tau * tau * tau * tau / 3.0);
  out.low_t_valid = tau <= 0.3;
  if (temperature_k == 0.0) {
    out.value_pa = -pi * pi * constants::hbar_c / (240.0 * a * a * a * a);
    return out;
  }
  auto f_of_a = [temperature_k](double a_nm) {
    return plates_free_energy_ideal(a_nm, temperature_k);
  };
  auto d = numeric::central_derivative(f_of_a, separation_nm, 1e-4);
  out.value_pa = -d.value / units::nm_to_m(1.0);
  return out;
}

}  // namespace casimir::boxes
