#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <variant>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/materials.hpp"
#include "casimir/numeric/derivative.hpp"
#include "casimir/numeric/quadrature.hpp"

// Lifshitz Matsubara free energy, pressure and entropy for two thick
// identical parallel plates.  Dimensionless variables: y = 2 a q,
// zeta_l = 4 pi a k_B T l / (hbar c); permittivities are evaluated at the
// imaginary Matsubara frequencies xi_l = 2 pi k_B T l / hbar.
//
//   F(a,T) = (k_B T / 8 pi a^2) sum_l' Int_{zeta_l}^inf y dy
//            { ln(1 - r_TM^2 e^-y) + ln(1 - r_TE^2 e^-y) }
//
// The l = 0 term enters with weight 1/2 and uses analytic zero-frequency
// reflection limits instead of evaluating models at xi = 0.

namespace casimir::lifshitz {

// Dimensionless screening inputs of the modified TM coefficient:
// kappa_a = 2 a kappa, plus the static core permittivity entering eta.
struct ScreeningContext {
  double kappa_a = 0.0;
  double eps_static = 1.0;  // eps(0) of the core electrons

  double beta_a() const { return 1.0 / kappa_a; }
  void validate() const {
    if (!(kappa_a > 0.0)) throw domain_error("kappa_a must be > 0");
    if (!(eps_static >= 1.0)) throw domain_error("eps(0) must be >= 1");
  }
};

struct ReflectionPair {
  double tm = 0.0;
  double te = 0.0;
};

namespace detail {

inline void check_wave_domain(double zeta, double y) {
  if (zeta < 0.0 || y < zeta) {
    throw domain_error("reflection coefficients need y >= zeta >= 0");
  }
}

}  // namespace detail

// Standard TM coefficient, (eps y - sqrt(y^2 + (eps-1) zeta^2)) / (... + ...).
inline double standard_tm(double zeta, double y, double eps) {
  detail::check_wave_domain(zeta, y);
  const double root = std::sqrt(y * y + (eps - 1.0) * zeta * zeta);
  return (eps * y - root) / (eps * y + root);
}

// Standard TE coefficient, (y - sqrt(y^2 + (eps-1) zeta^2)) / (y + ...).
inline double standard_te(double zeta, double y, double eps) {
  detail::check_wave_domain(zeta, y);
  const double root = std::sqrt(y * y + (eps - 1.0) * zeta * zeta);
  return (y - root) / (y + root);
}

// TM coefficient with screening: the standard numerator and denominator
// acquire -+ (y^2 - zeta^2)(eps_t - eps) / (eta eps) with
// eta = sqrt(y^2 - zeta^2 + kappa_a^2 eps(0) eps_t / (eps (eps_t - eps))).
inline double screened_tm(double zeta, double y, double eps, double eps_t,
                          const ScreeningContext& ctx) {
  detail::check_wave_domain(zeta, y);
  ctx.validate();
  if (!(eps_t > eps) || !(eps >= 1.0)) {
    throw domain_error("screened TM needs eps_t > eps >= 1 (free carriers present)");
  }
  const double root = std::sqrt(y * y + (eps_t - 1.0) * zeta * zeta);
  const double eta = std::sqrt(y * y - zeta * zeta +
                               ctx.kappa_a * ctx.kappa_a * ctx.eps_static * eps_t /
                                   (eps * (eps_t - eps)));
  const double third = (y * y - zeta * zeta) * (eps_t - eps) / (eta * eps);
  return (eps_t * y - root - third) / (eps_t * y + root + third);
}

// First-order coefficient of the small-beta_a expansion of the screened TM
// coefficient: r_screened = r_standard - 2 beta_a Z + O(beta_a^2).
inline double screening_z_factor(double zeta, double y, double eps, double eps_t,
                                 double eps_static) {
  detail::check_wave_domain(zeta, y);
  if (!(eps_t > eps) || !(eps >= 1.0)) {
    throw domain_error("Z factor needs eps_t > eps >= 1");
  }
  const double root = std::sqrt(y * y + (eps_t - 1.0) * zeta * zeta);
  const double denom = (eps_t * y + root) * (eps_t * y + root);
  const double d = eps_t - eps;
  return std::sqrt(eps_t * d * d * d / (eps_static * eps)) * y *
         (y * y - zeta * zeta) / denom;
}

inline double perturbative_tm(double zeta, double y, double eps, double eps_t,
                              double eps_static, double beta_a) {
  return standard_tm(zeta, y, eps_t) -
         2.0 * beta_a * screening_z_factor(zeta, y, eps, eps_t, eps_static);
}

// zeta -> 0 limit of the screened TM coefficient for a Drude-type eps_t
// (eps_t ~ 1/zeta): the standard part tends to 1 while the screening term
// survives, giving (eps(0) sqrt(y^2 + kappa_a^2) - y) / (... + y).
inline double screened_tm_zero_freq(double y, double eps_static, double kappa_a) {
  if (!(y >= 0.0) || !(kappa_a > 0.0)) throw domain_error("bad zero-frequency inputs");
  const double root = std::sqrt(y * y + kappa_a * kappa_a);
  return (eps_static * root - y) / (eps_static * root + y);
}

// zeta -> 0 limit of the TE coefficient for the generalized plasma model,
// where (eps-1) zeta^2 -> (2 a omega_p / c)^2 stays finite.
inline double plasma_te_zero_freq(double y, double omega_p_ev, double separation_nm) {
  const double w = 2.0 * units::nm_to_m(separation_nm) *
                   units::ev_to_rad_s(omega_p_ev) / constants::c_light;
  const double root = std::sqrt(y * y + w * w);
  return (y - root) / (y + root);
}

// ---- plate configuration ---------------------------------------------------

struct StandardScheme {};
struct ScreenedScheme {
  materials::ScreeningSpec spec;
};
using ReflectionScheme = std::variant<StandardScheme, ScreenedScheme>;

struct PlatesConfig {
  double separation_nm = 0.0;
  double temperature_k = 0.0;
  materials::PermittivityModel material;
  ReflectionScheme scheme = StandardScheme{};

  void validate() const {
    if (!(separation_nm > 0.0)) throw domain_error("separation must be > 0");
    if (!(temperature_k > 0.0)) throw domain_error("temperature must be > 0");
    if (std::holds_alternative<ScreenedScheme>(scheme)) {
      if (!std::holds_alternative<materials::DrudeModel>(material)) {
        throw domain_error("the screened scheme needs a Drude-type material");
      }
      std::get<ScreenedScheme>(scheme).spec.validate();
    }
  }
  bool screened() const { return std::holds_alternative<ScreenedScheme>(scheme); }

  // Dimensionless Matsubara frequency zeta_l = 4 pi a k_B T l / (hbar c).
  double zeta(int l) const {
    return 4.0 * std::numbers::pi * units::nm_to_m(separation_nm) *
           constants::k_boltzmann * temperature_k * l / constants::hbar_c;
  }
  // Matsubara frequency in eV, xi_l = 2 pi k_B T l / hbar.
  double xi_ev(int l) const {
    return 2.0 * std::numbers::pi * units::kt_ev(temperature_k) * l;
  }
  double kappa_a() const {
    const auto& spec = std::get<ScreenedScheme>(scheme).spec;
    return 2.0 * separation_nm / materials::screening_length_nm(spec);
  }
};

struct FreeEnergyResult {
  double value = 0.0;             // J / m^2
  int matsubara_terms = 0;        // highest l included
  double truncation_error = 0.0;  // J / m^2
  double quadrature_error = 0.0;  // J / m^2
  double total_error = 0.0;       // >= truncation + quadrature
};

struct PressureResult {
  double value = 0.0;     // analytic-integrand path, Pa
  double fd_value = 0.0;  // finite difference of the free energy, Pa
  double error = 0.0;     // analytic path error estimate
  double fd_error = 0.0;
  bool paths_agree = false;
};

namespace detail {

struct TermIntegrands {
  std::function<double(double)> tm;  // r_TM(zeta_l, y)
  std::function<double(double)> te;  // r_TE(zeta_l, y)
};

// Reflection coefficients at Matsubara index l >= 1 as functions of y.
inline TermIntegrands reflections_at(const PlatesConfig& cfg, int l) {
  const double zeta = cfg.zeta(l);
  const double xi = cfg.xi_ev(l);
  if (cfg.screened()) {
    const auto& drude = std::get<materials::DrudeModel>(cfg.material);
    const double eps_core = materials::eval_core_permittivity(drude.oscillators, xi);
    const double eps_t = materials::eval_drude(drude, xi);
    const ScreeningContext ctx{cfg.kappa_a(), drude.static_core_permittivity()};
    return {[=](double y) { return screened_tm(zeta, y, eps_core, eps_t, ctx); },
            [=](double y) { return standard_te(zeta, y, eps_t); }};
  }
  const double eps = materials::eval_permittivity(cfg.material, xi);
  return {[=](double y) { return standard_tm(zeta, y, eps); },
          [=](double y) { return standard_te(zeta, y, eps); }};
}

// Zero-frequency reflection limits by scheme and model class.
inline TermIntegrands reflections_zero(const PlatesConfig& cfg) {
  if (cfg.screened()) {
    const auto& drude = std::get<materials::DrudeModel>(cfg.material);
    const ScreeningContext ctx{cfg.kappa_a(), drude.static_core_permittivity()};
    return {[=](double y) { return screened_tm_zero_freq(y, ctx.eps_static, ctx.kappa_a); },
            [](double) { return 0.0; }};
  }
  if (materials::zero_frequency_kind(cfg.material) ==
      materials::ZeroFrequencyKind::PlasmaPole) {
    const double wp = materials::plasma_frequency_ev(cfg.material);
    const double a = cfg.separation_nm;
    return {[](double) { return 1.0; },
            [=](double y) { return plasma_te_zero_freq(y, wp, a); }};
  }
  // Drude-like pole: TM -> 1, TE -> 0.
  return {[](double) { return 1.0; }, [](double) { return 0.0; }};
}

// Int_{zeta}^inf y dy [ln(1 - r_TM^2 e^-y) + ln(1 - r_TE^2 e^-y)] via the
// map u = exp(-(y - zeta)); polynomial-like integrand on (0, 1].
inline numeric::QuadratureResult log_integral(const TermIntegrands& refl, double zeta,
                                              double rel_tol = 1e-10) {
  auto integrand = [&](double u) {
    const double y = zeta - std::log(u);
    const double expy = u * std::exp(-zeta);  // e^{-y}
    const double rtm = refl.tm(y);
    const double rte = refl.te(y);
    double v = std::log1p(-rtm * rtm * expy);
    if (rte != 0.0) v += std::log1p(-rte * rte * expy);
    return y * v / u;
  };
  return numeric::integrate(integrand, 0.0, 1.0, rel_tol, 0.0, 2000);
}

// Pressure integrand Int_{zeta}^inf y^2 dy sum_p r_p^2 / (e^y - r_p^2).
inline numeric::QuadratureResult pressure_integral(const TermIntegrands& refl,
                                                   double zeta, double rel_tol = 1e-10) {
  auto integrand = [&](double u) {
    const double y = zeta - std::log(u);
    const double ey = std::exp(y);
    const double rtm = refl.tm(y);
    const double rte = refl.te(y);
    double v = rtm * rtm / (ey - rtm * rtm);
    if (rte != 0.0) v += rte * rte / (ey - rte * rte);
    return y * y * v / u;
  };
  return numeric::integrate(integrand, 0.0, 1.0, rel_tol, 0.0, 2000);
}

struct MatsubaraSum {
  double sum = 0.0;  // includes the 1/2-weighted l = 0 term
  int terms = 0;
  double truncation_error = 0.0;
  double quadrature_error = 0.0;
};

// Sums 0.5 term(0) + sum_{l>=1} term(l) with the relative-tail stopping rule
// and a geometric bound on the dropped tail.
template <class Term>
MatsubaraSum matsubara_sum(Term term, int l_max = 200000) {
  MatsubaraSum out;
  double quad_err = 0.0;
  {
    auto t0 = term(0);
    out.sum = 0.5 * t0.value;
    quad_err = 0.5 * t0.error;
  }
  int quiet = 0;
  double prev_abs = 0.0;
  double last_abs = 0.0;
  for (int l = 1; l <= l_max; ++l) {
    auto tl = term(l);
    out.sum += tl.value;
    quad_err += tl.error;
    out.terms = l;
    prev_abs = last_abs;
    last_abs = std::abs(tl.value);
    if (last_abs < 1e-9 * std::abs(out.sum)) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
    if (l == l_max) {
      throw convergence_error("Matsubara sum did not reach its tail target by l = " +
                              std::to_string(l_max));
    }
  }
  double ratio = prev_abs > 0.0 ? last_abs / prev_abs : 0.0;
  if (ratio >= 1.0) ratio = 0.5;  // non-decaying tail estimate fallback
  out.truncation_error = last_abs * ratio / (1.0 - ratio);
  out.quadrature_error = quad_err;
  return out;
}

}  // namespace detail

// Casimir free energy per unit area, Eq.-(39)-style Matsubara sum.
inline FreeEnergyResult free_energy(const PlatesConfig& cfg) {
  cfg.validate();
  const double a = units::nm_to_m(cfg.separation_nm);
  const double prefactor = constants::k_boltzmann * cfg.temperature_k /
                           (8.0 * std::numbers::pi * a * a);
  auto term = [&](int l) {
    auto refl = l == 0 ? detail::reflections_zero(cfg) : detail::reflections_at(cfg, l);
    return detail::log_integral(refl, cfg.zeta(l));
  };
  auto sum = detail::matsubara_sum(term);
  FreeEnergyResult out;
  out.value = prefactor * sum.sum;
  out.matsubara_terms = sum.terms;
  out.truncation_error = std::abs(prefactor) * sum.truncation_error;
  out.quadrature_error = std::abs(prefactor) * sum.quadrature_error;
  out.total_error = out.truncation_error + out.quadrature_error;
  return out;
}

// l = 0 transverse-electric contribution to the free energy, J/m^2.  Zero by
// construction for Drude-type materials; strictly negative for the
// generalized plasma model.  This is the term that separates the two
// theoretical approaches at finite temperature.
inline double zero_frequency_te_contribution(const PlatesConfig& cfg) {
  cfg.validate();
  if (cfg.screened() || materials::zero_frequency_kind(cfg.material) ==
                            materials::ZeroFrequencyKind::DrudeLike) {
    return 0.0;
  }
  const double a = units::nm_to_m(cfg.separation_nm);
  const double wp = materials::plasma_frequency_ev(cfg.material);
  auto integrand = [&](double u) {
    const double y = -std::log(u);
    const double r = plasma_te_zero_freq(y, wp, cfg.separation_nm);
    return y * std::log1p(-r * r * u) / u;
  };
  auto q = numeric::integrate(integrand, 0.0, 1.0, 1e-12, 0.0, 4000);
  return constants::k_boltzmann * cfg.temperature_k /
         (16.0 * std::numbers::pi * a * a) * q.value;
}

// Casimir pressure, dual route: differentiation under the integral sign and
// a central finite difference of the free energy.  The two must agree within
// the combined error estimates.
inline PressureResult pressure(const PlatesConfig& cfg) {
  cfg.validate();
  const double a = units::nm_to_m(cfg.separation_nm);
  const double prefactor = -constants::k_boltzmann * cfg.temperature_k /
                           (8.0 * std::numbers::pi * a * a * a);
  auto term = [&](int l) {
    auto refl = l == 0 ? detail::reflections_zero(cfg) : detail::reflections_at(cfg, l);
    return detail::pressure_integral(refl, cfg.zeta(l));
  };
  auto sum = detail::matsubara_sum(term);
  PressureResult out;
  out.value = prefactor * sum.sum;
  out.error = std::abs(prefactor) * (sum.truncation_error + sum.quadrature_error);

  double worst_f_error = 0.0;
  auto f_of_a = [&](double a_nm) {
    PlatesConfig c = cfg;
    c.separation_nm = a_nm;
    auto f = free_energy(c);
    worst_f_error = std::max(worst_f_error, f.total_error);
    return f.value;
  };
  auto d = numeric::central_derivative(f_of_a, cfg.separation_nm, 1e-3);
  out.fd_value = -d.value / units::nm_to_m(1.0);
  const double h_m = a * 1e-3;
  out.fd_error = d.error / units::nm_to_m(1.0) + worst_f_error / h_m;
  out.paths_agree = std::abs(out.value - out.fd_value) <=
                    out.error + out.fd_error + 1e-8 * std::abs(out.value);
  if (!out.paths_agree) {
    throw convergence_error("pressure paths disagree beyond combined errors");
  }
  return out;
}

struct EntropyResult {
  double value = 0.0;  // J / (K m^2)
  double error = 0.0;
};

// Casimir entropy per unit area, S = -dF/dT by central finite difference
// with step T/20 and one Richardson refinement.
inline EntropyResult entropy(const PlatesConfig& cfg) {
  cfg.validate();
  double worst_f_error = 0.0;
  auto f_of_t = [&](double t_k) {
    PlatesConfig c = cfg;
    c.temperature_k = t_k;
    auto f = free_energy(c);
    worst_f_error = std::max(worst_f_error, f.total_error);
    return f.value;
  };
  auto d = numeric::central_derivative(f_of_t, cfg.temperature_k, 1.0 / 20.0);
  const double h = cfg.temperature_k / 20.0;
  return {-d.value, d.error + worst_f_error / h};
}

// Zero-temperature entropy of the screened scheme for a perfect lattice,
//   S(a, 0) = (k_B / 16 pi a^2) Int_0^inf y dy ln[1 - r^2 e^-y] < 0,
// with r the plasma-model TE coefficient at zero frequency.  A nonzero
// limit of the entropy at T = 0: the Nernst-theorem diagnostic.
inline double nernst_limit_screened(double separation_nm, double omega_p_ev) {
  if (!(separation_nm > 0.0) || !(omega_p_ev > 0.0)) {
    throw domain_error("nernst_limit_screened needs a > 0 and omega_p > 0");
  }
  const double a = units::nm_to_m(separation_nm);
  auto integrand = [&](double u) {
    const double y = -std::log(u);
    const double r = plasma_te_zero_freq(y, omega_p_ev, separation_nm);
    return y * std::log1p(-r * r * u) / u;
  };
  auto q = numeric::integrate(integrand, 0.0, 1.0, 1e-12, 0.0, 4000);
  return constants::k_boltzmann / (16.0 * std::numbers::pi * a * a) * q.value;
}

}  // namespace casimir::lifshitz
