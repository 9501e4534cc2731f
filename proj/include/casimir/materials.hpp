#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

// Dielectric permittivity models evaluated at imaginary frequency, carrier
// transport quantities and screening lengths.  Frequencies and energies are
// in eV, carrier densities in cm^-3, lengths in nm.  All evaluations are
// pure functions of immutable model values.

namespace casimir::materials {

// One core-electron oscillator of the permittivity model.
struct Oscillator {
  double strength = 0.0;    // f_j, eV^2
  double resonance = 0.0;   // omega_j, eV, strictly positive
  double relaxation = 0.0;  // gamma_j, eV, nonnegative

  void validate() const {
    if (!(resonance > 0.0)) throw domain_error("oscillator resonance must be > 0");
    if (strength < 0.0) throw domain_error("oscillator strength must be >= 0");
    if (relaxation < 0.0) throw domain_error("oscillator relaxation must be >= 0");
  }
};

// Core-electron part: eps(i xi) = 1 + sum_j f_j / (omega_j^2 + xi^2 + gamma_j xi).
inline double eval_core_permittivity(const std::vector<Oscillator>& oscillators,
                                     double xi_ev) {
  if (xi_ev < 0.0) throw domain_error("imaginary frequency must be >= 0");
  double eps = 1.0;
  for (const auto& osc : oscillators) {
    eps += osc.strength /
           (osc.resonance * osc.resonance + xi_ev * xi_ev + osc.relaxation * xi_ev);
  }
  return eps;
}

// Free electrons without dissipation plus core oscillators:
// eps_gp(i xi) = eps_core(i xi) + omega_p^2 / xi^2.
struct GeneralizedPlasmaModel {
  double plasma_frequency = 0.0;  // omega_p, eV
  std::vector<Oscillator> oscillators;

  void validate() const {
    if (!(plasma_frequency > 0.0)) throw domain_error("plasma frequency must be > 0");
    for (const auto& o : oscillators) o.validate();
  }
  double static_core_permittivity() const {
    return eval_core_permittivity(oscillators, 0.0);
  }
};

inline double eval_generalized_plasma(const GeneralizedPlasmaModel& model, double xi_ev) {
  if (xi_ev == 0.0) {
    throw zero_frequency_error(
        "generalized plasma permittivity has a 1/xi^2 pole; use the analytic "
        "zero-frequency limit");
  }
  return eval_core_permittivity(model.oscillators, xi_ev) +
         model.plasma_frequency * model.plasma_frequency / (xi_ev * xi_ev);
}

// Dissipative free electrons: eps_D(i xi) = eps_core(i xi) + omega_p^2 / (xi (xi + gamma)).
struct DrudeModel {
  double plasma_frequency = 0.0;  // eV
  double relaxation = 0.0;        // gamma, eV, strictly positive
  std::vector<Oscillator> oscillators;

  void validate() const {
    if (!(plasma_frequency > 0.0)) throw domain_error("plasma frequency must be > 0");
    if (!(relaxation > 0.0)) throw domain_error("Drude relaxation must be > 0");
    for (const auto& o : oscillators) o.validate();
  }
  double static_core_permittivity() const {
    return eval_core_permittivity(oscillators, 0.0);
  }
};

inline double eval_drude(const DrudeModel& model, double xi_ev) {
  if (xi_ev == 0.0) {
    throw zero_frequency_error(
        "Drude permittivity has a 1/xi pole; use the analytic zero-frequency limit");
  }
  return eval_core_permittivity(model.oscillators, xi_ev) +
         model.plasma_frequency * model.plasma_frequency /
             (xi_ev * (xi_ev + model.relaxation));
}

// sigma(i xi) = sigma(0) / (1 + xi / gamma); units follow sigma0.
inline double conductivity_at_imaginary_freq(double sigma0, double gamma_ev,
                                             double xi_ev) {
  if (!(sigma0 > 0.0) || !(gamma_ev > 0.0) || xi_ev < 0.0) {
    throw domain_error("conductivity: sigma0 > 0, gamma > 0, xi >= 0 required");
  }
  return sigma0 / (1.0 + xi_ev / gamma_ev);
}

// Free-carrier transport inputs.  The electron charge and mass are fixed
// physical constants; only density and mobility vary.
struct CarrierParams {
  double density_cm3 = 0.0;          // n
  double mobility_cm2_per_vs = 0.0;  // mu

  void validate() const {
    if (!(density_cm3 > 0.0)) throw domain_error("carrier density must be > 0");
    if (!(mobility_cm2_per_vs > 0.0)) throw domain_error("carrier mobility must be > 0");
  }
};

struct PlasmaAndDc {
  double plasma_frequency_ev = 0.0;
  double dc_conductivity_per_s = 0.0;  // Gaussian units, s^-1
};

// omega_p^2 = 4 pi e^2 n / m and sigma(0) = mu |e| n, evaluated in Gaussian
// units and reported as (eV, s^-1).
inline PlasmaAndDc derived_plasma_and_dc(const CarrierParams& params) {
  params.validate();
  using namespace constants;
  const double e2 = electron_charge_esu * electron_charge_esu;  // esu^2
  const double wp2 = 4.0 * std::numbers::pi * e2 * params.density_cm3 / electron_mass_g;
  const double wp_rad_s = std::sqrt(wp2);
  // mobility cm^2 V^-1 s^-1 -> cm^2 statV^-1 s^-1 (1 statV = 299.792458 V).
  const double mobility_cgs = params.mobility_cm2_per_vs * (c_light / 1e6);
  const double sigma0 = mobility_cgs * electron_charge_esu * params.density_cm3;
  return {units::rad_s_to_ev(wp_rad_s), sigma0};
}

enum class CarrierStatistics { MaxwellBoltzmann, FermiDirac };

// Inputs for the static screening length.  Temperature is required for
// Maxwell-Boltzmann statistics, the Fermi energy for Fermi-Dirac.
struct ScreeningSpec {
  CarrierStatistics statistics = CarrierStatistics::FermiDirac;
  double static_permittivity = 1.0;  // eps(0), dimensionless, >= 1
  double density_cm3 = 0.0;
  std::optional<double> temperature_k;
  std::optional<double> fermi_energy_ev;

  void validate() const {
    if (static_permittivity < 1.0) throw domain_error("eps(0) must be >= 1");
    if (!(density_cm3 > 0.0)) throw domain_error("carrier density must be > 0");
    if (statistics == CarrierStatistics::MaxwellBoltzmann) {
      if (!temperature_k || !(*temperature_k > 0.0)) {
        throw domain_error("Maxwell-Boltzmann screening needs a temperature");
      }
    } else {
      if (!fermi_energy_ev || !(*fermi_energy_ev > 0.0)) {
        throw domain_error("Fermi-Dirac screening needs a Fermi energy");
      }
    }
  }
};

namespace detail {

inline constexpr double erg_per_ev = 1.602176634e-12;
inline constexpr double k_boltzmann_erg = 1.380649e-16;

}  // namespace detail

// Einstein relation D / mu in statvolt: k_B T / |e| for Maxwell-Boltzmann,
// 2 E_F / (3 |e|) for Fermi-Dirac.
inline double einstein_d_over_mu_statvolt(const ScreeningSpec& spec) {
  spec.validate();
  if (spec.statistics == CarrierStatistics::MaxwellBoltzmann) {
    return detail::k_boltzmann_erg * (*spec.temperature_k) /
           constants::electron_charge_esu;
  }
  return 2.0 * (*spec.fermi_energy_ev) * detail::erg_per_ev /
         (3.0 * constants::electron_charge_esu);
}

// Transport route: R = sqrt(eps(0) D / (4 pi sigma(0))).  With sigma(0) =
// mu |e| n the mobility cancels and only D / mu is needed.
inline double screening_length_transport_nm(const ScreeningSpec& spec) {
  spec.validate();
  const double d_over_mu = einstein_d_over_mu_statvolt(spec);
  const double r2_cm2 =
      spec.static_permittivity * d_over_mu /
      (4.0 * std::numbers::pi * constants::electron_charge_esu * spec.density_cm3);
  return std::sqrt(r2_cm2) * 1e7;  // cm -> nm
}

// Closed forms: Debye-Hueckel R = sqrt(eps(0) k_B T / (4 pi e^2 n)) for
// Maxwell-Boltzmann, Thomas-Fermi R = sqrt(eps(0) E_F / (6 pi e^2 n)) for
// Fermi-Dirac.
inline double screening_length_nm(const ScreeningSpec& spec) {
  spec.validate();
  using namespace constants;
  const double e2 = electron_charge_esu * electron_charge_esu;
  double r2_cm2 = 0.0;
  if (spec.statistics == CarrierStatistics::MaxwellBoltzmann) {
    r2_cm2 = spec.static_permittivity * detail::k_boltzmann_erg * (*spec.temperature_k) /
             (4.0 * std::numbers::pi * e2 * spec.density_cm3);
  } else {
    r2_cm2 = spec.static_permittivity * (*spec.fermi_energy_ev) * detail::erg_per_ev /
             (6.0 * std::numbers::pi * e2 * spec.density_cm3);
  }
  return std::sqrt(r2_cm2) * 1e7;
}

// Optical data at real frequencies with a Drude continuation below the first
// sample.  eval reconstructs eps(i xi) through the dispersion integral
// eps(i xi) = 1 + (2/pi) Int_0^inf omega Im eps(omega) / (omega^2 + xi^2) d omega.
struct OpticalDataTable {
  struct Sample {
    double omega_ev;
    double im_eps;
  };
  enum class HighFrequencyPolicy { Truncate, PowerLawTail };

  std::vector<Sample> samples;
  DrudeModel low_frequency_tail;
  HighFrequencyPolicy policy = HighFrequencyPolicy::Truncate;

  void validate() const {
    if (samples.size() < 2) throw ingest_error("optical table needs at least 2 samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (samples[i].im_eps < 0.0) throw ingest_error("Im eps must be >= 0");
      if (i > 0 && !(samples[i].omega_ev > samples[i - 1].omega_ev)) {
        throw ingest_error("optical table frequencies must be strictly increasing");
      }
    }
    if (!(samples.front().omega_ev > 0.0)) {
      throw ingest_error("optical table frequencies must be positive");
    }
    low_frequency_tail.validate();
  }
};

namespace detail {

// Int_0^W omega Im eps_D(omega) / (omega^2 + xi^2) d omega with the Drude
// spectral density Im eps_D = omega_p^2 gamma / (omega (omega^2 + gamma^2)),
// in closed form.
inline double drude_tail_integral(double omega_p, double gamma, double cut, double xi) {
  const double wp2g = omega_p * omega_p * gamma;
  const double dx2 = xi * xi - gamma * gamma;
  if (std::abs(dx2) > 1e-6 * gamma * gamma) {
    return wp2g / dx2 *
           (std::atan(cut / gamma) / gamma - std::atan(cut / xi) / xi);
  }
  // xi ~ gamma: removable singularity, use the confluent form.
  return omega_p * omega_p *
         (cut / (2.0 * gamma * (cut * cut + gamma * gamma)) +
          std::atan(cut / gamma) / (2.0 * gamma * gamma));
}

}  // namespace detail

inline double eval_from_table(const OpticalDataTable& table, double xi_ev) {
  table.validate();
  if (!(xi_ev > 0.0)) {
    throw zero_frequency_error("tabulated permittivity diverges at xi = 0; use the "
                               "analytic zero-frequency limit");
  }
  const auto& tail = table.low_frequency_tail;
  double integral = detail::drude_tail_integral(
      tail.plasma_frequency, tail.relaxation, table.samples.front().omega_ev, xi_ev);
  auto kernel = [xi_ev](const OpticalDataTable::Sample& s) {
    return s.omega_ev * s.im_eps / (s.omega_ev * s.omega_ev + xi_ev * xi_ev);
  };
  for (std::size_t i = 0; i + 1 < table.samples.size(); ++i) {
    const double width = table.samples[i + 1].omega_ev - table.samples[i].omega_ev;
    integral += 0.5 * width * (kernel(table.samples[i]) + kernel(table.samples[i + 1]));
  }
  if (table.policy == OpticalDataTable::HighFrequencyPolicy::PowerLawTail) {
    // Im eps ~ A / omega^3 matched at the last sample.
    const auto& last = table.samples.back();
    const double amp = last.im_eps * last.omega_ev * last.omega_ev * last.omega_ev;
    const double wn = last.omega_ev;
    integral += amp / (xi_ev * xi_ev) *
                (1.0 / wn - (std::numbers::pi / 2.0 - std::atan(wn / xi_ev)) / xi_ev);
  }
  return 1.0 + 2.0 / std::numbers::pi * integral;
}

// Bound on the neglected contribution above the last tabulated frequency
// under the Truncate policy (power-law estimate matched at the last sample).
inline double table_truncation_bound(const OpticalDataTable& table, double xi_ev) {
  const auto& last = table.samples.back();
  const double amp = last.im_eps * last.omega_ev * last.omega_ev * last.omega_ev;
  const double wn = last.omega_ev;
  return 2.0 / std::numbers::pi * amp / (xi_ev * xi_ev) *
         std::abs(1.0 / wn - (std::numbers::pi / 2.0 - std::atan(wn / xi_ev)) / xi_ev);
}

// Any of the supported permittivity models, identical plates assumed.
using PermittivityModel =
    std::variant<GeneralizedPlasmaModel, DrudeModel, OpticalDataTable>;

inline double eval_permittivity(const PermittivityModel& model, double xi_ev) {
  return std::visit(
      [xi_ev](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, GeneralizedPlasmaModel>) {
          return eval_generalized_plasma(m, xi_ev);
        } else if constexpr (std::is_same_v<T, DrudeModel>) {
          return eval_drude(m, xi_ev);
        } else {
          return eval_from_table(m, xi_ev);
        }
      },
      model);
}

// Zero-frequency behavior classes used by the Lifshitz module to pick the
// analytic l = 0 reflection limits.
enum class ZeroFrequencyKind {
  DrudeLike,   // eps ~ 1/xi: TM -> 1, TE -> 0
  PlasmaPole,  // eps ~ omega_p^2/xi^2: TM -> 1, TE keeps a finite limit
};

inline ZeroFrequencyKind zero_frequency_kind(const PermittivityModel& model) {
  return std::holds_alternative<GeneralizedPlasmaModel>(model)
             ? ZeroFrequencyKind::PlasmaPole
             : ZeroFrequencyKind::DrudeLike;
}

inline double plasma_frequency_ev(const PermittivityModel& model) {
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, OpticalDataTable>) {
          return m.low_frequency_tail.plasma_frequency;
        } else {
          return m.plasma_frequency;
        }
      },
      model);
}

inline double static_core_permittivity(const PermittivityModel& model) {
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, OpticalDataTable>) {
          return m.low_frequency_tail.static_core_permittivity();
        } else {
          return m.static_core_permittivity();
        }
      },
      model);
}

namespace presets {

// Representative Au parameters: omega_p = 9.0 eV, gamma = 0.035 eV and six
// core-electron oscillators of the kind fitted to gold optical data.  These
// are placeholder values for exercising the models, not a fitted data set;
// replace them with your own table for quantitative work.
inline std::vector<Oscillator> gold_oscillators() {
  return {
      {7.091, 3.05, 0.75}, {41.46, 4.15, 1.85}, {2.700, 5.40, 1.00},
      {154.7, 8.50, 7.00}, {44.55, 13.5, 6.00}, {309.6, 21.5, 9.00},
  };
}

inline GeneralizedPlasmaModel gold_generalized_plasma() {
  return {9.0, gold_oscillators()};
}

inline DrudeModel gold_drude() { return {9.0, 0.035, gold_oscillators()}; }

}  // namespace presets
}  // namespace casimir::materials
