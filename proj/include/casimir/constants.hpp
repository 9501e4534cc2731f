#pragma once

// Physical constants (CODATA 2018) and the unit conversions used across the
// library.  Policy: user-facing quantities are expressed in eV (energies,
// frequencies), nm (lengths) and K (temperatures); conversions to SI happen
// once, here, and nowhere else.

namespace casimir {
namespace constants {

inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double c_light = 2.99792458e8;      // m / s
inline constexpr double k_boltzmann = 1.380649e-23;  // J / K
inline constexpr double electron_charge = 1.602176634e-19;  // C
inline constexpr double electron_charge_esu = 4.80320425e-10;  // statC
inline constexpr double electron_mass_g = 9.1093837015e-28;    // g

inline constexpr double joule_per_ev = 1.602176634e-19;
inline constexpr double hbar_c = hbar * c_light;  // J m

}  // namespace constants

namespace units {

inline constexpr double nm_to_m(double nm) { return nm * 1e-9; }
inline constexpr double m_to_nm(double m) { return m * 1e9; }
inline constexpr double ev_to_joule(double ev) { return ev * constants::joule_per_ev; }
inline constexpr double joule_to_ev(double j) { return j / constants::joule_per_ev; }

// Angular frequency of a photon with energy `ev` electron-volts.
inline constexpr double ev_to_rad_s(double ev) {
  return ev * constants::joule_per_ev / constants::hbar;
}
inline constexpr double rad_s_to_ev(double w) {
  return w * constants::hbar / constants::joule_per_ev;
}

// Thermal energy k_B T in eV.
inline constexpr double kt_ev(double temperature_k) {
  return constants::k_boltzmann * temperature_k / constants::joule_per_ev;
}

}  // namespace units
}  // namespace casimir
