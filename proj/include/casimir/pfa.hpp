#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <variant>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/numeric/quadrature.hpp"

// Proximity force approximation for curved geometries: the interaction
// energy is the parallel-plate energy integrated over the projection of the
// curved surface with the near-point parabolic gap z = a + rho^2 / (2R).
// That construction makes the ideal closed forms
//   F_sphere   = 2 pi R E(a)
//   F_cylinder = (15 pi / 16) sqrt(2R/a) E(a)   (per unit length)
// exact identities of the surface integral, so the numerical quadrature can
// be validated against them to full precision.  A first-order analytic
// correction beyond the PFA is available for the cylinder.

namespace casimir::pfa {

struct SpherePlate {
  double radius_nm = 0.0;
};
struct CylinderPlate {
  double radius_nm = 0.0;  // result per unit length
};

struct CurvedGeometry {
  std::variant<SpherePlate, CylinderPlate> body;
  double separation_nm = 0.0;

  void validate() const {
    if (!(separation_nm > 0.0)) throw domain_error("separation must be > 0");
    if (!(radius_nm() > 0.0)) throw domain_error("radius must be > 0");
  }
  double radius_nm() const {
    return std::holds_alternative<SpherePlate>(body)
               ? std::get<SpherePlate>(body).radius_nm
               : std::get<CylinderPlate>(body).radius_nm;
  }
  double aspect() const { return separation_nm / radius_nm(); }
  // The approximation is built for a << R.
  bool pfa_applicable() const { return aspect() <= 0.1; }
};

// Plate kernels: energy per unit area (J/m^2) or pressure (Pa) as a function
// of the local gap in nm.
using PlateKernel = std::function<double(double)>;

// Ideal-metal zero-temperature kernels.
inline double ideal_plate_energy(double gap_nm) {
  const double z = units::nm_to_m(gap_nm);
  const double pi = std::numbers::pi;
  return -pi * pi * constants::hbar_c / (720.0 * z * z * z);
}
inline double ideal_plate_pressure(double gap_nm) {
  const double z = units::nm_to_m(gap_nm);
  const double pi = std::numbers::pi;
  return -pi * pi * constants::hbar_c / (240.0 * z * z * z * z);
}

namespace detail {

// Int_0^inf s k(a (1 + s^2)) ds and Int_0^inf k(a (1 + s^2)) ds; the gap
// along the surface is z = a (1 + s^2) with s = rho / sqrt(2 R a).
inline double profile_integral(const PlateKernel& kernel, double a_nm, bool weighted,
                               double rel_tol) {
  auto integrand = [&](double s) {
    const double k = kernel(a_nm * (1.0 + s * s));
    return weighted ? s * k : k;
  };
  auto q = numeric::integrate_semi_infinite(integrand, 0.0, rel_tol, 0.0, 8000);
  return q.value;
}

}  // namespace detail

// Surface-integrated plate energy: joule for the sphere, joule per meter for
// the cylinder.
inline double pfa_energy(const CurvedGeometry& geometry, const PlateKernel& plate_energy,
                         double rel_tol = 1e-9) {
  geometry.validate();
  const double a = geometry.separation_nm;
  const double r = geometry.radius_nm();
  if (std::holds_alternative<SpherePlate>(geometry.body)) {
    // U = 2 pi Int rho E(z(rho)) d rho = 4 pi R a Int s E(a(1+s^2)) ds.
    const double measure = 4.0 * std::numbers::pi * units::nm_to_m(r) * units::nm_to_m(a);
    return measure * detail::profile_integral(plate_energy, a, true, rel_tol);
  }
  // U/L = 2 Int E(z(x)) dx = 2 sqrt(2 R a) Int E(a(1+s^2)) ds.
  const double measure = 2.0 * std::sqrt(2.0 * units::nm_to_m(r) * units::nm_to_m(a));
  return measure * detail::profile_integral(plate_energy, a, false, rel_tol);
}

// Same surface integral applied to the plate pressure; equals -dU/da.
inline double pfa_force(const CurvedGeometry& geometry, const PlateKernel& plate_pressure,
                        double rel_tol = 1e-9) {
  geometry.validate();
  const double a = geometry.separation_nm;
  const double r = geometry.radius_nm();
  if (std::holds_alternative<SpherePlate>(geometry.body)) {
    const double measure = 4.0 * std::numbers::pi * units::nm_to_m(r) * units::nm_to_m(a);
    return measure * detail::profile_integral(plate_pressure, a, true, rel_tol);
  }
  const double measure = 2.0 * std::sqrt(2.0 * units::nm_to_m(r) * units::nm_to_m(a));
  return measure * detail::profile_integral(plate_pressure, a, false, rel_tol);
}

// Closed forms for ideal metals at T = 0.
inline double pfa_sphere_force(double separation_nm, double radius_nm) {
  if (!(separation_nm > 0.0 && radius_nm > 0.0)) {
    throw domain_error("separation and radius must be > 0");
  }
  const double a = units::nm_to_m(separation_nm);
  const double pi = std::numbers::pi;
  return -pi * pi * pi * constants::hbar_c * units::nm_to_m(radius_nm) /
         (360.0 * a * a * a * a);
}

// Force per unit length, N/m.
inline double pfa_cylinder_force(double separation_nm, double radius_nm) {
  if (!(separation_nm > 0.0 && radius_nm > 0.0)) {
    throw domain_error("separation and radius must be > 0");
  }
  const double a = units::nm_to_m(separation_nm);
  const double pi = std::numbers::pi;
  return -pi * pi * pi / (384.0 * std::numbers::sqrt2) *
         std::sqrt(units::nm_to_m(radius_nm) / a) * constants::hbar_c / (a * a * a);
}

// Relative size of the first correction beyond the PFA for the cylinder:
// (1/5)(20/pi^2 - 7/12) = 0.28861...
inline double cylinder_beyond_pfa_coefficient() {
  const double pi = std::numbers::pi;
  return (20.0 / (pi * pi) - 7.0 / 12.0) / 5.0;
}

struct AnnotatedForce {
  double value = 0.0;
  bool pfa_applicable = false;  // a/R <= 0.1
  std::string note;
};

// Cylinder-plate force with the analytic first-order correction,
// F = F_PFA [1 - 0.2886 a/R].
inline AnnotatedForce beyond_pfa_cylinder_force(double separation_nm, double radius_nm) {
  const double ratio = separation_nm / radius_nm;
  AnnotatedForce out;
  out.value = pfa_cylinder_force(separation_nm, radius_nm) *
              (1.0 - cylinder_beyond_pfa_coefficient() * ratio);
  out.pfa_applicable = ratio <= 0.1;
  out.note = "analytic first-order cylinder correction";
  return out;
}

// Catalogue values for the sphere correction coefficient: numerical
// extrapolations give ~1.4, while the experimental bound on the PFA error
// is |theta| < 1.  No analytic value exists, so theta is always explicit.
inline constexpr double sphere_theta_extrapolated = 1.4;
inline constexpr double sphere_theta_experimental_bound = 1.0;

// Sphere-plate force with a user-supplied first-order coefficient:
// F = F_PFA (1 + theta a/R).
inline AnnotatedForce beyond_pfa_sphere_force(double separation_nm, double radius_nm,
                                              double theta) {
  const double ratio = separation_nm / radius_nm;
  AnnotatedForce out;
  out.value = pfa_sphere_force(separation_nm, radius_nm) * (1.0 + theta * ratio);
  out.pfa_applicable = ratio <= 0.1;
  out.note = "sphere correction with user-supplied theta = " + std::to_string(theta) +
             " (extrapolations suggest 1.4, experiment bounds |theta| < 1)";
  return out;
}

}  // namespace casimir::pfa
