#pragma once

#include <cmath>

namespace etpa {

// CODATA 2018 exact values; single source of truth for the whole toolkit.
namespace constants {
inline constexpr double planck = 6.62607015e-34;        // J s
inline constexpr double light_speed = 2.99792458e8;     // m/s
inline constexpr double avogadro = 6.02214076e23;       // 1/mol
inline constexpr double pi = 3.14159265358979323846;
}  // namespace constants

// Angular frequency of a vacuum wavelength given in nm.
inline double omega_from_lambda_nm(double lambda_nm) {
  return 2.0 * constants::pi * constants::light_speed / (lambda_nm * 1e-9);
}

inline double lambda_nm_from_omega(double omega) {
  return 2.0 * constants::pi * constants::light_speed / omega * 1e9;
}

// Bandwidth conversion sigma_omega = 2*pi*c*sigma_lambda/lambda^2, evaluated at
// the band center. All bandwidths quoted in nm anywhere in the toolkit go
// through this one function.
inline double sigma_omega_from_nm(double sigma_nm, double center_nm) {
  const double lam = center_nm * 1e-9;
  return 2.0 * constants::pi * constants::light_speed * sigma_nm * 1e-9 / (lam * lam);
}

inline double photon_energy_j(double lambda_nm) {
  return constants::planck * constants::light_speed / (lambda_nm * 1e-9);
}

}  // namespace etpa
