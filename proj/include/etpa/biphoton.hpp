#pragma once

#include <Eigen/Dense>

#include "etpa/dispersion.hpp"
#include "etpa/errors.hpp"

namespace etpa {

struct PumpSpec {
  double lambda_p0_nm = 405.0;  // central wavelength
  double sigma_p_nm = 5.0;      // Gaussian sigma of the amplitude envelope
};

// Square frequency grid for both photons, bin centers at
//   omega(i) = center_omega - half_span + (i + 0.5)*step,
// so sums over bins are midpoint-rule quadratures.
struct SpectralGrid {
  int n_points = 512;
  double center_omega = 0.0;  // omega_0 = omega_p0/2, the detuning origin
  double half_span = 0.0;     // rad/s

  double step() const { return 2.0 * half_span / n_points; }
  double omega(int i) const { return center_omega - half_span + (i + 0.5) * step(); }
  Eigen::ArrayXd omegas() const;
  Eigen::ArrayXd detunings() const;  // Omega_mu = omega_mu - omega_0

  bool operator==(const SpectralGrid& o) const {
    return n_points == o.n_points && center_omega == o.center_omega && half_span == o.half_span;
  }
};

// Default grid: half_span is the larger of 3x the pump-sum-bandwidth
// projection onto one axis and the 90 nm filter half-window in rad/s.
SpectralGrid default_grid(const PumpSpec& pump, int n_points = 512);

// Joint spectral amplitude sampled on the grid plus the pair rate carried by
// the unit-normalized state. After build_jsa, sum |f|^2 * dw^2 = 1; filters
// multiply the amplitude without renormalizing, so the jsi bin sum tracks the
// physically transmitted pairs/s.
struct BiphotonState {
  SpectralGrid grid;
  Eigen::ArrayXXcd amplitude;  // f(omega_s, omega_i); row index = signal bin
  double pair_rate = 1.0;      // pairs/s
};

// Pump spectral envelope exp[-(ws+wi-wp0)^2 / (2 sigma_w^2)].
double pump_envelope(double omega_s, double omega_i, const PumpSpec& pump);

// f = alpha * Phi on the grid, L2-normalized. Throws OutOfRangeError when the
// grid (or its pump sums) leaves the dispersion validity window.
BiphotonState build_jsa(const PumpSpec& pump, const CrystalSpec& crystal,
                        const SpectralGrid& grid, double pair_rate = 1.0);

// |f|^2 * dw^2 * pair_rate, pairs/s per bin. Bin sum equals pair_rate for a
// freshly built (unfiltered) state.
Eigen::ArrayXXd jsi(const BiphotonState& state);

struct Marginals {
  Eigen::ArrayXd signal;  // f(omega_s): jsi summed over the idler axis
  Eigen::ArrayXd idler;   // f(omega_i): jsi summed over the signal axis
};
Marginals marginals(const BiphotonState& state);

// FWHM-equivalent (2*sqrt(2 ln 2) * RMS) width of the JSI projected onto the
// difference coordinate Omega = omega_s - omega_i.
double antidiagonal_width(const BiphotonState& state);

// Angle in degrees between the major principal axis of the JSI covariance
// ellipse and the -45 degree antidiagonal. Positive = major axis rotated
// counterclockwise from the antidiagonal. Throws DegenerateError when the
// covariance is isotropic within tolerance.
double tilt_angle(const BiphotonState& state);

// Separable per-photon rectangular window, center/full width in nm. Losses
// are physical: no renormalization, pair_rate unchanged.
BiphotonState apply_bandpass(const BiphotonState& state, double center_nm,
                             double full_width_nm);

// A = (1/4)||f - f^T||^2 / ((1/2)||f||^2), the HOM ratio R_C(0)/R_C(inf).
// 0 for exchange-symmetric states; reaches 2 for f = -f^T.
double exchange_asymmetry(const BiphotonState& state);

}  // namespace etpa
