#pragma once

#include <vector>

#include <Eigen/Dense>

#include "etpa/biphoton.hpp"

namespace etpa {

// Two-photon notch model of the molecular absorption line: a Gaussian dip in
// transmission along the sum-frequency direction.
//
// Intensity mode multiplies the JSI by (1 - eta*G); this is the default and
// matches the worked attenuation numbers (a 90% efficient line transmits 10%
// at line center). Amplitude mode multiplies f itself by (1 - eta*G), i.e. an
// intensity factor (1 - eta*G)^2, and is kept for literal-equation
// comparison.
enum class NotchMode { Intensity, Amplitude };

struct NotchFilterSpec {
  double lambda_n0_nm = 810.0;  // single-photon center wavelength of the line
  double sigma_n_nm = 1.0;
  double eta = 0.9;             // absorption efficiency in [0, 1]
  NotchMode mode = NotchMode::Intensity;
};

void validate_notch(const NotchFilterSpec& spec);

// Transmission factor at one grid point:
//   G = exp[-(ws + wi - 2*Omega_N0)^2 / (2 sigma_w^2)], returns 1 - eta*G.
// The returned factor applies to the intensity in Intensity mode and to the
// amplitude in Amplitude mode.
double notch_transmission(double omega_s, double omega_i, const NotchFilterSpec& spec);

// Transmitted state; pair_rate unchanged, so the jsi bin sum after filtering
// is the transmitted pairs/s.
BiphotonState apply_notch(const BiphotonState& state, const NotchFilterSpec& spec);

// Pointwise jsi(input) - jsi(output), clipped at zero. pairs/s per bin; the
// bin sum is the absorbed rate. Throws GridMismatchError unless both states
// share one grid and one pair_rate.
Eigen::ArrayXXd absorbed_jsi(const BiphotonState& input, const BiphotonState& output);

// Absorbed total / input total, in [0, 1].
double realized_efficiency(const BiphotonState& input, const BiphotonState& output);

struct NotchSweepRow {
  double sigma_n_nm;
  double lambda_n0_nm;
  double v_out;                 // downstream HOM visibility
  double transmitted_fraction;  // transmitted / input pairs
};

// Applies the notch for every (sigma, lambda) combination; rows ordered with
// sigma_n as the outer loop.
std::vector<NotchSweepRow> sweep_notch(const BiphotonState& state,
                                       const NotchFilterSpec& spec_template,
                                       const std::vector<double>& sigma_n_values_nm,
                                       const std::vector<double>& lambda_n0_values_nm);

}  // namespace etpa
