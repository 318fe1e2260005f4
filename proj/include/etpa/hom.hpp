#pragma once

#include <Eigen/Dense>

#include "etpa/biphoton.hpp"

namespace etpa {

struct Interferogram {
  Eigen::ArrayXd tau_s;   // delay samples, strictly increasing
  Eigen::ArrayXd rates;   // R_C(tau), pairs/s
  double baseline = 0.0;  // R_C(inf), computed analytically
};

// R_C(tau) = (1/4) * sum |f(ws,wi) e^{i(ws-wi)tau} - f(wi,ws)|^2 dw^2,
// scaled by pair_rate. Midpoint-rule discretization on the state grid.
double coincidence_rate(const BiphotonState& state, double tau_s);

// tau -> inf limit: the interference cross term averages to zero, leaving
// (1/4)(||f||^2 + ||f^T||^2) dw^2 = pair_rate/2 for an unfiltered state.
double hom_baseline(const BiphotonState& state);

// Uniform samples on [-tau_max, +tau_max]; baseline analytic, not estimated
// from the edge samples.
Interferogram interferogram(const BiphotonState& state, double tau_max_s = 2e-12,
                            int n_tau = 401);

// V = (R_C(inf) - R_C(0)) / (R_C(inf) + R_C(0)). Throws ZeroBaselineError.
double visibility(const BiphotonState& state);

// Full width of the dip at half depth, by linear interpolation between
// samples. Throws NoDipError when the minimum rate is >= 0.999 * baseline.
double dip_fwhm(const Interferogram& ig);

}  // namespace etpa
