#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "etpa/biphoton.hpp"

namespace etpa {

struct NoiseRunConfig {
  int n_frames = 100;                 // M
  double integration_time_s = 1.0;    // per frame
  double per_bin_noise_sigma = 0.0;   // Gaussian counts sigma per bin per frame
  std::uint64_t rng_seed = 1;
  // Half-open [lo, hi) bin ranges used for background statistics. Empty means
  // auto: every bin whose noiseless input marginal is < 1e-9 of its peak.
  std::vector<std::pair<int, int>> background_region;
  bool accumulate_jsi = false;
};

void validate_noise_config(const NoiseRunConfig& config);

struct MeasurementResult {
  Eigen::ArrayXd marginal_in;    // accumulated counts over all frames
  Eigen::ArrayXd marginal_out;
  Eigen::ArrayXd absorbed;       // marginal_in - marginal_out, bin exact
  Eigen::ArrayXd noiseless_absorbed_rate;  // pairs/s per bin
  std::optional<Eigen::ArrayXXd> jsi_in, jsi_out;
  std::vector<int> background_bins;
  int signal_bin = 0;            // argmax of the noiseless absorbed marginal
  double snr = 0.0;
  double snr_db = 0.0;
};

// Per-bin Gaussian sigma such that the root-sum-square rate fluctuation over
// n_signal_bins equals sqrt(fano * pairs_in):
//   sigma = sqrt(fano * pairs_in / n_signal_bins) * integration_time.
double calibrate_noise(double pairs_in, double fano, int n_signal_bins,
                       double integration_time_s);

// Accumulates n_frames frames of both signal-axis marginals with independent
// per-bin Gaussian noise; deterministic (bit-identical) under a fixed seed,
// independent of any parallel frame evaluation order. Fills the snr fields
// via estimate_snr.
MeasurementResult simulate_frames(const BiphotonState& state_in,
                                  const BiphotonState& state_out,
                                  const NoiseRunConfig& config);

struct SnrEstimate {
  double snr;     // accumulated absorbed counts at signal_bin / background sd
  double snr_db;  // 20 log10(snr)
};

// Zero background spread reports +infinity. Throws EmptyBackgroundError when
// no background bins are available.
SnrEstimate estimate_snr(const MeasurementResult& result, const NoiseRunConfig& config);

}  // namespace etpa
