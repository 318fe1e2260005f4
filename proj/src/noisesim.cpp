#include "etpa/noisesim.hpp"

#include <cmath>
#include <limits>

#include "etpa/constants.hpp"

namespace etpa {

namespace {

// splitmix64: tiny counter-based generator; every (seed, frame, draw index)
// triple maps to one fixed output, so frames form independent substreams and
// results do not depend on evaluation order.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() {  // (0, 1]
    return (next() >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }
};

// Box-Muller on splitmix64 uniforms; avoids the implementation-defined
// std::normal_distribution so golden files stay stable across toolchains.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}
  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = rng_.uniform();
    const double u2 = rng_.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * constants::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  SplitMix64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

std::uint64_t frame_seed(std::uint64_t seed, std::uint64_t frame) {
  SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ULL * (frame + 1)));
  return mix.next();
}

}  // namespace

void validate_noise_config(const NoiseRunConfig& config) {
  if (config.n_frames < 1) throw ConfigError("noise.n_frames must be >= 1");
  if (config.per_bin_noise_sigma < 0.0)
    throw ConfigError("noise.per_bin_noise_sigma must be >= 0");
  if (!(config.integration_time_s > 0.0))
    throw ConfigError("noise.integration_time must be > 0");
}

double calibrate_noise(double pairs_in, double fano, int n_signal_bins,
                       double integration_time_s) {
  if (!(pairs_in > 0.0 && fano > 0.0 && n_signal_bins > 0 && integration_time_s > 0.0))
    throw ConfigError("calibrate_noise needs positive inputs");
  return std::sqrt(fano * pairs_in / n_signal_bins) * integration_time_s;
}

MeasurementResult simulate_frames(const BiphotonState& state_in,
                                  const BiphotonState& state_out,
                                  const NoiseRunConfig& config) {
  validate_noise_config(config);
  if (!(state_in.grid == state_out.grid) || state_in.pair_rate != state_out.pair_rate)
    throw GridMismatchError("simulate_frames needs states on one grid with one pair_rate");

  const int n = state_in.grid.n_points;
  const Eigen::ArrayXd rate_in = marginals(state_in).signal;
  const Eigen::ArrayXd rate_out = marginals(state_out).signal;
  const double t = config.integration_time_s;

  MeasurementResult result;
  result.noiseless_absorbed_rate = rate_in - rate_out;
  result.marginal_in = Eigen::ArrayXd::Zero(n);
  result.marginal_out = Eigen::ArrayXd::Zero(n);

  for (int frame = 0; frame < config.n_frames; ++frame) {
    GaussianStream g(frame_seed(config.rng_seed, static_cast<std::uint64_t>(frame)));
    for (int b = 0; b < n; ++b)
      result.marginal_in(b) += rate_in(b) * t + config.per_bin_noise_sigma * g.next();
    for (int b = 0; b < n; ++b)
      result.marginal_out(b) += rate_out(b) * t + config.per_bin_noise_sigma * g.next();
  }
  result.absorbed = result.marginal_in - result.marginal_out;

  if (config.accumulate_jsi) {
    result.jsi_in = jsi(state_in) * (config.n_frames * t);
    result.jsi_out = jsi(state_out) * (config.n_frames * t);
  }

  // signal bin: location of the noiseless absorbed peak
  int peak = 0;
  for (int b = 1; b < n; ++b)
    if (result.noiseless_absorbed_rate(b) > result.noiseless_absorbed_rate(peak)) peak = b;
  result.signal_bin = peak;

  if (!config.background_region.empty()) {
    for (auto [lo, hi] : config.background_region) {
      if (lo < 0 || hi > n || lo >= hi)
        throw ConfigError("noise.background_region range out of bounds");
      for (int b = lo; b < hi; ++b) result.background_bins.push_back(b);
    }
  } else {
    const double floor = rate_in.maxCoeff() * 1e-9;
    for (int b = 0; b < n; ++b)
      if (rate_in(b) < floor) result.background_bins.push_back(b);
  }

  if (!result.background_bins.empty()) {
    const SnrEstimate est = estimate_snr(result, config);
    result.snr = est.snr;
    result.snr_db = est.snr_db;
  }
  return result;
}

SnrEstimate estimate_snr(const MeasurementResult& result, const NoiseRunConfig& config) {
  validate_noise_config(config);
  if (result.background_bins.empty())
    throw EmptyBackgroundError("estimate_snr: background region is empty");
  for (int b : result.background_bins)
    if (b == result.signal_bin)
      throw EmptyBackgroundError("estimate_snr: background overlaps the signal peak");

  double mean = 0.0;
  for (int b : result.background_bins) mean += result.absorbed(b);
  mean /= static_cast<double>(result.background_bins.size());
  double var = 0.0;
  for (int b : result.background_bins) {
    const double d = result.absorbed(b) - mean;
    var += d * d;
  }
  var /= static_cast<double>(result.background_bins.size());
  const double sd = std::sqrt(var);

  const double peak = result.absorbed(result.signal_bin);
  SnrEstimate est;
  if (sd == 0.0) {
    est.snr = std::numeric_limits<double>::infinity();
    est.snr_db = std::numeric_limits<double>::infinity();
  } else {
    est.snr = peak / sd;
    est.snr_db = 20.0 * std::log10(std::abs(est.snr));
  }
  return est;
}

}  // namespace etpa
