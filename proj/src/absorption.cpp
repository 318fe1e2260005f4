#include "etpa/absorption.hpp"

#include <cmath>

#include "etpa/constants.hpp"
#include "etpa/hom.hpp"

namespace etpa {

void validate_notch(const NotchFilterSpec& spec) {
  if (!(spec.eta >= 0.0 && spec.eta <= 1.0))
    throw ConfigError("notch.eta must lie in [0, 1]");
  if (!(spec.sigma_n_nm > 0.0)) throw ConfigError("notch.sigma_n must be > 0");
  if (!(spec.lambda_n0_nm > 0.0)) throw ConfigError("notch.lambda_n0 must be > 0");
}

double notch_transmission(double omega_s, double omega_i, const NotchFilterSpec& spec) {
  const double omega_n0 = omega_from_lambda_nm(spec.lambda_n0_nm);
  const double sigma_w = sigma_omega_from_nm(spec.sigma_n_nm, spec.lambda_n0_nm);
  const double d = omega_s + omega_i - 2.0 * omega_n0;
  const double g = std::exp(-d * d / (2.0 * sigma_w * sigma_w));
  return 1.0 - spec.eta * g;
}

BiphotonState apply_notch(const BiphotonState& state, const NotchFilterSpec& spec) {
  validate_notch(spec);
  const int n = state.grid.n_points;
  BiphotonState out = state;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double t = notch_transmission(state.grid.omega(a), state.grid.omega(b), spec);
      out.amplitude(a, b) *= (spec.mode == NotchMode::Intensity) ? std::sqrt(t) : t;
    }
  }
  return out;
}

Eigen::ArrayXXd absorbed_jsi(const BiphotonState& input, const BiphotonState& output) {
  if (!(input.grid == output.grid) || input.pair_rate != output.pair_rate)
    throw GridMismatchError("absorbed_jsi needs states on one grid with one pair_rate");
  Eigen::ArrayXXd diff = jsi(input) - jsi(output);
  return diff.max(0.0);
}

double realized_efficiency(const BiphotonState& input, const BiphotonState& output) {
  const double total_in = jsi(input).sum();
  if (!(total_in > 0.0)) throw EmptyInputError("realized_efficiency: empty input");
  return absorbed_jsi(input, output).sum() / total_in;
}

std::vector<NotchSweepRow> sweep_notch(const BiphotonState& state,
                                       const NotchFilterSpec& spec_template,
                                       const std::vector<double>& sigma_n_values_nm,
                                       const std::vector<double>& lambda_n0_values_nm) {
  if (sigma_n_values_nm.empty() || lambda_n0_values_nm.empty())
    throw ConfigError("sweep_notch needs nonempty value lists");
  const double total_in = jsi(state).sum();
  std::vector<NotchSweepRow> rows;
  rows.reserve(sigma_n_values_nm.size() * lambda_n0_values_nm.size());
  for (double sigma : sigma_n_values_nm) {
    for (double lambda : lambda_n0_values_nm) {
      NotchFilterSpec spec = spec_template;
      spec.sigma_n_nm = sigma;
      spec.lambda_n0_nm = lambda;
      const BiphotonState filtered = apply_notch(state, spec);
      rows.push_back({sigma, lambda, visibility(filtered), jsi(filtered).sum() / total_in});
    }
  }
  return rows;
}

}  // namespace etpa
