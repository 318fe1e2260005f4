#include "etpa/biphoton.hpp"

#include <cmath>

#include "etpa/constants.hpp"

namespace etpa {

Eigen::ArrayXd SpectralGrid::omegas() const {
  Eigen::ArrayXd w(n_points);
  for (int i = 0; i < n_points; ++i) w(i) = omega(i);
  return w;
}

Eigen::ArrayXd SpectralGrid::detunings() const {
  return omegas() - center_omega;
}

SpectralGrid default_grid(const PumpSpec& pump, int n_points) {
  if (n_points < 16) throw ConfigError("grid.n_points must be >= 16");
  const double omega_p0 = omega_from_lambda_nm(pump.lambda_p0_nm);
  const double sigma_sum = sigma_omega_from_nm(pump.sigma_p_nm, pump.lambda_p0_nm);
  const double pump_proj = 3.0 * sigma_sum / std::sqrt(2.0);
  const double filter_half = sigma_omega_from_nm(45.0, 2.0 * pump.lambda_p0_nm);
  SpectralGrid grid;
  grid.n_points = n_points;
  grid.center_omega = 0.5 * omega_p0;
  grid.half_span = std::max(pump_proj, filter_half);
  return grid;
}

double pump_envelope(double omega_s, double omega_i, const PumpSpec& pump) {
  const double omega_p0 = omega_from_lambda_nm(pump.lambda_p0_nm);
  const double sigma_w = sigma_omega_from_nm(pump.sigma_p_nm, pump.lambda_p0_nm);
  const double d = omega_s + omega_i - omega_p0;
  return std::exp(-d * d / (2.0 * sigma_w * sigma_w));
}

BiphotonState build_jsa(const PumpSpec& pump, const CrystalSpec& crystal,
                        const SpectralGrid& grid, double pair_rate) {
  if (pump.lambda_p0_nm <= 0.0 || pump.sigma_p_nm <= 0.0)
    throw ConfigError("pump wavelength and bandwidth must be > 0");
  if (pair_rate < 0.0) throw ConfigError("pair_rate must be >= 0");
  validate_crystal(crystal);

  const int n = grid.n_points;
  const double step = grid.step();
  const double omega_p0 = omega_from_lambda_nm(pump.lambda_p0_nm);
  const double sigma_w = sigma_omega_from_nm(pump.sigma_p_nm, pump.lambda_p0_nm);
  const double qpm = 2.0 * constants::pi / crystal.poling_period_m;

  const Eigen::ArrayXd w = grid.omegas();
  Eigen::ArrayXd k_s(n), k_i(n);
  const IndexModel& ms = crystal.model(crystal.signal_axis);
  const IndexModel& mi = crystal.model(crystal.idler_axis);
  for (int a = 0; a < n; ++a) {
    k_s(a) = wavevector(w(a), ms);
    k_i(a) = wavevector(w(a), mi);
  }
  // The sums w(a)+w(b) take 2n-1 distinct values on a uniform grid.
  Eigen::ArrayXd k_p(2 * n - 1);
  const IndexModel& mp = crystal.model(crystal.pump_axis);
  for (int s = 0; s < 2 * n - 1; ++s) k_p(s) = wavevector(2.0 * w(0) + s * step, mp);

  BiphotonState state;
  state.grid = grid;
  state.pair_rate = pair_rate;
  state.amplitude.resize(n, n);
  const double half_l = 0.5 * crystal.length_m;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double sum = w(a) + w(b);
      const double d = sum - omega_p0;
      const double alpha = std::exp(-d * d / (2.0 * sigma_w * sigma_w));
      const double dk = k_p(a + b) - k_s(a) - k_i(b) - qpm;
      state.amplitude(a, b) = alpha * sinc(half_l * dk);
    }
  }

  const double norm2 = state.amplitude.abs2().sum() * step * step;
  if (!(norm2 > 0.0)) throw NumericalError("JSA vanished on the whole grid");
  state.amplitude /= std::sqrt(norm2);
  return state;
}

Eigen::ArrayXXd jsi(const BiphotonState& state) {
  const double step = state.grid.step();
  return state.amplitude.abs2() * (step * step * state.pair_rate);
}

Marginals marginals(const BiphotonState& state) {
  const Eigen::ArrayXXd j = jsi(state);
  Marginals m;
  m.signal = j.rowwise().sum();
  m.idler = j.colwise().sum().transpose();
  return m;
}

double antidiagonal_width(const BiphotonState& state) {
  const Eigen::ArrayXXd j = jsi(state);
  const Eigen::ArrayXd om = state.grid.detunings();
  const double total = j.sum();
  if (!(total > 0.0)) throw EmptyInputError("empty state in antidiagonal_width");
  double mean = 0.0, m2 = 0.0;
  for (int a = 0; a < state.grid.n_points; ++a)
    for (int b = 0; b < state.grid.n_points; ++b) {
      const double diff = om(a) - om(b);
      mean += j(a, b) * diff;
    }
  mean /= total;
  for (int a = 0; a < state.grid.n_points; ++a)
    for (int b = 0; b < state.grid.n_points; ++b) {
      const double diff = om(a) - om(b) - mean;
      m2 += j(a, b) * diff * diff;
    }
  m2 /= total;
  return 2.0 * std::sqrt(2.0 * std::log(2.0)) * std::sqrt(m2);
}

double tilt_angle(const BiphotonState& state) {
  const Eigen::ArrayXXd j = jsi(state);
  const Eigen::ArrayXd om = state.grid.detunings();
  const double total = j.sum();
  if (!(total > 0.0)) throw EmptyInputError("empty state in tilt_angle");

  const Eigen::ArrayXd ms = j.rowwise().sum();
  const Eigen::ArrayXd mi = j.colwise().sum().transpose();
  const double mu_s = (ms * om).sum() / total;
  const double mu_i = (mi * om).sum() / total;
  double cxx = 0.0, cyy = 0.0, cxy = 0.0;
  for (int a = 0; a < state.grid.n_points; ++a) {
    const double ds = om(a) - mu_s;
    cxx += ms(a) * ds * ds;
    for (int b = 0; b < state.grid.n_points; ++b) cxy += j(a, b) * ds * (om(b) - mu_i);
  }
  for (int b = 0; b < state.grid.n_points; ++b) {
    const double di = om(b) - mu_i;
    cyy += mi(b) * di * di;
  }
  cxx /= total; cyy /= total; cxy /= total;

  const double scale = cxx + cyy;
  const double aniso = std::hypot(cxx - cyy, 2.0 * cxy);
  if (aniso < 1e-9 * scale)
    throw DegenerateError("JSI covariance isotropic; tilt undefined");

  // Principal-axis angle in (-90, 90], then measured from the -45 deg line.
  double theta = 0.5 * std::atan2(2.0 * cxy, cxx - cyy) * 180.0 / constants::pi;
  double tilt = theta + 45.0;
  while (tilt > 45.0) tilt -= 90.0;
  while (tilt <= -45.0) tilt += 90.0;
  return tilt;
}

BiphotonState apply_bandpass(const BiphotonState& state, double center_nm,
                             double full_width_nm) {
  if (!(full_width_nm > 0.0)) throw ConfigError("bandpass full_width must be > 0");
  const double w_lo = omega_from_lambda_nm(center_nm + 0.5 * full_width_nm);
  const double w_hi = omega_from_lambda_nm(center_nm - 0.5 * full_width_nm);
  const int n = state.grid.n_points;
  Eigen::ArrayXd pass(n);
  for (int i = 0; i < n; ++i) {
    const double w = state.grid.omega(i);
    pass(i) = (w >= w_lo && w <= w_hi) ? 1.0 : 0.0;
  }
  BiphotonState out = state;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out.amplitude(a, b) *= pass(a) * pass(b);
  return out;
}

double exchange_asymmetry(const BiphotonState& state) {
  const double norm2 = state.amplitude.abs2().sum();
  if (!(norm2 > 0.0)) throw EmptyInputError("empty state in exchange_asymmetry");
  const Eigen::ArrayXXcd diff = state.amplitude - state.amplitude.transpose();
  return 0.25 * diff.abs2().sum() / (0.5 * norm2);
}

}  // namespace etpa
