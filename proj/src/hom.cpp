#include "etpa/hom.hpp"

#include <cmath>
#include <complex>

#include "etpa/constants.hpp"

namespace etpa {

namespace {

// |a e^{i phi} - b|^2 summed over the grid equals
// ||f||^2 + ||f^T||^2 - 2 Re sum_ab f_ab conj(f_ba) e^{i(w_a - w_b) tau}.
// The cross term factorizes through e^{i w tau} phase vectors, so each tau
// costs one matrix-vector product instead of an n^2 rebuild.
double cross_term(const BiphotonState& state, double tau_s) {
  const int n = state.grid.n_points;
  const Eigen::ArrayXd w = state.grid.omegas();
  Eigen::VectorXcd phase(n);
  for (int i = 0; i < n; ++i)
    phase(i) = std::polar(1.0, w(i) * tau_s);
  const Eigen::MatrixXcd m =
      (state.amplitude * state.amplitude.transpose().conjugate()).matrix();
  const std::complex<double> s = phase.transpose() * (m * phase.conjugate());
  return s.real();
}

}  // namespace

double hom_baseline(const BiphotonState& state) {
  const double step = state.grid.step();
  const double norm2 = state.amplitude.abs2().sum() * step * step;
  return 0.5 * norm2 * state.pair_rate;
}

double coincidence_rate(const BiphotonState& state, double tau_s) {
  const double step = state.grid.step();
  const double norm2 = state.amplitude.abs2().sum();
  const double cross = cross_term(state, tau_s);
  const double r = 0.25 * (2.0 * norm2 - 2.0 * cross) * step * step * state.pair_rate;
  return r < 0.0 ? 0.0 : r;  // clamp fp negatives at perfect suppression
}

Interferogram interferogram(const BiphotonState& state, double tau_max_s, int n_tau) {
  if (n_tau < 3) throw ConfigError("n_tau must be >= 3");
  if (!(tau_max_s > 0.0)) throw ConfigError("tau_max must be > 0");
  Interferogram ig;
  ig.tau_s.resize(n_tau);
  ig.rates.resize(n_tau);
  for (int i = 0; i < n_tau; ++i) {
    const double tau = -tau_max_s + 2.0 * tau_max_s * i / (n_tau - 1);
    ig.tau_s(i) = tau;
    ig.rates(i) = coincidence_rate(state, tau);
  }
  ig.baseline = hom_baseline(state);
  return ig;
}

double visibility(const BiphotonState& state) {
  const double base = hom_baseline(state);
  if (!(base > 0.0)) throw ZeroBaselineError("HOM baseline is zero");
  const double r0 = coincidence_rate(state, 0.0);
  return (base - r0) / (base + r0);
}

double dip_fwhm(const Interferogram& ig) {
  const int n = static_cast<int>(ig.rates.size());
  int i_min = 0;
  for (int i = 1; i < n; ++i)
    if (ig.rates(i) < ig.rates(i_min)) i_min = i;
  const double r_min = ig.rates(i_min);
  if (r_min >= 0.999 * ig.baseline) throw NoDipError("no dip below 0.999 * baseline");

  const double half = ig.baseline - 0.5 * (ig.baseline - r_min);

  auto interp = [&](int a, int b) {
    const double t = (half - ig.rates(a)) / (ig.rates(b) - ig.rates(a));
    return ig.tau_s(a) + t * (ig.tau_s(b) - ig.tau_s(a));
  };

  double left = ig.tau_s(0), right = ig.tau_s(n - 1);
  for (int i = i_min; i > 0; --i)
    if (ig.rates(i - 1) >= half && ig.rates(i) < half) { left = interp(i - 1, i); break; }
  for (int i = i_min; i < n - 1; ++i)
    if (ig.rates(i + 1) >= half && ig.rates(i) < half) { right = interp(i + 1, i); break; }
  return right - left;
}

}  // namespace etpa
