#include "etpa/dispersion.hpp"

#include <cmath>
#include <sstream>

#include "etpa/constants.hpp"

namespace etpa {

namespace {

void check_range(double lambda_nm, const IndexModel& model) {
  if (!(lambda_nm >= model.valid_min_nm && lambda_nm <= model.valid_max_nm)) {
    std::ostringstream msg;
    msg << "wavelength " << lambda_nm << " nm outside validity ["
        << model.valid_min_nm << ", " << model.valid_max_nm << "] nm of axis "
        << model.axis_label;
    throw OutOfRangeError(msg.str());
  }
}

double n_squared(double lam_um, const std::vector<double>& c) {
  const double r = c[2] / lam_um;
  return c[0] + c[1] / (1.0 - r * r) - c[3] * lam_um * lam_um;
}

}  // namespace

double refractive_index(double lambda_nm, const IndexModel& model) {
  if (model.coefficients.size() != 4)
    throw ConfigError("index model '" + model.axis_label + "' needs 4 coefficients");
  check_range(lambda_nm, model);
  return std::sqrt(n_squared(lambda_nm * 1e-3, model.coefficients));
}

double group_index(double lambda_nm, const IndexModel& model) {
  check_range(lambda_nm, model);
  const auto& c = model.coefficients;
  const double lam = lambda_nm * 1e-3;
  const double n = std::sqrt(n_squared(lam, c));
  // d(n^2)/dlam of A + B*lam^2/(lam^2 - C^2) - D*lam^2
  const double den = lam * lam - c[2] * c[2];
  const double dn2 = -2.0 * c[1] * lam * c[2] * c[2] / (den * den) - 2.0 * c[3] * lam;
  const double dndlam = dn2 / (2.0 * n);
  return n - lam * dndlam;
}

const IndexModel& CrystalSpec::model(const std::string& axis) const {
  auto it = index_models.find(axis);
  if (it == index_models.end())
    throw ConfigError("no index model for axis '" + axis + "'");
  return it->second;
}

void validate_crystal(const CrystalSpec& crystal) {
  if (!(crystal.length_m > 0.0)) throw ConfigError("crystal.length must be > 0");
  if (!(crystal.poling_period_m > 0.0)) throw ConfigError("crystal.poling_period must be > 0");
  if (crystal.process == Process::Type0) {
    if (crystal.pump_axis != crystal.signal_axis || crystal.signal_axis != crystal.idler_axis)
      throw ConfigError("type-0 requires pump, signal and idler on one axis");
  } else {
    if (crystal.signal_axis == crystal.idler_axis)
      throw ConfigError("type-II requires distinct signal and idler axes");
  }
  crystal.model(crystal.pump_axis);
  crystal.model(crystal.signal_axis);
  crystal.model(crystal.idler_axis);
}

CrystalSpec make_ppktp(Process process,
                       const std::map<std::string, IndexModel>& models,
                       double length_m) {
  CrystalSpec crystal;
  crystal.length_m = length_m;
  crystal.process = process;
  crystal.index_models = models;
  if (process == Process::Type0) {
    crystal.pump_axis = crystal.signal_axis = crystal.idler_axis = "z";
  } else {
    crystal.pump_axis = "y";
    crystal.signal_axis = "z";
    crystal.idler_axis = "y";
  }
  return crystal;
}

double sinc(double x) {
  if (std::abs(x) < 1e-6) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double wavevector(double omega, const IndexModel& model) {
  const double lambda_nm = lambda_nm_from_omega(omega);
  return refractive_index(lambda_nm, model) * omega / constants::light_speed;
}

double phase_mismatch(double omega_s, double omega_i, const CrystalSpec& crystal) {
  const double k_p = wavevector(omega_s + omega_i, crystal.model(crystal.pump_axis));
  const double k_s = wavevector(omega_s, crystal.model(crystal.signal_axis));
  const double k_i = wavevector(omega_i, crystal.model(crystal.idler_axis));
  return k_p - k_s - k_i - 2.0 * constants::pi / crystal.poling_period_m;
}

double phase_matching_function(double omega_s, double omega_i, const CrystalSpec& crystal) {
  return sinc(0.5 * crystal.length_m * phase_mismatch(omega_s, omega_i, crystal));
}

double solve_poling_period(const CrystalSpec& crystal, double omega_p0) {
  const double w = 0.5 * omega_p0;
  CrystalSpec trial = crystal;

  auto mismatch_at = [&](double period) {
    trial.poling_period_m = period;
    return phase_mismatch(w, w, trial);
  };

  double lo = 0.5e-6, hi = 100e-6;
  double f_lo = mismatch_at(lo), f_hi = mismatch_at(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (f_lo * f_hi > 0.0)
    throw NoRootError("no poling-period sign change in [0.5 um, 100 um]");

  // Bisection; |dk| < 1e-3 rad/m needs the period resolved to ~1e-14 m, which
  // ~70 halvings of the 1e-4 m bracket provide.
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = mismatch_at(mid);
    if (std::abs(f_mid) < 1e-6 || hi - lo < 1e-16) return mid;
    if (f_lo * f_mid <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace etpa
