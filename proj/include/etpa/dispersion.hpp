#pragma once

#include <map>
#include <string>
#include <vector>

#include "etpa/errors.hpp"

namespace etpa {

// One Sellmeier coefficient set for one polarization axis of the crystal.
// Form: n^2 = A + B / (1 - (C/lam)^2) - D*lam^2 with lam in micrometers.
// Evaluation outside [valid_min_nm, valid_max_nm] throws OutOfRangeError;
// no silent extrapolation.
struct IndexModel {
  std::string axis_label;            // "y" or "z"
  std::vector<double> coefficients;  // A, B, C, D
  double valid_min_nm = 0.0;
  double valid_max_nm = 0.0;
  std::string provenance;
};

double refractive_index(double lambda_nm, const IndexModel& model);

// Group index n_g = n - lam*dn/dlam, from the closed-form derivative of the
// Sellmeier expression. Used by diagnostics and tests.
double group_index(double lambda_nm, const IndexModel& model);

enum class Process { Type0, TypeII };

struct CrystalSpec {
  double length_m = 0.0;
  double poling_period_m = 0.0;
  Process process = Process::TypeII;
  std::string pump_axis;
  std::string signal_axis;
  std::string idler_axis;
  std::map<std::string, IndexModel> index_models;

  const IndexModel& model(const std::string& axis) const;
};

// Throws ConfigError if lengths are nonpositive or the axis assignment does
// not match the process (Type0 needs all axes equal, TypeII distinct s/i).
void validate_crystal(const CrystalSpec& crystal);

// Default ppKTP axis assignment. TypeII: pump y, signal z, idler y (this
// choice reproduces the 10 um poling period and a positive JSI tilt).
// Type0: everything on z. The poling period is left at 0 and must be set,
// typically from solve_poling_period.
CrystalSpec make_ppktp(Process process,
                       const std::map<std::string, IndexModel>& models,
                       double length_m = 0.010);

// sin(x)/x with the series branch for small |x|; sinc(0) = 1.
double sinc(double x);

// k = n(omega)*omega/c on the given axis model.
double wavevector(double omega, const IndexModel& model);

// Collinear quasi-phase-matched mismatch
//   dk = k_p(omega_s+omega_i) - k_s(omega_s) - k_i(omega_i) - 2*pi/Lambda.
double phase_mismatch(double omega_s, double omega_i, const CrystalSpec& crystal);

// sinc(L*dk/2)
double phase_matching_function(double omega_s, double omega_i, const CrystalSpec& crystal);

// Poling period that phase-matches degenerate collinear conversion at
// omega_p0, found by bracketed bisection on [0.5 um, 100 um]. Throws
// NoRootError when the bracket has no sign change.
double solve_poling_period(const CrystalSpec& crystal, double omega_p0);

}  // namespace etpa
