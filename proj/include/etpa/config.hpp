#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "etpa/absorption.hpp"
#include "etpa/budget.hpp"
#include "etpa/datafiles.hpp"
#include "etpa/noisesim.hpp"

namespace etpa {

enum class Scenario { Fig1, Fig2, Fig3, Fig4, Fig5, Fig7, Table1, Custom };

std::string scenario_name(Scenario s);
Scenario scenario_from_name(const std::string& name);

struct BandpassSpec {
  double center_nm = 810.0;
  double full_width_nm = 90.0;
};

struct NoiseParams {
  int n_frames = 100;
  double integration_time_s = 1.0;
  std::optional<double> per_bin_sigma;  // nullopt = calibrate from the budget
  std::uint64_t seed = 1;
  std::vector<std::pair<int, int>> background_region;  // empty = auto
};

struct SweepParams {
  std::vector<double> sigma_n_values_nm;
  std::vector<double> lambda_n0_values_nm;
};

// Everything a scenario run needs, resolved from the config file plus
// command-line overrides, with defaults filled in. Validation happens before
// any computation.
struct RunConfig {
  Scenario scenario = Scenario::Custom;
  std::string output_dir = "out";
  std::string data_dir;

  PumpSpec pump;
  Process process = Process::TypeII;
  double crystal_length_m = 0.010;
  std::optional<double> poling_period_m;  // nullopt = solve at 2*lambda_p0
  std::optional<std::string> pump_axis, signal_axis, idler_axis;

  int grid_n_points = 512;
  std::optional<double> grid_half_span;  // nullopt = default_grid formula

  SourceBudget source;
  DetectorModel detector;

  std::optional<NotchFilterSpec> notch;
  std::optional<std::string> sample_name;
  std::optional<BandpassSpec> bandpass;
  std::optional<NoiseParams> noise;
  std::optional<SweepParams> sweep;

  std::optional<double> table_effective_concentration_mol_per_l = 0.058;

  std::uint64_t seed = 1;
  int threads = 1;
};

// Parses and validates; throws ConfigError naming the offending field.
// Overrides are dotted-path "section.key=value" strings applied on top of the
// file before typed parsing.
RunConfig load_run_config(const IniFile& file,
                          const std::vector<std::string>& overrides,
                          const std::string& data_dir);

// Materializes the crystal from the Sellmeier data file; solves the poling
// period when the config says auto.
CrystalSpec build_crystal(const RunConfig& config);

// Resolved-config echo (defaults filled in), printed by `validate`.
std::string echo_config(const RunConfig& config);

}  // namespace etpa
