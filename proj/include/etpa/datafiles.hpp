#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "etpa/budget.hpp"
#include "etpa/dispersion.hpp"

namespace etpa {

// Minimal INI-style reader: [section] headers, key = value lines, # or ;
// comments. Section order and duplicate sections are preserved so config
// echoes stay faithful.
struct IniSection {
  std::string name;                                        // full header text
  std::vector<std::pair<std::string, std::string>> items;  // in file order
  int line = 0;

  std::optional<std::string> get(const std::string& key) const;
};

struct IniFile {
  std::vector<IniSection> sections;

  const IniSection* find(const std::string& name) const;
  IniSection* find(const std::string& name);
};

IniFile parse_ini(const std::string& text, const std::string& origin);
IniFile parse_ini_file(const std::string& path);

double parse_double(const std::string& value, const std::string& field);
int parse_int(const std::string& value, const std::string& field);
std::vector<double> parse_double_list(const std::string& value, const std::string& field);

// Sellmeier data file: one "[axis <label>]" block per axis with
// coefficients, valid_range_nm and citation keys.
std::map<std::string, IndexModel> load_sellmeier(const std::string& path);

// Sample profile: molecular absorption parameters plus the ETPA bookkeeping
// numbers behind Table 1 rows. Either eta (a fixed notch efficiency) or
// sigma_e + concentration may be present.
struct SampleProfile {
  std::string name;
  std::optional<double> lambda_n0_nm;
  std::optional<double> sigma_n_nm;
  std::optional<double> eta;
  std::optional<double> sigma_e_cm2;
  std::optional<double> sigma_c_gm;
  double concentration_mol_per_l = 0.0;
  double path_length_cm = 1.0;

  SampleSpec to_sample_spec() const;
};

std::vector<SampleProfile> load_samples(const std::string& path);
const SampleProfile& find_sample(const std::vector<SampleProfile>& profiles,
                                 const std::string& name);

// Data directory resolution: explicit flag > ETPA_DATA_DIR > compiled default.
std::string resolve_data_dir(const std::string& cli_override);

}  // namespace etpa
