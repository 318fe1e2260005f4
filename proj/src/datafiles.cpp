#include "etpa/datafiles.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace etpa {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& line) {
  for (std::size_t i = 0; i < line.size(); ++i)
    if (line[i] == '#' || line[i] == ';') return line.substr(0, i);
  return line;
}

}  // namespace

std::optional<std::string> IniSection::get(const std::string& key) const {
  for (const auto& [k, v] : items)
    if (k == key) return v;
  return std::nullopt;
}

const IniSection* IniFile::find(const std::string& name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

IniSection* IniFile::find(const std::string& name) {
  for (auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

IniFile parse_ini(const std::string& text, const std::string& origin) {
  IniFile file;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  IniSection* current = nullptr;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(origin + ":" + std::to_string(line_no) + ": unterminated section header");
      IniSection section;
      section.name = trim(line.substr(1, line.size() - 2));
      section.line = line_no;
      file.sections.push_back(section);
      current = &file.sections.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected key = value");
    if (!current)
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": key outside any [section]");
    current->items.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return file;
}

IniFile parse_ini_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_ini(buf.str(), path);
}

double parse_double(const std::string& value, const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (trim(value.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(field + ": '" + value + "' is not a number");
}

int parse_int(const std::string& value, const std::string& field) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (trim(value.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(field + ": '" + value + "' is not an integer");
}

std::vector<double> parse_double_list(const std::string& value, const std::string& field) {
  std::vector<double> out;
  std::istringstream in(value);
  std::string tok;
  while (in >> tok) {
    if (!tok.empty() && tok.back() == ',') tok.pop_back();
    if (tok.empty()) continue;
    out.push_back(parse_double(tok, field));
  }
  if (out.empty()) throw ConfigError(field + ": empty list");
  return out;
}

std::map<std::string, IndexModel> load_sellmeier(const std::string& path) {
  const IniFile file = parse_ini_file(path);
  std::map<std::string, IndexModel> models;
  for (const auto& section : file.sections) {
    if (section.name.rfind("axis ", 0) != 0) continue;
    IndexModel model;
    model.axis_label = trim(section.name.substr(5));
    const auto coeffs = section.get("coefficients");
    const auto range = section.get("valid_range_nm");
    if (!coeffs || !range)
      throw ConfigError(path + ": axis '" + model.axis_label +
                        "' needs coefficients and valid_range_nm");
    model.coefficients = parse_double_list(*coeffs, "coefficients");
    if (model.coefficients.size() != 4)
      throw ConfigError(path + ": axis '" + model.axis_label + "' needs 4 coefficients");
    const auto lims = parse_double_list(*range, "valid_range_nm");
    if (lims.size() != 2 || !(lims[0] < lims[1]))
      throw ConfigError(path + ": valid_range_nm needs 'min max'");
    model.valid_min_nm = lims[0];
    model.valid_max_nm = lims[1];
    model.provenance = section.get("citation").value_or("");
    models[model.axis_label] = model;
  }
  if (models.empty()) throw ConfigError(path + ": no [axis ...] sections found");
  return models;
}

SampleSpec SampleProfile::to_sample_spec() const {
  SampleSpec spec;
  spec.name = name;
  spec.concentration_mol_per_l = concentration_mol_per_l;
  spec.path_length_cm = path_length_cm;
  spec.sigma_e_cm2 = sigma_e_cm2;
  spec.sigma_c_gm = sigma_c_gm;
  return spec;
}

std::vector<SampleProfile> load_samples(const std::string& path) {
  const IniFile file = parse_ini_file(path);
  std::vector<SampleProfile> profiles;
  for (const auto& section : file.sections) {
    if (section.name.rfind("sample ", 0) != 0) continue;
    SampleProfile p;
    p.name = trim(section.name.substr(7));
    if (auto v = section.get("lambda_n0_nm")) p.lambda_n0_nm = parse_double(*v, "lambda_n0_nm");
    if (auto v = section.get("sigma_n_nm")) p.sigma_n_nm = parse_double(*v, "sigma_n_nm");
    if (auto v = section.get("eta")) p.eta = parse_double(*v, "eta");
    if (auto v = section.get("sigma_e_cm2")) p.sigma_e_cm2 = parse_double(*v, "sigma_e_cm2");
    if (auto v = section.get("sigma_c_gm")) p.sigma_c_gm = parse_double(*v, "sigma_c_gm");
    if (auto v = section.get("concentration_mm"))
      p.concentration_mol_per_l = parse_double(*v, "concentration_mm") * 1e-3;
    if (auto v = section.get("path_length_cm"))
      p.path_length_cm = parse_double(*v, "path_length_cm");
    if (!p.eta && !p.sigma_e_cm2)
      throw ConfigError(path + ": sample '" + p.name + "' needs eta or sigma_e_cm2");
    profiles.push_back(p);
  }
  if (profiles.empty()) throw ConfigError(path + ": no [sample ...] sections found");
  return profiles;
}

const SampleProfile& find_sample(const std::vector<SampleProfile>& profiles,
                                 const std::string& name) {
  for (const auto& p : profiles)
    if (p.name == name) return p;
  throw ConfigError("unknown sample '" + name + "'");
}

std::string resolve_data_dir(const std::string& cli_override) {
  if (!cli_override.empty()) return cli_override;
  if (const char* env = std::getenv("ETPA_DATA_DIR"); env && *env) return env;
  return ETPA_DEFAULT_DATA_DIR;
}

}  // namespace etpa
