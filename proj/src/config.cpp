#include "etpa/config.hpp"

#include <algorithm>
#include <sstream>

#include "etpa/constants.hpp"
#include "etpa/output.hpp"

namespace etpa {

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::Fig1: return "fig1";
    case Scenario::Fig2: return "fig2";
    case Scenario::Fig3: return "fig3";
    case Scenario::Fig4: return "fig4";
    case Scenario::Fig5: return "fig5";
    case Scenario::Fig7: return "fig7";
    case Scenario::Table1: return "table1";
    case Scenario::Custom: return "custom";
  }
  return "custom";
}

Scenario scenario_from_name(const std::string& name) {
  for (Scenario s : {Scenario::Fig1, Scenario::Fig2, Scenario::Fig3, Scenario::Fig4,
                     Scenario::Fig5, Scenario::Fig7, Scenario::Table1, Scenario::Custom})
    if (scenario_name(s) == name) return s;
  throw ConfigError("run.scenario: unknown scenario '" + name + "'");
}

namespace {

std::optional<std::string> lookup(const IniFile& file, const std::string& section,
                                  const std::string& key) {
  const IniSection* s = file.find(section);
  if (!s) return std::nullopt;
  return s->get(key);
}

double number(const IniFile& f, const std::string& sec, const std::string& key,
              double fallback) {
  auto v = lookup(f, sec, key);
  return v ? parse_double(*v, sec + "." + key) : fallback;
}

// "auto" (or absence) maps to nullopt.
std::optional<double> number_or_auto(const IniFile& f, const std::string& sec,
                                     const std::string& key) {
  auto v = lookup(f, sec, key);
  if (!v || *v == "auto") return std::nullopt;
  return parse_double(*v, sec + "." + key);
}

IniFile apply_overrides(IniFile file, const std::vector<std::string>& overrides) {
  for (const std::string& ov : overrides) {
    const auto eq = ov.find('=');
    const auto dot = ov.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
      throw ConfigError("override '" + ov + "' is not section.key=value");
    const std::string section = ov.substr(0, dot);
    const std::string key = ov.substr(dot + 1, eq - dot - 1);
    const std::string value = ov.substr(eq + 1);
    IniSection* s = file.find(section);
    if (!s) {
      file.sections.push_back({section, {}, 0});
      s = &file.sections.back();
    }
    bool found = false;
    for (auto& [k, v] : s->items)
      if (k == key) { v = value; found = true; break; }
    if (!found) s->items.emplace_back(key, value);
  }
  return file;
}

void require_positive(double v, const std::string& field) {
  if (!(v > 0.0)) throw ConfigError(field + " must be > 0");
}

}  // namespace

RunConfig load_run_config(const IniFile& raw,
                          const std::vector<std::string>& overrides,
                          const std::string& data_dir) {
  const IniFile file = apply_overrides(raw, overrides);
  RunConfig cfg;
  cfg.data_dir = resolve_data_dir(data_dir);

  if (auto v = lookup(file, "run", "scenario")) cfg.scenario = scenario_from_name(*v);
  if (auto v = lookup(file, "run", "output_dir")) cfg.output_dir = *v;
  if (auto v = lookup(file, "run", "seed"))
    cfg.seed = static_cast<std::uint64_t>(parse_int(*v, "run.seed"));
  if (auto v = lookup(file, "run", "threads")) cfg.threads = parse_int(*v, "run.threads");
  if (cfg.threads < 1) throw ConfigError("run.threads must be >= 1");

  cfg.pump.lambda_p0_nm = number(file, "pump", "lambda_p0_nm", 405.0);
  cfg.pump.sigma_p_nm = number(file, "pump", "sigma_p_nm", 5.0);
  require_positive(cfg.pump.lambda_p0_nm, "pump.lambda_p0_nm");
  require_positive(cfg.pump.sigma_p_nm, "pump.sigma_p_nm");

  if (auto v = lookup(file, "crystal", "process")) {
    if (*v == "type0") cfg.process = Process::Type0;
    else if (*v == "type2") cfg.process = Process::TypeII;
    else throw ConfigError("crystal.process must be type0 or type2");
  }
  cfg.crystal_length_m = number(file, "crystal", "length_mm", 10.0) * 1e-3;
  require_positive(cfg.crystal_length_m, "crystal.length_mm");
  if (auto p = number_or_auto(file, "crystal", "poling_period_um")) {
    require_positive(*p, "crystal.poling_period_um");
    cfg.poling_period_m = *p * 1e-6;
  }
  if (auto v = lookup(file, "crystal", "pump_axis")) cfg.pump_axis = *v;
  if (auto v = lookup(file, "crystal", "signal_axis")) cfg.signal_axis = *v;
  if (auto v = lookup(file, "crystal", "idler_axis")) cfg.idler_axis = *v;

  cfg.grid_n_points = static_cast<int>(number(file, "grid", "n_points", 512));
  if (cfg.grid_n_points < 16) throw ConfigError("grid.n_points must be >= 16");
  cfg.grid_half_span = number_or_auto(file, "grid", "half_span_rad_s");
  if (cfg.grid_half_span) require_positive(*cfg.grid_half_span, "grid.half_span_rad_s");

  cfg.source.avg_power_w = number(file, "source", "avg_power_mw", 30.0) * 1e-3;
  cfg.source.rep_rate_hz = number(file, "source", "rep_rate_mhz", 80.0) * 1e6;
  cfg.source.pulse_duration_s = number(file, "source", "pulse_duration_fs", 110.0) * 1e-15;
  cfg.source.pump_wavelength_nm =
      number(file, "source", "pump_wavelength_nm", cfg.pump.lambda_p0_nm);
  cfg.source.spdc_efficiency = number(file, "source", "spdc_efficiency", 1.3e-9);
  cfg.source.beam_waist_radius_cm = number(file, "source", "beam_waist_um", 15.0) * 1e-4;
  validate_source(cfg.source);

  cfg.detector.beta1 = number(file, "detector", "beta1", 0.21);
  cfg.detector.beta2 = number(file, "detector", "beta2", 0.21);
  cfg.detector.dark1 = number(file, "detector", "dark1", 200.0);
  cfg.detector.dark2 = number(file, "detector", "dark2", 200.0);
  cfg.detector.accidental = number(file, "detector", "accidental", 10.0);
  cfg.detector.fano = number(file, "detector", "fano", 0.5);
  validate_detector(cfg.detector);

  if (file.find("notch")) {
    NotchFilterSpec notch;
    notch.eta = number(file, "notch", "eta", 0.9);
    notch.lambda_n0_nm = number(file, "notch", "lambda_n0_nm", 810.0);
    notch.sigma_n_nm = number(file, "notch", "sigma_n_nm", 1.0);
    if (auto v = lookup(file, "notch", "mode")) {
      if (*v == "intensity") notch.mode = NotchMode::Intensity;
      else if (*v == "amplitude") notch.mode = NotchMode::Amplitude;
      else throw ConfigError("notch.mode must be intensity or amplitude");
    }
    validate_notch(notch);
    cfg.notch = notch;
  }

  if (auto v = lookup(file, "sample", "name")) cfg.sample_name = *v;

  if (file.find("bandpass")) {
    BandpassSpec bp;
    bp.center_nm = number(file, "bandpass", "center_nm", 810.0);
    bp.full_width_nm = number(file, "bandpass", "full_width_nm", 90.0);
    require_positive(bp.center_nm, "bandpass.center_nm");
    require_positive(bp.full_width_nm, "bandpass.full_width_nm");
    cfg.bandpass = bp;
  }

  if (file.find("noise")) {
    NoiseParams np;
    np.n_frames = static_cast<int>(number(file, "noise", "n_frames", 100));
    if (np.n_frames < 1) throw ConfigError("noise.n_frames must be >= 1");
    np.integration_time_s = number(file, "noise", "integration_time_s", 1.0);
    require_positive(np.integration_time_s, "noise.integration_time_s");
    np.per_bin_sigma = number_or_auto(file, "noise", "per_bin_sigma");
    if (np.per_bin_sigma && *np.per_bin_sigma < 0.0)
      throw ConfigError("noise.per_bin_sigma must be >= 0");
    np.seed = static_cast<std::uint64_t>(number(file, "noise", "seed", 1.0));
    if (auto v = lookup(file, "noise", "background")) {
      if (*v != "auto") {
        std::istringstream in(*v);
        std::string tok;
        while (in >> tok) {
          const auto colon = tok.find(':');
          if (colon == std::string::npos)
            throw ConfigError("noise.background ranges use lo:hi");
          np.background_region.emplace_back(
              parse_int(tok.substr(0, colon), "noise.background"),
              parse_int(tok.substr(colon + 1), "noise.background"));
        }
      }
    }
    cfg.noise = np;
  }

  if (file.find("sweep")) {
    SweepParams sw;
    if (auto v = lookup(file, "sweep", "sigma_n_values_nm"))
      sw.sigma_n_values_nm = parse_double_list(*v, "sweep.sigma_n_values_nm");
    if (auto v = lookup(file, "sweep", "lambda_n0_values_nm"))
      sw.lambda_n0_values_nm = parse_double_list(*v, "sweep.lambda_n0_values_nm");
    if (sw.sigma_n_values_nm.empty() || sw.lambda_n0_values_nm.empty())
      throw ConfigError("sweep needs sigma_n_values_nm and lambda_n0_values_nm");
    cfg.sweep = sw;
  }

  if (auto v = lookup(file, "table", "effective_concentration_mm")) {
    if (*v == "per_row") cfg.table_effective_concentration_mol_per_l = std::nullopt;
    else cfg.table_effective_concentration_mol_per_l =
             parse_double(*v, "table.effective_concentration_mm") * 1e-3;
  }

  // Scenario-required sections
  auto need = [&](const char* section) {
    if (!file.find(section))
      throw ConfigError(std::string("scenario ") + scenario_name(cfg.scenario) +
                        " requires a [" + section + "] section");
  };
  switch (cfg.scenario) {
    case Scenario::Fig3:
    case Scenario::Fig4:
      need("notch");
      break;
    case Scenario::Fig5:
      need("notch");
      need("sweep");
      break;
    case Scenario::Fig7:
      need("sample");
      need("noise");
      break;
    default:
      break;
  }
  if (cfg.scenario == Scenario::Custom && !file.find("crystal"))
    throw ConfigError("scenario custom requires a [crystal] section");

  return cfg;
}

CrystalSpec build_crystal(const RunConfig& config) {
  const auto models = load_sellmeier(config.data_dir + "/ktp_sellmeier.txt");
  CrystalSpec crystal = make_ppktp(config.process, models, config.crystal_length_m);
  if (config.pump_axis) crystal.pump_axis = *config.pump_axis;
  if (config.signal_axis) crystal.signal_axis = *config.signal_axis;
  if (config.idler_axis) crystal.idler_axis = *config.idler_axis;
  if (config.poling_period_m) {
    crystal.poling_period_m = *config.poling_period_m;
  } else {
    crystal.poling_period_m = 10e-6;  // placeholder so validation passes
    crystal.poling_period_m =
        solve_poling_period(crystal, omega_from_lambda_nm(config.pump.lambda_p0_nm));
  }
  validate_crystal(crystal);
  return crystal;
}

std::string echo_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[run]\n";
  out << "scenario = " << scenario_name(c.scenario) << "\n";
  out << "output_dir = " << c.output_dir << "\n";
  out << "seed = " << c.seed << "\n";
  out << "threads = " << c.threads << "\n";
  out << "data_dir = " << c.data_dir << "\n";
  out << "[pump]\n";
  out << "lambda_p0_nm = " << format_full(c.pump.lambda_p0_nm) << "\n";
  out << "sigma_p_nm = " << format_full(c.pump.sigma_p_nm) << "\n";
  out << "[crystal]\n";
  out << "process = " << (c.process == Process::Type0 ? "type0" : "type2") << "\n";
  out << "length_mm = " << format_full(c.crystal_length_m * 1e3) << "\n";
  out << "poling_period_um = "
      << (c.poling_period_m ? format_full(*c.poling_period_m * 1e6) : "auto") << "\n";
  out << "[grid]\n";
  out << "n_points = " << c.grid_n_points << "\n";
  out << "half_span_rad_s = "
      << (c.grid_half_span ? format_full(*c.grid_half_span) : "auto") << "\n";
  out << "[source]\n";
  out << "avg_power_mw = " << format_full(c.source.avg_power_w * 1e3) << "\n";
  out << "rep_rate_mhz = " << format_full(c.source.rep_rate_hz * 1e-6) << "\n";
  out << "pulse_duration_fs = " << format_full(c.source.pulse_duration_s * 1e15) << "\n";
  out << "pump_wavelength_nm = " << format_full(c.source.pump_wavelength_nm) << "\n";
  out << "spdc_efficiency = " << format_full(c.source.spdc_efficiency) << "\n";
  out << "beam_waist_um = " << format_full(c.source.beam_waist_radius_cm * 1e4) << "\n";
  out << "[detector]\n";
  out << "beta1 = " << format_full(c.detector.beta1) << "\n";
  out << "beta2 = " << format_full(c.detector.beta2) << "\n";
  out << "dark1 = " << format_full(c.detector.dark1) << "\n";
  out << "dark2 = " << format_full(c.detector.dark2) << "\n";
  out << "accidental = " << format_full(c.detector.accidental) << "\n";
  out << "fano = " << format_full(c.detector.fano) << "\n";
  if (c.notch) {
    out << "[notch]\n";
    out << "eta = " << format_full(c.notch->eta) << "\n";
    out << "lambda_n0_nm = " << format_full(c.notch->lambda_n0_nm) << "\n";
    out << "sigma_n_nm = " << format_full(c.notch->sigma_n_nm) << "\n";
    out << "mode = " << (c.notch->mode == NotchMode::Intensity ? "intensity" : "amplitude")
        << "\n";
  }
  if (c.sample_name) {
    out << "[sample]\n";
    out << "name = " << *c.sample_name << "\n";
  }
  if (c.bandpass) {
    out << "[bandpass]\n";
    out << "center_nm = " << format_full(c.bandpass->center_nm) << "\n";
    out << "full_width_nm = " << format_full(c.bandpass->full_width_nm) << "\n";
  }
  if (c.noise) {
    out << "[noise]\n";
    out << "n_frames = " << c.noise->n_frames << "\n";
    out << "integration_time_s = " << format_full(c.noise->integration_time_s) << "\n";
    out << "per_bin_sigma = "
        << (c.noise->per_bin_sigma ? format_full(*c.noise->per_bin_sigma) : "auto") << "\n";
    out << "seed = " << c.noise->seed << "\n";
  }
  if (c.sweep) {
    out << "[sweep]\n";
    out << "sigma_n_values_nm =";
    for (double v : c.sweep->sigma_n_values_nm) out << " " << format_full(v);
    out << "\nlambda_n0_values_nm =";
    for (double v : c.sweep->lambda_n0_values_nm) out << " " << format_full(v);
    out << "\n";
  }
  out << "[table]\n";
  out << "effective_concentration_mm = "
      << (c.table_effective_concentration_mol_per_l
              ? format_full(*c.table_effective_concentration_mol_per_l * 1e3)
              : std::string("per_row"))
      << "\n";
  return out.str();
}

}  // namespace etpa
