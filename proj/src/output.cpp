#include "etpa/output.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "etpa/constants.hpp"

namespace etpa {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

OutputWriter::OutputWriter(std::string out_dir) : dir_(std::move(out_dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw ConfigError("cannot create output dir " + dir_ + ": " + ec.message());
}

void OutputWriter::write_text(const std::string& rel_path, const std::string& content) {
  const std::filesystem::path path = std::filesystem::path(dir_) / rel_path;
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
  entries_.push_back({{"path", rel_path},
                      {"bytes", content.size()},
                      {"fnv1a64", fnv1a64_hex(content)}});
}

void OutputWriter::write_json(const std::string& rel_path, const nlohmann::json& j) {
  write_text(rel_path, j.dump(2) + "\n");
}

void OutputWriter::write_manifest(const nlohmann::json& metadata) {
  nlohmann::json manifest = metadata;
  manifest["files"] = entries_;
  const std::filesystem::path path = std::filesystem::path(dir_) / "manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << manifest.dump(2) << "\n";
}

std::string csv_jsi(const SpectralGrid& grid, const Eigen::ArrayXXd& jsi_bins) {
  // Matrix layout: first row is the idler detuning axis, first column the
  // signal detuning axis (rad/s); cell (a, b) is pairs/s in that bin.
  std::string out = "omega_s_detuning_rad_s\\omega_i_detuning_rad_s";
  const Eigen::ArrayXd det = grid.detunings();
  for (int b = 0; b < grid.n_points; ++b) out += "," + format_full(det(b));
  out += "\n";
  for (int a = 0; a < grid.n_points; ++a) {
    out += format_full(det(a));
    for (int b = 0; b < grid.n_points; ++b) out += "," + format_full(jsi_bins(a, b));
    out += "\n";
  }
  return out;
}

std::string csv_marginals(const SpectralGrid& grid, const Eigen::ArrayXd& signal,
                          const Eigen::ArrayXd& idler) {
  std::string out =
      "omega_detuning_rad_s,lambda_nm,marginal_signal_pairs_s,marginal_idler_pairs_s\n";
  const Eigen::ArrayXd det = grid.detunings();
  for (int i = 0; i < grid.n_points; ++i) {
    out += format_full(det(i)) + "," + format_full(lambda_nm_from_omega(grid.omega(i))) +
           "," + format_full(signal(i)) + "," + format_full(idler(i)) + "\n";
  }
  return out;
}

std::string csv_interferogram(const Interferogram& ig) {
  std::string out = "tau_fs,rate_pairs_s\n";
  for (int i = 0; i < ig.tau_s.size(); ++i)
    out += format_full(ig.tau_s(i) * 1e15) + "," + format_full(ig.rates(i)) + "\n";
  return out;
}

std::string csv_sweep(const std::vector<NotchSweepRow>& rows) {
  std::string out = "sigma_n_nm,lambda_n0_nm,v_out,transmitted_fraction\n";
  for (const auto& r : rows)
    out += format_full(r.sigma_n_nm) + "," + format_full(r.lambda_n0_nm) + "," +
           format_full(r.v_out) + "," + format_full(r.transmitted_fraction) + "\n";
  return out;
}

std::string csv_table1(const std::vector<Table1Row>& rows) {
  std::string out =
      "sample,concentration_mM,sigma_c_gm,sigma_e_cm2,r_abs_pairs_s,eta_e,detectable\n";
  for (const auto& r : rows) {
    out += r.name + "," + format_full(r.concentration_mol_per_l * 1e3) + ",";
    out += (r.sigma_c_gm ? format_full(*r.sigma_c_gm) : "") + std::string(",");
    out += (r.sigma_e_cm2 ? format_full(*r.sigma_e_cm2) : "") + std::string(",");
    if (r.computable)
      out += format_full(r.absorbed) + "," + format_full(r.eta_e) + "," +
             (r.detectable ? "true" : "false");
    else
      out += ",,";
    out += "\n";
  }
  return out;
}

std::string text_table1(const std::vector<Table1Row>& rows, double pairs_in,
                        double noise) {
  char line[256];
  std::string out;
  std::snprintf(line, sizeof(line), "R_in = %.4g pairs/s, noise floor = %.4g pairs/s\n\n",
                pairs_in, noise);
  out += line;
  std::snprintf(line, sizeof(line), "%-20s %10s %12s %12s %12s %12s %s\n", "sample",
                "C (mM)", "sigma_C(GM)", "sigma_E", "R_abs", "eta_E", "detectable");
  out += line;
  for (const auto& r : rows) {
    if (r.computable) {
      std::snprintf(line, sizeof(line), "%-20s %10.3g %12s %12.3g %12.6g %12.3g %s\n",
                    r.name.c_str(), r.concentration_mol_per_l * 1e3,
                    r.sigma_c_gm ? format_full(*r.sigma_c_gm).c_str() : "-",
                    *r.sigma_e_cm2, r.absorbed, r.eta_e, r.detectable ? "yes" : "no");
    } else {
      std::snprintf(line, sizeof(line), "%-20s %10.3g %12s %12s %12s %12s %s\n",
                    r.name.c_str(), r.concentration_mol_per_l * 1e3,
                    r.sigma_c_gm ? format_full(*r.sigma_c_gm).c_str() : "-", "-", "-", "-",
                    "n/a");
    }
    out += line;
  }
  return out;
}

nlohmann::json json_grid(const SpectralGrid& grid) {
  return {{"n_points", grid.n_points},
          {"center_omega_rad_s", grid.center_omega},
          {"half_span_rad_s", grid.half_span},
          {"step_rad_s", grid.step()}};
}

nlohmann::json json_state_summary(const BiphotonState& state) {
  const double step = state.grid.step();
  return {{"grid", json_grid(state.grid)},
          {"pair_rate_pairs_s", state.pair_rate},
          {"norm2", state.amplitude.abs2().sum() * step * step},
          {"jsi_total_pairs_s", jsi(state).sum()}};
}

nlohmann::json json_photon_budget(const PhotonBudget& b) {
  return {{"pulse_energy_j", b.pulse_energy_j},
          {"photon_energy_j", b.photon_energy_j},
          {"peak_power_w", b.peak_power_w},
          {"peak_photon_rate_s", b.peak_photon_rate},
          {"peak_pair_rate_s", b.peak_pair_rate},
          {"pairs_per_pulse", b.pairs_per_pulse},
          {"pairs_per_second", b.pairs_per_second},
          {"peak_flux_cm2_s", b.peak_flux_cm2s}};
}

nlohmann::json json_detection_budget(const DetectionBudget& d) {
  return {{"pairs_in", d.pairs_in},
          {"eta_e", d.eta_e},
          {"absorbed_pairs_s", d.absorbed},
          {"noise_floor_pairs_s", d.noise},
          {"eta_min", d.eta_min},
          {"sigma_e_min_cm2", d.sigma_e_min},
          {"detectable", d.detectable}};
}

}  // namespace etpa
