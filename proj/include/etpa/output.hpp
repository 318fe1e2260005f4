#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "etpa/absorption.hpp"
#include "etpa/biphoton.hpp"
#include "etpa/budget.hpp"
#include "etpa/hom.hpp"

namespace etpa {

// Round-trip-precision formatting used for every CSV number.
std::string format_full(double v);

std::string fnv1a64_hex(const std::string& bytes);

// Collects every file written under one output directory and records it in
// manifest.json with a content hash; nothing leaves the run unmanifested.
class OutputWriter {
 public:
  explicit OutputWriter(std::string out_dir);

  void write_text(const std::string& rel_path, const std::string& content);
  void write_json(const std::string& rel_path, const nlohmann::json& j);
  // manifest.json with the file list plus run metadata (config echo, seed).
  void write_manifest(const nlohmann::json& metadata);

  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
  nlohmann::json entries_ = nlohmann::json::array();
};

// CSV/JSON builders for the emitted artifacts. Axis columns carry both rad/s
// detuning and nm wavelength.
std::string csv_jsi(const SpectralGrid& grid, const Eigen::ArrayXXd& jsi_bins);
std::string csv_marginals(const SpectralGrid& grid, const Eigen::ArrayXd& signal,
                          const Eigen::ArrayXd& idler);
std::string csv_interferogram(const Interferogram& ig);
std::string csv_sweep(const std::vector<NotchSweepRow>& rows);
std::string csv_table1(const std::vector<Table1Row>& rows);
std::string text_table1(const std::vector<Table1Row>& rows, double pairs_in,
                        double noise);

nlohmann::json json_grid(const SpectralGrid& grid);
nlohmann::json json_state_summary(const BiphotonState& state);
nlohmann::json json_photon_budget(const PhotonBudget& budget);
nlohmann::json json_detection_budget(const DetectionBudget& budget);

}  // namespace etpa
