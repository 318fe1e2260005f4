#include "etpa/budget.hpp"

#include <cmath>

#include "etpa/constants.hpp"

namespace etpa {

void validate_source(const SourceBudget& s) {
  if (!(s.avg_power_w > 0.0)) throw ConfigError("source.avg_power must be > 0");
  if (!(s.rep_rate_hz > 0.0)) throw ConfigError("source.rep_rate must be > 0");
  if (!(s.pulse_duration_s > 0.0)) throw ConfigError("source.pulse_duration must be > 0");
  if (!(s.pump_wavelength_nm > 0.0)) throw ConfigError("source.pump_wavelength must be > 0");
  if (!(s.spdc_efficiency > 0.0 && s.spdc_efficiency <= 1.0))
    throw ConfigError("source.spdc_efficiency must lie in (0, 1]");
  if (!(s.beam_waist_radius_cm > 0.0)) throw ConfigError("source.beam_waist must be > 0");
}

PhotonBudget photon_budget(const SourceBudget& s) {
  validate_source(s);
  PhotonBudget b;
  b.pulse_energy_j = s.avg_power_w / s.rep_rate_hz;
  b.photon_energy_j = photon_energy_j(s.pump_wavelength_nm);
  b.peak_power_w = b.pulse_energy_j / s.pulse_duration_s;
  b.peak_photon_rate = b.peak_power_w / b.photon_energy_j;
  b.peak_pair_rate = b.peak_photon_rate * s.spdc_efficiency;
  b.pairs_per_pulse = b.peak_pair_rate * s.pulse_duration_s;
  b.pairs_per_second = b.pairs_per_pulse * s.rep_rate_hz;
  const double area_cm2 = constants::pi * s.beam_waist_radius_cm * s.beam_waist_radius_cm;
  b.peak_flux_cm2s = b.peak_pair_rate / area_cm2;
  return b;
}

BiphotonState build_jsa(const PumpSpec& pump, const CrystalSpec& crystal,
                        const SpectralGrid& grid, const SourceBudget& source) {
  return build_jsa(pump, crystal, grid, photon_budget(source).pairs_per_second);
}

void validate_sample(const SampleSpec& sample) {
  if (sample.concentration_mol_per_l < 0.0)
    throw ConfigError("sample.concentration must be >= 0");
  if (!(sample.path_length_cm > 0.0))
    throw ConfigError("sample.path_length must be > 0");
  if (sample.sigma_e_cm2 && *sample.sigma_e_cm2 < 0.0)
    throw ConfigError("sample.sigma_e must be >= 0");
}

double etpa_efficiency(const SampleSpec& sample) {
  validate_sample(sample);
  if (!sample.sigma_e_cm2)
    throw EmptyInputError("sample '" + sample.name + "' has no sigma_E");
  const double c_per_cm3 = sample.concentration_mol_per_l / 1000.0;
  return *sample.sigma_e_cm2 * c_per_cm3 * constants::avogadro * sample.path_length_cm;
}

AbsorbedRate absorbed_rate(double eta_e, double pairs_in) {
  if (!(eta_e >= 0.0 && eta_e <= 1.0)) throw ConfigError("eta_E must lie in [0, 1]");
  const double absorbed = eta_e * pairs_in;
  return {absorbed, pairs_in - absorbed};
}

double noise_floor(double pairs_in, double fano) {
  if (pairs_in < 0.0) throw ConfigError("pairs_in must be >= 0");
  if (!(fano > 0.0 && fano <= 1.0)) throw ConfigError("fano must lie in (0, 1]");
  return std::sqrt(fano * pairs_in);
}

DetectionLimits detection_limits(double pairs_in, double fano, const SampleSpec& sample) {
  if (!(pairs_in > 0.0)) throw ConfigError("pairs_in must be > 0");
  validate_sample(sample);
  const double eta_min = noise_floor(pairs_in, fano) / pairs_in;
  const double cnl = sample.concentration_mol_per_l / 1000.0 * constants::avogadro *
                     sample.path_length_cm;
  return {eta_min, eta_min / cnl};
}

DetectionBudget is_detectable(const SampleSpec& sample, double pairs_in, double fano) {
  DetectionBudget d;
  d.pairs_in = pairs_in;
  d.eta_e = etpa_efficiency(sample);
  d.absorbed = absorbed_rate(d.eta_e, pairs_in).absorbed;
  d.noise = noise_floor(pairs_in, fano);
  const DetectionLimits lim = detection_limits(pairs_in, fano, sample);
  d.eta_min = lim.eta_min;
  d.sigma_e_min = lim.sigma_e_min;
  d.detectable = d.absorbed > d.noise;
  return d;
}

void validate_detector(const DetectorModel& det) {
  if (!(det.beta1 > 0.0 && det.beta1 <= 1.0 && det.beta2 > 0.0 && det.beta2 <= 1.0))
    throw ConfigError("detector.beta must lie in (0, 1]");
  if (det.dark1 < 0.0 || det.dark2 < 0.0 || det.accidental < 0.0)
    throw ConfigError("detector dark/accidental rates must be >= 0");
  if (!(det.fano > 0.0 && det.fano <= 1.0))
    throw ConfigError("detector.fano must lie in (0, 1]");
}

CorrectedRates corrected_pair_rate(double r1, double r2, double r12,
                                   const DetectorModel& det) {
  validate_detector(det);
  const double c1 = r1 - det.dark1;
  const double c2 = r2 - det.dark2;
  const double c12 = r12 - det.accidental;
  if (!(c1 > 0.0 && c2 > 0.0 && c12 > 0.0))
    throw NegativeCorrectedError("corrected rate nonpositive after dark-count subtraction");
  return {c1 * c2 / c12, c12 / c2, c12 / c1};
}

PhotonChain classical_photon_chain(double pulse_energy_j, double wavelength_nm,
                                   double rep_rate_hz) {
  if (!(pulse_energy_j > 0.0 && wavelength_nm > 0.0 && rep_rate_hz > 0.0))
    throw ConfigError("classical_photon_chain needs positive inputs");
  const double per_pulse = pulse_energy_j / photon_energy_j(wavelength_nm);
  return {per_pulse, per_pulse * rep_rate_hz};
}

std::vector<Table1Row> table1(const std::vector<SampleSpec>& samples, double pairs_in,
                              double fano,
                              std::optional<double> effective_concentration_mol_per_l) {
  if (samples.empty()) throw ConfigError("table1 needs a nonempty sample list");
  std::vector<Table1Row> rows;
  rows.reserve(samples.size());
  for (const SampleSpec& s : samples) {
    Table1Row row;
    row.name = s.name;
    row.concentration_mol_per_l = s.concentration_mol_per_l;
    row.sigma_c_gm = s.sigma_c_gm;
    row.sigma_e_cm2 = s.sigma_e_cm2;
    if (s.sigma_e_cm2) {
      SampleSpec eff = s;
      if (effective_concentration_mol_per_l)
        eff.concentration_mol_per_l = *effective_concentration_mol_per_l;
      const DetectionBudget d = is_detectable(eff, pairs_in, fano);
      row.eta_e = d.eta_e;
      row.absorbed = d.absorbed;
      row.detectable = d.detectable;
      row.computable = true;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace etpa
