#pragma once

#include <optional>
#include <string>
#include <vector>

#include "etpa/biphoton.hpp"

namespace etpa {

struct SourceBudget {
  double avg_power_w = 0.030;
  double rep_rate_hz = 80e6;
  double pulse_duration_s = 110e-15;
  double pump_wavelength_nm = 405.0;
  double spdc_efficiency = 1.3e-9;
  double beam_waist_radius_cm = 15e-4;  // 15 um
};

void validate_source(const SourceBudget& source);

// The pulsed-pump photon budget chain, from average power down to the pair
// rate entering the sample and the peak pair flux through the beam area.
struct PhotonBudget {
  double pulse_energy_j;
  double photon_energy_j;
  double peak_power_w;
  double peak_photon_rate;    // photons/s at pulse peak
  double peak_pair_rate;      // pairs/s at pulse peak
  double pairs_per_pulse;
  double pairs_per_second;    // R_in
  double peak_flux_cm2s;      // peak_pair_rate / (pi w^2)
};

PhotonBudget photon_budget(const SourceBudget& source);

// Convenience overload wiring the budget chain into the state constructor.
BiphotonState build_jsa(const PumpSpec& pump, const CrystalSpec& crystal,
                        const SpectralGrid& grid, const SourceBudget& source);

struct SampleSpec {
  std::string name;
  double concentration_mol_per_l = 0.0;  // C
  double path_length_cm = 1.0;           // l
  std::optional<double> sigma_e_cm2;     // ETPA cross-section per molecule
  std::optional<double> sigma_c_gm;      // classical TPA cross-section, metadata
};

void validate_sample(const SampleSpec& sample);

// eta_E = sigma_E * C * N_A * l, concentration converted to mol/cm^3.
double etpa_efficiency(const SampleSpec& sample);

struct AbsorbedRate {
  double absorbed;     // R_abs = eta_E * R_in
  double transmitted;  // R_out = R_in - R_abs
};
AbsorbedRate absorbed_rate(double eta_e, double pairs_in);

// delta R_det = sqrt(F * R_in); F = 1 Poissonian, F = 1/2 sub-Poissonian pairs.
double noise_floor(double pairs_in, double fano);

struct DetectionLimits {
  double eta_min;       // delta R_det / R_in
  double sigma_e_min;   // eta_min / (C N_A l)
};
DetectionLimits detection_limits(double pairs_in, double fano, const SampleSpec& sample);

struct DetectionBudget {
  double pairs_in;
  double eta_e;
  double absorbed;      // pairs/s
  double noise;         // delta R_det, pairs/s
  double eta_min;
  double sigma_e_min;
  bool detectable;      // absorbed > noise (strict)
};
DetectionBudget is_detectable(const SampleSpec& sample, double pairs_in, double fano);

struct DetectorModel {
  double beta1 = 0.21, beta2 = 0.21;   // total throughput per arm
  double dark1 = 200.0, dark2 = 200.0; // counts/s
  double accidental = 10.0;            // coincidences/s
  double fano = 0.5;
};

void validate_detector(const DetectorModel& detector);

// Klyshko-style inversion of raw singles/coincidences:
//   R_in = R1^ * R2^ / R12^,  beta1^ = R12^/R2^,  beta2^ = R12^/R1^
// with Rv^ = Rv - darkv (R12^ = R12 - accidentals). Throws
// NegativeCorrectedError when a corrected rate is nonpositive.
struct CorrectedRates {
  double pairs_in;
  double beta1, beta2;
};
CorrectedRates corrected_pair_rate(double r1, double r2, double r12,
                                   const DetectorModel& detector);

// Photons per pulse / per second for a classical pulse; pure unit conversion.
struct PhotonChain {
  double photons_per_pulse;
  double photons_per_second;
};
PhotonChain classical_photon_chain(double pulse_energy_j, double wavelength_nm,
                                   double rep_rate_hz);

struct Table1Row {
  std::string name;
  double concentration_mol_per_l;
  std::optional<double> sigma_c_gm;
  std::optional<double> sigma_e_cm2;
  double eta_e = 0.0;
  double absorbed = 0.0;
  bool detectable = false;
  bool computable = false;  // false when sigma_E is missing
};

// One row per sample. When effective_concentration_mol_per_l is set (the
// default 58 mM reproduces the published table), every eta_E uses it and the
// per-row concentration stays metadata; pass nullopt for the strict per-row
// mode.
std::vector<Table1Row> table1(
    const std::vector<SampleSpec>& samples, double pairs_in, double fano,
    std::optional<double> effective_concentration_mol_per_l = 0.058);

}  // namespace etpa
