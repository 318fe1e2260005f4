// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Every tolerance is pinned here, in code.

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "etpa/constants.hpp"
#include "etpa/datafiles.hpp"
#include "etpa/hom.hpp"
#include "etpa/noisesim.hpp"
#include "etpa/scenarios.hpp"

using namespace etpa;

namespace {

int g_failures = 0;

void check(const std::string& label, bool ok, const std::string& detail) {
  std::printf("[%s] %s  (%s)\n", ok ? "PASS" : "FAIL", label.c_str(), detail.c_str());
  if (!ok) ++g_failures;
}

bool within(double value, double target, double tol) {
  return std::abs(value - target) <= tol;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const std::string data_dir = ETPA_DEFAULT_DATA_DIR;

std::map<std::string, IndexModel> ktp() {
  return load_sellmeier(data_dir + "/ktp_sellmeier.txt");
}

CrystalSpec crystal_for(Process process) {
  CrystalSpec c = make_ppktp(process, ktp());
  c.poling_period_m = solve_poling_period(c, omega_from_lambda_nm(405.0));
  return c;
}

BiphotonState state_for(Process process, double sigma_nm, int n = 512) {
  const PumpSpec pump{405.0, sigma_nm};
  return build_jsa(pump, crystal_for(process), default_grid(pump, n), 7.99e7);
}

NotchFilterSpec narrow_notch() { return {810.0, 1.0, 0.9, NotchMode::Intensity}; }

BiphotonState gaussian_state(double sigma_sum, double sigma_diff, int n) {
  SpectralGrid grid;
  grid.n_points = n;
  grid.center_omega = 0.5 * omega_from_lambda_nm(405.0);
  grid.half_span = 8e13;
  BiphotonState state;
  state.grid = grid;
  state.amplitude.resize(n, n);
  const Eigen::ArrayXd om = grid.detunings();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double s = om(a) + om(b);
      const double d = om(a) - om(b);
      state.amplitude(a, b) = std::exp(-s * s / (4 * sigma_sum * sigma_sum) -
                                       d * d / (4 * sigma_diff * sigma_diff));
    }
  const double step = grid.step();
  state.amplitude /= std::sqrt(state.amplitude.abs2().sum() * step * step);
  return state;
}

// ---- fig7-style noise pipeline, shared by criterion 9 ----------------------

struct NoiseScene {
  BiphotonState in, out;
  double pairs_in;
  double sigma_bin;
};

NoiseScene noise_scene(double sigma_e_cm2) {
  const SourceBudget source{0.030, 80e6, 110e-15, 405.0, 1.3e-9, 15e-4};
  const double pairs_in = photon_budget(source).pairs_per_second;

  const PumpSpec pump{405.0, 5.0};
  SpectralGrid grid = default_grid(pump, 512);
  grid.half_span = 2.0 * sigma_omega_from_nm(45.0, 810.0);  // out-of-band margin
  BiphotonState in = build_jsa(pump, crystal_for(Process::TypeII), grid, pairs_in);
  in = apply_bandpass(in, 810.0, 90.0);

  SampleSpec sample;
  sample.name = "Rh6G";
  sample.concentration_mol_per_l = 0.058;
  sample.path_length_cm = 1.0;
  sample.sigma_e_cm2 = sigma_e_cm2;
  const double target_absorbed = etpa_efficiency(sample) * pairs_in;

  const NotchFilterSpec notch =
      calibrate_notch_eta(in, {816.0, 20.0, 1.0, NotchMode::Intensity}, target_absorbed);
  const BiphotonState out = apply_notch(in, notch);

  const Eigen::ArrayXd rate_in = marginals(in).signal;
  const double floor = rate_in.maxCoeff() * 1e-9;
  int n_signal = 0;
  for (int i = 0; i < rate_in.size(); ++i)
    if (rate_in(i) >= floor) ++n_signal;
  const double sigma = calibrate_noise(pairs_in, 0.5, n_signal, 1.0);
  return {in, out, pairs_in, sigma};
}

double mean_snr(const NoiseScene& scene, int n_frames, int n_seeds, double* peak_over_bg) {
  NoiseRunConfig cfg;
  cfg.n_frames = n_frames;
  cfg.per_bin_noise_sigma = scene.sigma_bin;
  double sum = 0.0;
  for (int seed = 1; seed <= n_seeds; ++seed) {
    cfg.rng_seed = static_cast<std::uint64_t>(seed);
    sum += simulate_frames(scene.in, scene.out, cfg).snr;
  }
  const double mean = sum / n_seeds;
  if (peak_over_bg) *peak_over_bg = mean;
  return mean;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main() {
  std::printf("ETPA toolkit acceptance suite\n\n");

  // --- 1. visibility ladder -------------------------------------------------
  {
    const double v0 = visibility(state_for(Process::Type0, 0.1));
    check("1a type-0 CW visibility = 100% +- 0.5 pt", within(v0, 1.0, 0.005),
          "V = " + num(100 * v0) + "%");
    const double v2cw = visibility(state_for(Process::TypeII, 0.1));
    check("1b type-II CW visibility = 94% +- 2 pt", within(v2cw, 0.94, 0.02),
          "V = " + num(100 * v2cw) + "%");
    const double v2p = visibility(state_for(Process::TypeII, 5.0));
    check("1c type-II pulsed visibility = 8% +- 2 pt", within(v2p, 0.08, 0.02),
          "V = " + num(100 * v2p) + "%");
  }

  // --- 2. notch effect on visibility ---------------------------------------
  {
    const BiphotonState s2p = state_for(Process::TypeII, 5.0);
    const double v_out = visibility(apply_notch(s2p, narrow_notch()));
    check("2a type-II pulsed + notch: V = 1% +- 1.5 pt", within(v_out, 0.01, 0.015),
          "V_out = " + num(100 * v_out) + "%");

    const BiphotonState s0cw = state_for(Process::Type0, 0.1);
    const double dv_cw =
        std::abs(visibility(apply_notch(s0cw, narrow_notch())) - visibility(s0cw));
    check("2b type-0 CW + notch: |dV| < 0.1 pt", dv_cw < 0.001,
          "|dV| = " + num(100 * dv_cw) + " pt");

    const BiphotonState s0p = state_for(Process::Type0, 5.0);
    const double dv_p =
        std::abs(visibility(apply_notch(s0p, narrow_notch())) - visibility(s0p));
    check("2c type-0 pulsed + notch: |dV| < 0.1 pt", dv_p < 0.001,
          "|dV| = " + num(100 * dv_p) + " pt");
  }

  // --- 3. transmission ratios ----------------------------------------------
  {
    const BiphotonState s0cw = state_for(Process::Type0, 0.1);
    const double t_cw = jsi(apply_notch(s0cw, narrow_notch())).sum() / jsi(s0cw).sum();
    check("3a type-0 CW + notch: transmitted/input = 0.10 +- 0.01",
          within(t_cw, 0.10, 0.01), "T = " + num(t_cw));

    const BiphotonState s0p = state_for(Process::Type0, 5.0);
    const double t_p = jsi(apply_notch(s0p, narrow_notch())).sum() / jsi(s0p).sum();
    check("3b type-0 pulsed + notch: transmitted/input = 0.68 +- 0.05",
          within(t_p, 0.68, 0.05), "T = " + num(t_p));
  }

  // --- 4. sweep optimum ------------------------------------------------------
  {
    const BiphotonState s2p = state_for(Process::TypeII, 5.0);
    const double v_in = visibility(s2p);
    std::vector<double> sigmas;
    for (int s = 1; s <= 30; ++s) sigmas.push_back(s);
    const auto rows = sweep_notch(s2p, narrow_notch(), sigmas, {810.0});
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (rows[i].v_out < rows[best].v_out) best = i;
    check("4a sweep: argmin V_out at sigma_N = 5 +- 1 nm",
          within(rows[best].sigma_n_nm, 5.0, 1.0),
          "argmin = " + num(rows[best].sigma_n_nm) + " nm, V_out = " +
              num(100 * rows[best].v_out) + "%");
    bool wide_ok = true;
    double worst = 0.0;
    for (const auto& r : rows)
      if (r.sigma_n_nm >= 10.0) {
        const double dv = std::abs(r.v_out - v_in);
        worst = std::max(worst, dv);
        if (dv >= 0.01) wide_ok = false;
      }
    check("4b sweep: sigma_N >= 10 nm leaves V within 1 pt", wide_ok,
          "max |V_out - V_in| = " + num(100 * worst) + " pt");
  }

  // --- 5. tilt and poling period ---------------------------------------------
  {
    const double tilt = tilt_angle(state_for(Process::TypeII, 5.0));
    check("5a type-II pulsed JSI tilt = 11 deg +- 2 deg", within(tilt, 11.0, 2.0),
          "tilt = " + num(tilt) + " deg");
    CrystalSpec t2 = make_ppktp(Process::TypeII, ktp());
    const double period = solve_poling_period(t2, omega_from_lambda_nm(405.0));
    check("5b type-II poling period = 10 um +- 15%", within(period, 10e-6, 1.5e-6),
          "Lambda = " + num(period * 1e6) + " um");
  }

  // --- 6. photon budget chain -------------------------------------------------
  {
    const PhotonBudget b = photon_budget({0.030, 80e6, 110e-15, 405.0, 1.3e-9, 15e-4});
    check("6a pulse energy = 3.75e-10 J +- 1%",
          within(b.pulse_energy_j, 3.75e-10, 3.75e-12), num(b.pulse_energy_j) + " J");
    check("6b peak photon rate = 6.95e21 /s +- 1%",
          within(b.peak_photon_rate, 6.95e21, 6.95e19), num(b.peak_photon_rate) + " /s");
    check("6c peak pair rate = 9.08e12 /s +- 1%",
          within(b.peak_pair_rate, 9.08e12, 9.08e10), num(b.peak_pair_rate) + " /s");
    check("6d pairs per pulse = 0.999 +- 1%", within(b.pairs_per_pulse, 0.999, 0.00999),
          num(b.pairs_per_pulse));
    check("6e pair rate = 7.99e7 /s +- 1%",
          within(b.pairs_per_second, 7.99e7, 7.99e5), num(b.pairs_per_second) + " /s");
  }

  // --- 7. detection algebra ----------------------------------------------------
  {
    SampleSpec rh6g;
    rh6g.name = "Rh6G";
    rh6g.concentration_mol_per_l = 0.058;
    rh6g.path_length_cm = 1.0;
    rh6g.sigma_e_cm2 = 1.2e-25;

    const double noise = noise_floor(7.99e7, 0.5);
    check("7a noise floor = 6322 pairs/s +- 1%", within(noise, 6322.0, 63.22),
          num(noise) + " pairs/s");
    const DetectionLimits lim = detection_limits(7.99e7, 0.5, rh6g);
    check("7b eta_min = 7.91e-5 +- 1%", within(lim.eta_min, 7.91e-5, 7.91e-7),
          num(lim.eta_min));
    check("7c sigma_E_min = 2.27e-24 cm^2 +- 1%",
          within(lim.sigma_e_min, 2.27e-24, 2.27e-26), num(lim.sigma_e_min) + " cm^2");
    const DetectionBudget parz = is_detectable(rh6g, 7.99e7, 0.5);
    check("7d Rh6G Parzuchowski bound not detectable", !parz.detectable,
          "R_abs = " + num(parz.absorbed) + " < " + num(parz.noise));
    rh6g.sigma_e_cm2 = 8e-24;
    const DetectionBudget he = is_detectable(rh6g, 7.99e7, 0.5);
    check("7e Rh6G He bound detectable", he.detectable,
          "R_abs = " + num(he.absorbed) + " > " + num(he.noise));
  }

  // --- 8. table regeneration ----------------------------------------------------
  {
    struct Ref { const char* name; double sigma_e, eta_ref, rabs_ref; };
    const Ref refs[] = {
        {"Rh6G-He", 8e-24, 2.78e-4, 2.2e4},
        {"ICG-He", 6e-23, 2.1e-3, 1.66e5},
        {"Rh6G-Parzuchowski", 1.2e-25, 4.17e-6, 333.81},
        {"AF455", 2.1e-25, 7.30e-6, 584.17},
        {"Qdot", 4.8e-23, 1.70e-3, 1.33e5},
        {"Fluorescein", 1.0e-25, 3.48e-6, 278.17},
        {"9R-S", 2.0e-24, 6.96e-5, 5.56e3},
        {"C153", 1.6e-25, 5.56e-6, 445.08},
    };
    std::vector<SampleSpec> samples;
    for (const Ref& r : refs) {
      SampleSpec s;
      s.name = r.name;
      s.concentration_mol_per_l = 1e-3;
      s.sigma_e_cm2 = r.sigma_e;
      samples.push_back(s);
    }
    const auto rows = table1(samples, 7.99e7, 0.5);
    bool all_ok = true;
    std::string worst;
    double worst_err = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double e1 = std::abs(rows[i].eta_e - refs[i].eta_ref) / refs[i].eta_ref;
      const double e2 = std::abs(rows[i].absorbed - refs[i].rabs_ref) / refs[i].rabs_ref;
      const double e = std::max(e1, e2);
      if (e > worst_err) {
        worst_err = e;
        worst = refs[i].name;
      }
      if (e > 0.02) all_ok = false;
    }
    check("8 table rows: eta_E and R_abs within 2% (58 mM convention)", all_ok,
          "worst " + worst + " at " + num(100 * worst_err) + "%");
  }

  // --- 9. noise simulation -------------------------------------------------------
  {
    const NoiseScene he = noise_scene(8e-24);
    const double snr_he = mean_snr(he, 100, 50, nullptr);
    check("9a He-bound ensemble-mean SNR = 3.52 +- 10% (50 seeds)",
          within(snr_he, 3.52, 0.352), "mean SNR = " + num(snr_he));

    const NoiseScene parz = noise_scene(1.2e-25);
    const double peak_ratio = mean_snr(parz, 100, 50, nullptr);
    check("9b Parzuchowski-bound absorbed peak < 2x background sigma",
          std::abs(peak_ratio) < 2.0, "mean peak/sigma_bg = " + num(peak_ratio));

    const double m25 = mean_snr(he, 25, 50, nullptr);
    const double m400 = mean_snr(he, 400, 50, nullptr);
    const double slope = std::log(m400 / m25) / std::log(16.0);
    check("9c SNR ~ sqrt(M): fitted exponent = 0.5 +- 0.05", within(slope, 0.5, 0.05),
          "exponent = " + num(slope) + " (SNR " + num(m25) + " -> " + num(m400) + ")");
  }

  // --- 10. oracle equivalence -------------------------------------------------------
  {
    const PumpSpec pump{405.0, 5.0};
    const BiphotonState small =
        build_jsa(pump, crystal_for(Process::TypeII), default_grid(pump, 32), 7.99e7);
    double worst = 0.0;
    for (double tau : {0.0, 3.7e-14, -2.2e-13, 1e-12}) {
      const int n = small.grid.n_points;
      const double step = small.grid.step();
      double acc = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const std::complex<double> phase =
              std::polar(1.0, (small.grid.omega(a) - small.grid.omega(b)) * tau);
          acc += std::norm(small.amplitude(a, b) * phase - small.amplitude(b, a));
        }
      const double brute = 0.25 * acc * step * step * small.pair_rate;
      const double fast = coincidence_rate(small, tau);
      worst = std::max(worst, std::abs(fast - brute) / brute);
    }
    check("10a HOM quadrature vs brute-force double sum (32x32) to 1e-12",
          worst < 1e-12, "max rel diff = " + num(worst));

    double worst_id = 0.0;
    for (double sigma : {0.1, 5.0}) {
      const BiphotonState s = state_for(Process::TypeII, sigma, 256);
      const double a = exchange_asymmetry(s);
      worst_id = std::max(worst_id,
                          std::abs(visibility(s) - (1.0 - a) / (1.0 + a)));
    }
    check("10b V = (1-A)/(1+A) cross-module identity to 1e-6", worst_id < 1e-6,
          "max |diff| = " + num(worst_id));

    const double sigma_diff = 2e13;
    const BiphotonState g = gaussian_state(1e13, sigma_diff, 128);
    const double fwhm = dip_fwhm(interferogram(g, 1e-12, 401));
    const double expected = 2.0 * std::sqrt(2.0 * std::log(2.0)) / sigma_diff;
    check("10c Gaussian dip FWHM vs closed form within 2%",
          std::abs(fwhm - expected) / expected < 0.02,
          "fwhm = " + num(fwhm) + " s vs " + num(expected) + " s");
  }

  // --- 11. property suites ---------------------------------------------------------
  {
    bool norm_ok = true;
    for (Process p : {Process::Type0, Process::TypeII})
      for (double sigma : {0.1, 5.0}) {
        const BiphotonState s = state_for(p, sigma, 256);
        if (std::abs(jsi(s).sum() - s.pair_rate) > 1e-6 * s.pair_rate) norm_ok = false;
      }
    check("11a normalization: jsi bin sum = pair_rate to 1e-6", norm_ok, "4 states");

    const BiphotonState s2p = state_for(Process::TypeII, 5.0, 256);
    const BiphotonState out = apply_notch(s2p, narrow_notch());
    const Eigen::ArrayXXd j_in = jsi(s2p), j_out = jsi(out);
    check("11b pointwise transmitted <= input",
          (j_out <= j_in + 1e-12 * j_in.maxCoeff()).all(), "type-II pulsed + notch");
    const double book =
        std::abs(j_out.sum() + absorbed_jsi(s2p, out).sum() - j_in.sum()) / j_in.sum();
    check("11c transmitted + absorbed = input to 1e-9", book < 1e-9,
          "rel error = " + num(book));

    BiphotonState lossy = s2p;
    lossy.amplitude *= 0.37;
    const bool v_same =
        std::abs(visibility(lossy) - visibility(s2p)) < 1e-9;
    const BiphotonState gd = gaussian_state(2.4e13, 1.1e13, 128);
    BiphotonState gd_lossy = gd;
    gd_lossy.amplitude *= 0.37;
    const bool f_same = std::abs(dip_fwhm(interferogram(gd, 1e-12, 401)) -
                                 dip_fwhm(interferogram(gd_lossy, 1e-12, 401))) < 1e-18;
    check("11d linear loss leaves V and dip FWHM unchanged", v_same && f_same,
          "amplitude x 0.37");

    std::mt19937 rng(99u);
    std::uniform_real_distribution<double> log_sigma(-26.0, -22.0);
    std::uniform_real_distribution<double> conc(1e-4, 0.2);
    std::uniform_real_distribution<double> rate(1e5, 1e9);
    std::uniform_real_distribution<double> fano(0.1, 1.0);
    bool triangle_ok = true;
    for (int i = 0; i < 1000; ++i) {
      SampleSpec s;
      s.name = "rand";
      s.concentration_mol_per_l = conc(rng);
      s.sigma_e_cm2 = std::pow(10.0, log_sigma(rng));
      const DetectionBudget d = is_detectable(s, rate(rng), fano(rng));
      if (d.detectable != (d.absorbed > d.noise) || d.detectable != (d.eta_e > d.eta_min) ||
          d.detectable != (*s.sigma_e_cm2 > d.sigma_e_min))
        triangle_ok = false;
    }
    check("11e detectability consistency triangle over randomized inputs", triangle_ok,
          "1000 samples");

    // byte-identical rerun of the full fig7 pipeline under a fixed seed
    const auto tmp = std::filesystem::temp_directory_path();
    IniFile fig7 = parse_ini_file(data_dir + "/../configs/fig7.ini");
    RunConfig cfg_a = load_run_config(
        fig7, {"run.output_dir=" + (tmp / "etpa_acc_a").string()}, data_dir);
    RunConfig cfg_b = load_run_config(
        fig7, {"run.output_dir=" + (tmp / "etpa_acc_b").string()}, data_dir);
    run_scenario(cfg_a);
    run_scenario(cfg_b);
    const bool bytes_equal =
        slurp(tmp / "etpa_acc_a" / "accumulated_marginals.csv") ==
            slurp(tmp / "etpa_acc_b" / "accumulated_marginals.csv") &&
        slurp(tmp / "etpa_acc_a" / "snr.json") == slurp(tmp / "etpa_acc_b" / "snr.json") &&
        !slurp(tmp / "etpa_acc_a" / "snr.json").empty();
    check("11f byte-identical rerun under fixed seed", bytes_equal,
          "fig7 scenario twice");
    std::filesystem::remove_all(tmp / "etpa_acc_a");
    std::filesystem::remove_all(tmp / "etpa_acc_b");
  }

  std::printf("\n%d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
