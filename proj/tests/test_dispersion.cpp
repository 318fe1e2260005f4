#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "etpa/constants.hpp"
#include "etpa/datafiles.hpp"
#include "etpa/dispersion.hpp"

using namespace etpa;

namespace {

std::map<std::string, IndexModel> ktp() {
  return load_sellmeier(std::string(ETPA_DEFAULT_DATA_DIR) + "/ktp_sellmeier.txt");
}

}  // namespace

TEST_CASE("refractive index matches hand-evaluated Sellmeier values") {
  const auto models = ktp();
  // Frozen by evaluating n^2 = A + B/(1-(C/lam)^2) - D lam^2 by hand for the
  // shipped coefficient sets.
  CHECK(refractive_index(810.0, models.at("z")) == doctest::Approx(1.8432247).epsilon(1e-6));
  CHECK(refractive_index(810.0, models.at("y")) == doctest::Approx(1.7579341).epsilon(1e-6));
  CHECK(refractive_index(405.0, models.at("z")) == doctest::Approx(1.9597545).epsilon(1e-6));
  CHECK(refractive_index(405.0, models.at("y")) == doctest::Approx(1.8402998).epsilon(1e-6));
  // blue side of the degenerate pair is denser
  CHECK(refractive_index(405.0, models.at("z")) > refractive_index(810.0, models.at("z")));
}

TEST_CASE("evaluation outside the validity window is an error, not a number") {
  const auto models = ktp();
  CHECK_THROWS_AS(refractive_index(20.0, models.at("z")), OutOfRangeError);
  CHECK_THROWS_AS(refractive_index(2000.0, models.at("y")), OutOfRangeError);
}

TEST_CASE("normal dispersion: n strictly decreasing over 400-1100 nm") {
  const auto models = ktp();
  for (const auto& [axis, model] : models) {
    double prev = refractive_index(400.0, model);
    for (double lam = 405.0; lam <= 1100.0; lam += 5.0) {
      const double n = refractive_index(lam, model);
      CHECK(n < prev);
      prev = n;
    }
  }
}

TEST_CASE("group index matches a central finite difference") {
  const auto models = ktp();
  for (double lam : {500.0, 810.0, 1000.0}) {
    const auto& m = models.at("z");
    const double d = 0.01;
    const double fd = (refractive_index(lam + d, m) - refractive_index(lam - d, m)) / (2 * d);
    const double ng_fd = refractive_index(lam, m) - lam * fd;
    CHECK(group_index(lam, m) == doctest::Approx(ng_fd).epsilon(1e-6));
  }
}

TEST_CASE("sinc: series branch, zeros, range") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(1e-9) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sinc(constants::pi) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(sinc(4.4934)) < 0.2173);  // global minimum magnitude bound
  // continuity across the series/ratio switch
  CHECK(sinc(1e-6 * 0.999) == doctest::Approx(sinc(1e-6 * 1.001)).epsilon(1e-12));
}

TEST_CASE("solve_poling_period: type-II lands near 10 um and is a fixed point") {
  const auto models = ktp();
  CrystalSpec crystal = make_ppktp(Process::TypeII, models);
  const double omega_p0 = omega_from_lambda_nm(405.0);
  const double period = solve_poling_period(crystal, omega_p0);
  CHECK(period == doctest::Approx(10.196e-6).epsilon(1e-3));
  CHECK(std::abs(period - 10e-6) < 0.15 * 10e-6);

  crystal.poling_period_m = period;
  const double w0 = 0.5 * omega_p0;
  CHECK(std::abs(phase_mismatch(w0, w0, crystal)) < 1e-3);
  // degenerate point sits inside the main phase-matched lobe
  const double pm = phase_matching_function(w0, w0, crystal);
  CHECK(pm * pm > 0.5);
}

TEST_CASE("solve_poling_period: type-0 gets its own, different period") {
  const auto models = ktp();
  CrystalSpec t0 = make_ppktp(Process::Type0, models);
  CrystalSpec t2 = make_ppktp(Process::TypeII, models);
  const double omega_p0 = omega_from_lambda_nm(405.0);
  const double p0 = solve_poling_period(t0, omega_p0);
  const double p2 = solve_poling_period(t2, omega_p0);
  CHECK(p0 > 0.0);
  CHECK(p0 == doctest::Approx(3.4755e-6).epsilon(1e-3));
  CHECK(std::abs(p0 - p2) > 1e-6);
}

TEST_CASE("solve_poling_period: no sign change reports NoRoot") {
  const auto models = ktp();
  // y-pump against a z-pair: n_y(405) < n_z(810), so dk is negative for every
  // period and the bracket has no sign change.
  CrystalSpec bad = make_ppktp(Process::Type0, models);
  bad.pump_axis = "y";
  CHECK_THROWS_AS(solve_poling_period(bad, omega_from_lambda_nm(405.0)), NoRootError);
}

TEST_CASE("phase mismatch symmetry under signal-idler exchange") {
  const auto models = ktp();
  const double omega_p0 = omega_from_lambda_nm(405.0);
  const double w0 = 0.5 * omega_p0;
  const double off = 0.02 * w0;

  CrystalSpec t0 = make_ppktp(Process::Type0, models);
  t0.poling_period_m = solve_poling_period(t0, omega_p0);
  CHECK(phase_mismatch(w0 + off, w0 - off, t0) ==
        doctest::Approx(phase_mismatch(w0 - off, w0 + off, t0)).epsilon(1e-14));

  CrystalSpec t2 = make_ppktp(Process::TypeII, models);
  t2.poling_period_m = solve_poling_period(t2, omega_p0);
  CHECK(std::abs(phase_mismatch(w0 + off, w0 - off, t2) -
                 phase_mismatch(w0 - off, w0 + off, t2)) > 1.0);
}

TEST_CASE("phase mismatch slope matches the analytic group-velocity difference") {
  const auto models = ktp();
  const double omega_p0 = omega_from_lambda_nm(405.0);
  const double w0 = 0.5 * omega_p0;
  CrystalSpec t2 = make_ppktp(Process::TypeII, models);
  t2.poling_period_m = solve_poling_period(t2, omega_p0);

  // d(dk)/d(omega_s) at fixed omega_i = (ng_pump(405) - ng_signal(810)) / c
  const double h = 1e9;
  const double slope =
      (phase_mismatch(w0 + h, w0, t2) - phase_mismatch(w0 - h, w0, t2)) / (2 * h);
  const double analytic = (group_index(405.0, t2.model(t2.pump_axis)) -
                           group_index(810.0, t2.model(t2.signal_axis))) /
                          constants::light_speed;
  CHECK(slope == doctest::Approx(analytic).epsilon(0.01));
}

TEST_CASE("crystal validation rejects inconsistent axis assignments") {
  const auto models = ktp();
  CrystalSpec t0 = make_ppktp(Process::Type0, models);
  t0.poling_period_m = 3.5e-6;
  t0.signal_axis = "y";
  CHECK_THROWS_AS(validate_crystal(t0), ConfigError);

  CrystalSpec t2 = make_ppktp(Process::TypeII, models);
  t2.poling_period_m = 10e-6;
  t2.idler_axis = t2.signal_axis;
  CHECK_THROWS_AS(validate_crystal(t2), ConfigError);
}
