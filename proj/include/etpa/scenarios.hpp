#pragma once

#include "etpa/config.hpp"
#include "etpa/output.hpp"

namespace etpa {

// Scales the notch efficiency so the filtered state loses exactly
// target_absorbed pairs/s; the budget sets the absolute scale, the notch
// shape sets the spectrum. Throws ConfigError when that needs eta > 1.
NotchFilterSpec calibrate_notch_eta(const BiphotonState& state,
                                    const NotchFilterSpec& shape,
                                    double target_absorbed);

// Runs one scenario and writes its data files plus manifest. Returns the
// output directory actually used.
std::string run_scenario(const RunConfig& config);

}  // namespace etpa
