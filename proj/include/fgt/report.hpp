#pragma once

#include <string>

#include "fgt/estimators.hpp"
#include "fgt/kernel.hpp"
#include "fgt/simulation.hpp"

namespace fgt {

// Full simulation report. The deterministic body comes first; wall-clock
// metadata sits under the trailing "timing" key so consumers can strip it
// before byte comparisons. include_timing=false omits it entirely.
std::string to_json(const SimulationReport& report, bool include_timing = true);

std::string to_json(const HypothesisReport& report);

// Parse a SimulationConfig from a JSON config file body (fields mirror
// SimulationConfig one-to-one).
SimulationConfig simulation_config_from_json(const std::string& json_text);

} // namespace fgt
