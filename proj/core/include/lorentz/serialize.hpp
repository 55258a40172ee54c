#pragma once

#include <string>

#include "lorentz/dynamics.hpp"
#include "lorentz/environment.hpp"
#include "lorentz/estimate.hpp"

namespace lorentz {

/// Flat JSON object {model, p, q, seed, topology: {kind, circumference?}}.
std::string to_json_string(const EnvironmentSpec& spec);
EnvironmentSpec environment_spec_from_json(const std::string& json_text);

/// {outcome, steps, exit?, period?, column0_crossings, ..., path?}.
std::string to_json_string(const TraceResult& result, bool include_path = false);

/// Estimate row with the embedded spec and master seed.
std::string to_json_string(const Estimate& est);

std::string to_json_string(const ParityReport& report);

}  // namespace lorentz
