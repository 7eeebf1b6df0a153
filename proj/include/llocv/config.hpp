#pragma once

#include <istream>
#include <string>

#include "llocv/params.hpp"

namespace llocv {

struct Config {
    SystemParams params;
    AttackScenario scenario;
};

/// Loads a flat JSON config holding SystemParams and AttackScenario fields.
/// Unknown keys are rejected. Missing keys are filled from the "paper2017"
/// preset only when the document sets "preset": "paper2017"; otherwise every
/// field must be present.
Config load_config(std::istream& in);
Config load_config_file(const std::string& path);

} // namespace llocv
