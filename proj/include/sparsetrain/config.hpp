// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "sparsetrain/montecarlo.hpp"

namespace sparsetrain {

// Experiment description plus the knobs used only by the theory/compare
// subcommands. The JSON layout is documented in the README.
struct CliConfig {
    ExperimentConfig experiment;
    double rip_c_harmonic = 1.0;
    double rip_c_gaussian = 4.0;
    double measurement_constant = 1.0;
    double compare_snr_rel = 1.0;
};

// Throws std::invalid_argument naming the offending field on any malformed
// or missing value; throws IoError when the file cannot be read.
CliConfig load_cli_config(const std::string& path);
CliConfig parse_cli_config(const std::string& json_text);

}  // namespace sparsetrain
