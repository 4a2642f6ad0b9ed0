#pragma once

#include <stdexcept>
#include <string>

#include "bandlab/montecarlo.hpp"

namespace bandlab {

// Configuration problems (missing file, schema violation, range error).
// The CLI maps these to exit code 2, everything else to 3.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutputOptions {
    std::string directory = ".";
    bool dump_samples = false;
    bool dump_spectra = false;
};

struct FullConfig {
    ExperimentConfig experiment;
    OutputOptions output;
    // whether the config file pinned worker_count (otherwise the CLI falls
    // back to BANDLAB_WORKERS or the hardware count)
    bool worker_count_set = false;
};

// Strict JSON config: unknown keys are errors (with a nearest-key
// suggestion), all numeric fields range-checked.
FullConfig parse_config_text(const std::string& text);
FullConfig parse_config_file(const std::string& path);

// Test-function spec strings used by the CLI: "constant:c",
// "poly:c0,c1,...", "gaussian_bump:center,width", "smooth_bump:center,radius".
TestFunctionSpec parse_test_function_string(const std::string& text);

}  // namespace bandlab
