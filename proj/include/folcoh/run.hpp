#pragma once

#include "folcoh/formality.hpp"

namespace folcoh {

enum class OutputFormat { Text, Structured };

// One invocation of the workbench: a manifest plus the requested analyses.
// Analyses always execute in the canonical order of analysis_names(),
// whatever order they were requested in.
struct RunConfig {
    std::string manifest_text;
    std::map<std::string, Scalar> param_overrides;
    std::vector<std::string> analyses;  // empty means all
    std::string twist_spec = "1";       // rational multiple of kappa_b, or a one-form
    OutputFormat format = OutputFormat::Text;
    int degree_filter = -1;             // restrict rendered cohomology degrees
};

// exit_code 0: analyses ran, results reported (a negative verdict is a result)
// exit_code 1: a mathematical check failed; the witness is in the output
// exit_code 2: unusable input (manifest, parameters, twist, analysis names)
struct RunResult {
    int exit_code = 0;
    std::string output;
};

RunResult run_analyses(const RunConfig& config);

// Accepted analysis names in execution order.
const std::vector<std::string>& analysis_names();

} // namespace folcoh
