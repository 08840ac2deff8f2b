#pragma once

#include "dzl/arith.hpp"
#include "dzl/config.hpp"
#include "dzl/report.hpp"

namespace dzl {

/// Runs one experiment. Module errors are captured per row; the run always completes.
Report run_experiment(const ExperimentConfig& cfg);

/// Builds f on [1, N] from a spec (twist applied when δ or c is set).
MultiplicativeFunction build_function(const FunctionSpec& spec, std::size_t N);

const char* library_version();

}  // namespace dzl
