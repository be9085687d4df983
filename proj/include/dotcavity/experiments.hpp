#pragma once

// Dispatch from a parsed configuration to the physics modules, producing a
// table and the matching plot description. Presets are stored as config
// text and go through the same parser as user files.

#include <string>
#include <vector>

#include "dotcavity/config.hpp"
#include "dotcavity/maser.hpp"
#include "dotcavity/raman.hpp"
#include "dotcavity/svg_plot.hpp"
#include "dotcavity/sweep.hpp"
#include "dotcavity/table.hpp"

namespace dotcavity {

struct RunResult {
  ResultTable table;
  PlotSpec plot;
};

// Builds every module configuration the run needs and validates it;
// physically invalid parameters surface as ConfigError.
void check_experiment(const ExperimentConfig& cfg);

// check_experiment, then the computation. Metadata carries the tool version
// and the canonical config echo (no timestamp, so results are
// reproducible byte for byte). Numerical failures throw SolverError.
RunResult run_experiment(const ExperimentConfig& cfg, Execution exec = Execution::parallel);

// One configuration per sweep point (the input itself when not sweeping).
std::vector<ExperimentConfig> expand_sweep(const ExperimentConfig& cfg);

// Module configurations for a single (expanded) point.
MaserConfig maser_config(const ExperimentConfig& cfg);
RamanConfig raman_config(const ExperimentConfig& cfg);

std::vector<std::string> preset_names();
// Throws ConfigError for an unknown name.
const std::string& preset_text(const std::string& name);
ExperimentConfig preset_config(const std::string& name);

}  // namespace dotcavity
