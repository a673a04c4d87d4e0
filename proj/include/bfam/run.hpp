#pragma once

#include "bfam/config.hpp"

namespace bfam {

// Dispatches cfg.scenario, writes series.csv / summary.json (plus frames.csv,
// traces.csv, friedrichs.csv where applicable) under cfg.out_dir.
// Returns the process exit code: 0 success, 2 blow-up detected, 1 failure.
int run_scenario(const RunConfig& cfg);

}  // namespace bfam
