#pragma once

#include <optional>
#include <string>
#include <vector>

#include "firesim/ca_engine.hpp"
#include "firesim/scenario_io.hpp"

// Bundled reference scenarios and one-command reproduction of the study
// figures as CSV bundles. Everything here is deterministic: fixed seeds,
// fixed parameter grids, no timestamps.

namespace firesim {

// Desk-scale CA reference scenario: 100x100 grid of 2 m cells (~4 ha),
// wind 20 km/h blowing south, mixed grass/shrub fields, one platform of
// 120 drones x 20 L arriving 15 min after ignition, 31-cell water line.
ScenarioFile reference_ca_scenario();

// The back-solved CF consistent with the reported 70-75 m band at
// 400 L/min (used when curves are pinned rather than computed).
double pinned_reference_cf();

// CF per linear meter from the formula chain on the rate-of-spread path.
double computed_cf_linear(const ScenarioFile& scenario);

// Water-line plan: CF and n_c from the scenario's attack section when
// pinned there, otherwise computed; n_c scales with the platform count.
InterventionPlan plan_from_scenario(const ScenarioFile& scenario, int platform_count = 1);

// Monte Carlo helpers. Series are padded with their last record so that
// replicates of different lengths align.
std::vector<double> padded_mean_burned_area(const std::vector<RunResult>& runs);
double mean_of(const std::vector<double>& values);
double stderr_of(const std::vector<double>& values);

// Emit the CSV bundle for one figure ("fig2".."fig5") under out_dir.
// Returns the list of files written (relative to out_dir).
std::vector<std::string> reproduce_figure(const std::string& figure, const std::string& out_dir,
                                          int replicates = 30);

}  // namespace firesim
