#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "firesim/swarm_model.hpp"

// Stochastic cellular-automata fire spread on a square lattice, with a
// drone-sustained water line as the suppression mechanism. The update is
// synchronous; a burning cell burns for exactly one step.

namespace firesim {

enum class CellState : std::uint8_t {
  Empty = 0,    // nothing to burn; absorbing
  Fuel = 1,     // live fuel
  Burning = 2,  // burns this step only
  Burned = 3,   // absorbing
  Water = 4,    // continuous water flow from the drones; absorbing
};

enum class VegType : std::uint8_t { Grass = 0, Shrub = 1, Barren = 2 };
enum class VegDensity : std::uint8_t { Sparse = 0, Normal = 1, Dense = 2 };
enum class FrontOrientation { Straight, Diagonal };

struct GridPos {
  int row = 0;
  int col = 0;
  friend bool operator==(const GridPos&, const GridPos&) = default;
};

// Lattice geometry, per-cell fields and the spread-probability constants.
// Per-cell vectors are row-major rows*cols; an empty vector means uniform
// (all grass / all normal / per-type moisture defaults / flat terrain).
struct GridScenario {
  int rows = 0;
  int cols = 0;
  double cell_m = 2.0;  // l, cell side

  std::vector<VegType> veg;
  std::vector<VegDensity> density;
  std::vector<double> moisture;   // fraction of dry weight
  std::vector<double> elevation;  // m

  double grass_moisture = 0.18;  // fraction, used when `moisture` is empty
  double shrub_moisture = 0.24;

  double wind_kmh = 0.0;
  double wind_dir_rad = 0.0;  // blowing-toward azimuth: 0 = north, pi/2 = east

  double p0 = 0.6;
  double c1 = 0.045;
  double c2 = 0.131;
  double p_veg_grass = 0.4;
  double p_veg_shrub = 0.4;
  double p_den_sparse = -0.4;
  double p_den_normal = 0.0;
  double p_den_dense = 0.3;
  double moisture_coeff = 0.111;   // c_m
  double moisture_scale = 100.0;   // fraction -> percent inside p_moisture
  bool wind_prob_in_kmh = false;   // feed the wind factor km/h instead of m/s
  std::optional<double> slope_coeff;  // a_s; required when terrain is not flat

  std::vector<GridPos> ignition;
  std::uint64_t seed = 0;
  int max_steps = 1000;
  std::optional<double> minutes_per_step;

  int cell_count() const { return rows * cols; }
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * cols + col;
  }
  bool contains(int row, int col) const {
    return row >= 0 && row < rows && col >= 0 && col < cols;
  }
  bool flat_terrain() const;

  VegType veg_at(std::size_t i) const { return veg.empty() ? VegType::Grass : veg[i]; }
  VegDensity density_at(std::size_t i) const {
    return density.empty() ? VegDensity::Normal : density[i];
  }
  double moisture_at(std::size_t i) const;
  double elevation_at(std::size_t i) const { return elevation.empty() ? 0.0 : elevation[i]; }

  // Step duration: explicit value, else cell_m divided by the Fernandes rate
  // of spread (m/min) at this wind and the grass moisture. Throws when the
  // default is degenerate (zero wind) and no explicit value is set.
  double resolved_minutes_per_step() const;

  void validate() const;
};

struct CellCounts {
  int empty = 0;
  int fuel = 0;
  int burning = 0;
  int burned = 0;
  int water = 0;
};

struct SimState {
  int step = 0;
  double clock_min = 0.0;
  int rows = 0;
  int cols = 0;
  std::vector<CellState> cells;
  CellCounts counts;

  CellState at(int row, int col) const {
    return cells[static_cast<std::size_t>(row) * cols + col];
  }
};

struct TimeSeriesRecord {
  int step = 0;
  double clock_min = 0.0;
  int burning_cells = 0;
  int burned_cells = 0;
  int water_cells = 0;
  double burned_area_m2 = 0.0;
};

// Water-line sizing and placement. chosen_cells stays empty until the line
// is resolved against a live front; once resolved it is never re-targeted.
struct InterventionPlan {
  PlatformConfig platform;
  int platforms = 1;
  double cf_linear = 0.0;  // CF used for sizing, L/min/m
  int cells_to_hold = 0;   // n_c
  std::vector<GridPos> chosen_cells;
  bool applied = false;
};

// Spread-probability factors (each > 0; the composite is clamped to [0, 1]).
double p_wind(double theta_rad, double wind_speed, double c1, double c2);
double p_slope(double target_elev_m, double source_elev_m, double dist_m, double slope_coeff);
double p_moisture(double moisture_fraction, double moisture_coeff, double scale = 100.0);

// Composite ignition probability from a burning source to a fuel target.
double p_burn(const GridScenario& scenario, GridPos source, GridPos target);

// Wind-dependent Moore neighborhood: radius 1 below 25 km/h, 2 below 35,
// 3 from 35 up.
int neighborhood_radius(double wind_kmh);
std::vector<GridPos> neighborhood_offsets(double wind_kmh);

// Precomputed per-scenario spread terms so stepping stays cheap on big grids.
class SpreadModel {
 public:
  explicit SpreadModel(const GridScenario& scenario);

  const GridScenario& scenario() const { return *scenario_; }
  double ignition_probability(std::size_t source, std::size_t target, int offset_index) const;
  int radius() const { return radius_; }
  const std::vector<GridPos>& offsets() const { return offsets_; }

 private:
  const GridScenario* scenario_;
  std::vector<GridPos> offsets_;
  std::vector<double> offset_wind_factor_;
  std::vector<double> offset_dist_m_;
  std::vector<double> target_factor_;  // p0 * (1+p_veg) * (1+p_den) * p_m
  bool flat_ = true;
  int radius_ = 1;
};

SimState initial_state(const GridScenario& scenario);

// One synchronous update. Each (source, target) pair uses one deterministic
// draw keyed on (seed, source, target); a pair is live for at most one step,
// and keeping the key step-free couples paired runs so that removing
// ignition sources can only shrink the burned set.
void step(SimState& sim, const SpreadModel& model, std::uint64_t seed);
void step(SimState& sim, const GridScenario& scenario, std::uint64_t seed);

// Cells a front of front_m meters occupies at cell size cell_m.
int compute_nc(double front_m, double cell_m, FrontOrientation orientation);

// Burning cells with at least one fuel cell among their 8 neighbors.
std::vector<GridPos> fire_front(const SimState& sim);

// Resolve (once) and apply the water line: greedily grows an 8-connected
// chain of front cells from the one closest to the platform, extending onto
// adjacent fuel when the front is shorter than the budget. Returns false
// when no front exists and nothing was resolved.
bool apply_intervention(SimState& sim, const GridScenario& scenario, InterventionPlan& plan);

struct RunResult {
  std::vector<TimeSeriesRecord> series;  // step 0 included
  SimState final_state;
  std::optional<InterventionPlan> plan;  // resolved plan, when one was given
  bool extinct = false;                  // no burning cells before max_steps
};

RunResult run(const GridScenario& scenario, const InterventionPlan* plan = nullptr,
              std::optional<std::uint64_t> seed = {}, std::optional<int> max_steps = {});

struct PairedRunResult {
  RunResult baseline;
  RunResult treated;
};

// Baseline and treated runs on identical randomness: they differ only
// through the causal effect of the water line.
PairedRunResult paired_run(const GridScenario& scenario, const InterventionPlan& plan,
                           std::optional<std::uint64_t> seed = {});

}  // namespace firesim
