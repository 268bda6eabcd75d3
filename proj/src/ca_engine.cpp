#include "firesim/ca_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "firesim/fire_physics.hpp"
#include "firesim/rng.hpp"

namespace firesim {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Compass bearing of a lattice offset: 0 = north (-row), pi/2 = east (+col).
double offset_bearing(int drow, int dcol) {
  return std::atan2(static_cast<double>(dcol), static_cast<double>(-drow));
}

double clamp01(double p) { return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p); }

}  // namespace

bool GridScenario::flat_terrain() const {
  if (elevation.empty()) return true;
  const double first = elevation.front();
  return std::all_of(elevation.begin(), elevation.end(),
                     [first](double e) { return e == first; });
}

double GridScenario::moisture_at(std::size_t i) const {
  if (!moisture.empty()) return moisture[i];
  return veg_at(i) == VegType::Shrub ? shrub_moisture : grass_moisture;
}

double GridScenario::resolved_minutes_per_step() const {
  if (minutes_per_step) return *minutes_per_step;
  // Calibrate the clock so an unimpeded downwind front moves at the
  // Fernandes rate of spread for grass at this wind.
  const double ros_kmh = rate_of_spread(wind_kmh, grass_moisture * 100.0);
  const double m_per_min = ros_kmh * 1000.0 / 60.0;
  if (m_per_min <= 0.0) {
    throw std::invalid_argument(
        "GridScenario: minutes_per_step must be set explicitly when wind_kmh is 0");
  }
  return cell_m / m_per_min;
}

void GridScenario::validate() const {
  if (rows < 1 || cols < 1) throw std::invalid_argument("GridScenario: grid must be non-empty");
  if (cell_m <= 0) throw std::invalid_argument("GridScenario: cell_m must be positive");
  const auto n = static_cast<std::size_t>(rows) * cols;
  if (!veg.empty() && veg.size() != n)
    throw std::invalid_argument("GridScenario: veg matrix size does not match grid");
  if (!density.empty() && density.size() != n)
    throw std::invalid_argument("GridScenario: density matrix size does not match grid");
  if (!moisture.empty() && moisture.size() != n)
    throw std::invalid_argument("GridScenario: moisture matrix size does not match grid");
  if (!elevation.empty() && elevation.size() != n)
    throw std::invalid_argument("GridScenario: elevation matrix size does not match grid");
  for (double m : moisture) {
    if (m < 0) throw std::invalid_argument("GridScenario: moisture values must be non-negative");
  }
  if (grass_moisture < 0 || shrub_moisture < 0) {
    throw std::invalid_argument("GridScenario: default moisture must be non-negative");
  }
  if (wind_kmh < 0) throw std::invalid_argument("GridScenario: wind_kmh must be non-negative");
  if (p0 <= 0 || p0 > 1) throw std::invalid_argument("GridScenario: p0 must be in (0, 1]");
  if (moisture_coeff < 0) throw std::invalid_argument("GridScenario: moisture_coeff must be non-negative");
  if (moisture_scale <= 0) throw std::invalid_argument("GridScenario: moisture_scale must be positive");
  if (!flat_terrain() && !slope_coeff) {
    throw std::invalid_argument(
        "GridScenario: slope_coeff is required when elevation is not flat");
  }
  if (max_steps < 0) throw std::invalid_argument("GridScenario: max_steps must be non-negative");
  if (minutes_per_step && *minutes_per_step <= 0) {
    throw std::invalid_argument("GridScenario: minutes_per_step must be positive");
  }
  for (const GridPos& cell : ignition) {
    if (!contains(cell.row, cell.col)) {
      throw std::invalid_argument("GridScenario: ignition cell outside grid");
    }
  }
}

double p_wind(double theta_rad, double wind_speed, double c1, double c2) {
  if (wind_speed < 0) throw std::invalid_argument("p_wind: wind_speed must be non-negative");
  return std::exp(c1 * wind_speed) * std::exp(wind_speed * c2 * (std::cos(theta_rad) - 1.0));
}

double p_slope(double target_elev_m, double source_elev_m, double dist_m, double slope_coeff) {
  if (dist_m <= 0) throw std::invalid_argument("p_slope: dist_m must be positive");
  const double theta_s = std::atan((target_elev_m - source_elev_m) / dist_m);
  return std::exp(slope_coeff * theta_s);
}

double p_moisture(double moisture_fraction, double moisture_coeff, double scale) {
  if (moisture_fraction < 0) {
    throw std::invalid_argument("p_moisture: moisture_fraction must be non-negative");
  }
  return std::exp(-moisture_coeff * moisture_fraction * scale);
}

int neighborhood_radius(double wind_kmh) {
  if (wind_kmh < 0) throw std::invalid_argument("neighborhood_radius: wind_kmh must be non-negative");
  if (wind_kmh >= 35.0) return 3;
  if (wind_kmh >= 25.0) return 2;
  return 1;
}

std::vector<GridPos> neighborhood_offsets(double wind_kmh) {
  const int r = neighborhood_radius(wind_kmh);
  std::vector<GridPos> offsets;
  offsets.reserve(static_cast<std::size_t>(2 * r + 1) * (2 * r + 1) - 1);
  for (int dr = -r; dr <= r; ++dr) {
    for (int dc = -r; dc <= r; ++dc) {
      if (dr == 0 && dc == 0) continue;
      offsets.push_back({dr, dc});
    }
  }
  return offsets;
}

double p_burn(const GridScenario& scenario, GridPos source, GridPos target) {
  if (!scenario.contains(source.row, source.col) || !scenario.contains(target.row, target.col)) {
    throw std::invalid_argument("p_burn: cell outside grid");
  }
  const int drow = target.row - source.row;
  const int dcol = target.col - source.col;
  if (drow == 0 && dcol == 0) throw std::invalid_argument("p_burn: source equals target");

  const std::size_t ti = scenario.index(target.row, target.col);
  if (scenario.veg_at(ti) == VegType::Barren) return 0.0;

  double pveg = 0.0;
  switch (scenario.veg_at(ti)) {
    case VegType::Grass: pveg = scenario.p_veg_grass; break;
    case VegType::Shrub: pveg = scenario.p_veg_shrub; break;
    case VegType::Barren: break;
  }
  double pden = 0.0;
  switch (scenario.density_at(ti)) {
    case VegDensity::Sparse: pden = scenario.p_den_sparse; break;
    case VegDensity::Normal: pden = scenario.p_den_normal; break;
    case VegDensity::Dense: pden = scenario.p_den_dense; break;
  }

  const double wind_speed = scenario.wind_prob_in_kmh ? scenario.wind_kmh : scenario.wind_kmh / 3.6;
  const double theta = offset_bearing(drow, dcol) - scenario.wind_dir_rad;
  const double pw = p_wind(theta, wind_speed, scenario.c1, scenario.c2);

  double ps = 1.0;
  if (!scenario.flat_terrain()) {
    const double dist = std::hypot(static_cast<double>(drow), static_cast<double>(dcol)) *
                        scenario.cell_m;
    const std::size_t si = scenario.index(source.row, source.col);
    ps = p_slope(scenario.elevation_at(ti), scenario.elevation_at(si), dist, *scenario.slope_coeff);
  }

  const double pm =
      p_moisture(scenario.moisture_at(ti), scenario.moisture_coeff, scenario.moisture_scale);
  return clamp01(scenario.p0 * (1.0 + pveg) * (1.0 + pden) * pw * ps * pm);
}

SpreadModel::SpreadModel(const GridScenario& scenario) : scenario_(&scenario) {
  scenario.validate();
  radius_ = neighborhood_radius(scenario.wind_kmh);
  offsets_ = neighborhood_offsets(scenario.wind_kmh);
  flat_ = scenario.flat_terrain();

  const double wind_speed = scenario.wind_prob_in_kmh ? scenario.wind_kmh : scenario.wind_kmh / 3.6;
  offset_wind_factor_.reserve(offsets_.size());
  offset_dist_m_.reserve(offsets_.size());
  for (const GridPos& off : offsets_) {
    const double theta = offset_bearing(off.row, off.col) - scenario.wind_dir_rad;
    offset_wind_factor_.push_back(p_wind(theta, wind_speed, scenario.c1, scenario.c2));
    offset_dist_m_.push_back(
        std::hypot(static_cast<double>(off.row), static_cast<double>(off.col)) * scenario.cell_m);
  }

  const auto n = static_cast<std::size_t>(scenario.cell_count());
  target_factor_.resize(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double pveg = 0.0;
    switch (scenario.veg_at(i)) {
      case VegType::Grass: pveg = scenario.p_veg_grass; break;
      case VegType::Shrub: pveg = scenario.p_veg_shrub; break;
      case VegType::Barren: target_factor_[i] = 0.0; continue;
    }
    double pden = 0.0;
    switch (scenario.density_at(i)) {
      case VegDensity::Sparse: pden = scenario.p_den_sparse; break;
      case VegDensity::Normal: pden = scenario.p_den_normal; break;
      case VegDensity::Dense: pden = scenario.p_den_dense; break;
    }
    const double pm =
        p_moisture(scenario.moisture_at(i), scenario.moisture_coeff, scenario.moisture_scale);
    target_factor_[i] = scenario.p0 * (1.0 + pveg) * (1.0 + pden) * pm;
  }
}

double SpreadModel::ignition_probability(std::size_t source, std::size_t target,
                                         int offset_index) const {
  double p = target_factor_[target] * offset_wind_factor_[static_cast<std::size_t>(offset_index)];
  if (!flat_) {
    p *= p_slope(scenario_->elevation_at(target), scenario_->elevation_at(source),
                 offset_dist_m_[static_cast<std::size_t>(offset_index)],
                 *scenario_->slope_coeff);
  }
  return clamp01(p);
}

SimState initial_state(const GridScenario& scenario) {
  scenario.validate();
  SimState sim;
  sim.rows = scenario.rows;
  sim.cols = scenario.cols;
  const auto n = static_cast<std::size_t>(scenario.cell_count());
  sim.cells.assign(n, CellState::Fuel);
  for (std::size_t i = 0; i < n; ++i) {
    if (scenario.veg_at(i) == VegType::Barren) sim.cells[i] = CellState::Empty;
  }
  for (const GridPos& cell : scenario.ignition) {
    std::size_t i = scenario.index(cell.row, cell.col);
    if (sim.cells[i] == CellState::Fuel) sim.cells[i] = CellState::Burning;
  }
  for (CellState s : sim.cells) {
    switch (s) {
      case CellState::Empty: ++sim.counts.empty; break;
      case CellState::Fuel: ++sim.counts.fuel; break;
      case CellState::Burning: ++sim.counts.burning; break;
      case CellState::Burned: ++sim.counts.burned; break;
      case CellState::Water: ++sim.counts.water; break;
    }
  }
  return sim;
}

void step(SimState& sim, const SpreadModel& model, std::uint64_t seed) {
  const GridScenario& scenario = model.scenario();
  if (sim.rows != scenario.rows || sim.cols != scenario.cols) {
    throw std::invalid_argument("step: state does not match scenario dimensions");
  }
  const double minutes = scenario.resolved_minutes_per_step();
  const auto n = sim.cells.size();
  const auto& offsets = model.offsets();

  std::vector<std::uint32_t> burning;
  burning.reserve(256);
  for (std::size_t i = 0; i < n; ++i) {
    if (sim.cells[i] == CellState::Burning) burning.push_back(static_cast<std::uint32_t>(i));
  }

  std::vector<std::uint8_t> will_ignite(n, 0);
  std::vector<std::uint32_t> ignited;
  ignited.reserve(burning.size() * 2 + 8);

  for (std::uint32_t src : burning) {
    const int r0 = static_cast<int>(src) / sim.cols;
    const int c0 = static_cast<int>(src) % sim.cols;
    for (std::size_t k = 0; k < offsets.size(); ++k) {
      const int r = r0 + offsets[k].row;
      const int c = c0 + offsets[k].col;
      if (!scenario.contains(r, c)) continue;
      const std::size_t tgt = scenario.index(r, c);
      if (sim.cells[tgt] != CellState::Fuel || will_ignite[tgt]) continue;
      const double p = model.ignition_probability(src, tgt, static_cast<int>(k));
      if (p <= 0.0) continue;
      if (p >= 1.0 || hash_uniform(seed, src, tgt) < p) {
        will_ignite[tgt] = 1;
        ignited.push_back(static_cast<std::uint32_t>(tgt));
      }
    }
  }

  for (std::uint32_t src : burning) sim.cells[src] = CellState::Burned;
  for (std::uint32_t tgt : ignited) sim.cells[tgt] = CellState::Burning;

  sim.counts.burned += static_cast<int>(burning.size());
  sim.counts.burning = static_cast<int>(ignited.size());
  sim.counts.fuel -= static_cast<int>(ignited.size());

  sim.step += 1;
  sim.clock_min = sim.step * minutes;
}

void step(SimState& sim, const GridScenario& scenario, std::uint64_t seed) {
  step(sim, SpreadModel(scenario), seed);
}

int compute_nc(double front_m, double cell_m, FrontOrientation orientation) {
  if (front_m < 0) throw std::invalid_argument("compute_nc: front_m must be non-negative");
  if (cell_m <= 0) throw std::invalid_argument("compute_nc: cell_m must be positive");
  const double unit = orientation == FrontOrientation::Diagonal
                          ? std::sqrt(2.0) * cell_m
                          : cell_m;
  const double raw = front_m / unit;
  const double nearest = std::round(raw);
  if (std::abs(raw - nearest) <= 1e-9 * std::max(1.0, raw)) {
    return static_cast<int>(nearest);
  }
  return static_cast<int>(std::floor(raw));
}

std::vector<GridPos> fire_front(const SimState& sim) {
  std::vector<GridPos> front;
  for (int r = 0; r < sim.rows; ++r) {
    for (int c = 0; c < sim.cols; ++c) {
      if (sim.at(r, c) != CellState::Burning) continue;
      bool has_fuel_neighbor = false;
      for (int dr = -1; dr <= 1 && !has_fuel_neighbor; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const int nr = r + dr;
          const int nc = c + dc;
          if (nr < 0 || nr >= sim.rows || nc < 0 || nc >= sim.cols) continue;
          if (sim.at(nr, nc) == CellState::Fuel) {
            has_fuel_neighbor = true;
            break;
          }
        }
      }
      if (has_fuel_neighbor) front.push_back({r, c});
    }
  }
  return front;
}

namespace {

struct RankedCell {
  GridPos pos;
  double dist;
};

bool ranked_before(const RankedCell& a, const RankedCell& b) {
  if (a.dist != b.dist) return a.dist < b.dist;
  if (a.pos.row != b.pos.row) return a.pos.row < b.pos.row;
  return a.pos.col < b.pos.col;
}

double platform_distance(const InterventionPlan& plan, GridPos cell) {
  const double dr = cell.row - plan.platform.row;
  const double dc = cell.col - plan.platform.col;
  return std::sqrt(dr * dr + dc * dc);
}

void set_water(SimState& sim, GridPos cell) {
  CellState& s = sim.cells[static_cast<std::size_t>(cell.row) * sim.cols + cell.col];
  if (s == CellState::Burning) {
    --sim.counts.burning;
  } else if (s == CellState::Fuel) {
    --sim.counts.fuel;
  } else {
    return;  // already water or otherwise untouchable
  }
  s = CellState::Water;
  ++sim.counts.water;
}

bool adjacent8(GridPos a, GridPos b) {
  return a != b && std::abs(a.row - b.row) <= 1 && std::abs(a.col - b.col) <= 1;
}

}  // namespace

bool apply_intervention(SimState& sim, const GridScenario& scenario, InterventionPlan& plan) {
  if (plan.applied) {
    // Re-application is a no-op: the resolved cells are already water.
    for (const GridPos& cell : plan.chosen_cells) set_water(sim, cell);
    return true;
  }
  if (plan.cells_to_hold < 0) throw std::invalid_argument("apply_intervention: cells_to_hold < 0");
  if (plan.cells_to_hold == 0) {
    plan.applied = true;
    return true;
  }

  std::vector<GridPos> candidates = fire_front(sim);
  if (candidates.empty()) return false;  // fire already out of reach; reported as no-op

  std::vector<RankedCell> ranked;
  ranked.reserve(candidates.size());
  for (const GridPos& cell : candidates) {
    ranked.push_back({cell, platform_distance(plan, cell)});
  }
  std::sort(ranked.begin(), ranked.end(), ranked_before);

  // Grow an 8-connected chain from the front cell closest to the platform;
  // prefer cells touching the chain, jump to the nearest leftover front cell
  // when a segment runs out (head plus flank coverage).
  std::vector<GridPos> chain;
  std::vector<bool> used(ranked.size(), false);
  chain.push_back(ranked.front().pos);
  used.front() = true;
  const std::size_t budget = static_cast<std::size_t>(plan.cells_to_hold);
  std::size_t taken = 1;
  while (chain.size() < budget && taken < ranked.size()) {
    std::size_t pick = ranked.size();
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      if (used[i]) continue;
      for (const GridPos& member : chain) {
        if (adjacent8(ranked[i].pos, member)) {
          pick = i;
          break;
        }
      }
      if (pick != ranked.size()) break;  // ranked order makes the first hit the best
    }
    if (pick == ranked.size()) {
      for (std::size_t i = 0; i < ranked.size(); ++i) {
        if (!used[i]) {
          pick = i;
          break;
        }
      }
    }
    used[pick] = true;
    ++taken;
    chain.push_back(ranked[pick].pos);
  }

  // Budget left over once the whole front is held: pre-wet fuel around the
  // chain, nearest to the platform first.
  while (chain.size() < budget) {
    bool found = false;
    RankedCell best{};
    for (const GridPos& member : chain) {
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const GridPos cand{member.row + dr, member.col + dc};
          if (!scenario.contains(cand.row, cand.col)) continue;
          if (sim.at(cand.row, cand.col) != CellState::Fuel) continue;
          if (std::find(chain.begin(), chain.end(), cand) != chain.end()) continue;
          const RankedCell rc{cand, platform_distance(plan, cand)};
          if (!found || ranked_before(rc, best)) {
            best = rc;
            found = true;
          }
        }
      }
    }
    if (!found) break;
    chain.push_back(best.pos);
  }

  for (const GridPos& cell : chain) set_water(sim, cell);
  plan.chosen_cells = std::move(chain);
  plan.applied = true;
  return true;
}

namespace {

TimeSeriesRecord record_of(const SimState& sim, double cell_m) {
  TimeSeriesRecord rec;
  rec.step = sim.step;
  rec.clock_min = sim.clock_min;
  rec.burning_cells = sim.counts.burning;
  rec.burned_cells = sim.counts.burned;
  rec.water_cells = sim.counts.water;
  rec.burned_area_m2 = sim.counts.burned * cell_m * cell_m;
  return rec;
}

}  // namespace

RunResult run(const GridScenario& scenario, const InterventionPlan* plan,
              std::optional<std::uint64_t> seed, std::optional<int> max_steps) {
  scenario.validate();
  const SpreadModel model(scenario);
  const std::uint64_t run_seed = seed.value_or(scenario.seed);
  const int step_cap = max_steps.value_or(scenario.max_steps);

  RunResult result;
  if (plan) {
    result.plan = *plan;
    result.plan->applied = false;
    result.plan->chosen_cells.clear();
  }

  SimState sim = initial_state(scenario);
  for (;;) {
    if (result.plan && !result.plan->applied &&
        sim.clock_min >= result.plan->platform.intervention_min) {
      apply_intervention(sim, scenario, *result.plan);
    }
    result.series.push_back(record_of(sim, scenario.cell_m));
    if (sim.counts.burning == 0 || sim.step >= step_cap) break;
    step(sim, model, run_seed);
  }
  result.extinct = sim.counts.burning == 0;
  result.final_state = std::move(sim);
  return result;
}

PairedRunResult paired_run(const GridScenario& scenario, const InterventionPlan& plan,
                           std::optional<std::uint64_t> seed) {
  PairedRunResult pair;
  pair.baseline = run(scenario, nullptr, seed);
  pair.treated = run(scenario, &plan, seed);
  return pair;
}

}  // namespace firesim
