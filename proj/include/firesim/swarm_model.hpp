#pragma once

#include <cstdint>

// Throughput algebra for drone platforms: sustained extinguishing flow,
// arrestable meters of front, and the drone count needed for a given front.

namespace firesim {

// One ground platform cycling a fixed fleet of drones. cycle_min covers the
// whole loop: land, swap battery and payload, fly out, release, return.
struct PlatformConfig {
  int drones = 120;              // n_d, documented operating range 80-120
  double payload_l = 20.0;       // L_d, documented operating range 10-50 L
  double cycle_min = 6.0;
  double intervention_min = 0.0; // t_a, delay after ignition
  double row = 0.0;              // lattice position, may lie outside the grid
  double col = 0.0;

  void validate() const;
};

struct FlowReport {
  double discharges_per_hour = 0.0;           // n_h, per drone
  double platform_discharges_per_hour = 0.0;  // n_h_tot
  double liters_per_hour = 0.0;               // L_h_tot, per platform
  double flow_l_min = 0.0;                    // DF, per platform
  int platforms = 1;
  double front_meters = 0.0;                  // m_f; zero until a CF is supplied
};

// Sustained flow for `platforms` identical platforms. Aggregation across
// platforms is pure summation.
FlowReport drone_flow(const PlatformConfig& cfg, int platforms = 1);

// Same, with the arrestable front length filled in from cf_linear (L/min/m).
FlowReport drone_flow(const PlatformConfig& cfg, int platforms, double cf_linear);

// Linear meters of active front the platforms can hold: m_f = DF / CF.
// Throws std::domain_error when cf_linear <= 0.
double extinguishable_meters(const PlatformConfig& cfg, int platforms, double cf_linear);

// Flow needed to hold front_m meters of front: DF_r = m_r * CF.
double required_flow(double front_m, double cf_linear);

// Drones needed for front_m meters: ceil(CF * cycle * m_r / payload).
// Exact-integer products are snapped before the ceiling so that algebraic
// round trips do not pick up a spurious +1 from float noise.
std::int64_t required_drones(double front_m, double cf_linear, double payload_l,
                             double cycle_min);

}  // namespace firesim
