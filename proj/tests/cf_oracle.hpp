#pragma once

// Straight-line reference evaluation of the critical-flow chain, written
// independently of the library (its own constants, its own solver) so the
// two can be cross-checked. Test-only.

namespace firesim::testing {

struct OracleResult {
  double cf_area = 0.0;
  double cf_linear = 0.0;
  double angle_deg = 90.0;
  double flame_length_m = 0.0;
  double intensity = 0.0;
};

// Flame angle by bracketing the raw cotangent equation.
double oracle_flame_angle_deg(double wind_ms, double flame_length_m);

// Full chain on the rate-of-spread path for the default fuel constants.
OracleResult oracle_cf_ros(double wind_kmh, double moisture_pct, double depth_m);

}  // namespace firesim::testing
