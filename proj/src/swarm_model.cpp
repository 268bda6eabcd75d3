#include "firesim/swarm_model.hpp"

#include <cmath>
#include <stdexcept>

namespace firesim {

void PlatformConfig::validate() const {
  if (drones < 1) throw std::invalid_argument("PlatformConfig: drones must be >= 1");
  if (payload_l <= 0) throw std::invalid_argument("PlatformConfig: payload_l must be positive");
  if (cycle_min <= 0) throw std::invalid_argument("PlatformConfig: cycle_min must be positive");
  if (intervention_min < 0) {
    throw std::invalid_argument("PlatformConfig: intervention_min must be non-negative");
  }
}

FlowReport drone_flow(const PlatformConfig& cfg, int platforms) {
  cfg.validate();
  if (platforms < 1) throw std::invalid_argument("drone_flow: platforms must be >= 1");
  FlowReport report;
  report.discharges_per_hour = 60.0 / cfg.cycle_min;
  report.platform_discharges_per_hour = report.discharges_per_hour * cfg.drones;
  report.liters_per_hour = cfg.payload_l * report.platform_discharges_per_hour;
  report.flow_l_min = report.liters_per_hour / 60.0;
  report.platforms = platforms;
  return report;
}

FlowReport drone_flow(const PlatformConfig& cfg, int platforms, double cf_linear) {
  FlowReport report = drone_flow(cfg, platforms);
  report.front_meters = extinguishable_meters(cfg, platforms, cf_linear);
  return report;
}

double extinguishable_meters(const PlatformConfig& cfg, int platforms, double cf_linear) {
  cfg.validate();
  if (platforms < 1) throw std::invalid_argument("extinguishable_meters: platforms must be >= 1");
  if (cf_linear <= 0) {
    throw std::domain_error("extinguishable_meters: cf_linear must be positive");
  }
  return static_cast<double>(platforms) * cfg.payload_l * cfg.drones / (cfg.cycle_min * cf_linear);
}

double required_flow(double front_m, double cf_linear) {
  if (front_m < 0) throw std::invalid_argument("required_flow: front_m must be non-negative");
  if (cf_linear < 0) throw std::invalid_argument("required_flow: cf_linear must be non-negative");
  return front_m * cf_linear;
}

std::int64_t required_drones(double front_m, double cf_linear, double payload_l,
                             double cycle_min) {
  if (front_m < 0) throw std::invalid_argument("required_drones: front_m must be non-negative");
  if (cf_linear < 0) throw std::invalid_argument("required_drones: cf_linear must be non-negative");
  if (payload_l <= 0) throw std::invalid_argument("required_drones: payload_l must be positive");
  if (cycle_min <= 0) throw std::invalid_argument("required_drones: cycle_min must be positive");

  const double raw = cf_linear * cycle_min * front_m / payload_l;
  if (raw <= 0.0) return 0;
  const double nearest = std::round(raw);
  if (std::abs(raw - nearest) <= 1e-9 * std::max(1.0, raw)) {
    return static_cast<std::int64_t>(nearest);
  }
  return static_cast<std::int64_t>(std::ceil(raw));
}

}  // namespace firesim
