#include "firesim/fire_physics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace firesim {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string(what));
}

}  // namespace

void FuelModel::validate() const {
  require(heat_of_combustion > 0, "FuelModel: heat_of_combustion must be positive");
  require(heat_of_gasification > 0, "FuelModel: heat_of_gasification must be positive");
  require(convective_coeff > 0, "FuelModel: convective_coeff must be positive");
  require(air_specific_heat > 0, "FuelModel: air_specific_heat must be positive");
  require(oxygen_mass_fraction > 0 && oxygen_mass_fraction <= 1,
          "FuelModel: oxygen_mass_fraction must be in (0, 1]");
  require(oxygen_heat_of_combustion > 0, "FuelModel: oxygen_heat_of_combustion must be positive");
  require(convective_loss_fraction > 0 && convective_loss_fraction <= 1,
          "FuelModel: convective_loss_fraction must be in (0, 1]");
  require(water_efficiency > 0 && water_efficiency <= 1,
          "FuelModel: water_efficiency must be in (0, 1]");
  require(water_enthalpy_change > 0, "FuelModel: water_enthalpy_change must be positive");
  require(transmissivity > 0 && transmissivity <= 1, "FuelModel: transmissivity must be in (0, 1]");
  require(radiative_fraction > 0 && radiative_fraction <= 1,
          "FuelModel: radiative_fraction must be in (0, 1]");
  require(emissivity > 0 && emissivity <= 1, "FuelModel: emissivity must be in (0, 1]");
  require(stefan_boltzmann > 0, "FuelModel: stefan_boltzmann must be positive");
  require(ambient_temp_k > 0, "FuelModel: ambient_temp_k must be positive");
  require(fuel_temp_k > ambient_temp_k, "FuelModel: fuel_temp_k must exceed ambient_temp_k");
  require(gas_temp_k > fuel_temp_k, "FuelModel: gas_temp_k must exceed fuel_temp_k");
  require(fuel_load_t_ha > 0, "FuelModel: fuel_load_t_ha must be positive");
  require(gravity > 0, "FuelModel: gravity must be positive");
}

void FireEnvironment::validate() const {
  require(wind_kmh >= 0, "FireEnvironment: wind_kmh must be non-negative");
  require(moisture_pct >= 0, "FireEnvironment: moisture_pct must be non-negative");
  require(flame_depth_m > 0, "FireEnvironment: flame_depth_m must be positive");
  if (flame_length_m) {
    require(*flame_length_m > 0, "FireEnvironment: flame_length_m must be positive");
  }
}

double critical_mass_burning_rate(const FuelModel& fuel) {
  fuel.validate();
  const double driving = fuel.oxygen_mass_fraction * fuel.oxygen_heat_of_combustion /
                         (fuel.convective_loss_fraction * fuel.heat_of_combustion);
  return fuel.convective_coeff / fuel.air_specific_heat * std::log1p(driving);
}

FlameGeometry flame_angle(double wind_ms, double flame_length_m, double gravity) {
  if (wind_ms < 0) throw std::invalid_argument("flame_angle: wind_ms must be non-negative");
  if (flame_length_m <= 0) throw std::invalid_argument("flame_angle: flame_length_m must be positive");
  if (wind_ms == 0.0) return {90.0, flame_length_m};

  // Substituting H_f = L_f sin A reduces the system to
  //   cos A / sqrt(sin A) = 1.22 U / sqrt(g L_f)
  // whose left side falls strictly from +inf to 0 on (0, pi/2]; bisection
  // cannot miss the root.
  const double rhs = 1.22 * wind_ms / std::sqrt(gravity * flame_length_m);
  double lo = 1e-12;
  double hi = kPi / 2.0;
  // Run bisection down to the last representable midpoint; the residual
  // contract (< 1e-9 in both equations) needs more than a fixed interval
  // tolerance when the root sits at a steep small angle.
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double lhs = std::cos(mid) / std::sqrt(std::sin(mid));
    if (lhs > rhs) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double angle = 0.5 * (lo + hi);
  return {angle * 180.0 / kPi, flame_length_m * std::sin(angle)};
}

double byram_intensity(double flame_length_m) {
  if (flame_length_m <= 0) throw std::invalid_argument("byram_intensity: flame_length_m must be positive");
  return 259.833 * std::pow(flame_length_m, 2.174);
}

double flame_length_from_intensity(double intensity_kw_m) {
  if (intensity_kw_m < 0) {
    throw std::invalid_argument("flame_length_from_intensity: intensity must be non-negative");
  }
  if (intensity_kw_m == 0.0) return 0.0;
  return std::pow(intensity_kw_m / 259.833, 1.0 / 2.174);
}

double rate_of_spread(double wind_kmh, double moisture_pct, const SpreadParams& p) {
  if (wind_kmh < 0) throw std::invalid_argument("rate_of_spread: wind_kmh must be non-negative");
  if (moisture_pct < 0) throw std::invalid_argument("rate_of_spread: moisture_pct must be non-negative");
  return 0.06 * p.a * std::pow(wind_kmh, p.b) * std::exp(-p.c * moisture_pct);
}

double intensity_from_spread(const FuelModel& fuel, double ros_kmh) {
  if (ros_kmh < 0) throw std::invalid_argument("intensity_from_spread: ros_kmh must be non-negative");
  return fuel.heat_of_combustion * fuel.fuel_load_t_ha * ros_kmh / 36.0;
}

ExternalFlux external_heat_flux(const FuelModel& fuel, double intensity_kw_m,
                                double flame_length_m, double depth_m,
                                double flame_angle_deg) {
  if (intensity_kw_m < 0) throw std::invalid_argument("external_heat_flux: intensity must be non-negative");
  if (flame_length_m <= 0) throw std::invalid_argument("external_heat_flux: flame_length_m must be positive");
  if (depth_m <= 0) throw std::invalid_argument("external_heat_flux: depth_m must be positive");
  if (flame_angle_deg <= 0 || flame_angle_deg > 90) {
    throw std::invalid_argument("external_heat_flux: flame_angle_deg must be in (0, 90]");
  }
  ExternalFlux flux;
  flux.radiative = fuel.radiative_fraction * intensity_kw_m / (2.0 * flame_length_m + depth_m) *
                   fuel.convective_loss_fraction * fuel.transmissivity;
  flux.convective = flame_angle_deg < 30.0
                        ? fuel.convective_coeff * (fuel.gas_temp_k - fuel.fuel_temp_k)
                        : 0.0;
  return flux;
}

SurfaceLoss surface_heat_loss(const FuelModel& fuel) {
  fuel.validate();
  SurfaceLoss loss;
  const double t4 = std::pow(fuel.fuel_temp_k, 4) - std::pow(fuel.ambient_temp_k, 4);
  loss.radiative = fuel.emissivity * fuel.stefan_boltzmann * t4;
  loss.convective = fuel.convective_coeff * (fuel.fuel_temp_k - fuel.ambient_temp_k);
  return loss;
}

CriticalFlowResult critical_flow(const FuelModel& fuel, const FireEnvironment& env,
                                 const SpreadParams& spread, CfPath path,
                                 std::optional<double> unit_area_intensity) {
  fuel.validate();
  env.validate();

  CriticalFlowResult r;
  r.mass_burning_rate = critical_mass_burning_rate(fuel);

  if (path == CfPath::FlameLength) {
    if (!env.flame_length_m) {
      throw std::invalid_argument("critical_flow: flame_length_m required on the flame-length path");
    }
    if (!unit_area_intensity || *unit_area_intensity <= 0) {
      throw std::invalid_argument(
          "critical_flow: unit_area_intensity (Ir) required on the flame-length path");
    }
    r.flame_length_m = *env.flame_length_m;
    r.intensity = byram_intensity(r.flame_length_m);
    r.flame_depth_m = r.intensity / *unit_area_intensity;
  } else {
    r.spread_rate_kmh = rate_of_spread(env.wind_kmh, env.moisture_pct, spread);
    r.intensity = intensity_from_spread(fuel, r.spread_rate_kmh);
    r.flame_length_m = flame_length_from_intensity(r.intensity);
    r.flame_depth_m = env.flame_depth_m;
  }

  const double wind_ms = env.wind_kmh / 3.6;
  if (r.flame_length_m > 0) {
    const FlameGeometry geo = flame_angle(wind_ms, r.flame_length_m, fuel.gravity);
    r.flame_angle_deg = geo.angle_deg;
    r.flame_height_m = geo.height_m;
    const ExternalFlux ext =
        external_heat_flux(fuel, r.intensity, r.flame_length_m, r.flame_depth_m, r.flame_angle_deg);
    r.q_ext_rad = ext.radiative;
    r.q_ext_conv = ext.convective;
  } else {
    // Still air on the rate-of-spread path: no fire, no incident flux.
    r.flame_angle_deg = 90.0;
    r.flame_height_m = 0.0;
  }

  const SurfaceLoss loss = surface_heat_loss(fuel);
  r.q_loss_rad = loss.radiative;
  r.q_loss_conv = loss.convective;

  const double gain = (fuel.convective_loss_fraction * fuel.heat_of_combustion -
                       fuel.heat_of_gasification) *
                      r.mass_burning_rate;
  r.cf_area_raw = (gain + r.q_ext_rad + r.q_ext_conv - r.q_loss_rad - r.q_loss_conv) /
                  (fuel.water_efficiency * fuel.water_enthalpy_change);
  r.cf_area = r.cf_area_raw > 0.0 ? r.cf_area_raw : 0.0;
  // 1 kg of water = 1 L, applied over the D x 1 m strip of active front.
  r.cf_linear = r.cf_area * r.flame_depth_m * 60.0;
  return r;
}

}  // namespace firesim
