#pragma once

#include <optional>

// Fire-point energy balance: critical water application rate needed to
// arrest an active fire front, with the full intermediate breakdown
// (mass burning rate, fireline intensity, flame geometry, heat fluxes).
// All quantities in SI with energy in kJ and fluxes in kW.

namespace firesim {

// Thermophysical constants for the fuel complex. Defaults describe
// Mediterranean scrub; every field can be overridden per scenario.
struct FuelModel {
  double heat_of_combustion = 19500.0;         // effective, kJ/kg
  double heat_of_gasification = 1800.0;        // kJ/kg
  double convective_coeff = 0.020;             // h, kW m^-2 K^-1 (20 W m^-2 K^-1)
  double air_specific_heat = 1.0;              // c_p, kJ kg^-1 K^-1
  double oxygen_mass_fraction = 0.233;         // Y_O2
  double oxygen_heat_of_combustion = 13480.0;  // per kg O2 consumed, kJ/kg
  double convective_loss_fraction = 0.3;       // phi
  double water_efficiency = 0.7;               // eta_water
  double water_enthalpy_change = 2640.0;       // kJ/kg, 283 K liquid -> 373 K vapour
  double transmissivity = 1.0;                 // tau
  double radiative_fraction = 0.20;            // r_c, per unit front length
  double emissivity = 0.6;
  double stefan_boltzmann = 5.67e-11;          // kW m^-2 K^-4
  double fuel_temp_k = 693.0;
  double gas_temp_k = 800.0;
  double ambient_temp_k = 293.0;
  double fuel_load_t_ha = 15.0;                // W, fine fuels < 6 mm
  double gravity = 9.81;                       // m s^-2

  void validate() const;  // throws std::invalid_argument naming the field
};

// Fire-side conditions. wind_kmh is the mean horizontal wind at 2 m.
struct FireEnvironment {
  double wind_kmh = 0.0;
  double moisture_pct = 18.0;               // elevated dead fuels, percent
  double flame_depth_m = 2.0;               // D, active combustion zone
  std::optional<double> flame_length_m;     // set to drive the flame-length path

  void validate() const;
};

// Fernandes' shrubland rate-of-spread regression coefficients.
struct SpreadParams {
  double a = 3.258;
  double b = 0.958;
  double c = 0.111;
};

struct FlameGeometry {
  double angle_deg = 90.0;  // A, between flame and unburned fuel ahead
  double height_m = 0.0;    // H_f, flame tip height
};

struct ExternalFlux {
  double radiative = 0.0;   // kW m^-2
  double convective = 0.0;  // kW m^-2, nonzero only when the flame angle < 30 deg
};

struct SurfaceLoss {
  double radiative = 0.0;   // kW m^-2
  double convective = 0.0;  // kW m^-2
};

// Which input drives the fireline intensity.
enum class CfPath {
  FlameLength,   // flame length given; depth derived as I / Ir
  RateOfSpread,  // wind + moisture give RoS, intensity, then flame length
};

struct CriticalFlowResult {
  double cf_area = 0.0;            // kg m^-2 s^-1, clamped at 0
  double cf_linear = 0.0;          // L min^-1 per linear meter of front
  double cf_area_raw = 0.0;        // unclamped energy balance, diagnostics
  double mass_burning_rate = 0.0;  // kg m^-2 s^-1
  double intensity = 0.0;          // kW/m
  double flame_length_m = 0.0;
  double spread_rate_kmh = 0.0;    // zero on the flame-length path
  double flame_angle_deg = 90.0;
  double flame_height_m = 0.0;
  double flame_depth_m = 0.0;      // D actually used
  double q_ext_rad = 0.0;
  double q_ext_conv = 0.0;
  double q_loss_rad = 0.0;
  double q_loss_conv = 0.0;
};

// Critical mass burning rate from Spalding B-number theory, kg m^-2 s^-1.
double critical_mass_burning_rate(const FuelModel& fuel);

// Flame angle for a wind-blown line fire. Solves
//   cot(A) = 1.22 * sqrt(U^2 / (g * L_f * sin A)),  H_f = L_f * sin A
// by bisection; wind_ms = 0 gives exactly 90 degrees.
FlameGeometry flame_angle(double wind_ms, double flame_length_m, double gravity = 9.81);

// Byram's relation between fireline intensity (kW/m) and flame length (m),
// and its inverse.
double byram_intensity(double flame_length_m);
double flame_length_from_intensity(double intensity_kw_m);

// Fernandes' shrubland rate of spread, km/h. wind_kmh at 2 m, moisture in percent.
double rate_of_spread(double wind_kmh, double moisture_pct, const SpreadParams& p = {});

// Fireline intensity from rate of spread: I = dHc * W * RoS / 36 (kW/m with
// W in t/ha and RoS in km/h).
double intensity_from_spread(const FuelModel& fuel, double ros_kmh);

// Incident flux on the unburned fuel ahead of the front.
ExternalFlux external_heat_flux(const FuelModel& fuel, double intensity_kw_m,
                                double flame_length_m, double depth_m,
                                double flame_angle_deg);

// Radiative and convective losses from the fuel surface.
SurfaceLoss surface_heat_loss(const FuelModel& fuel);

// Full chain: critical water flow per unit area and per linear meter of
// front. On the flame-length path env.flame_length_m and unit_area_intensity
// (Ir, kW m^-2) are required and the depth is I / Ir; on the rate-of-spread
// path wind, moisture and depth drive the Fernandes -> Byram chain.
CriticalFlowResult critical_flow(const FuelModel& fuel, const FireEnvironment& env,
                                 const SpreadParams& spread, CfPath path,
                                 std::optional<double> unit_area_intensity = {});

}  // namespace firesim
