#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "cf_oracle.hpp"
#include "firesim/fire_physics.hpp"

using namespace firesim;

namespace {

FireEnvironment ros_env(double wind_kmh, double moisture_pct, double depth_m) {
  FireEnvironment env;
  env.wind_kmh = wind_kmh;
  env.moisture_pct = moisture_pct;
  env.flame_depth_m = depth_m;
  return env;
}

}  // namespace

TEST_CASE("critical mass burning rate") {
  FuelModel fuel;
  CHECK(critical_mass_burning_rate(fuel) ==
        doctest::Approx(0.0085952924005435315).epsilon(1e-12));

  SUBCASE("vanishes with the oxygen fraction") {
    fuel.oxygen_mass_fraction = 1e-10;
    CHECK(critical_mass_burning_rate(fuel) < 1e-10);
  }
  SUBCASE("linear in the convective coefficient") {
    FuelModel doubled;
    doubled.convective_coeff = 2.0 * fuel.convective_coeff;
    CHECK(critical_mass_burning_rate(doubled) ==
          doctest::Approx(2.0 * critical_mass_burning_rate(FuelModel{})).epsilon(1e-14));
  }
  SUBCASE("invariants enforced") {
    fuel.oxygen_mass_fraction = 0.0;
    CHECK_THROWS_AS(critical_mass_burning_rate(fuel), std::invalid_argument);
  }
}

TEST_CASE("flame angle") {
  SUBCASE("still air gives a vertical flame") {
    const FlameGeometry geo = flame_angle(0.0, 3.7);
    CHECK(geo.angle_deg == 90.0);
    CHECK(geo.height_m == 3.7);
  }
  SUBCASE("reference point") {
    const FlameGeometry geo = flame_angle(2.778, 2.53);
    CHECK(geo.angle_deg == doctest::Approx(52.657460918615087).epsilon(1e-9));
    CHECK(geo.height_m == doctest::Approx(2.0114090688314565).epsilon(1e-9));
  }
  SUBCASE("strictly decreasing in wind") {
    double prev = 90.0;
    for (double u = 0.5; u <= 15.0; u += 0.5) {
      const double a = flame_angle(u, 2.53).angle_deg;
      CHECK(a < prev);
      prev = a;
    }
  }
  SUBCASE("residuals of both equations below 1e-9") {
    for (double u : {0.5, 1.0, 3.0, 8.0, 15.0, 30.0}) {
      for (double lf : {0.1, 0.5, 2.53, 8.0, 20.0}) {
        const FlameGeometry geo = flame_angle(u, lf);
        const double a = geo.angle_deg * (std::acos(-1.0) / 180.0);
        const double r1 = std::cos(a) / std::sin(a) -
                          1.22 * std::sqrt(u * u / (9.81 * geo.height_m));
        const double r2 = geo.height_m - lf * std::sin(a);
        CHECK(std::abs(r1) < 1e-9);
        CHECK(std::abs(r2) < 1e-9);
      }
    }
  }
  SUBCASE("agreement with the scan-based oracle") {
    for (double u : {1.0, 4.0, 10.0}) {
      for (double lf : {0.5, 2.53, 12.0}) {
        CHECK(flame_angle(u, lf).angle_deg ==
              doctest::Approx(testing::oracle_flame_angle_deg(u, lf)).epsilon(1e-8));
      }
    }
  }
  CHECK_THROWS_AS(flame_angle(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(flame_angle(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("byram intensity and inverse") {
  CHECK(byram_intensity(1.0) == doctest::Approx(259.833).epsilon(1e-12));
  CHECK(byram_intensity(2.53) == doctest::Approx(1954.6919332664759).epsilon(1e-12));
  CHECK(flame_length_from_intensity(259.833) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(flame_length_from_intensity(1955.0) ==
        doctest::Approx(2.5301834040764697).epsilon(1e-12));

  SUBCASE("round trip is the identity") {
    for (double lf = 0.1; lf <= 20.0; lf += 0.37) {
      CHECK(flame_length_from_intensity(byram_intensity(lf)) ==
            doctest::Approx(lf).epsilon(1e-9));
    }
  }
  SUBCASE("monotone increasing") {
    double prev = 0.0;
    for (double i = 10.0; i <= 5000.0; i += 90.0) {
      const double lf = flame_length_from_intensity(i);
      CHECK(lf > prev);
      prev = lf;
    }
  }
  CHECK(flame_length_from_intensity(0.0) == 0.0);
  CHECK_THROWS_AS(byram_intensity(0.0), std::invalid_argument);
}

TEST_CASE("rate of spread") {
  CHECK(rate_of_spread(10.0, 18.0) == doctest::Approx(0.2406478331348588).epsilon(1e-12));
  CHECK(rate_of_spread(0.0, 18.0) == 0.0);

  SUBCASE("moisture suppresses spread") {
    double prev = rate_of_spread(10.0, 0.0);
    for (double md = 2.0; md <= 40.0; md += 2.0) {
      const double r = rate_of_spread(10.0, md);
      CHECK(r < prev);
      prev = r;
    }
  }
}

TEST_CASE("intensity from spread") {
  FuelModel fuel;
  CHECK(intensity_from_spread(fuel, 0.2406478331348588) ==
        doctest::Approx(1955.2636442207279).epsilon(1e-12));
  CHECK(intensity_from_spread(fuel, 0.0) == 0.0);
  CHECK(intensity_from_spread(fuel, 0.5) ==
        doctest::Approx(2.0 * intensity_from_spread(fuel, 0.25)).epsilon(1e-14));
  fuel.fuel_load_t_ha = 30.0;
  CHECK(intensity_from_spread(fuel, 0.25) ==
        doctest::Approx(2.0 * intensity_from_spread(FuelModel{}, 0.25)).epsilon(1e-14));
}

TEST_CASE("external heat flux") {
  const FuelModel fuel;
  SUBCASE("radiative term") {
    const ExternalFlux f = external_heat_flux(fuel, 1955.0, 2.53, 2.0, 52.7);
    CHECK(f.radiative == doctest::Approx(16.614730878186968).epsilon(1e-12));
    CHECK(f.convective == 0.0);
  }
  SUBCASE("convective branch switches at 30 degrees") {
    CHECK(external_heat_flux(fuel, 1955.0, 2.53, 2.0, 29.9).convective ==
          doctest::Approx(2.14).epsilon(1e-12));
    CHECK(external_heat_flux(fuel, 1955.0, 2.53, 2.0, 30.0).convective == 0.0);
  }
  CHECK(external_heat_flux(fuel, 0.0, 2.53, 2.0, 52.7).radiative == 0.0);
}

TEST_CASE("surface heat loss") {
  FuelModel fuel;
  const SurfaceLoss loss = surface_heat_loss(fuel);
  CHECK(loss.radiative == doctest::Approx(7.5956131218240008).epsilon(1e-12));
  CHECK(loss.convective == doctest::Approx(8.0).epsilon(1e-12));

  SUBCASE("both terms vanish as the surface cools to ambient") {
    fuel.fuel_temp_k = fuel.ambient_temp_k + 1e-9;
    fuel.gas_temp_k = fuel.fuel_temp_k + 1.0;
    const SurfaceLoss tiny = surface_heat_loss(fuel);
    CHECK(tiny.radiative < 1e-6);
    CHECK(tiny.convective < 1e-6);
  }
  SUBCASE("radiative loss linear in emissivity") {
    fuel.emissivity = 0.3;
    CHECK(surface_heat_loss(fuel).radiative ==
          doctest::Approx(0.5 * loss.radiative).epsilon(1e-14));
  }
}

TEST_CASE("critical flow, rate-of-spread path") {
  const CriticalFlowResult r =
      critical_flow(FuelModel{}, ros_env(10.0, 18.0, 2.0), SpreadParams{}, CfPath::RateOfSpread);
  CHECK(r.spread_rate_kmh == doctest::Approx(0.2406478331348588).epsilon(1e-12));
  CHECK(r.intensity == doctest::Approx(1955.2636442207279).epsilon(1e-12));
  CHECK(r.flame_length_m == doctest::Approx(2.5303403493148839).epsilon(1e-12));
  CHECK(r.flame_angle_deg == doctest::Approx(52.662446680890952).epsilon(1e-9));
  CHECK(r.q_ext_rad == doctest::Approx(16.615369489235022).epsilon(1e-12));
  CHECK(r.q_ext_conv == 0.0);
  CHECK(r.q_loss_rad == doctest::Approx(7.5956131218240008).epsilon(1e-12));
  CHECK(r.q_loss_conv == 8.0);
  CHECK(r.cf_area == doctest::Approx(0.019388901834205805).epsilon(1e-12));
  CHECK(r.cf_linear == doctest::Approx(2.3266682201046964).epsilon(1e-12));
  CHECK(r.cf_linear == r.cf_area * r.flame_depth_m * 60.0);  // exact product

  SUBCASE("bit-identical across calls") {
    const CriticalFlowResult again =
        critical_flow(FuelModel{}, ros_env(10.0, 18.0, 2.0), SpreadParams{}, CfPath::RateOfSpread);
    CHECK(again.cf_area == r.cf_area);
    CHECK(again.cf_linear == r.cf_linear);
    CHECK(again.flame_angle_deg == r.flame_angle_deg);
  }
  SUBCASE("still air degenerates to the no-fire balance") {
    const CriticalFlowResult calm =
        critical_flow(FuelModel{}, ros_env(0.0, 18.0, 2.0), SpreadParams{}, CfPath::RateOfSpread);
    CHECK(calm.spread_rate_kmh == 0.0);
    CHECK(calm.flame_length_m == 0.0);
    CHECK(calm.flame_angle_deg == 90.0);
    CHECK(calm.q_ext_rad == 0.0);
  }
}

TEST_CASE("critical flow, flame-length path") {
  FireEnvironment env;
  env.wind_kmh = 0.0;
  env.flame_length_m = 1.0;
  const CriticalFlowResult r =
      critical_flow(FuelModel{}, env, SpreadParams{}, CfPath::FlameLength, 500.0);
  CHECK(r.intensity == doctest::Approx(259.833).epsilon(1e-12));
  CHECK(r.flame_depth_m == doctest::Approx(0.51966600000000007).epsilon(1e-12));
  CHECK(r.cf_area == doctest::Approx(0.013746017946869348).epsilon(1e-12));
  CHECK(r.cf_linear == doctest::Approx(0.42860028974266845).epsilon(1e-12));
  CHECK(r.spread_rate_kmh == 0.0);

  SUBCASE("windy variant picks up the convective term") {
    env.wind_kmh = 10.0 * 3.6;
    env.flame_length_m = 2.53;
    const CriticalFlowResult windy =
        critical_flow(FuelModel{}, env, SpreadParams{}, CfPath::FlameLength, 2000.0);
    CHECK(windy.flame_angle_deg == doctest::Approx(9.3436768857235215).epsilon(1e-9));
    CHECK(windy.q_ext_conv == doctest::Approx(2.14).epsilon(1e-12));
    CHECK(windy.cf_linear == doctest::Approx(1.2940735413556834).epsilon(1e-9));
  }
  SUBCASE("missing inputs are named") {
    FireEnvironment incomplete;
    CHECK_THROWS_WITH_AS(
        critical_flow(FuelModel{}, incomplete, SpreadParams{}, CfPath::FlameLength, 500.0),
        doctest::Contains("flame_length_m"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(critical_flow(FuelModel{}, env, SpreadParams{}, CfPath::FlameLength),
                         doctest::Contains("unit_area_intensity"), std::invalid_argument);
  }
}

TEST_CASE("critical flow clamps a negative balance") {
  FuelModel fuel;
  fuel.heat_of_gasification = 8000.0;  // gasification swamps the heat gain
  const CriticalFlowResult r =
      critical_flow(fuel, ros_env(10.0, 18.0, 2.0), SpreadParams{}, CfPath::RateOfSpread);
  CHECK(r.cf_area == 0.0);
  CHECK(r.cf_linear == 0.0);
  CHECK(r.cf_area_raw < 0.0);
}

TEST_CASE("convective switch location and jump size") {
  // The switch sits where the flame angle crosses 30 degrees as wind rises.
  double lo = 10.0, hi = 30.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    const CriticalFlowResult r =
        critical_flow(FuelModel{}, ros_env(mid, 18.0, 2.0), SpreadParams{}, CfPath::RateOfSpread);
    (r.q_ext_conv == 0.0 ? lo : hi) = mid;
  }
  CHECK(0.5 * (lo + hi) == doctest::Approx(21.26134464980921).epsilon(1e-9));

  const double below =
      critical_flow(FuelModel{}, ros_env(lo - 1e-7, 18.0, 2.0), SpreadParams{},
                    CfPath::RateOfSpread)
          .cf_linear;
  const double above =
      critical_flow(FuelModel{}, ros_env(hi + 1e-7, 18.0, 2.0), SpreadParams{},
                    CfPath::RateOfSpread)
          .cf_linear;
  // jump = h (T_g - T_fuel) / (eta L_vw) * D * 60
  CHECK(above - below == doctest::Approx(2.14 / (0.7 * 2640.0) * 2.0 * 60.0).epsilon(1e-4));
}

TEST_CASE("chain agrees with the independent oracle") {
  for (double u : {1.0, 5.0, 10.0, 20.0, 30.0}) {
    for (double md : {5.0, 10.0, 18.0, 25.0, 30.0}) {
      for (double d : {1.0, 2.0, 3.0, 4.0}) {
        const testing::OracleResult expect = testing::oracle_cf_ros(u, md, d);
        const CriticalFlowResult got =
            critical_flow(FuelModel{}, ros_env(u, md, d), SpreadParams{}, CfPath::RateOfSpread);
        CHECK(got.cf_area == doctest::Approx(expect.cf_area).epsilon(1e-9));
        CHECK(got.cf_linear == doctest::Approx(expect.cf_linear).epsilon(1e-9));
      }
    }
  }
}
