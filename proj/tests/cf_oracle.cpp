#include "cf_oracle.hpp"

#include <cmath>

namespace firesim::testing {

namespace {
const double PI = std::acos(-1.0);
}

double oracle_flame_angle_deg(double wind_ms, double flame_length_m) {
  if (wind_ms == 0.0) return 90.0;
  // g(A) = cot(A) - 1.22 sqrt(U^2 / (9.81 * H_f)) with H_f = L_f sin A.
  // g is positive near 0 and negative at 90 degrees with a single sign
  // change, so plain bisection on the raw equation works.
  auto residual = [&](double a_rad) {
    const double hf = flame_length_m * std::sin(a_rad);
    return std::cos(a_rad) / std::sin(a_rad) -
           1.22 * std::sqrt(wind_ms * wind_ms / (9.81 * hf));
  };
  double lo = 1e-9;
  double hi = PI / 2.0;
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi) * 180.0 / PI;
}

OracleResult oracle_cf_ros(double wind_kmh, double moisture_pct, double depth_m) {
  // Table constants, spelled out locally on purpose.
  const double dHc = 19500.0, Lv = 1800.0, h = 0.020, cp = 1.0;
  const double YO2 = 0.233, dHRO2 = 13480.0, phi = 0.3;
  const double eta = 0.7, Lvw = 2640.0, tau = 1.0, rc = 0.20;
  const double eps = 0.6, sigma = 5.67e-11;
  const double Tf = 693.0, Tg = 800.0, Ta = 293.0, W = 15.0;
  const double a = 3.258, b = 0.958, c = 0.111;

  OracleResult out;
  const double mcr = h / cp * std::log(1.0 + YO2 * dHRO2 / (phi * dHc));
  const double ros = 0.06 * a * std::pow(wind_kmh, b) * std::exp(-c * moisture_pct);
  out.intensity = dHc * W * ros / 36.0;
  out.flame_length_m =
      out.intensity > 0.0 ? std::pow(out.intensity / 259.833, 1.0 / 2.174) : 0.0;

  double q_e_rad = 0.0, q_e_conv = 0.0;
  out.angle_deg = 90.0;
  if (out.flame_length_m > 0.0) {
    out.angle_deg = oracle_flame_angle_deg(wind_kmh / 3.6, out.flame_length_m);
    q_e_rad = rc * out.intensity / (2.0 * out.flame_length_m + depth_m) * phi * tau;
    if (out.angle_deg < 30.0) q_e_conv = h * (Tg - Tf);
  }
  const double q_l_rad = eps * sigma * (Tf * Tf * Tf * Tf - Ta * Ta * Ta * Ta);
  const double q_l_conv = h * (Tf - Ta);

  const double raw =
      ((phi * dHc - Lv) * mcr + q_e_rad + q_e_conv - q_l_rad - q_l_conv) / (eta * Lvw);
  out.cf_area = raw > 0.0 ? raw : 0.0;
  out.cf_linear = out.cf_area * depth_m * 60.0;
  return out;
}

}  // namespace firesim::testing
