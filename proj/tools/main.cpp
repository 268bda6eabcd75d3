#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "firesim/ca_engine.hpp"
#include "firesim/figures.hpp"
#include "firesim/fire_physics.hpp"
#include "firesim/rng.hpp"
#include "firesim/scenario_io.hpp"
#include "firesim/swarm_model.hpp"

using namespace firesim;

namespace {

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// FIRESIM_OUT overrides the base of the default out/<subcommand> layout.
std::string out_default(const char* subcommand) {
  const char* base = std::getenv("FIRESIM_OUT");
  return std::string(base ? base : "out") + "/" + subcommand;
}

void require_csv(const std::string& format, const char* cmd) {
  if (format != "csv") throw usage_error(std::string(cmd) + ": --format supports only csv");
}

struct AxisSpec {
  std::vector<double> values;
  bool ranged = false;

  double scalar() const { return values.front(); }
};

double parse_double(const std::string& text, const std::string& flag) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw usage_error(flag + ": expected a number, got \"" + text + "\"");
  }
}

// A flag value is either a scalar or a start:stop:step sweep.
AxisSpec parse_axis(const std::string& text, const std::string& flag) {
  AxisSpec axis;
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    axis.values.push_back(parse_double(text, flag));
    return axis;
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) {
    throw usage_error(flag + ": ranges are start:stop:step");
  }
  const double start = parse_double(text.substr(0, c1), flag);
  const double stop = parse_double(text.substr(c1 + 1, c2 - c1 - 1), flag);
  const double step = parse_double(text.substr(c2 + 1), flag);
  if (step <= 0 || stop < start) {
    throw usage_error(flag + ": range needs stop >= start and step > 0");
  }
  axis.ranged = true;
  const int count = static_cast<int>(std::lround((stop - start) / step));
  for (int i = 0; i <= count; ++i) axis.values.push_back(start + i * step);
  return axis;
}

void kv(const char* key, double value) { std::printf("%s %.12g\n", key, value); }
void kv(const char* key, long long value) { std::printf("%s %lld\n", key, value); }

std::string meta_num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void print_breakdown(const CriticalFlowResult& r) {
  kv("cf_area_kg_m2_s", r.cf_area);
  kv("cf_linear_lmin_m", r.cf_linear);
  kv("cf_area_raw", r.cf_area_raw);
  kv("mass_burning_rate_kg_m2_s", r.mass_burning_rate);
  kv("intensity_kw_m", r.intensity);
  kv("flame_length_m", r.flame_length_m);
  kv("spread_rate_kmh", r.spread_rate_kmh);
  kv("flame_angle_deg", r.flame_angle_deg);
  kv("flame_height_m", r.flame_height_m);
  kv("flame_depth_m", r.flame_depth_m);
  kv("q_ext_rad_kw_m2", r.q_ext_rad);
  kv("q_ext_conv_kw_m2", r.q_ext_conv);
  kv("q_loss_rad_kw_m2", r.q_loss_rad);
  kv("q_loss_conv_kw_m2", r.q_loss_conv);
}

struct CfFlags {
  std::string wind, moisture, depth, flame_length;
  double ir = 0.0;
  bool has_ir = false;
  std::string out = out_default("cf");
  std::string format = "csv";
};

int run_cf(const CfFlags& flags) {
  require_csv(flags.format, "cf");
  const FuelModel fuel;
  const SpreadParams spread;
  Metadata meta;

  if (!flags.flame_length.empty()) {
    if (!flags.moisture.empty() || !flags.depth.empty()) {
      throw usage_error("cf: --flame-length conflicts with --moisture/--depth");
    }
    if (!flags.has_ir) throw usage_error("cf: --ir is required with --flame-length");
    const AxisSpec lf = parse_axis(flags.flame_length, "--flame-length");
    const AxisSpec wind =
        flags.wind.empty() ? AxisSpec{{0.0}, false} : parse_axis(flags.wind, "--wind");
    if (wind.ranged) throw usage_error("cf: only --flame-length may be a range on this path");
    meta = {{"path", "flame-length"},
            {"ir", meta_num(flags.ir)},
            {"wind_kmh", meta_num(wind.scalar())}};

    FireEnvironment env;
    env.wind_kmh = wind.scalar();
    if (!lf.ranged) {
      env.flame_length_m = lf.scalar();
      print_breakdown(critical_flow(fuel, env, spread, CfPath::FlameLength, flags.ir));
      return 0;
    }
    Curve curve;
    curve.x_name = "flame_length_m";
    curve.x = lf.values;
    std::vector<double> area, linear;
    for (double v : lf.values) {
      env.flame_length_m = v;
      const CriticalFlowResult r = critical_flow(fuel, env, spread, CfPath::FlameLength, flags.ir);
      area.push_back(r.cf_area);
      linear.push_back(r.cf_linear);
    }
    curve.series.emplace_back("cf_area_kg_m2_s", std::move(area));
    curve.series.emplace_back("cf_linear_lmin_m", std::move(linear));
    const std::string path = flags.out + "/cf_curve.csv";
    write_curve(curve, path, meta);
    std::printf("wrote %s\n", path.c_str());
    return 0;
  }

  if (flags.wind.empty()) throw usage_error("cf: --wind is required on the rate-of-spread path");
  if (flags.moisture.empty()) {
    throw usage_error("cf: --moisture is required on the rate-of-spread path");
  }
  if (flags.depth.empty()) throw usage_error("cf: --depth is required on the rate-of-spread path");

  AxisSpec axes[3] = {parse_axis(flags.wind, "--wind"), parse_axis(flags.moisture, "--moisture"),
                      parse_axis(flags.depth, "--depth")};
  const int ranged = (axes[0].ranged ? 1 : 0) + (axes[1].ranged ? 1 : 0) + (axes[2].ranged ? 1 : 0);
  if (ranged > 1) throw usage_error("cf: at most one of --wind/--moisture/--depth may be a range");

  auto result_at = [&](double wind, double moisture, double depth) {
    FireEnvironment env;
    env.wind_kmh = wind;
    env.moisture_pct = moisture;
    env.flame_depth_m = depth;
    return critical_flow(fuel, env, spread, CfPath::RateOfSpread);
  };

  if (ranged == 0) {
    print_breakdown(result_at(axes[0].scalar(), axes[1].scalar(), axes[2].scalar()));
    return 0;
  }

  const char* names[3] = {"wind_kmh", "moisture_pct", "depth_m"};
  const int which = axes[0].ranged ? 0 : (axes[1].ranged ? 1 : 2);
  Curve curve;
  curve.x_name = names[which];
  curve.x = axes[which].values;
  std::vector<double> area, linear;
  for (double v : axes[which].values) {
    const double wind = which == 0 ? v : axes[0].scalar();
    const double moisture = which == 1 ? v : axes[1].scalar();
    const double depth = which == 2 ? v : axes[2].scalar();
    const CriticalFlowResult r = result_at(wind, moisture, depth);
    area.push_back(r.cf_area);
    linear.push_back(r.cf_linear);
  }
  curve.series.emplace_back("cf_area_kg_m2_s", std::move(area));
  curve.series.emplace_back("cf_linear_lmin_m", std::move(linear));
  meta = {{"path", "rate-of-spread"}};
  for (int i = 0; i < 3; ++i) {
    if (i != which) meta.emplace_back(names[i], meta_num(axes[i].scalar()));
  }
  const std::string path = flags.out + "/cf_curve.csv";
  write_curve(curve, path, meta);
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

struct SwarmFlags {
  int drones = 120;
  double payload = 20.0;
  double cycle = 6.0;
  int platforms = 1;
  double meters = 0.0;
  bool has_cf = false;
  double cf = 0.0;
  std::string wind, moisture, depth;
};

double resolve_cf(const SwarmFlags& flags, const char* cmd) {
  if (flags.has_cf) return flags.cf;
  if (flags.wind.empty() || flags.moisture.empty() || flags.depth.empty()) {
    throw usage_error(std::string(cmd) + ": provide --cf or all of --wind/--moisture/--depth");
  }
  FireEnvironment env;
  env.wind_kmh = parse_double(flags.wind, "--wind");
  env.moisture_pct = parse_double(flags.moisture, "--moisture");
  env.flame_depth_m = parse_double(flags.depth, "--depth");
  return critical_flow(FuelModel{}, env, SpreadParams{}, CfPath::RateOfSpread).cf_linear;
}

PlatformConfig swarm_platform(const SwarmFlags& flags) {
  PlatformConfig cfg;
  cfg.drones = flags.drones;
  cfg.payload_l = flags.payload;
  cfg.cycle_min = flags.cycle;
  return cfg;
}

int run_flow(const SwarmFlags& flags) {
  const FlowReport r = drone_flow(swarm_platform(flags), flags.platforms);
  kv("discharges_per_drone_hour", r.discharges_per_hour);
  kv("platform_discharges_per_hour", r.platform_discharges_per_hour);
  kv("liters_per_hour", r.liters_per_hour);
  kv("flow_l_min", r.flow_l_min);
  if (flags.platforms > 1) kv("flow_l_min_total", r.flow_l_min * flags.platforms);
  return 0;
}

int run_meters(const SwarmFlags& flags) {
  const double cf = resolve_cf(flags, "meters");
  const FlowReport r = drone_flow(swarm_platform(flags), flags.platforms, cf);
  kv("cf_linear_lmin_m", cf);
  kv("flow_l_min", r.flow_l_min * flags.platforms);
  kv("front_meters", r.front_meters);
  return 0;
}

int run_drones(const SwarmFlags& flags) {
  const double cf = resolve_cf(flags, "drones");
  kv("cf_linear_lmin_m", cf);
  kv("required_flow_l_min", required_flow(flags.meters, cf));
  kv("required_drones",
     static_cast<long long>(required_drones(flags.meters, cf, flags.payload, flags.cycle)));
  return 0;
}

struct SimulateFlags {
  std::string scenario;
  int replicates = 1;
  bool paired = false;
  std::optional<double> ta_min;
  std::optional<int> nc;
  int platforms = 1;
  std::optional<std::uint64_t> seed;
  std::string out = out_default("simulate");
  std::string format = "csv";
};

bool wants(const ScenarioFile& s, const char* writer) {
  for (const std::string& name : s.outputs) {
    if (name == writer) return true;
  }
  return false;
}

int run_simulate(const SimulateFlags& flags) {
  if (flags.scenario.empty()) throw usage_error("simulate: --scenario is required");
  if (flags.replicates < 1) throw usage_error("simulate: --replicates must be >= 1");
  require_csv(flags.format, "simulate");
  ScenarioFile scenario = load_scenario(flags.scenario);
  if (flags.seed) scenario.grid.seed = *flags.seed;
  if (flags.ta_min) {
    if (scenario.platforms.empty()) throw usage_error("simulate: --ta-min needs a platform");
    scenario.platforms[0].intervention_min = *flags.ta_min;
  }
  if (flags.nc) scenario.attack.nc = *flags.nc;

  std::optional<InterventionPlan> plan;
  if (!scenario.platforms.empty()) plan = plan_from_scenario(scenario, flags.platforms);
  if (flags.paired && !plan) {
    throw usage_error("simulate: --paired needs a scenario with platforms");
  }

  Metadata meta{{"scenario", flags.scenario},
                {"seed", std::to_string(scenario.grid.seed)},
                {"replicates", std::to_string(flags.replicates)},
                {"platforms", std::to_string(flags.platforms)}};
  if (plan) {
    meta.emplace_back("nc", std::to_string(plan->cells_to_hold));
    meta.emplace_back("ta_min", meta_num(plan->platform.intervention_min));
    meta.emplace_back("cf_lmin_per_m", meta_num(plan->cf_linear));
  }

  const bool write_series = wants(scenario, "timeseries");
  const bool write_snap = wants(scenario, "snapshot");
  std::vector<RunResult> treated, baseline;
  for (int i = 0; i < flags.replicates; ++i) {
    const std::uint64_t seed = derive_seed(scenario.grid.seed, static_cast<std::uint64_t>(i));
    if (flags.paired) {
      PairedRunResult pair = paired_run(scenario.grid, *plan, seed);
      baseline.push_back(std::move(pair.baseline));
      treated.push_back(std::move(pair.treated));
    } else {
      treated.push_back(run(scenario.grid, plan ? &*plan : nullptr, seed));
    }
    if (write_series) {
      char name[64];
      std::snprintf(name, sizeof name, "/replicate_%03d.csv", i);
      write_timeseries(treated.back().series, flags.out + name, meta);
      if (flags.paired) {
        std::snprintf(name, sizeof name, "/replicate_%03d_baseline.csv", i);
        write_timeseries(baseline.back().series, flags.out + name, meta);
      }
    }
  }

  auto write_mean = [&](const std::vector<RunResult>& runs, const std::string& path) {
    const std::vector<double> mean = padded_mean_burned_area(runs);
    Curve curve;
    curve.x_name = "step";
    for (std::size_t i = 0; i < mean.size(); ++i) curve.x.push_back(static_cast<double>(i));
    curve.series.emplace_back("mean_burned_area_m2", mean);
    write_curve(curve, path, meta);
  };
  if (write_series) {
    write_mean(treated, flags.out + "/mean.csv");
    if (flags.paired) write_mean(baseline, flags.out + "/mean_baseline.csv");
  }
  if (write_snap) {
    write_snapshot(treated.front().final_state, flags.out + "/final.txt");
    if (flags.paired) {
      write_snapshot(baseline.front().final_state, flags.out + "/final_baseline.txt");
    }
  }

  std::vector<double> final_area;
  for (const RunResult& r : treated) final_area.push_back(r.series.back().burned_area_m2);
  kv("replicates", static_cast<long long>(flags.replicates));
  kv("final_burned_area_m2_mean", mean_of(final_area));
  kv("final_burned_area_m2_stderr", stderr_of(final_area));
  if (flags.paired) {
    std::vector<double> base_area;
    for (const RunResult& r : baseline) base_area.push_back(r.series.back().burned_area_m2);
    kv("baseline_final_burned_area_m2_mean", mean_of(base_area));
    kv("baseline_final_burned_area_m2_stderr", stderr_of(base_area));
  }
  return 0;
}

struct SweepFlags {
  std::string param;
  std::string range;
  double wind = 10.0, moisture = 18.0, depth = 2.0;
  int drones = 0;
  double payload = 20.0, cycle = 6.0;
  int platforms = 1;
  std::string out = out_default("sweep");
  std::string format = "csv";
};

int run_sweep(const SweepFlags& flags) {
  require_csv(flags.format, "sweep");
  if (flags.param != "wind" && flags.param != "moisture" && flags.param != "depth") {
    throw usage_error("sweep: --param must be wind, moisture or depth");
  }
  if (flags.range.empty()) throw usage_error("sweep: --range is required");
  const AxisSpec axis = parse_axis(flags.range, "--range");

  Curve curve;
  curve.x_name = flags.param == "wind"       ? "wind_kmh"
                 : flags.param == "moisture" ? "moisture_pct"
                                             : "depth_m";
  curve.x = axis.values;
  std::vector<double> cf_values, mf_values;
  for (double v : axis.values) {
    FireEnvironment env;
    env.wind_kmh = flags.param == "wind" ? v : flags.wind;
    env.moisture_pct = flags.param == "moisture" ? v : flags.moisture;
    env.flame_depth_m = flags.param == "depth" ? v : flags.depth;
    const double cf =
        critical_flow(FuelModel{}, env, SpreadParams{}, CfPath::RateOfSpread).cf_linear;
    cf_values.push_back(cf);
    if (flags.drones > 0) {
      PlatformConfig cfg;
      cfg.drones = flags.drones;
      cfg.payload_l = flags.payload;
      cfg.cycle_min = flags.cycle;
      mf_values.push_back(extinguishable_meters(cfg, flags.platforms, cf));
    }
  }
  curve.series.emplace_back("cf_linear_lmin_m", std::move(cf_values));
  if (flags.drones > 0) curve.series.emplace_back("front_meters", std::move(mf_values));

  Metadata meta{{"param", flags.param},
                {"wind_kmh", meta_num(flags.wind)},
                {"moisture_pct", meta_num(flags.moisture)},
                {"depth_m", meta_num(flags.depth)}};
  if (flags.drones > 0) {
    meta.emplace_back("drones", std::to_string(flags.drones));
    meta.emplace_back("payload_l", meta_num(flags.payload));
    meta.emplace_back("cycle_min", meta_num(flags.cycle));
    meta.emplace_back("platforms", std::to_string(flags.platforms));
  }
  const std::string path = flags.out + "/sweep.csv";
  write_curve(curve, path, meta);
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int run_reproduce(const std::string& figure, std::string out, int replicates) {
  if (out.empty()) out = out_default("reproduce") + "/" + figure;
  const std::vector<std::string> files = reproduce_figure(figure, out, replicates);
  for (const std::string& f : files) std::printf("wrote %s/%s\n", out.c_str(), f.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"firesim: wildfire suppression feasibility simulator"};
  app.require_subcommand(1);

  CfFlags cf_flags;
  CLI::App* cf = app.add_subcommand("cf", "critical water flow rate with full breakdown");
  cf->add_option("--wind", cf_flags.wind, "wind speed at 2 m, km/h (value or start:stop:step)");
  cf->add_option("--moisture", cf_flags.moisture, "dead fuel moisture, percent");
  cf->add_option("--depth", cf_flags.depth, "active flame depth, m");
  cf->add_option("--flame-length", cf_flags.flame_length, "flame length, m (flame-length path)");
  cf->add_option("--ir", cf_flags.ir, "heat release per unit area, kW/m^2")
      ->each([&cf_flags](const std::string&) { cf_flags.has_ir = true; });
  cf->add_option("--out", cf_flags.out, "output directory for curve CSVs");
  cf->add_option("--format", cf_flags.format, "output format (csv)");

  SwarmFlags flow_flags;
  CLI::App* flow = app.add_subcommand("flow", "sustained platform flow");
  SwarmFlags meters_flags;
  CLI::App* meters = app.add_subcommand("meters", "arrestable meters of front");
  SwarmFlags drones_flags;
  CLI::App* drones = app.add_subcommand("drones", "drones required for a front");
  auto add_swarm_options = [](CLI::App* cmd, SwarmFlags& f, bool with_meters) {
    cmd->add_option("--drones", f.drones, "drones per platform");
    cmd->add_option("--payload", f.payload, "payload per drone, L");
    cmd->add_option("--cycle-min", f.cycle, "full cycle time, min");
    cmd->add_option("--platforms", f.platforms, "platform count");
    cmd->add_option("--cf", f.cf, "critical flow, L/min per m")
        ->each([&f](const std::string&) { f.has_cf = true; });
    cmd->add_option("--wind", f.wind, "wind for computing CF, km/h");
    cmd->add_option("--moisture", f.moisture, "moisture for computing CF, percent");
    cmd->add_option("--depth", f.depth, "flame depth for computing CF, m");
    if (with_meters) cmd->add_option("--meters", f.meters, "front length to hold, m");
  };
  add_swarm_options(flow, flow_flags, false);
  add_swarm_options(meters, meters_flags, false);
  add_swarm_options(drones, drones_flags, true);

  SimulateFlags sim_flags;
  CLI::App* simulate = app.add_subcommand("simulate", "run the cellular-automata fire model");
  simulate->add_option("--scenario", sim_flags.scenario, "scenario JSON file");
  simulate->add_option("--replicates", sim_flags.replicates, "Monte Carlo replicates");
  simulate->add_flag("--paired", sim_flags.paired, "also run the no-intervention baseline");
  double ta_tmp = 0.0;
  simulate->add_option("--ta-min", ta_tmp, "override intervention start, min")
      ->each([&sim_flags, &ta_tmp](const std::string&) { sim_flags.ta_min = ta_tmp; });
  int nc_tmp = 0;
  simulate->add_option("--nc", nc_tmp, "override water-line cell count")
      ->each([&sim_flags, &nc_tmp](const std::string&) { sim_flags.nc = nc_tmp; });
  simulate->add_option("--platforms", sim_flags.platforms, "platform count");
  std::uint64_t seed_tmp = 0;
  simulate->add_option("--seed", seed_tmp, "override scenario seed")
      ->each([&sim_flags, &seed_tmp](const std::string&) { sim_flags.seed = seed_tmp; });
  simulate->add_option("--out", sim_flags.out, "output directory");
  simulate->add_option("--format", sim_flags.format, "output format (csv)");

  SweepFlags sweep_flags;
  CLI::App* sweep = app.add_subcommand("sweep", "sweep one fire parameter");
  sweep->add_option("--param", sweep_flags.param, "wind | moisture | depth");
  sweep->add_option("--range", sweep_flags.range, "start:stop:step");
  sweep->add_option("--wind", sweep_flags.wind, "base wind, km/h");
  sweep->add_option("--moisture", sweep_flags.moisture, "base moisture, percent");
  sweep->add_option("--depth", sweep_flags.depth, "base flame depth, m");
  sweep->add_option("--drones", sweep_flags.drones, "drones per platform (adds front_meters)");
  sweep->add_option("--payload", sweep_flags.payload, "payload per drone, L");
  sweep->add_option("--cycle-min", sweep_flags.cycle, "cycle time, min");
  sweep->add_option("--platforms", sweep_flags.platforms, "platform count");
  sweep->add_option("--out", sweep_flags.out, "output directory");
  sweep->add_option("--format", sweep_flags.format, "output format (csv)");

  std::string figure;
  std::string reproduce_out;
  int reproduce_replicates = 30;
  CLI::App* reproduce = app.add_subcommand("reproduce", "emit a figure's CSV bundle");
  reproduce->add_option("figure", figure, "fig2 | fig3 | fig4 | fig5")->required();
  reproduce->add_option("--out", reproduce_out, "output directory");
  reproduce->add_option("--replicates", reproduce_replicates, "replicates for fig5");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*cf) return run_cf(cf_flags);
    if (*flow) return run_flow(flow_flags);
    if (*meters) return run_meters(meters_flags);
    if (*drones) return run_drones(drones_flags);
    if (*simulate) return run_simulate(sim_flags);
    if (*sweep) return run_sweep(sweep_flags);
    if (*reproduce) return run_reproduce(figure, reproduce_out, reproduce_replicates);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
