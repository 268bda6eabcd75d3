#include "firesim/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "firesim/rng.hpp"
#include "json.hpp"

namespace firesim {

namespace {

using ordered_json = nlohmann::ordered_json;
using nlohmann::json;

constexpr std::uint64_t kVegSalt = 1;
constexpr std::uint64_t kDensitySalt = 2;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw scenario_error(path.empty() ? what : path + ": " + what);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail(path, "unknown key \"" + item.key() + "\"");
  }
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

void read_number(const json& obj, const std::string& path, const char* key, double& out) {
  if (const json* v = find(obj, key)) out = as_number(*v, path + "." + key);
}

void read_int(const json& obj, const std::string& path, const char* key, int& out) {
  if (const json* v = find(obj, key)) out = as_int(*v, path + "." + key);
}

std::vector<double> read_matrix(const json& v, const std::string& path, int rows, int cols) {
  if (!v.is_array() || static_cast<int>(v.size()) != rows) {
    fail(path, "expected an array of " + std::to_string(rows) + " rows");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = v[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      fail(path, "row " + std::to_string(r) + " must have " + std::to_string(cols) + " columns");
    }
    for (const json& cell : row) out.push_back(as_number(cell, path));
  }
  return out;
}

GridPos read_pos(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) fail(path, "expected a [row, col] pair");
  return {as_int(v[0], path), as_int(v[1], path)};
}

FuelModel parse_fuel(const json& obj, const std::string& path) {
  check_keys(obj, path,
             {"heat_of_combustion", "heat_of_gasification", "convective_coeff",
              "air_specific_heat", "oxygen_mass_fraction", "oxygen_heat_of_combustion",
              "convective_loss_fraction", "water_efficiency", "water_enthalpy_change",
              "transmissivity", "radiative_fraction", "emissivity", "stefan_boltzmann",
              "fuel_temp_k", "gas_temp_k", "ambient_temp_k", "fuel_load_t_ha", "gravity"});
  FuelModel fuel;
  read_number(obj, path, "heat_of_combustion", fuel.heat_of_combustion);
  read_number(obj, path, "heat_of_gasification", fuel.heat_of_gasification);
  read_number(obj, path, "convective_coeff", fuel.convective_coeff);
  read_number(obj, path, "air_specific_heat", fuel.air_specific_heat);
  read_number(obj, path, "oxygen_mass_fraction", fuel.oxygen_mass_fraction);
  read_number(obj, path, "oxygen_heat_of_combustion", fuel.oxygen_heat_of_combustion);
  read_number(obj, path, "convective_loss_fraction", fuel.convective_loss_fraction);
  read_number(obj, path, "water_efficiency", fuel.water_efficiency);
  read_number(obj, path, "water_enthalpy_change", fuel.water_enthalpy_change);
  read_number(obj, path, "transmissivity", fuel.transmissivity);
  read_number(obj, path, "radiative_fraction", fuel.radiative_fraction);
  read_number(obj, path, "emissivity", fuel.emissivity);
  read_number(obj, path, "stefan_boltzmann", fuel.stefan_boltzmann);
  read_number(obj, path, "fuel_temp_k", fuel.fuel_temp_k);
  read_number(obj, path, "gas_temp_k", fuel.gas_temp_k);
  read_number(obj, path, "ambient_temp_k", fuel.ambient_temp_k);
  read_number(obj, path, "fuel_load_t_ha", fuel.fuel_load_t_ha);
  read_number(obj, path, "gravity", fuel.gravity);
  return fuel;
}

PlatformConfig parse_platform(const json& obj, const std::string& path) {
  check_keys(obj, path, {"drones", "payload_l", "cycle_min", "intervention_min", "position"});
  PlatformConfig cfg;
  read_int(obj, path, "drones", cfg.drones);
  read_number(obj, path, "payload_l", cfg.payload_l);
  read_number(obj, path, "cycle_min", cfg.cycle_min);
  read_number(obj, path, "intervention_min", cfg.intervention_min);
  if (const json* v = find(obj, "position")) {
    if (!v->is_array() || v->size() != 2) fail(path + ".position", "expected a [row, col] pair");
    cfg.row = as_number((*v)[0], path + ".position");
    cfg.col = as_number((*v)[1], path + ".position");
  }
  return cfg;
}

GeneratorSpec parse_generator(const json& obj, const std::string& path) {
  check_keys(obj, path, {"veg_weights", "density_weights"});
  GeneratorSpec spec;
  if (const json* v = find(obj, "veg_weights")) {
    check_keys(*v, path + ".veg_weights", {"grass", "shrub"});
    read_number(*v, path + ".veg_weights", "grass", spec.grass_weight);
    read_number(*v, path + ".veg_weights", "shrub", spec.shrub_weight);
  }
  if (const json* v = find(obj, "density_weights")) {
    check_keys(*v, path + ".density_weights", {"sparse", "normal", "dense"});
    read_number(*v, path + ".density_weights", "sparse", spec.sparse_weight);
    read_number(*v, path + ".density_weights", "normal", spec.normal_weight);
    read_number(*v, path + ".density_weights", "dense", spec.dense_weight);
  }
  return spec;
}

void parse_grid(const json& obj, const std::string& path, GridScenario& grid) {
  check_keys(obj, path,
             {"rows", "cols", "cell_m", "wind_kmh", "wind_direction_rad", "p0", "c1", "c2",
              "p_veg", "p_den", "moisture_coeff", "moisture_scale", "wind_prob_unit",
              "slope_coeff", "moisture", "generator", "veg_matrix", "density_matrix",
              "moisture_matrix", "elevation_matrix", "ignition", "seed", "max_steps",
              "minutes_per_step"});
  if (!find(obj, "rows")) fail(path, "rows is required");
  if (!find(obj, "cols")) fail(path, "cols is required");
  read_int(obj, path, "rows", grid.rows);
  read_int(obj, path, "cols", grid.cols);
  if (grid.rows < 1 || grid.cols < 1) fail(path, "grid must be non-empty");
  read_number(obj, path, "cell_m", grid.cell_m);
  read_number(obj, path, "wind_kmh", grid.wind_kmh);
  read_number(obj, path, "wind_direction_rad", grid.wind_dir_rad);
  read_number(obj, path, "p0", grid.p0);
  read_number(obj, path, "c1", grid.c1);
  read_number(obj, path, "c2", grid.c2);
  if (const json* v = find(obj, "p_veg")) {
    check_keys(*v, path + ".p_veg", {"grass", "shrub"});
    read_number(*v, path + ".p_veg", "grass", grid.p_veg_grass);
    read_number(*v, path + ".p_veg", "shrub", grid.p_veg_shrub);
  }
  if (const json* v = find(obj, "p_den")) {
    check_keys(*v, path + ".p_den", {"sparse", "normal", "dense"});
    read_number(*v, path + ".p_den", "sparse", grid.p_den_sparse);
    read_number(*v, path + ".p_den", "normal", grid.p_den_normal);
    read_number(*v, path + ".p_den", "dense", grid.p_den_dense);
  }
  read_number(obj, path, "moisture_coeff", grid.moisture_coeff);
  read_number(obj, path, "moisture_scale", grid.moisture_scale);
  if (const json* v = find(obj, "wind_prob_unit")) {
    const std::string unit = v->is_string() ? v->get<std::string>() : "";
    if (unit == "ms") {
      grid.wind_prob_in_kmh = false;
    } else if (unit == "kmh") {
      grid.wind_prob_in_kmh = true;
    } else {
      fail(path + ".wind_prob_unit", "expected \"ms\" or \"kmh\"");
    }
  }
  if (const json* v = find(obj, "slope_coeff")) {
    grid.slope_coeff = as_number(*v, path + ".slope_coeff");
  }
  if (const json* v = find(obj, "moisture")) {
    check_keys(*v, path + ".moisture", {"grass", "shrub"});
    read_number(*v, path + ".moisture", "grass", grid.grass_moisture);
    read_number(*v, path + ".moisture", "shrub", grid.shrub_moisture);
  }
  if (const json* v = find(obj, "seed")) {
    if (!v->is_number_integer()) fail(path + ".seed", "expected an integer");
    grid.seed = v->get<std::uint64_t>();
  }
  read_int(obj, path, "max_steps", grid.max_steps);
  if (const json* v = find(obj, "minutes_per_step")) {
    grid.minutes_per_step = as_number(*v, path + ".minutes_per_step");
  }
  if (const json* v = find(obj, "ignition")) {
    if (!v->is_array()) fail(path + ".ignition", "expected an array of [row, col] pairs");
    for (const json& cell : *v) grid.ignition.push_back(read_pos(cell, path + ".ignition"));
  }

  const int rows = grid.rows;
  const int cols = grid.cols;
  const json* veg_matrix = find(obj, "veg_matrix");
  const json* density_matrix = find(obj, "density_matrix");
  const json* moisture_matrix = find(obj, "moisture_matrix");
  const json* elevation_matrix = find(obj, "elevation_matrix");

  GeneratorSpec generator;
  if (const json* v = find(obj, "generator")) generator = parse_generator(*v, path + ".generator");
  GeneratedFields generated;
  if (!veg_matrix || !density_matrix) {
    try {
      generated = generate_fields(rows, cols, generator, grid.seed, grid.grass_moisture,
                                  grid.shrub_moisture);
    } catch (const std::invalid_argument& err) {
      fail(path + ".generator", err.what());
    }
  }

  if (veg_matrix) {
    const std::vector<double> raw = read_matrix(*veg_matrix, path + ".veg_matrix", rows, cols);
    grid.veg.reserve(raw.size());
    for (double v : raw) {
      if (v != 0.0 && v != 1.0 && v != 2.0) {
        fail(path + ".veg_matrix", "cells must be 0 (grass), 1 (shrub) or 2 (barren)");
      }
      grid.veg.push_back(static_cast<VegType>(static_cast<int>(v)));
    }
  } else {
    grid.veg = std::move(generated.veg);
  }

  if (density_matrix) {
    const std::vector<double> raw =
        read_matrix(*density_matrix, path + ".density_matrix", rows, cols);
    grid.density.reserve(raw.size());
    for (double v : raw) {
      if (v != 0.0 && v != 1.0 && v != 2.0) {
        fail(path + ".density_matrix", "cells must be 0 (sparse), 1 (normal) or 2 (dense)");
      }
      grid.density.push_back(static_cast<VegDensity>(static_cast<int>(v)));
    }
  } else {
    grid.density = std::move(generated.density);
  }

  if (moisture_matrix) {
    grid.moisture = read_matrix(*moisture_matrix, path + ".moisture_matrix", rows, cols);
  } else {
    // Per-type defaults, materialized against the final vegetation field.
    grid.moisture.reserve(grid.veg.size());
    for (VegType v : grid.veg) {
      grid.moisture.push_back(v == VegType::Shrub ? grid.shrub_moisture : grid.grass_moisture);
    }
  }

  if (elevation_matrix) {
    grid.elevation = read_matrix(*elevation_matrix, path + ".elevation_matrix", rows, cols);
  }
}

AttackSpec parse_attack(const json& obj, const std::string& path) {
  check_keys(obj, path, {"cf_linear", "nc", "orientation"});
  AttackSpec attack;
  if (const json* v = find(obj, "cf_linear")) {
    attack.cf_linear = as_number(*v, path + ".cf_linear");
    if (*attack.cf_linear <= 0) fail(path + ".cf_linear", "must be positive");
  }
  if (const json* v = find(obj, "nc")) {
    attack.nc = as_int(*v, path + ".nc");
    if (*attack.nc < 0) fail(path + ".nc", "must be non-negative");
  }
  if (const json* v = find(obj, "orientation")) {
    const std::string s = v->is_string() ? v->get<std::string>() : "";
    if (s == "straight") {
      attack.orientation = FrontOrientation::Straight;
    } else if (s == "diagonal") {
      attack.orientation = FrontOrientation::Diagonal;
    } else {
      fail(path + ".orientation", "expected \"straight\" or \"diagonal\"");
    }
  }
  return attack;
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

void write_metadata(std::ofstream& out, const Metadata& metadata) {
  for (const auto& [key, value] : metadata) out << "# " << key << "=" << value << "\n";
}

}  // namespace

GeneratedFields generate_fields(int rows, int cols, const GeneratorSpec& spec,
                                std::uint64_t seed, double grass_moisture,
                                double shrub_moisture) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("generate_fields: grid must be non-empty");
  const double veg_sum = spec.grass_weight + spec.shrub_weight;
  if (std::abs(veg_sum - 1.0) > 1e-9) {
    throw std::invalid_argument("generate_fields: veg_weights must sum to 1");
  }
  const double den_sum = spec.sparse_weight + spec.normal_weight + spec.dense_weight;
  if (std::abs(den_sum - 1.0) > 1e-9) {
    throw std::invalid_argument("generate_fields: density_weights must sum to 1");
  }
  if (spec.grass_weight < 0 || spec.shrub_weight < 0 || spec.sparse_weight < 0 ||
      spec.normal_weight < 0 || spec.dense_weight < 0) {
    throw std::invalid_argument("generate_fields: weights must be non-negative");
  }

  const auto n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  GeneratedFields fields;
  fields.veg.reserve(n);
  fields.density.reserve(n);
  fields.moisture.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double uv = hash_uniform(seed, kVegSalt, i);
    const VegType veg = uv < spec.grass_weight ? VegType::Grass : VegType::Shrub;
    fields.veg.push_back(veg);

    const double ud = hash_uniform(seed, kDensitySalt, i);
    VegDensity den = VegDensity::Dense;
    if (ud < spec.sparse_weight) {
      den = VegDensity::Sparse;
    } else if (ud < spec.sparse_weight + spec.normal_weight) {
      den = VegDensity::Normal;
    }
    fields.density.push_back(den);
    fields.moisture.push_back(veg == VegType::Shrub ? shrub_moisture : grass_moisture);
  }
  return fields;
}

ScenarioFile parse_scenario(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw scenario_error(origin + ": " + err.what());
  }
  if (!doc.is_object()) throw scenario_error(origin + ": top level must be an object");

  check_keys(doc, origin,
             {"schema_version", "fuel", "spread", "environment", "platforms", "grid", "attack",
              "outputs"});

  ScenarioFile scenario;
  if (const json* v = find(doc, "schema_version")) {
    scenario.schema_version = as_int(*v, origin + ".schema_version");
    if (scenario.schema_version != 1) {
      fail(origin + ".schema_version", "unsupported schema version");
    }
  }
  if (const json* v = find(doc, "fuel")) scenario.fuel = parse_fuel(*v, origin + ".fuel");
  if (const json* v = find(doc, "spread")) {
    check_keys(*v, origin + ".spread", {"a", "b", "c"});
    read_number(*v, origin + ".spread", "a", scenario.spread.a);
    read_number(*v, origin + ".spread", "b", scenario.spread.b);
    read_number(*v, origin + ".spread", "c", scenario.spread.c);
  }
  if (const json* v = find(doc, "environment")) {
    check_keys(*v, origin + ".environment",
               {"wind_kmh", "moisture_pct", "flame_depth_m", "flame_length_m"});
    read_number(*v, origin + ".environment", "wind_kmh", scenario.environment.wind_kmh);
    read_number(*v, origin + ".environment", "moisture_pct", scenario.environment.moisture_pct);
    read_number(*v, origin + ".environment", "flame_depth_m", scenario.environment.flame_depth_m);
    if (const json* fl = find(*v, "flame_length_m")) {
      scenario.environment.flame_length_m = as_number(*fl, origin + ".environment.flame_length_m");
    }
  }
  if (const json* v = find(doc, "platforms")) {
    if (!v->is_array()) fail(origin + ".platforms", "expected an array");
    int i = 0;
    for (const json& p : *v) {
      scenario.platforms.push_back(
          parse_platform(p, origin + ".platforms[" + std::to_string(i++) + "]"));
    }
  }
  const json* grid = find(doc, "grid");
  if (!grid || !grid->is_object() || grid->empty()) {
    fail(origin, "grid section is required and must not be empty");
  }
  parse_grid(*grid, origin + ".grid", scenario.grid);
  if (const json* v = find(doc, "attack")) scenario.attack = parse_attack(*v, origin + ".attack");
  if (const json* v = find(doc, "outputs")) {
    if (!v->is_array()) fail(origin + ".outputs", "expected an array of writer names");
    scenario.outputs.clear();
    for (const json& o : *v) {
      const std::string name = o.is_string() ? o.get<std::string>() : "";
      if (name != "timeseries" && name != "snapshot") {
        fail(origin + ".outputs", "unknown writer \"" + name + "\"");
      }
      scenario.outputs.push_back(name);
    }
  }

  try {
    scenario.fuel.validate();
    scenario.environment.validate();
    for (const PlatformConfig& p : scenario.platforms) p.validate();
    scenario.grid.validate();
  } catch (const std::invalid_argument& err) {
    throw scenario_error(origin + ": " + err.what());
  }
  return scenario;
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw scenario_error("cannot open scenario file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path);
}

std::string serialize_scenario(const ScenarioFile& s) {
  ordered_json doc;
  doc["schema_version"] = s.schema_version;

  ordered_json fuel;
  fuel["heat_of_combustion"] = s.fuel.heat_of_combustion;
  fuel["heat_of_gasification"] = s.fuel.heat_of_gasification;
  fuel["convective_coeff"] = s.fuel.convective_coeff;
  fuel["air_specific_heat"] = s.fuel.air_specific_heat;
  fuel["oxygen_mass_fraction"] = s.fuel.oxygen_mass_fraction;
  fuel["oxygen_heat_of_combustion"] = s.fuel.oxygen_heat_of_combustion;
  fuel["convective_loss_fraction"] = s.fuel.convective_loss_fraction;
  fuel["water_efficiency"] = s.fuel.water_efficiency;
  fuel["water_enthalpy_change"] = s.fuel.water_enthalpy_change;
  fuel["transmissivity"] = s.fuel.transmissivity;
  fuel["radiative_fraction"] = s.fuel.radiative_fraction;
  fuel["emissivity"] = s.fuel.emissivity;
  fuel["stefan_boltzmann"] = s.fuel.stefan_boltzmann;
  fuel["fuel_temp_k"] = s.fuel.fuel_temp_k;
  fuel["gas_temp_k"] = s.fuel.gas_temp_k;
  fuel["ambient_temp_k"] = s.fuel.ambient_temp_k;
  fuel["fuel_load_t_ha"] = s.fuel.fuel_load_t_ha;
  fuel["gravity"] = s.fuel.gravity;
  doc["fuel"] = std::move(fuel);

  doc["spread"] = {{"a", s.spread.a}, {"b", s.spread.b}, {"c", s.spread.c}};

  ordered_json env;
  env["wind_kmh"] = s.environment.wind_kmh;
  env["moisture_pct"] = s.environment.moisture_pct;
  env["flame_depth_m"] = s.environment.flame_depth_m;
  if (s.environment.flame_length_m) env["flame_length_m"] = *s.environment.flame_length_m;
  doc["environment"] = std::move(env);

  ordered_json platforms = ordered_json::array();
  for (const PlatformConfig& p : s.platforms) {
    ordered_json obj;
    obj["drones"] = p.drones;
    obj["payload_l"] = p.payload_l;
    obj["cycle_min"] = p.cycle_min;
    obj["intervention_min"] = p.intervention_min;
    obj["position"] = {p.row, p.col};
    platforms.push_back(std::move(obj));
  }
  doc["platforms"] = std::move(platforms);

  const GridScenario& g = s.grid;
  ordered_json grid;
  grid["rows"] = g.rows;
  grid["cols"] = g.cols;
  grid["cell_m"] = g.cell_m;
  grid["wind_kmh"] = g.wind_kmh;
  grid["wind_direction_rad"] = g.wind_dir_rad;
  grid["p0"] = g.p0;
  grid["c1"] = g.c1;
  grid["c2"] = g.c2;
  grid["p_veg"] = {{"grass", g.p_veg_grass}, {"shrub", g.p_veg_shrub}};
  grid["p_den"] = {{"sparse", g.p_den_sparse}, {"normal", g.p_den_normal},
                   {"dense", g.p_den_dense}};
  grid["moisture_coeff"] = g.moisture_coeff;
  grid["moisture_scale"] = g.moisture_scale;
  grid["wind_prob_unit"] = g.wind_prob_in_kmh ? "kmh" : "ms";
  if (g.slope_coeff) grid["slope_coeff"] = *g.slope_coeff;
  grid["moisture"] = {{"grass", g.grass_moisture}, {"shrub", g.shrub_moisture}};
  grid["seed"] = g.seed;
  grid["max_steps"] = g.max_steps;
  if (g.minutes_per_step) grid["minutes_per_step"] = *g.minutes_per_step;

  auto matrix_of = [&](auto value_at) {
    ordered_json matrix = ordered_json::array();
    for (int r = 0; r < g.rows; ++r) {
      ordered_json row = ordered_json::array();
      for (int c = 0; c < g.cols; ++c) row.push_back(value_at(g.index(r, c)));
      matrix.push_back(std::move(row));
    }
    return matrix;
  };
  grid["veg_matrix"] = matrix_of([&](std::size_t i) { return static_cast<int>(g.veg_at(i)); });
  grid["density_matrix"] =
      matrix_of([&](std::size_t i) { return static_cast<int>(g.density_at(i)); });
  grid["moisture_matrix"] = matrix_of([&](std::size_t i) { return g.moisture_at(i); });
  if (!g.elevation.empty()) {
    grid["elevation_matrix"] = matrix_of([&](std::size_t i) { return g.elevation_at(i); });
  }
  ordered_json ignition = ordered_json::array();
  for (const GridPos& cell : g.ignition) ignition.push_back({cell.row, cell.col});
  grid["ignition"] = std::move(ignition);
  doc["grid"] = std::move(grid);

  ordered_json attack;
  if (s.attack.cf_linear) attack["cf_linear"] = *s.attack.cf_linear;
  if (s.attack.nc) attack["nc"] = *s.attack.nc;
  attack["orientation"] =
      s.attack.orientation == FrontOrientation::Diagonal ? "diagonal" : "straight";
  doc["attack"] = std::move(attack);

  doc["outputs"] = s.outputs;
  return doc.dump(2) + "\n";
}

void write_timeseries(const std::vector<TimeSeriesRecord>& records, const std::string& path,
                      const Metadata& metadata) {
  std::ofstream out = open_out(path);
  write_metadata(out, metadata);
  out << "step,clock_min,burning_cells,burned_cells,water_cells,burned_area_m2\n";
  for (const TimeSeriesRecord& rec : records) {
    out << rec.step << ',' << fmt(rec.clock_min) << ',' << rec.burning_cells << ','
        << rec.burned_cells << ',' << rec.water_cells << ',' << fmt(rec.burned_area_m2) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string snapshot_string(const SimState& sim) {
  std::string text;
  text.reserve(static_cast<std::size_t>(sim.rows) * (sim.cols + 1));
  for (int r = 0; r < sim.rows; ++r) {
    for (int c = 0; c < sim.cols; ++c) {
      text.push_back(static_cast<char>('0' + static_cast<int>(sim.at(r, c))));
    }
    text.push_back('\n');
  }
  return text;
}

void write_snapshot(const SimState& sim, const std::string& path) {
  std::ofstream out = open_out(path);
  out << snapshot_string(sim);
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_curve(const Curve& curve, const std::string& path, const Metadata& metadata) {
  for (const auto& [name, values] : curve.series) {
    if (values.size() != curve.x.size()) {
      throw std::logic_error("write_curve: series \"" + name + "\" length mismatch");
    }
  }
  std::ofstream out = open_out(path);
  write_metadata(out, metadata);
  out << curve.x_name;
  for (const auto& [name, values] : curve.series) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < curve.x.size(); ++i) {
    out << fmt(curve.x[i]);
    for (const auto& [name, values] : curve.series) out << ',' << fmt(values[i]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<double> CsvTable::column_as_doubles(const std::string& name) const {
  std::size_t index = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) {
      index = i;
      break;
    }
  }
  if (index == header.size()) throw std::runtime_error("csv column not found: " + name);
  std::vector<double> values;
  values.reserve(rows.size());
  for (const auto& row : rows) {
    if (index >= row.size()) throw std::runtime_error("csv row too short for column: " + name);
    values.push_back(std::stod(row[index]));
  }
  return values;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body.front() == ' ') body.erase(0, 1);
      const auto eq = body.find('=');
      if (eq == std::string::npos) {
        table.metadata.emplace_back(body, "");
      } else {
        table.metadata.emplace_back(body.substr(0, eq), body.substr(eq + 1));
      }
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  return table;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open csv: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str());
}

}  // namespace firesim
