#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "firesim/ca_engine.hpp"
#include "firesim/fire_physics.hpp"
#include "firesim/swarm_model.hpp"

// Scenario file parsing and validation, deterministic random-field
// generation, and the CSV / ASCII-grid writers. The scenario format is a
// single JSON document with a versioned schema; unknown keys are rejected.

namespace firesim {

// Parse or validation failure; the message names the offending field.
class scenario_error : public std::runtime_error {
 public:
  explicit scenario_error(const std::string& what) : std::runtime_error(what) {}
};

struct GeneratorSpec {
  double grass_weight = 0.5;
  double shrub_weight = 0.5;
  double sparse_weight = 1.0 / 3.0;
  double normal_weight = 1.0 / 3.0;
  double dense_weight = 1.0 / 3.0;
};

struct GeneratedFields {
  std::vector<VegType> veg;
  std::vector<VegDensity> density;
  std::vector<double> moisture;
};

// Seeded categorical fields; every cell is an independent deterministic
// draw, so the result does not depend on evaluation order.
GeneratedFields generate_fields(int rows, int cols, const GeneratorSpec& spec,
                                std::uint64_t seed, double grass_moisture = 0.18,
                                double shrub_moisture = 0.24);

// Water-line sizing directives carried by the scenario.
struct AttackSpec {
  std::optional<double> cf_linear;  // pinned CF, L/min/m
  std::optional<int> nc;            // pinned cell count for the water line
  FrontOrientation orientation = FrontOrientation::Straight;
};

struct ScenarioFile {
  int schema_version = 1;
  FuelModel fuel;
  SpreadParams spread;
  FireEnvironment environment;
  std::vector<PlatformConfig> platforms;
  GridScenario grid;  // generated fields are materialized at load time
  AttackSpec attack;
  std::vector<std::string> outputs{"timeseries", "snapshot"};
};

ScenarioFile load_scenario(const std::string& path);
ScenarioFile parse_scenario(const std::string& text, const std::string& origin = "<string>");

// Canonical serialization: every field explicit, matrices materialized.
// parse_scenario(serialize_scenario(s)) reproduces s exactly.
std::string serialize_scenario(const ScenarioFile& scenario);

// ---- output writers ----
// CSV conventions: optional `# key=value` metadata lines, then one header
// line, '\n' newlines, '.' decimal point, no thousands separators.

using Metadata = std::vector<std::pair<std::string, std::string>>;

void write_timeseries(const std::vector<TimeSeriesRecord>& records, const std::string& path,
                      const Metadata& metadata = {});

// ASCII grid of state digits 0-4, one row per line.
void write_snapshot(const SimState& sim, const std::string& path);
std::string snapshot_string(const SimState& sim);

struct Curve {
  std::string x_name;
  std::vector<double> x;
  std::vector<std::pair<std::string, std::vector<double>>> series;
};

void write_curve(const Curve& curve, const std::string& path, const Metadata& metadata = {});

// Minimal reader for the CSV dialect above (used by tests and round trips).
struct CsvTable {
  Metadata metadata;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::vector<double> column_as_doubles(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

}  // namespace firesim
