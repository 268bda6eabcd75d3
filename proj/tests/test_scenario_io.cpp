#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "firesim/figures.hpp"
#include "firesim/scenario_io.hpp"

using namespace firesim;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return text;
}

const char* kMinimal = R"({"grid": {"rows": 8, "cols": 9, "seed": 5}})";

}  // namespace

TEST_CASE("field generation") {
  SUBCASE("degenerate weights") {
    GeneratorSpec spec;
    spec.grass_weight = 0.0;
    spec.shrub_weight = 1.0;
    const GeneratedFields f = generate_fields(10, 10, spec, 1);
    for (VegType v : f.veg) CHECK(v == VegType::Shrub);
    for (double m : f.moisture) CHECK(m == 0.24);
  }
  SUBCASE("deterministic") {
    const GeneratedFields a = generate_fields(50, 50, GeneratorSpec{}, 99);
    const GeneratedFields b = generate_fields(50, 50, GeneratorSpec{}, 99);
    CHECK(a.veg == b.veg);
    CHECK(a.density == b.density);
    CHECK(a.moisture == b.moisture);
    const GeneratedFields c = generate_fields(50, 50, GeneratorSpec{}, 100);
    CHECK(a.veg != c.veg);
  }
  SUBCASE("frequencies track the weights") {
    const int n = 100 * 100;
    const GeneratedFields f = generate_fields(100, 100, GeneratorSpec{}, 7);
    int grass = 0, sparse = 0, normal = 0;
    for (VegType v : f.veg) grass += v == VegType::Grass;
    for (VegDensity d : f.density) {
      sparse += d == VegDensity::Sparse;
      normal += d == VegDensity::Normal;
    }
    CHECK(std::abs(grass / double(n) - 0.5) < 3.0 * std::sqrt(0.25 / n));
    const double third = 1.0 / 3.0;
    const double se3 = 3.0 * std::sqrt(third * (1 - third) / n);
    CHECK(std::abs(sparse / double(n) - third) < se3);
    CHECK(std::abs(normal / double(n) - third) < se3);
  }
  SUBCASE("per-type moisture defaults") {
    const GeneratedFields f = generate_fields(20, 20, GeneratorSpec{}, 3);
    for (std::size_t i = 0; i < f.veg.size(); ++i) {
      CHECK(f.moisture[i] == (f.veg[i] == VegType::Shrub ? 0.24 : 0.18));
    }
  }
  SUBCASE("weights must sum to one") {
    GeneratorSpec spec;
    spec.grass_weight = 0.7;
    CHECK_THROWS_AS(generate_fields(10, 10, spec, 1), std::invalid_argument);
    GeneratorSpec bad_density;
    bad_density.dense_weight = 0.5;
    CHECK_THROWS_AS(generate_fields(10, 10, bad_density, 1), std::invalid_argument);
  }
}

TEST_CASE("minimal scenario gets the documented defaults") {
  const ScenarioFile s = parse_scenario(kMinimal);
  CHECK(s.schema_version == 1);
  CHECK(s.fuel.heat_of_combustion == 19500.0);
  CHECK(s.fuel.convective_coeff == 0.020);
  CHECK(s.fuel.stefan_boltzmann == 5.67e-11);
  CHECK(s.spread.a == 3.258);
  CHECK(s.spread.c == 0.111);
  CHECK(s.grid.rows == 8);
  CHECK(s.grid.cols == 9);
  CHECK(s.grid.cell_m == 2.0);
  CHECK(s.grid.p0 == 0.6);
  CHECK(s.grid.c1 == 0.045);
  CHECK(s.grid.c2 == 0.131);
  CHECK(s.grid.p_den_sparse == -0.4);
  CHECK(s.grid.p_den_dense == 0.3);
  CHECK(s.grid.grass_moisture == 0.18);
  CHECK(s.grid.shrub_moisture == 0.24);
  // fields are generated and materialized
  CHECK(s.grid.veg.size() == 72);
  CHECK(s.grid.density.size() == 72);
  CHECK(s.grid.moisture.size() == 72);
  const GeneratedFields expect = generate_fields(8, 9, GeneratorSpec{}, 5);
  CHECK(s.grid.veg == expect.veg);
  CHECK(s.grid.density == expect.density);
}

TEST_CASE("strict schema") {
  SUBCASE("unknown top-level key") {
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"grid":{"rows":2,"cols":2},"extra":1})"),
                         doctest::Contains("extra"), scenario_error);
  }
  SUBCASE("unknown nested key") {
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"fuel":{"bogus":1},"grid":{"rows":2,"cols":2}})"),
        doctest::Contains("bogus"), scenario_error);
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"grid":{"rows":2,"cols":2,"windy":3}})"),
        doctest::Contains("windy"), scenario_error);
  }
  SUBCASE("grid section required") {
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"schema_version":1})"), doctest::Contains("grid"),
                         scenario_error);
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"grid":{}})"), doctest::Contains("grid"),
                         scenario_error);
  }
  SUBCASE("parse errors carry position info") {
    CHECK_THROWS_WITH_AS(parse_scenario("{\n  \"grid\": }"), doctest::Contains("line"),
                         scenario_error);
  }
  SUBCASE("schema version pinned") {
    CHECK_THROWS_AS(parse_scenario(R"({"schema_version":2,"grid":{"rows":2,"cols":2}})"),
                    scenario_error);
  }
  SUBCASE("elevation without a slope coefficient") {
    CHECK_THROWS_WITH_AS(
        parse_scenario(
            R"({"grid":{"rows":2,"cols":2,"elevation_matrix":[[0,1],[2,3]]}})"),
        doctest::Contains("slope_coeff"), scenario_error);
  }
  SUBCASE("ignition must be inside the grid") {
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"grid":{"rows":2,"cols":2,"ignition":[[5,0]]}})"),
        doctest::Contains("ignition"), scenario_error);
  }
  SUBCASE("matrix dimensions checked") {
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"grid":{"rows":2,"cols":2,"veg_matrix":[[0,0,0],[0,0,0]]}})"),
        doctest::Contains("veg_matrix"), scenario_error);
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"grid":{"rows":2,"cols":2,"veg_matrix":[[0,7],[0,0]]}})"),
        doctest::Contains("veg_matrix"), scenario_error);
  }
  SUBCASE("unknown writer") {
    CHECK_THROWS_WITH_AS(
        parse_scenario(R"({"grid":{"rows":2,"cols":2},"outputs":["parquet"]})"),
        doctest::Contains("parquet"), scenario_error);
  }
}

TEST_CASE("scenario round trip") {
  ScenarioFile s = reference_ca_scenario();
  s.grid.elevation.assign(static_cast<std::size_t>(s.grid.cell_count()), 0.0);
  s.grid.elevation[5] = 4.0;
  s.grid.slope_coeff = 0.25;
  s.environment.flame_length_m = 2.5;
  const std::string first = serialize_scenario(s);
  const ScenarioFile reloaded = parse_scenario(first);
  const std::string second = serialize_scenario(reloaded);
  CHECK(first == second);
  CHECK(reloaded.grid.veg == s.grid.veg);
  CHECK(reloaded.grid.moisture == s.grid.moisture);
  CHECK(reloaded.platforms.size() == s.platforms.size());
  CHECK(reloaded.attack.nc == s.attack.nc);
}

TEST_CASE("csv writers") {
  const std::string dir = "io_test_out";
  std::filesystem::remove_all(dir);

  SUBCASE("empty series is header plus metadata only") {
    const std::string path = dir + "/empty.csv";
    write_timeseries({}, path, {{"seed", "7"}});
    const std::string text = slurp(path);
    CHECK(text ==
          "# seed=7\nstep,clock_min,burning_cells,burned_cells,water_cells,burned_area_m2\n");
  }
  SUBCASE("snapshot digits") {
    GridScenario g;
    g.rows = 3;
    g.cols = 3;
    g.minutes_per_step = 1.0;
    const SimState sim = initial_state(g);
    const std::string path = dir + "/snap.txt";
    write_snapshot(sim, path);
    CHECK(slurp(path) == "111\n111\n111\n");
  }
  SUBCASE("series row count, write and reread") {
    GridScenario g;
    g.rows = 15;
    g.cols = 15;
    g.moisture_scale = 1.0;
    g.minutes_per_step = 0.5;
    g.ignition = {{7, 7}};
    g.max_steps = 30;
    const RunResult r = run(g);
    const std::string path = dir + "/series.csv";
    write_timeseries(r.series, path, {{"seed", "0"}});
    const CsvTable table = read_csv(path);
    CHECK(table.rows.size() == r.series.size());
    CHECK(table.rows.size() == static_cast<std::size_t>(r.series.back().step) + 1);
    CHECK(table.header ==
          std::vector<std::string>{"step", "clock_min", "burning_cells", "burned_cells",
                                   "water_cells", "burned_area_m2"});
    const std::vector<double> burned = table.column_as_doubles("burned_cells");
    for (std::size_t i = 0; i < burned.size(); ++i) {
      CHECK(burned[i] == static_cast<double>(r.series[i].burned_cells));
    }
    REQUIRE(!table.metadata.empty());
    CHECK(table.metadata[0].first == "seed");
  }
  SUBCASE("curves round trip through the reader") {
    Curve c;
    c.x_name = "wind_kmh";
    c.x = {0.0, 0.5, 1.0, 22.25};
    c.series.emplace_back("cf", std::vector<double>{1.0, 2.5, 3.0, 0.019388901834205805});
    const std::string path = dir + "/curve.csv";
    write_curve(c, path, {{"figure", "demo"}});
    const CsvTable table = read_csv(path);
    CHECK(table.header == std::vector<std::string>{"wind_kmh", "cf"});
    const std::vector<double> xs = table.column_as_doubles("wind_kmh");
    const std::vector<double> cf = table.column_as_doubles("cf");
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      CHECK(xs[i] == doctest::Approx(c.x[i]).epsilon(1e-11));
      CHECK(cf[i] == doctest::Approx(c.series[0].second[i]).epsilon(1e-11));
    }
  }
  SUBCASE("length mismatch rejected") {
    Curve c;
    c.x_name = "x";
    c.x = {1.0, 2.0};
    c.series.emplace_back("y", std::vector<double>{1.0});
    CHECK_THROWS_AS(write_curve(c, dir + "/bad.csv"), std::logic_error);
  }

  std::filesystem::remove_all(dir);
}

TEST_CASE("deterministic serialization") {
  const ScenarioFile s = reference_ca_scenario();
  CHECK(serialize_scenario(s) == serialize_scenario(reference_ca_scenario()));

  GridScenario g;
  g.rows = 6;
  g.cols = 6;
  g.moisture_scale = 1.0;
  g.minutes_per_step = 1.0;
  g.ignition = {{3, 3}};
  g.max_steps = 10;
  const RunResult a = run(g);
  const RunResult b = run(g);
  CHECK(snapshot_string(a.final_state) == snapshot_string(b.final_state));
}

TEST_CASE("load_scenario reads files and reports missing ones") {
  const std::string path = "io_test_scenario.json";
  {
    std::ofstream out(path, std::ios::binary);
    out << kMinimal;
  }
  const ScenarioFile s = load_scenario(path);
  CHECK(s.grid.rows == 8);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_scenario("does_not_exist.json"), scenario_error);
}
