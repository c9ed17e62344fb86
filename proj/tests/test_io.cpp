#include <algorithm>
#include <sstream>

#include "doctest.h"
#include "sisnet/config.hpp"
#include "sisnet/csv.hpp"

using namespace sisnet;
using nlohmann::json;

namespace {

std::string field_of(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

json base() {
  return json::parse(R"({
    "topology": {"generator": "bipartite"},
    "island_size": 10,
    "strains": [{"gamma": 2.0}],
    "initial": {"uniform": [0.1]},
    "t_end": 2.0,
    "samples": 4
  })");
}

}  // namespace

TEST_CASE("doubles print with 17 significant digits and round-trip") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.0) == "0");
  for (double v : {1.0 / 3.0, 2.0 / 3.0, 1e-300, 123456.789}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("micro trajectory CSV round-trips") {
  const auto net = SuperNetwork::bipartite(3, 3);
  const auto params = StrainParams::uniform(net, {1.5}, {1.0});
  const auto traj = simulate(MacroCounts(net, 1, {1, 2}), net, params, 2.0, uniform_grid(2.0, 4), 3);
  std::stringstream buf;
  write_trajectory_csv(buf, traj, {{"seed", "3"}});
  const std::string text = buf.str();
  CHECK(text.find("# seed=3\ntime,island,strain,count,fraction\n") == 0);

  const auto table = read_trajectory_csv(buf);
  CHECK(table.metadata.at("seed") == "3");
  CHECK_FALSE(table.is_meanfield());
  REQUIRE(table.rows.size() == 5 * 2);
  CHECK(table.rows[1].island == 2);
  CHECK(table.rows[1].count == 2);
  CHECK(table.rows[1].fraction == 2.0 / 3.0);
}

TEST_CASE("mean-field CSV leaves the count column empty") {
  const auto net = SuperNetwork::bipartite(1, 1);
  const auto traj = integrate(MeanFieldParams::uniform(net, {2.0}), MeanFieldState(2, 1, 0.1),
                              std::vector<double>{0.0, 1.0});
  std::stringstream buf;
  write_trajectory_csv(buf, traj, {});
  std::string header, row;
  std::getline(buf, header);
  std::getline(buf, row);
  CHECK(header == kTrajectoryHeader);
  CHECK(row == "0,1,1,,0.10000000000000001");
  buf.clear();
  buf.seekg(0);
  const auto table = read_trajectory_csv(buf);
  CHECK(table.is_meanfield());
  CHECK(table.rows.back().fraction == traj.final_state().at(1, 0));
}

TEST_CASE("a wrong header is a schema error") {
  std::stringstream buf("time,island,strain,fraction\n0,1,1,0.5\n");
  CHECK_THROWS_AS(read_trajectory_csv(buf), SchemaError);
}

TEST_CASE("plot data") {
  CHECK(emit_plot_data({}, PlotMode::Series) == "time,series,value\n");

  const auto net = SuperNetwork::bipartite(1, 1);
  const auto traj = integrate(MeanFieldParams::uniform(net, {2.0}), MeanFieldState(2, 1, 0.1),
                              std::vector<double>{0.0, 0.5, 1.0});
  std::stringstream ode;
  write_trajectory_csv(ode, traj, {});
  const auto ode_table = read_trajectory_csv(ode);
  const auto series = emit_plot_data({{"ode", ode_table}}, PlotMode::Series);
  CHECK(series.find("0,ode/i1/s1,") != std::string::npos);
  CHECK(series.find("ode/i2/s1") != std::string::npos);

  const auto mnet = SuperNetwork::bipartite(10, 10);
  const auto params = StrainParams::uniform(mnet, {2.0}, {1.0});
  std::vector<PlotInput> inputs;
  for (std::uint64_t r = 0; r < 3; ++r) {
    std::stringstream csv;
    write_trajectory_csv(csv, simulate(MacroCounts(mnet, 1, {2, 2}), mnet, params, 1.0,
                                       {0.0, 0.5, 1.0}, 1, r), {});
    inputs.push_back({"r" + std::to_string(r), read_trajectory_csv(csv)});
  }
  inputs.push_back({"ode", ode_table});
  const auto overlay = emit_plot_data(inputs, PlotMode::MeanOverlay);
  for (const char* label : {"micro_mean/i1/s1", "micro_stderr/i1/s1", "ode/i1/s1"}) {
    CHECK(overlay.find(label) != std::string::npos);
  }
  // 3 series x 2 islands x 3 times, plus the header.
  CHECK(std::count(overlay.begin(), overlay.end(), '\n') == 1 + 3 * 2 * 3);

  std::stringstream other;
  write_trajectory_csv(other, integrate(MeanFieldParams::uniform(net, {2.0, 1.0}),
                                        MeanFieldState(2, 2, 0.1), std::vector<double>{0.0, 1.0}),
                       {});
  inputs.push_back({"bad", read_trajectory_csv(other)});
  CHECK_THROWS_AS(emit_plot_data(inputs, PlotMode::MeanOverlay), SchemaError);
}

TEST_CASE("config parsing resolves the model") {
  const auto cfg = parse_config(base());
  const auto net = cfg.network();
  CHECK(net.island_size(1) == 10);
  CHECK(cfg.initial_counts(net).at(1, 0) == 1);
  CHECK(cfg.grid() == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
  CHECK(cfg.hash() == parse_config(base()).hash());
  auto changed = base();
  changed["seed"] = 2;
  CHECK(parse_config(changed).hash() != cfg.hash());
}

TEST_CASE("config errors carry the field path") {
  auto doc = base();
  doc["strains"][0]["gamma"] = -1;
  CHECK(field_of(doc) == "strains[0].gamma");

  doc = base();
  doc["topology"]["generator"] = "torus";
  CHECK(field_of(doc) == "topology.generator");

  doc = base();
  doc["surprise"] = 1;
  CHECK(field_of(doc) == "surprise");

  doc = base();
  doc["initial"] = {{"uniform", {0.6, 0.6}}};
  CHECK(field_of(doc) == "initial.uniform");

  doc = base();
  doc["replications"] = 0;
  CHECK(field_of(doc) == "replications");

  doc = base();
  doc["size_schedule"] = {100, 400, 400};
  CHECK(field_of(doc) == "size_schedule[2]");

  doc = base();
  doc["topology"] = {{"islands", 3}, {"edges", {{1, 2}, {2, 4}}}};
  CHECK(field_of(doc) == "topology.edges[1][1]");

  doc = base();
  doc["strains"][0]["pair_rates"] = {{{"from", 1}, {"to", 1}, {"rate", 2.0}}};
  CHECK(field_of(doc) == "strains");

  doc = base();
  doc["inputs"] = {"/nonexistent/file.csv"};
  CHECK(field_of(doc) == "inputs[0]");

  CHECK(field_of(json{{"suite", "taylor"}}) == "<accepted>");
}

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}
