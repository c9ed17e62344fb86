#include "sisnet/experiments.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

#include "sisnet/csv.hpp"

namespace sisnet {

using nlohmann::json;

std::vector<MicroTrajectory> run_replications(const SuperNetwork& net,
                                              const StrainParams& params,
                                              const MacroCounts& initial, double t_end,
                                              const std::vector<double>& grid,
                                              std::uint64_t seed, std::size_t replications,
                                              std::size_t workers) {
  std::vector<MicroTrajectory> runs(replications);
  parallel_for(replications, workers, [&](std::size_t r) {
    runs[r] = simulate(initial, net, params, t_end, grid, seed, r);
  });
  return runs;
}

EnsembleStats ensemble_stats(const std::vector<MicroTrajectory>& runs) {
  if (runs.empty()) throw std::invalid_argument("no replications to aggregate");
  EnsembleStats stats;
  stats.times = runs.front().times;
  const auto& first = runs.front().samples.front();
  const std::size_t m = first.num_islands(), strains = first.num_strains();
  const double n = static_cast<double>(runs.size());
  for (std::size_t s = 0; s < stats.times.size(); ++s) {
    MeanFieldState mean(m, strains), se(m, strains);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < strains; ++k) {
        double sum = 0.0, sum_sq = 0.0;
        for (const auto& run : runs) {
          const double f = run.samples[s].fraction(i, k);
          sum += f;
          sum_sq += f * f;
        }
        const double mu = sum / n;
        const double var = runs.size() > 1 ? std::max(0.0, (sum_sq - n * mu * mu) / (n - 1.0)) : 0.0;
        mean.at(i, k) = mu;
        se.at(i, k) = std::sqrt(var / n);
      }
    }
    stats.mean.push_back(std::move(mean));
    stats.stderr_.push_back(std::move(se));
  }
  return stats;
}

double sup_deviation(const std::vector<MeanFieldState>& a,
                     const std::vector<MeanFieldState>& b) {
  if (a.size() != b.size()) throw DimensionError("trajectories have different lengths");
  double sup = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s) {
    const auto& x = a[s].values();
    const auto& y = b[s].values();
    if (x.size() != y.size()) throw DimensionError("trajectory states differ in shape");
    for (std::size_t c = 0; c < x.size(); ++c) sup = std::max(sup, std::abs(x[c] - y[c]));
  }
  return sup;
}

OdeTrajectory meanfield_for_micro(const SuperNetwork& net, const StrainParams& params,
                                  const MeanFieldState& y0,
                                  const std::vector<double>& micro_grid,
                                  const IntegratorControl& control) {
  const auto mf = MeanFieldParams::from_micro(net, params);
  std::vector<double> ode_grid(micro_grid);
  for (auto& t : ode_grid) t *= mf.time_scale();
  auto traj = integrate(mf, y0, ode_grid, control);
  traj.times = micro_grid;
  return traj;
}

namespace {

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json manifest_base(const ExperimentConfig& config, const std::string& command) {
  return json{{"command", command},
              {"config_hash", config.hash()},
              {"config", config.source},
              {"library_version", kLibraryVersion},
              {"rng_algorithm", std::string(Philox4x32::algorithm)},
              {"master_seed", config.seed},
              {"integrator", integrator_json(config.integrator)},
              {"created_at", timestamp()}};
}

CsvMetadata micro_metadata(const ExperimentConfig& config, const MicroTrajectory& t) {
  return {{"simulator", t.simulator},
          {"seed", std::to_string(t.seed)},
          {"replication", std::to_string(t.replication)},
          {"rng", t.rng_algorithm},
          {"params_hash", config.hash()}};
}

std::string replication_file(std::size_t r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "replication_%04zu.csv", r);
  return buf;
}

}  // namespace

SimulateOutput run_simulate(const ExperimentConfig& config) {
  const auto net = config.network();
  const auto params = config.strain_params(net);
  const auto runs = run_replications(net, params, config.initial_counts(net), config.t_end,
                                     config.grid(), config.seed, config.replications,
                                     config.workers);
  SimulateOutput out;
  json manifest = manifest_base(config, "simulate");
  manifest["replications"] = json::array();
  for (const auto& run : runs) {
    std::ostringstream csv;
    write_trajectory_csv(csv, run, micro_metadata(config, run));
    const auto path = config.output_dir / replication_file(run.replication);
    write_file(path, csv.str());
    out.trajectory_files.push_back(path);
    manifest["replications"].push_back({{"index", run.replication},
                                        {"seed", run.seed},
                                        {"stream", run.replication},
                                        {"events", run.events},
                                        {"file", path.filename().string()}});
  }
  out.manifest = config.output_dir / "manifest.json";
  write_file(out.manifest, manifest.dump(2) + "\n");
  return out;
}

std::filesystem::path run_meanfield(const ExperimentConfig& config) {
  const auto net = config.network();
  const auto params = config.strain_params(net);
  const auto traj = meanfield_for_micro(net, params, config.initial_fractions(),
                                        config.grid(), config.integrator);
  std::ostringstream csv;
  write_trajectory_csv(csv, traj,
                       {{"simulator", "meanfield"},
                        {"integrator", to_string(config.integrator.method)},
                        {"regime", traj.regime},
                        {"params_hash", config.hash()}});
  const auto path = config.output_dir / "ode.csv";
  write_file(path, csv.str());
  json manifest = manifest_base(config, "meanfield");
  manifest["regime"] = traj.regime;
  manifest["accepted_steps"] = traj.stats.accepted_steps;
  manifest["rejected_steps"] = traj.stats.rejected_steps;
  manifest["file"] = "ode.csv";
  write_file(config.output_dir / "manifest.json", manifest.dump(2) + "\n");
  return path;
}

ConvergenceReport run_converge(const ExperimentConfig& config) {
  if (config.size_schedule.size() < 3) {
    throw ConfigError("size_schedule", "a convergence study needs at least three sizes");
  }
  ConvergenceReport report;
  report.tolerance = config.deviation_tolerance;
  const auto grid = config.grid();
  for (const auto n : config.size_schedule) {
    const auto net = config.network_with_size(n);
    const auto params = config.strain_params(net);
    const auto initial = config.initial_counts(net);
    const auto runs = run_replications(net, params, initial, config.t_end, grid,
                                       config.seed, config.replications, config.workers);
    const auto stats = ensemble_stats(runs);
    const auto ode = meanfield_for_micro(net, params, fractions_of(initial), grid,
                                         config.integrator);
    double max_se = 0.0;
    for (const auto& se : stats.stderr_) max_se = std::max(max_se, se.max_abs());
    report.records.push_back({n, config.replications, sup_deviation(stats.mean, ode.samples), max_se});
  }
  const auto& r = report.records;
  report.monotone_trend = r.back().deviation < r.front().deviation;
  report.strictly_decreasing = true;
  for (std::size_t s = 1; s < r.size(); ++s) {
    if (!(r[s].deviation < r[s - 1].deviation)) report.strictly_decreasing = false;
  }
  report.final_below_tolerance = r.back().deviation < report.tolerance;
  return report;
}

CompareResult run_compare(const ExperimentConfig& config) {
  const auto net = config.network();
  const auto params = config.strain_params(net);
  const auto initial = config.initial_counts(net);
  const auto grid = config.grid();
  const auto runs = run_replications(net, params, initial, config.t_end, grid, config.seed,
                                     config.replications, config.workers);
  CompareResult result{0.0, ensemble_stats(runs),
                       meanfield_for_micro(net, params, fractions_of(initial), grid,
                                           config.integrator)};
  result.deviation = sup_deviation(result.ensemble.mean, result.ode.samples);

  std::vector<PlotInput> inputs;
  for (const auto& run : runs) {
    std::stringstream csv;
    write_trajectory_csv(csv, run, micro_metadata(config, run));
    inputs.push_back({"replication" + std::to_string(run.replication), read_trajectory_csv(csv)});
  }
  std::stringstream ode_csv;
  write_trajectory_csv(ode_csv, result.ode, {});
  inputs.push_back({"ode", read_trajectory_csv(ode_csv)});
  write_file(config.output_dir / "compare_plot.csv", emit_plot_data(inputs, PlotMode::MeanOverlay));

  double max_se = 0.0;
  for (const auto& se : result.ensemble.stderr_) max_se = std::max(max_se, se.max_abs());
  json report = manifest_base(config, "compare");
  report["sup_deviation"] = result.deviation;
  report["max_stderr"] = max_se;
  report["regime"] = result.ode.regime;
  report["tolerance"] = config.deviation_tolerance;
  report["within_tolerance"] = result.deviation < config.deviation_tolerance;
  report["tolerance_basis"] = "O(1/sqrt(N)) fluctuation heuristic";
  write_file(config.output_dir / "compare.json", report.dump(2) + "\n");
  return result;
}

ClassifyResult run_classify(const ExperimentConfig& config) {
  ClassifyResult result;
  const auto net = config.network();
  const auto mf = MeanFieldParams::from_micro(net, config.strain_params(net));
  if (!mf.is_symmetric()) {
    result.refusal = "unanalyzed regime: island sizes or rates are not symmetric";
    return result;
  }
  const auto y0 = config.initial_fractions();
  for (std::size_t k = 0; k < config.num_strains(); ++k) {
    bool present = false;
    for (std::size_t i = 0; i < config.num_islands(); ++i) present |= y0.at(i, k) > 0.0;
    if (!present) {
      result.refusal = "strain " + std::to_string(k + 1) + " is absent initially";
      return result;
    }
  }
  std::vector<double> gammas;
  for (std::size_t k = 0; k < mf.num_strains(); ++k) gammas.push_back(mf.symmetric_gamma(k));
  try {
    result.classification = classify_multi(net, gammas);
  } catch (const HypothesisError& e) {
    result.refusal = e.what();
    return result;
  }
  const auto traj = integrate(mf, y0, config.t_end * mf.time_scale(), config.integrator);
  result.endpoint = traj.final_state();
  result.agrees = true;
  const auto& c = *result.classification;
  for (std::size_t i = 0; i < config.num_islands(); ++i) {
    for (std::size_t k = 0; k < config.num_strains(); ++k) {
      const double expected = (c.strain && *c.strain == k) ? c.level : 0.0;
      if (std::abs(result.endpoint->at(i, k) - expected) > 1e-3) result.agrees = false;
    }
  }
  return result;
}

json run_taylor(const ExperimentConfig& config) {
  const auto net = config.network();
  const auto mf = MeanFieldParams::from_micro(net, config.strain_params(net));
  const auto table = taylor_coefficients(mf, config.initial_fractions(), config.taylor_order);
  return to_json(table);
}

json to_json(const Classification& c) {
  json j{{"verdict", c.verdict == Verdict::Persistence ? "persistence" : "extinction"},
         {"threshold", c.threshold},
         {"degree", c.degree}};
  if (c.strain) {
    j["strain"] = *c.strain + 1;
    j["level"] = c.level;
  }
  return j;
}

json to_json(const DominanceReport& r) {
  json j{{"holds", r.holds}, {"samples_checked", r.samples_checked}};
  if (r.first_violation) {
    const auto& v = *r.first_violation;
    j["first_violation"] = {{"time", v.time},
                            {"island", v.island + 1},
                            {"strain", v.strain + 1},
                            {"magnitude", v.magnitude}};
  }
  return j;
}

json to_json(const ConvergenceReport& r) {
  json records = json::array();
  for (const auto& rec : r.records) {
    records.push_back({{"island_size", rec.island_size},
                       {"replications", rec.replications},
                       {"sup_deviation", rec.deviation},
                       {"stderr", rec.stderr_}});
  }
  return json{{"records", records},
              {"monotone_trend", r.monotone_trend},
              {"strictly_decreasing", r.strictly_decreasing},
              {"tolerance", r.tolerance},
              {"tolerance_basis", "O(1/sqrt(N)) fluctuation heuristic"},
              {"final_below_tolerance", r.final_below_tolerance},
              {"passed", r.passed()}};
}

json to_json(const ClassifyResult& r) {
  json j;
  if (!r.refusal.empty()) {
    j["refused"] = r.refusal;
    return j;
  }
  j["classification"] = to_json(*r.classification);
  j["endpoint"] = r.endpoint->values();
  j["agrees_with_integration"] = r.agrees;
  return j;
}

json to_json(const TaylorTable& t) {
  json cells = json::array();
  for (std::size_t i = 0; i < t.num_islands(); ++i) {
    for (std::size_t k = 0; k < t.num_strains(); ++k) {
      const auto series = t.series(i, k);
      const auto first = t.first_nonzero_order(i, k);
      std::vector<double> tail(series.begin() + 1, series.end());
      cells.push_back({{"island", i + 1},
                       {"strain", k + 1},
                       {"coefficients", series},
                       {"first_nonzero_order", first ? json(*first) : json(nullptr)},
                       {"local_sign_of_change", to_string(sign_probe(tail))}});
    }
  }
  return json{{"max_order", t.max_order()}, {"normalization", "y^(n)(0)/n!"}, {"cells", cells}};
}

}  // namespace sisnet
