#pragma once

#include <atomic>
#include <exception>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "sisnet/analysis.hpp"
#include "sisnet/config.hpp"
#include "sisnet/meanfield.hpp"
#include "sisnet/micro_sim.hpp"

namespace sisnet {

/// Runs body(0..n-1) on up to `workers` threads. The first exception thrown
/// by any task is rethrown after all threads join.
template <class Body>
void parallel_for(std::size_t n, std::size_t workers, Body&& body) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

/// R count-level replications keyed by (seed, replication index); the
/// result is ordered by replication index whatever the worker count.
std::vector<MicroTrajectory> run_replications(const SuperNetwork& net,
                                              const StrainParams& params,
                                              const MacroCounts& initial, double t_end,
                                              const std::vector<double>& grid,
                                              std::uint64_t seed, std::size_t replications,
                                              std::size_t workers = 1);

struct EnsembleStats {
  std::vector<double> times;
  std::vector<MeanFieldState> mean;
  std::vector<MeanFieldState> stderr_;
};

EnsembleStats ensemble_stats(const std::vector<MicroTrajectory>& runs);

/// sup over samples, islands and strains of |a - b|.
double sup_deviation(const std::vector<MeanFieldState>& a,
                     const std::vector<MeanFieldState>& b);

/// Mean-field prediction for a micro configuration, sampled on the micro
/// time grid (ODE time = mu * micro time, gamma_eff = gamma * alpha / mu).
OdeTrajectory meanfield_for_micro(const SuperNetwork& net, const StrainParams& params,
                                  const MeanFieldState& y0,
                                  const std::vector<double>& micro_grid,
                                  const IntegratorControl& control);

struct SimulateOutput {
  std::vector<std::filesystem::path> trajectory_files;
  std::filesystem::path manifest;
};

/// R trajectory CSVs plus manifest.json in config.output_dir.
SimulateOutput run_simulate(const ExperimentConfig& config);

/// ode.csv plus manifest.json in config.output_dir.
std::filesystem::path run_meanfield(const ExperimentConfig& config);

struct ConvergenceRecord {
  std::int64_t island_size;
  std::size_t replications;
  double deviation;  // sup-norm, empirical mean vs ODE
  double stderr_;    // largest standard error of the mean over the grid
};

struct ConvergenceReport {
  std::vector<ConvergenceRecord> records;
  bool monotone_trend = false;       // last deviation < first deviation
  bool strictly_decreasing = false;  // each size improves on the previous one
  double tolerance = 0.0;
  bool final_below_tolerance = false;
  bool passed() const { return monotone_trend && final_below_tolerance; }
};

/// Needs a size_schedule of at least three strictly increasing sizes.
ConvergenceReport run_converge(const ExperimentConfig& config);

struct CompareResult {
  double deviation;
  EnsembleStats ensemble;
  OdeTrajectory ode;
};

/// One ensemble against the ODE; writes compare.json and compare_plot.csv.
CompareResult run_compare(const ExperimentConfig& config);

struct ClassifyResult {
  std::optional<Classification> classification;
  std::string refusal;  // set when the hypotheses are unmet
  std::optional<MeanFieldState> endpoint;
  bool agrees = false;  // endpoint within 1e-3 of the classified limit
};

ClassifyResult run_classify(const ExperimentConfig& config);

nlohmann::json run_taylor(const ExperimentConfig& config);

nlohmann::json to_json(const Classification& c);
nlohmann::json to_json(const DominanceReport& r);
nlohmann::json to_json(const ConvergenceReport& r);
nlohmann::json to_json(const ClassifyResult& r);
nlohmann::json to_json(const TaylorTable& t);

}  // namespace sisnet
