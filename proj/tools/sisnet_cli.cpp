// sisnet command-line driver.
//
//   sisnet <command> <config.json> [--seed N] [--out DIR]
//
// Exit status: 0 success, 1 a check failed (or a run aborted), 2 bad config.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sisnet/analysis.hpp"
#include "sisnet/config.hpp"
#include "sisnet/csv.hpp"
#include "sisnet/experiments.hpp"
#include "sisnet/suites.hpp"

namespace {

using namespace sisnet;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kConfigError = 2;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> suite;
};

ExperimentConfig load(const Options& opt) {
  ExperimentConfig cfg;
  if (!opt.config_path.empty()) {
    cfg = load_config(opt.config_path);
  } else {
    cfg = parse_config(json::object());
  }
  if (opt.seed) {
    cfg.seed = *opt.seed;
    cfg.source["seed"] = *opt.seed;
  }
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) cfg.output_dir = env;
  if (opt.out) cfg.output_dir = *opt.out;
  if (opt.suite) cfg.suite = *opt.suite;
  return cfg;
}

void emit(const ExperimentConfig& cfg, const std::string& file, const json& report) {
  write_file(cfg.output_dir / file, report.dump(2) + "\n");
  std::cout << report.dump(2) << "\n";
}

int cmd_simulate(const ExperimentConfig& cfg) {
  const auto out = run_simulate(cfg);
  std::cout << "wrote " << out.trajectory_files.size() << " trajectories and "
            << out.manifest.string() << "\n";
  return kOk;
}

int cmd_meanfield(const ExperimentConfig& cfg) {
  std::cout << "wrote " << run_meanfield(cfg).string() << "\n";
  return kOk;
}

int cmd_converge(const ExperimentConfig& cfg) {
  const auto report = run_converge(cfg);
  emit(cfg, "converge.json", to_json(report));
  return report.passed() ? kOk : kCheckFailed;
}

int cmd_compare(const ExperimentConfig& cfg) {
  const auto result = run_compare(cfg);
  std::cout << "sup deviation " << format_double(result.deviation) << " (tolerance "
            << format_double(cfg.deviation_tolerance) << ")\n";
  return result.deviation < cfg.deviation_tolerance ? kOk : kCheckFailed;
}

int cmd_classify(const ExperimentConfig& cfg) {
  const auto result = run_classify(cfg);
  emit(cfg, "classify.json", to_json(result));
  // A hypothesis refusal is a valid answer, not a failed check.
  return result.refusal.empty() && !result.agrees ? kCheckFailed : kOk;
}

int cmd_taylor(const ExperimentConfig& cfg) {
  emit(cfg, "taylor.json", run_taylor(cfg));
  return kOk;
}

int cmd_suite(const ExperimentConfig& cfg) {
  if (!cfg.suite) throw ConfigError("suite", "no suite named");
  SuiteOptions options;
  options.seed = cfg.seed;
  options.pairs = cfg.suite_pairs;
  options.gammas = cfg.suite_gammas;
  SuiteReport report;
  try {
    report = run_theorem_suite(*cfg.suite, options);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("suite", e.what());
  }
  emit(cfg, "suite-" + *cfg.suite + ".json", to_json(report));
  return report.passed() ? kOk : kCheckFailed;
}

int cmd_plotdata(const ExperimentConfig& cfg) {
  std::vector<PlotInput> inputs;
  for (const auto& path : cfg.inputs) {
    inputs.push_back({path.stem().string(), read_trajectory_csv(path)});
  }
  const auto mode = cfg.plot_mode == "overlay" ? PlotMode::MeanOverlay : PlotMode::Series;
  const auto path = cfg.output_dir / "plot.csv";
  write_file(path, emit_plot_data(inputs, mode));
  std::cout << "wrote " << path.string() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SIS multi-strain epidemics on multipartite networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kLibraryVersion);

  Options opt;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"simulate", "run count-level replications and write trajectory CSVs"},
      {"meanfield", "integrate the mean-field ODE"},
      {"converge", "micro-vs-meanfield deviation across a size schedule"},
      {"classify", "threshold / survival-of-the-fittest verdict"},
      {"taylor", "Taylor coefficients of the mean-field flow at t=0"},
      {"compare", "one ensemble against the ODE, with plot data"},
      {"suite", "run a theorem check suite"},
      {"plotdata", "merge trajectory CSVs into long-format plot data"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    auto* cfg = sub->add_option("config", opt.config_path, "experiment config (JSON)");
    if (name == "suite") {
      sub->add_option("--name", opt.suite, "suite name, overriding the config");
    } else {
      cfg->required();
    }
    sub->add_option("--seed", opt.seed, "master seed override");
    sub->add_option("--out", opt.out, "output directory override");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const auto cfg = load(opt);
    if (command == "simulate") return cmd_simulate(cfg);
    if (command == "meanfield") return cmd_meanfield(cfg);
    if (command == "converge") return cmd_converge(cfg);
    if (command == "compare") return cmd_compare(cfg);
    if (command == "classify") return cmd_classify(cfg);
    if (command == "taylor") return cmd_taylor(cfg);
    if (command == "suite") return cmd_suite(cfg);
    return cmd_plotdata(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const TopologyError& e) {
    std::cerr << "config error: topology: " << e.what() << "\n";
    return kConfigError;
  } catch (const DimensionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const SchemaError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
}
