#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "sisnet/integrator.hpp"
#include "sisnet/meanfield.hpp"
#include "sisnet/strain.hpp"
#include "sisnet/topology.hpp"

namespace sisnet {

inline constexpr const char* kLibraryVersion = "0.1.0";
inline constexpr const char* kOutputDirEnv = "SISNET_OUT_DIR";

/// Invalid configuration; `field` is a JSON-pointer-like path such as
/// "strains[1].gamma".
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

private:
  std::string field_;
};

struct TopologySpec {
  std::string generator;  // bipartite, cycle, complete, star, or "edges"
  std::size_t islands = 2;
  std::vector<Edge> edges;  // 0-based, for "edges"
};

struct StrainSpec {
  double gamma = 1.0;
  double mu = 1.0;
  std::vector<StrainParams::PairRate> pair_rates;  // 0-based islands
};

struct InitialSpec {
  /// Row-major islands x strains fractions, resolved against the topology.
  std::vector<double> fractions;
};

/// Parsed experiment configuration (JSON). See README for the key set.
struct ExperimentConfig {
  TopologySpec topology;
  std::vector<std::int64_t> island_sizes;
  std::vector<std::int64_t> size_schedule;
  std::vector<StrainSpec> strains;
  InitialSpec initial;
  double t_end = 10.0;
  std::size_t samples = 100;
  std::size_t replications = 1;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::filesystem::path output_dir = "sisnet-out";
  IntegratorControl integrator;
  double deviation_tolerance = 0.03;
  std::size_t taylor_order = 6;
  std::optional<std::string> suite;
  std::size_t suite_pairs = 100;
  std::optional<std::vector<double>> suite_gammas;
  std::vector<std::filesystem::path> inputs;  // plotdata sources
  std::string plot_mode = "series";           // series | overlay
  nlohmann::json source;  // parsed document, for hashing

  std::size_t num_islands() const { return topology.islands; }
  std::size_t num_strains() const { return strains.size(); }

  SuperNetwork network() const;
  /// Same topology with every island of size n.
  SuperNetwork network_with_size(std::int64_t n) const;
  StrainParams strain_params(const SuperNetwork& net) const;
  MacroCounts initial_counts(const SuperNetwork& net) const;
  MeanFieldState initial_fractions() const;
  std::vector<double> grid() const;
  std::vector<double> gammas() const;
  /// FNV-1a 64 of the canonical JSON dump, as 16 hex digits.
  std::string hash() const;
};

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json integrator_json(const IntegratorControl& c);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace sisnet
