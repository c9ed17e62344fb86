#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sisnet/meanfield.hpp"
#include "sisnet/rng.hpp"

namespace sisnet {

struct SuiteCheck {
  std::string name;
  bool passed = false;
  std::string detail;
  bool expected_refusal = false;  // a hypothesis refusal the suite asked for
};

struct SuiteReport {
  std::string suite;
  std::vector<SuiteCheck> checks;
  bool passed() const;
};

struct SuiteOptions {
  std::optional<std::vector<double>> gammas;  // overrides the suite default
  std::uint64_t seed = 7;
  std::size_t pairs = 100;
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite name.
SuiteReport run_theorem_suite(const std::string& name, const SuiteOptions& options = {});

nlohmann::json to_json(const SuiteReport& report);

/// Random initial pair ordered for check_dominance: strain 0 low <= high;
/// strain 1 (if present) low >= high; every island total stays <= 1.
std::pair<MeanFieldState, MeanFieldState> random_ordered_pair(std::size_t islands,
                                                              std::size_t strains,
                                                              Philox4x32& rng);

/// Uniform point of {y >= 0, sum_k y_k <= 1} for every island.
MeanFieldState random_state(std::size_t islands, std::size_t strains, Philox4x32& rng);

}  // namespace sisnet
