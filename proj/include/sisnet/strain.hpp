#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sisnet/topology.hpp"

namespace sisnet {

using StrainIndex = std::size_t;

class DimensionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Microscopic per-strain rates on a fixed supernetwork.
///
/// gamma(k, from, to) is the rate at which each k-infected node of island
/// `from` fires an infection attempt into island `to`. It is defined exactly
/// on adjacent ordered pairs and is strictly positive there.
class StrainParams {
public:
  /// Same gamma on every ordered adjacent pair, one value per strain.
  static StrainParams uniform(const SuperNetwork& net, std::vector<double> gamma,
                              std::vector<double> mu);

  /// Starts from uniform(net, base_gamma, mu) and overrides single pairs.
  struct PairRate {
    StrainIndex strain;
    IslandIndex from;
    IslandIndex to;
    double rate;
  };
  static StrainParams with_overrides(const SuperNetwork& net,
                                     std::vector<double> base_gamma,
                                     std::vector<double> mu,
                                     const std::vector<PairRate>& overrides);

  std::size_t num_strains() const { return mu_.size(); }
  std::size_t num_islands() const { return islands_; }
  double gamma(StrainIndex k, IslandIndex from, IslandIndex to) const {
    return gamma_[(k * islands_ + from) * islands_ + to];
  }
  double mu(StrainIndex k) const { return mu_[k]; }
  const std::vector<double>& mus() const { return mu_; }

  /// (gamma, mu) profiles differ.
  bool strains_distinct(StrainIndex a, StrainIndex b) const;

private:
  StrainParams() = default;
  std::size_t islands_ = 0;
  std::vector<double> gamma_;  // K x M x M, zero off the adjacency
  std::vector<double> mu_;
};

/// Integer count of k-infected nodes per island: the Markov macrostate.
class MacroCounts {
public:
  MacroCounts(const SuperNetwork& net, std::size_t strains);
  /// Row-major M x K counts; throws if local exclusion is violated.
  MacroCounts(const SuperNetwork& net, std::size_t strains,
              std::vector<std::int64_t> counts);
  /// Rounds fraction * N_i down for each cell.
  static MacroCounts from_fractions(const SuperNetwork& net, std::size_t strains,
                                    const std::vector<double>& fractions);

  std::size_t num_islands() const { return sizes_.size(); }
  std::size_t num_strains() const { return strains_; }
  std::int64_t at(IslandIndex i, StrainIndex k) const { return y_[i * strains_ + k]; }
  std::int64_t& at(IslandIndex i, StrainIndex k) { return y_[i * strains_ + k]; }
  std::int64_t island_size(IslandIndex i) const { return sizes_[i]; }
  const std::vector<std::int64_t>& island_sizes() const { return sizes_; }
  /// Nodes of island i infected by any strain.
  std::int64_t occupied(IslandIndex i) const;
  std::int64_t total() const;
  double fraction(IslandIndex i, StrainIndex k) const {
    return static_cast<double>(at(i, k)) / static_cast<double>(sizes_[i]);
  }
  bool satisfies_exclusion() const;
  const std::vector<std::int64_t>& raw() const { return y_; }

  friend bool operator==(const MacroCounts&, const MacroCounts&) = default;

private:
  std::size_t strains_ = 0;
  std::vector<std::int64_t> sizes_;
  std::vector<std::int64_t> y_;
};

}  // namespace sisnet
