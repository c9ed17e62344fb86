#pragma once

#include <cstdint>
#include <vector>

#include "sisnet/micro_sim.hpp"

namespace sisnet {

/// Per-node infection state: 0 is healthy, k + 1 means infected by strain k.
class NodeStates {
public:
  explicit NodeStates(const SuperNetwork& net);
  /// Some node configuration with the given counts. Node identities are
  /// arbitrary; the first Y[i,0] nodes carry strain 0, the next Y[i,1] strain 1.
  static NodeStates from_counts(const MacroCounts& counts);

  std::size_t num_islands() const { return state_.size(); }
  std::size_t island_size(IslandIndex i) const { return state_[i].size(); }
  int at(IslandIndex i, std::size_t node) const { return state_[i][node]; }
  void set(IslandIndex i, std::size_t node, int value) { state_[i][node] = value; }
  MacroCounts counts(const SuperNetwork& net, std::size_t strains) const;

private:
  NodeStates() = default;
  std::vector<std::vector<int>> state_;
};

/// Node-resolution SIS process. Every infected node runs one heal clock
/// Exp(mu^k) and, per neighbor island V, one infection clock Exp(gamma^k_{UV});
/// an infection clock that rings targets a uniformly chosen node of V and is a
/// no-op if that node is already infected. Event-driven over independent
/// clocks (next-reaction method); shares no code path with simulate().
MicroTrajectory node_level_simulate(const SuperNetwork& net,
                                    const StrainParams& params,
                                    const NodeStates& initial, double t_end,
                                    const std::vector<double>& grid,
                                    std::uint64_t seed,
                                    std::uint64_t replication = 0);

}  // namespace sisnet
