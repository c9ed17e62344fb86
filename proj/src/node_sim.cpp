#include "sisnet/node_sim.hpp"

#include <queue>
#include <stdexcept>

namespace sisnet {

NodeStates::NodeStates(const SuperNetwork& net) {
  state_.resize(net.num_islands());
  for (std::size_t i = 0; i < net.num_islands(); ++i) {
    state_[i].assign(static_cast<std::size_t>(net.island_size(i)), 0);
  }
}

NodeStates NodeStates::from_counts(const MacroCounts& counts) {
  NodeStates out;
  out.state_.resize(counts.num_islands());
  for (std::size_t i = 0; i < counts.num_islands(); ++i) {
    auto& island = out.state_[i];
    island.assign(static_cast<std::size_t>(counts.island_size(i)), 0);
    std::size_t node = 0;
    for (std::size_t k = 0; k < counts.num_strains(); ++k) {
      for (std::int64_t c = 0; c < counts.at(i, k); ++c) {
        island[node++] = static_cast<int>(k) + 1;
      }
    }
  }
  return out;
}

MacroCounts NodeStates::counts(const SuperNetwork& net, std::size_t strains) const {
  MacroCounts out(net, strains);
  for (std::size_t i = 0; i < state_.size(); ++i) {
    for (int s : state_[i]) {
      if (s > 0) ++out.at(i, static_cast<std::size_t>(s - 1));
    }
  }
  return out;
}

namespace {

constexpr int kHealClock = -1;

struct Clock {
  double time;
  IslandIndex island;
  std::size_t node;
  int kind;  // kHealClock, or position of the target island in neighbors(island)
  std::uint64_t version;
  bool operator>(const Clock& other) const { return time > other.time; }
};

class NodeProcess {
public:
  NodeProcess(const SuperNetwork& net, const StrainParams& params,
              const NodeStates& initial, Philox4x32& rng)
      : net_(net), params_(params), states_(initial), rng_(rng) {
    version_.resize(net.num_islands());
    for (std::size_t i = 0; i < net.num_islands(); ++i) {
      version_[i].assign(initial.island_size(i), 0);
      for (std::size_t v = 0; v < initial.island_size(i); ++v) {
        if (initial.at(i, v) > 0) arm(i, v, 0.0);
      }
    }
  }

  bool idle() const { return queue_.empty(); }
  double next_time() const { return queue_.top().time; }

  /// Fires the earliest clock. Returns the transition it caused, if any.
  std::optional<Event> fire(bool& blocked) {
    blocked = false;
    const Clock c = queue_.top();
    queue_.pop();
    if (c.version != version_[c.island][c.node]) return std::nullopt;  // stale

    const int strain_tag = states_.at(c.island, c.node);
    const auto strain = static_cast<StrainIndex>(strain_tag - 1);
    if (c.kind == kHealClock) {
      states_.set(c.island, c.node, 0);
      ++version_[c.island][c.node];  // cancels this node's infection clocks
      return Event{EventKind::Heal, c.island, strain};
    }

    const IslandIndex target = net_.neighbors(c.island)[static_cast<std::size_t>(c.kind)];
    schedule(c.island, c.node, c.kind, c.time,
             params_.gamma(strain, c.island, target));
    const auto victim = static_cast<std::size_t>(
        uniform_index(rng_, states_.island_size(target)));
    if (states_.at(target, victim) != 0) {
      blocked = true;
      return std::nullopt;
    }
    states_.set(target, victim, strain_tag);
    ++version_[target][victim];
    arm(target, victim, c.time);
    return Event{EventKind::Infect, target, strain};
  }

  MacroCounts counts() const { return states_.counts(net_, params_.num_strains()); }

private:
  void schedule(IslandIndex i, std::size_t node, int kind, double now, double rate) {
    queue_.push({now + exponential(rng_, rate), i, node, kind, version_[i][node]});
  }

  void arm(IslandIndex i, std::size_t node, double now) {
    const auto strain = static_cast<StrainIndex>(states_.at(i, node) - 1);
    schedule(i, node, kHealClock, now, params_.mu(strain));
    const auto& nbrs = net_.neighbors(i);
    for (std::size_t p = 0; p < nbrs.size(); ++p) {
      schedule(i, node, static_cast<int>(p), now, params_.gamma(strain, i, nbrs[p]));
    }
  }

  const SuperNetwork& net_;
  const StrainParams& params_;
  NodeStates states_;
  Philox4x32& rng_;
  std::vector<std::vector<std::uint64_t>> version_;
  std::priority_queue<Clock, std::vector<Clock>, std::greater<>> queue_;
};

}  // namespace

MicroTrajectory node_level_simulate(const SuperNetwork& net,
                                    const StrainParams& params,
                                    const NodeStates& initial, double t_end,
                                    const std::vector<double>& grid,
                                    std::uint64_t seed, std::uint64_t replication) {
  if (initial.num_islands() != net.num_islands() ||
      params.num_islands() != net.num_islands()) {
    throw DimensionError("node states, network and parameters disagree");
  }
  for (std::size_t i = 0; i < net.num_islands(); ++i) {
    if (initial.island_size(i) != static_cast<std::size_t>(net.island_size(i))) {
      throw DimensionError("node states were built for different island sizes");
    }
    for (std::size_t v = 0; v < initial.island_size(i); ++v) {
      const int s = initial.at(i, v);
      if (s < 0 || s > static_cast<int>(params.num_strains())) {
        throw std::invalid_argument("node state names an unknown strain");
      }
    }
  }
  validate_grid(grid, t_end);

  MicroTrajectory out;
  out.seed = seed;
  out.replication = replication;
  out.rng_algorithm = std::string(Philox4x32::algorithm);
  out.simulator = "node";
  out.times = grid;
  out.transition_counts.assign(2 * net.num_islands() * params.num_strains(), 0);

  Philox4x32 rng(seed, replication);
  NodeProcess process(net, params, initial, rng);
  MacroCounts state = process.counts();
  std::size_t next = 0;
  while (!process.idle() && process.next_time() <= t_end) {
    const double t_fire = process.next_time();
    bool blocked = false;
    const auto event = process.fire(blocked);
    if (blocked) ++out.blocked_attempts;
    if (!event) continue;
    while (next < grid.size() && grid[next] < t_fire) {
      out.samples.push_back(state);
      ++next;
    }
    apply_event(state, *event);
    ++out.events;
    ++out.transition_counts[transition_slot(*event, net.num_islands(),
                                            params.num_strains())];
  }
  while (out.samples.size() < grid.size()) out.samples.push_back(state);
  return out;
}

}  // namespace sisnet
