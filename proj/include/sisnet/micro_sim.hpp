#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sisnet/rng.hpp"
#include "sisnet/strain.hpp"
#include "sisnet/topology.hpp"

namespace sisnet {

enum class EventKind { Infect, Heal };

struct Event {
  EventKind kind;
  IslandIndex island;
  StrainIndex strain;
  friend bool operator==(const Event&, const Event&) = default;
};

struct RatedEvent {
  Event event;
  double rate;
};

/// Transition rates out of a macrostate. Zero-rate events are omitted.
struct EventRateTable {
  std::vector<RatedEvent> entries;
  double total = 0.0;
};

/// Infect(i,k) = (sum_{j~i} gamma^k_{ji} Y[j,k]) (N_i - occupied_i) / N_i,
/// Heal(i,k) = mu^k Y[i,k].
EventRateTable event_rates(const MacroCounts& counts, const SuperNetwork& net,
                           const StrainParams& params);

struct StepOutcome {
  std::optional<Event> event;  // nullopt: absorbed, nothing can happen
  double waiting_time = 0.0;   // +inf when absorbed
};

/// One exact CTMC jump. Updates `counts` in place.
StepOutcome gillespie_step(MacroCounts& counts, const SuperNetwork& net,
                           const StrainParams& params, Philox4x32& rng);

/// Applies a single +-1 transition.
void apply_event(MacroCounts& counts, const Event& event);

struct MicroTrajectory {
  std::vector<double> times;
  std::vector<MacroCounts> samples;
  std::uint64_t seed = 0;
  std::uint64_t replication = 0;
  std::string rng_algorithm;
  std::uint64_t events = 0;            // state-changing transitions
  std::uint64_t blocked_attempts = 0;  // infections aimed at occupied nodes
  /// Transitions per event type, indexed by transition_slot().
  std::vector<std::uint64_t> transition_counts;
  std::string simulator;  // "count" or "node"
};

/// Index of an event type in MicroTrajectory::transition_counts.
inline std::size_t transition_slot(const Event& e, std::size_t islands,
                                   std::size_t strains) {
  const std::size_t kind = e.kind == EventKind::Infect ? 0 : 1;
  return (kind * islands + e.island) * strains + e.strain;
}

/// Equally spaced grid 0, t_end/intervals, ..., t_end.
std::vector<double> uniform_grid(double t_end, std::size_t intervals);

/// Throws unless the grid is non-empty, starts at >= 0, increases strictly
/// and ends at or before t_end.
void validate_grid(const std::vector<double>& grid, double t_end);

/// Count-level Gillespie run to t_end, reported on `grid` by carrying the
/// last value forward. Deterministic for a given (seed, replication).
MicroTrajectory simulate(const MacroCounts& initial, const SuperNetwork& net,
                         const StrainParams& params, double t_end,
                         const std::vector<double>& grid, std::uint64_t seed,
                         std::uint64_t replication = 0);

}  // namespace sisnet
