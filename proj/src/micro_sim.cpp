#include "sisnet/micro_sim.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sisnet {
namespace {

void check_dimensions(const MacroCounts& counts, const SuperNetwork& net,
                      const StrainParams& params) {
  if (counts.num_islands() != net.num_islands() ||
      params.num_islands() != net.num_islands()) {
    throw DimensionError("counts, network and parameters disagree on island count");
  }
  if (counts.num_strains() != params.num_strains()) {
    throw DimensionError("counts and parameters disagree on strain count");
  }
  if (counts.island_sizes() != net.island_sizes()) {
    throw DimensionError("counts were built for different island sizes");
  }
}

struct DrawnStep {
  std::optional<Event> event;
  double waiting_time;
};

DrawnStep draw_step(const MacroCounts& counts, const SuperNetwork& net,
                    const StrainParams& params, Philox4x32& rng) {
  const auto table = event_rates(counts, net, params);
  if (table.total <= 0.0) {
    return {std::nullopt, std::numeric_limits<double>::infinity()};
  }
  const double dt = exponential(rng, table.total);
  const double target = uniform_open01(rng) * table.total;
  double acc = 0.0;
  for (const auto& e : table.entries) {
    acc += e.rate;
    if (target < acc) return {e.event, dt};
  }
  return {table.entries.back().event, dt};
}

}  // namespace

EventRateTable event_rates(const MacroCounts& counts, const SuperNetwork& net,
                           const StrainParams& params) {
  check_dimensions(counts, net, params);
  EventRateTable table;
  const std::size_t m = net.num_islands();
  const std::size_t strains = params.num_strains();
  for (std::size_t i = 0; i < m; ++i) {
    const auto n_i = net.island_size(i);
    const auto susceptible = static_cast<double>(n_i - counts.occupied(i));
    for (std::size_t k = 0; k < strains; ++k) {
      double pressure = 0.0;
      for (auto j : net.neighbors(i)) {
        pressure += params.gamma(k, j, i) * static_cast<double>(counts.at(j, k));
      }
      const double infect = pressure * susceptible / static_cast<double>(n_i);
      if (infect > 0.0) {
        table.entries.push_back({{EventKind::Infect, i, k}, infect});
        table.total += infect;
      }
      const double heal = params.mu(k) * static_cast<double>(counts.at(i, k));
      if (heal > 0.0) {
        table.entries.push_back({{EventKind::Heal, i, k}, heal});
        table.total += heal;
      }
    }
  }
  return table;
}

void apply_event(MacroCounts& counts, const Event& event) {
  auto& cell = counts.at(event.island, event.strain);
  if (event.kind == EventKind::Infect) {
    if (counts.occupied(event.island) >= counts.island_size(event.island)) {
      throw std::logic_error("infection drawn into a saturated island");
    }
    ++cell;
  } else {
    if (cell <= 0) throw std::logic_error("healing drawn from an empty cell");
    --cell;
  }
}

StepOutcome gillespie_step(MacroCounts& counts, const SuperNetwork& net,
                           const StrainParams& params, Philox4x32& rng) {
  const auto drawn = draw_step(counts, net, params, rng);
  if (drawn.event) apply_event(counts, *drawn.event);
  return {drawn.event, drawn.waiting_time};
}

std::vector<double> uniform_grid(double t_end, std::size_t intervals) {
  if (!(t_end > 0.0) || intervals == 0) {
    throw std::invalid_argument("grid needs t_end > 0 and at least one interval");
  }
  std::vector<double> grid(intervals + 1);
  for (std::size_t s = 0; s <= intervals; ++s) {
    grid[s] = t_end * static_cast<double>(s) / static_cast<double>(intervals);
  }
  return grid;
}

void validate_grid(const std::vector<double>& grid, double t_end) {
  if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
  if (grid.empty()) throw std::invalid_argument("sample grid is empty");
  if (grid.front() < 0.0) throw std::invalid_argument("sample grid starts before 0");
  for (std::size_t s = 1; s < grid.size(); ++s) {
    if (!(grid[s] > grid[s - 1])) {
      throw std::invalid_argument("sample grid must increase strictly");
    }
  }
  if (grid.back() > t_end) throw std::invalid_argument("sample grid exceeds t_end");
}

MicroTrajectory simulate(const MacroCounts& initial, const SuperNetwork& net,
                         const StrainParams& params, double t_end,
                         const std::vector<double>& grid, std::uint64_t seed,
                         std::uint64_t replication) {
  check_dimensions(initial, net, params);
  validate_grid(grid, t_end);

  MicroTrajectory out;
  out.seed = seed;
  out.replication = replication;
  out.rng_algorithm = std::string(Philox4x32::algorithm);
  out.simulator = "count";
  out.times = grid;
  out.samples.reserve(grid.size());
  out.transition_counts.assign(2 * net.num_islands() * params.num_strains(), 0);

  Philox4x32 rng(seed, replication);
  MacroCounts state = initial;
  double t = 0.0;
  std::size_t next = 0;
  while (next < grid.size()) {
    const auto drawn = draw_step(state, net, params, rng);
    const double t_jump = t + drawn.waiting_time;
    // Grid points strictly before the jump see the pre-jump state.
    while (next < grid.size() && grid[next] < t_jump) {
      out.samples.push_back(state);
      ++next;
    }
    if (!drawn.event || t_jump > t_end) break;
    apply_event(state, *drawn.event);
    t = t_jump;
    ++out.events;
    ++out.transition_counts[transition_slot(*drawn.event, net.num_islands(),
                                            params.num_strains())];
  }
  while (out.samples.size() < grid.size()) out.samples.push_back(state);
  return out;
}

}  // namespace sisnet
