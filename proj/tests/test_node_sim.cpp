#include <cmath>

#include "ctmc_oracle.hpp"
#include "doctest.h"
#include "sisnet/node_sim.hpp"

using namespace sisnet;

TEST_CASE("node states round-trip through counts") {
  const auto net = SuperNetwork::bipartite(4, 3);
  const MacroCounts y(net, 2, {1, 2, 0, 3});
  const auto nodes = NodeStates::from_counts(y);
  CHECK(nodes.counts(net, 2) == y);
  CHECK(nodes.at(0, 0) == 1);
  CHECK(nodes.at(0, 1) == 2);
  CHECK(nodes.at(0, 3) == 0);
}

TEST_CASE("node-level runs are deterministic and respect exclusion") {
  const auto net = SuperNetwork::cycle(5, 8);
  const auto params = StrainParams::uniform(net, {0.9, 0.7}, {1.0, 1.2});
  const auto init = NodeStates::from_counts(MacroCounts(net, 2, {2, 1, 0, 0, 1, 0, 0, 3, 0, 0}));
  const auto grid = uniform_grid(3.0, 30);
  const auto a = node_level_simulate(net, params, init, 3.0, grid, 17, 2);
  const auto b = node_level_simulate(net, params, init, 3.0, grid, 17, 2);
  CHECK(a.samples == b.samples);
  CHECK(a.simulator == "node");
  for (const auto& s : a.samples) CHECK(s.satisfies_exclusion());
  CHECK(a.blocked_attempts > 0);
}

TEST_CASE("healthy start stays healthy") {
  const auto net = SuperNetwork::bipartite(3, 3);
  const auto params = StrainParams::uniform(net, {2.0}, {1.0});
  const auto t = node_level_simulate(net, params, NodeStates(net), 2.0, uniform_grid(2.0, 4), 1);
  CHECK(t.events == 0);
  for (const auto& s : t.samples) CHECK(s.total() == 0);
}

TEST_CASE("node-level final-state law matches the exact chain on N=(3,3)") {
  const oracle::BipartiteChain chain{3, 3, 1.5, 1.0};
  const auto exact = oracle::distribution(chain, 1, 2, 1.0);
  const auto net = SuperNetwork::bipartite(3, 3);
  const auto params = StrainParams::uniform(net, {1.5}, {1.0});
  const auto init = NodeStates::from_counts(MacroCounts(net, 1, {1, 2}));
  const int n = 40000;
  std::vector<int> hist(chain.states(), 0);
  for (int r = 0; r < n; ++r) {
    const auto t = node_level_simulate(net, params, init, 1.0, {1.0}, 6,
                                       static_cast<std::uint64_t>(r));
    ++hist[chain.index(static_cast<int>(t.samples[0].at(0, 0)),
                       static_cast<int>(t.samples[0].at(1, 0)))];
  }
  for (int s = 0; s < chain.states(); ++s) {
    const double p = static_cast<double>(exact[s]);
    CHECK(std::abs(hist[s] / double(n) - p) <= 4.0 * std::sqrt(p * (1 - p) / n) + 1e-9);
  }
}
