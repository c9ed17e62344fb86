#include "doctest.h"
#include "sisnet/topology.hpp"

using namespace sisnet;

TEST_CASE("bipartite has one edge and superdegree 1") {
  const auto net = SuperNetwork::bipartite(3, 3);
  CHECK(net.num_islands() == 2);
  CHECK(net.edges() == std::vector<Edge>{{0, 1}});
  CHECK(net.superdegree(0) == 1);
  CHECK(net.is_regular());
  CHECK(net.is_connected());
}

TEST_CASE("cycle, complete and star degrees") {
  CHECK(SuperNetwork::cycle(6, 10).regular_degree() == 2u);
  CHECK(SuperNetwork::complete(5, 10).regular_degree() == 4u);
  const auto star = SuperNetwork::star(4, 10);
  CHECK_FALSE(star.is_regular());
  CHECK(star.superdegree(0) == 3);
  CHECK(star.superdegree(2) == 1);
}

TEST_CASE("duplicate edges collapse in either orientation") {
  const auto net = SuperNetwork::build({2, 2, 2}, {{0, 1}, {1, 0}, {0, 1}, {1, 2}});
  CHECK(net.edges().size() == 2);
  CHECK(net.neighbors(1) == std::vector<IslandIndex>{0, 2});
}

TEST_CASE("invalid networks are rejected") {
  CHECK_THROWS_AS(SuperNetwork::build({3}, {}), TopologyError);
  CHECK_THROWS_AS(SuperNetwork::build({3, 0}, {{0, 1}}), TopologyError);
  CHECK_THROWS_AS(SuperNetwork::build({3, 3}, {{0, 0}}), TopologyError);
  CHECK_THROWS_AS(SuperNetwork::build({3, 3}, {{0, 2}}), TopologyError);
  CHECK_THROWS_AS(SuperNetwork::cycle(2, 3), TopologyError);
  CHECK_THROWS_AS(SuperNetwork::bipartite(3, 3).neighbors(2), TopologyError);
}

TEST_CASE("disconnected networks are degenerate") {
  const auto net = SuperNetwork::build({1, 1, 1, 1}, {{0, 1}, {2, 3}});
  CHECK_FALSE(net.is_connected());
  CHECK(net.is_degenerate());
  CHECK(net.is_regular());
  CHECK_FALSE(net.distances(0)[2].has_value());
}

TEST_CASE("shells on an 8-cycle") {
  const auto net = SuperNetwork::cycle(8, 1);
  CHECK(net.shell(0, 0).members == std::vector<IslandIndex>{0});
  CHECK(net.shell(0, 1).members == std::vector<IslandIndex>{1, 7});
  CHECK(net.shell(0, 3).members == std::vector<IslandIndex>{3, 5});
  CHECK(net.shell(0, 4).members == std::vector<IslandIndex>{4});
  CHECK(net.shell(0, 5).members.empty());
}

TEST_CASE("resizing keeps the topology") {
  const auto net = SuperNetwork::cycle(5, 3).with_uniform_size(40);
  CHECK(net.island_size(4) == 40);
  CHECK(net.edges() == SuperNetwork::cycle(5, 1).edges());
  CHECK(net.has_uniform_sizes());
  CHECK_FALSE(SuperNetwork::bipartite(2, 3).has_uniform_sizes());
}
