#include "sisnet/topology.hpp"

#include <algorithm>
#include <deque>

namespace sisnet {

SuperNetwork SuperNetwork::build(std::vector<std::int64_t> island_sizes,
                                 const std::vector<Edge>& edges) {
  const std::size_t m = island_sizes.size();
  if (m < 2) {
    throw TopologyError("a supernetwork needs at least two islands");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (island_sizes[i] <= 0) {
      throw TopologyError("island " + std::to_string(i + 1) +
                          " has non-positive size");
    }
  }

  SuperNetwork net;
  net.sizes_ = std::move(island_sizes);
  net.adjacency_.assign(m, {});
  for (const auto& [a, b] : edges) {
    if (a >= m || b >= m) {
      throw TopologyError("edge (" + std::to_string(a + 1) + "," +
                          std::to_string(b + 1) + ") references a missing island");
    }
    if (a == b) {
      throw TopologyError("self-loop on island " + std::to_string(a + 1) +
                          ": islands have no internal edges");
    }
    net.adjacency_[a].push_back(b);
    net.adjacency_[b].push_back(a);
  }
  for (auto& row : net.adjacency_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }

  const auto dist = net.distances(0);
  net.connected_ = std::all_of(dist.begin(), dist.end(),
                               [](const auto& d) { return d.has_value(); });
  return net;
}

SuperNetwork SuperNetwork::bipartite(std::int64_t n1, std::int64_t n2) {
  return build({n1, n2}, {{0, 1}});
}

SuperNetwork SuperNetwork::cycle(std::size_t islands, std::int64_t island_size) {
  if (islands < 3) {
    throw TopologyError("a cycle needs at least three islands");
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < islands; ++i) {
    edges.emplace_back(i, (i + 1) % islands);
  }
  return build(std::vector<std::int64_t>(islands, island_size), edges);
}

SuperNetwork SuperNetwork::complete(std::size_t islands, std::int64_t island_size) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < islands; ++i) {
    for (std::size_t j = i + 1; j < islands; ++j) {
      edges.emplace_back(i, j);
    }
  }
  return build(std::vector<std::int64_t>(islands, island_size), edges);
}

SuperNetwork SuperNetwork::star(std::size_t islands, std::int64_t island_size) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < islands; ++i) {
    edges.emplace_back(0, i);
  }
  return build(std::vector<std::int64_t>(islands, island_size), edges);
}

SuperNetwork SuperNetwork::with_uniform_size(std::int64_t island_size) const {
  return build(std::vector<std::int64_t>(num_islands(), island_size), edges());
}

void SuperNetwork::check_index(IslandIndex i) const {
  if (i >= sizes_.size()) {
    throw TopologyError("island index " + std::to_string(i) + " out of range");
  }
}

std::int64_t SuperNetwork::island_size(IslandIndex i) const {
  check_index(i);
  return sizes_[i];
}

const std::vector<IslandIndex>& SuperNetwork::neighbors(IslandIndex i) const {
  check_index(i);
  return adjacency_[i];
}

bool SuperNetwork::adjacent(IslandIndex a, IslandIndex b) const {
  const auto& row = neighbors(a);
  return std::binary_search(row.begin(), row.end(), b);
}

std::vector<Edge> SuperNetwork::edges() const {
  std::vector<Edge> out;
  for (std::size_t a = 0; a < adjacency_.size(); ++a) {
    for (auto b : adjacency_[a]) {
      if (a < b) out.emplace_back(a, b);
    }
  }
  return out;
}

bool SuperNetwork::is_regular() const { return regular_degree().has_value(); }

std::optional<std::size_t> SuperNetwork::regular_degree() const {
  const std::size_t d = adjacency_.front().size();
  for (const auto& row : adjacency_) {
    if (row.size() != d) return std::nullopt;
  }
  return d;
}

bool SuperNetwork::has_uniform_sizes() const {
  return std::all_of(sizes_.begin(), sizes_.end(),
                     [&](std::int64_t n) { return n == sizes_.front(); });
}

std::vector<std::optional<std::size_t>> SuperNetwork::distances(
    IslandIndex center) const {
  check_index(center);
  std::vector<std::optional<std::size_t>> dist(num_islands());
  std::deque<IslandIndex> frontier{center};
  dist[center] = 0;
  while (!frontier.empty()) {
    const auto u = frontier.front();
    frontier.pop_front();
    for (auto v : adjacency_[u]) {
      if (!dist[v]) {
        dist[v] = *dist[u] + 1;
        frontier.push_back(v);
      }
    }
  }
  return dist;
}

NeighborhoodShell SuperNetwork::shell(IslandIndex center, std::size_t hop) const {
  NeighborhoodShell out{center, hop, {}};
  const auto dist = distances(center);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] && *dist[i] == hop) out.members.push_back(i);
  }
  return out;
}

}  // namespace sisnet
