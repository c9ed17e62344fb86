#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sisnet {

// Islands are 0-based in the C++ API. Config files and CSV output use 1-based
// labels; conversion happens only at the I/O boundary.
using IslandIndex = std::size_t;
using Edge = std::pair<IslandIndex, IslandIndex>;

class TopologyError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Islands at exactly `hop` geodesic steps from `center`.
struct NeighborhoodShell {
  IslandIndex center = 0;
  std::size_t hop = 0;
  std::vector<IslandIndex> members;  // sorted
};

/// Island-level graph of a multipartite network.
///
/// Nodes inside an island are never adjacent; two adjacent islands are
/// connected all-to-all, so the supergraph plus the island sizes is the whole
/// network. Immutable after construction.
class SuperNetwork {
public:
  /// Validates and builds. Duplicate edges (in either orientation) collapse;
  /// self-loops and out-of-range indices throw TopologyError.
  static SuperNetwork build(std::vector<std::int64_t> island_sizes,
                            const std::vector<Edge>& edges);

  // Canonical families. Every island gets `island_size` nodes.
  static SuperNetwork bipartite(std::int64_t n1, std::int64_t n2);
  static SuperNetwork cycle(std::size_t islands, std::int64_t island_size);
  static SuperNetwork complete(std::size_t islands, std::int64_t island_size);
  /// Island 0 is the hub.
  static SuperNetwork star(std::size_t islands, std::int64_t island_size);

  /// Same topology with every island resized to `island_size`.
  SuperNetwork with_uniform_size(std::int64_t island_size) const;

  std::size_t num_islands() const { return sizes_.size(); }
  std::int64_t island_size(IslandIndex i) const;
  const std::vector<std::int64_t>& island_sizes() const { return sizes_; }

  const std::vector<IslandIndex>& neighbors(IslandIndex i) const;
  bool adjacent(IslandIndex a, IslandIndex b) const;
  std::size_t superdegree(IslandIndex i) const { return neighbors(i).size(); }
  std::vector<Edge> edges() const;

  bool is_regular() const;
  /// Common superdegree if regular.
  std::optional<std::size_t> regular_degree() const;
  bool is_connected() const { return connected_; }
  /// Disconnected, or containing an island without neighbors.
  bool is_degenerate() const { return !connected_; }
  bool has_uniform_sizes() const;

  /// Breadth-first hop distances from `center`; nullopt marks unreachable.
  std::vector<std::optional<std::size_t>> distances(IslandIndex center) const;
  NeighborhoodShell shell(IslandIndex center, std::size_t hop) const;

private:
  SuperNetwork() = default;
  void check_index(IslandIndex i) const;

  std::vector<std::int64_t> sizes_;
  std::vector<std::vector<IslandIndex>> adjacency_;
  bool connected_ = false;
};

}  // namespace sisnet
