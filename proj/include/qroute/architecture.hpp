#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qroute {

using Node = std::uint32_t;
using NodePair = std::pair<Node, Node>;

/// A device connectivity graph. Nodes are dense indices [0, node_count).
/// Edges may be directed (CX control -> target orientation); routing always
/// works on the undirected skeleton, orientation only matters to synthesis
/// and conformance checking. The skeleton must be connected, self-loop free
/// and duplicate free.
class Architecture {
 public:
  /// Builds from an explicit edge list. Throws std::invalid_argument on
  /// out-of-range endpoints, self-loops, duplicate edges (for directed
  /// graphs a duplicate is the same ordered pair) or a disconnected skeleton.
  Architecture(std::uint32_t node_count, std::vector<NodePair> edges, bool directed,
               std::string name);

  // -- Generators -----------------------------------------------------------

  /// Cycle graph on n >= 3 nodes: edges (i, i+1 mod n).
  static Architecture ring(std::uint32_t n);

  /// r x r grid, r >= 2, row-major indices, 4-neighbour connectivity.
  static Architecture square_grid(std::uint32_t r);

  /// Cyclic butterfly of order r >= 2: nodes are (word, column) pairs with an
  /// r-bit word w and column i in [0, r), laid out as index = i * 2^r + w.
  /// (w, i) and (v, j) are adjacent when j = i+1 (mod r) and w equals v or
  /// differs from v exactly in bit i. r * 2^r nodes; degree 4 for r >= 3.
  static Architecture cyclic_butterfly(std::uint32_t r);

  /// IBM Q 20 Tokyo coupling map (20 nodes, undirected, 41 edges).
  static Architecture ibm_tokyo();

  /// IBM QX5 coupling map (16 nodes, directed CX orientation, 22 arcs whose
  /// skeleton is a 2 x 8 grid).
  static Architecture ibmqx5();

  /// Rigetti 19Q-Acorn lattice (20 nodes, undirected, 23 edges).
  static Architecture rigetti_acorn();

  /// Complete graph on n >= 2 nodes (pseudo-architecture: routing is a no-op).
  static Architecture complete(std::uint32_t n);

  /// Parses the textual edge-list format: whitespace-separated tokens
  ///   ("directed"|"undirected") <node-count> (<a> <b>)*
  /// with '#' line comments. Same validation as the constructor.
  static Architecture from_edge_list(std::string_view text);

  /// Resolves CLI-style names: "ring:64", "grid:8", "butterfly:3",
  /// "complete:8", "tokyo", "qx5", "acorn". Throws std::invalid_argument for
  /// anything else.
  static Architecture from_name(std::string_view name);

  // -- Queries ---------------------------------------------------------------

  std::uint32_t node_count() const { return node_count_; }
  bool directed() const { return directed_; }
  const std::string& name() const { return name_; }

  /// Edges as constructed (directed graphs: orientation preserved;
  /// undirected graphs: normalized with first < second).
  const std::vector<NodePair>& edges() const { return edges_; }

  /// Skeleton adjacency, ignoring orientation.
  bool has_edge(Node a, Node b) const;

  /// True when a CX with control a and target b is directly permitted.
  /// For undirected architectures this equals has_edge.
  bool has_directed_edge(Node a, Node b) const;

  /// Skeleton hop distance (BFS, precomputed all-pairs).
  std::uint32_t distance(Node a, Node b) const {
    return dist_[static_cast<std::size_t>(a) * node_count_ + b];
  }

  /// Skeleton neighbours, sorted ascending.
  const std::vector<Node>& neighbours(Node v) const { return adj_[v]; }

  std::uint32_t degree(Node v) const { return static_cast<std::uint32_t>(adj_[v].size()); }
  std::uint32_t eccentricity(Node v) const;
  std::uint32_t diameter() const;

 private:
  std::uint32_t node_count_ = 0;
  bool directed_ = false;
  std::string name_;
  std::vector<NodePair> edges_;
  std::vector<std::vector<Node>> adj_;      // skeleton, sorted
  std::vector<std::uint64_t> directed_set_; // sorted (a << 32 | b) keys
  std::vector<std::uint32_t> dist_;         // all pairs, row-major
};

}  // namespace qroute
