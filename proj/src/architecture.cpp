#include "qroute/architecture.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qroute {

namespace {

std::uint64_t arc_key(Node a, Node b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

Architecture::Architecture(std::uint32_t node_count, std::vector<NodePair> edges,
                           bool directed, std::string name)
    : node_count_(node_count), directed_(directed), name_(std::move(name)),
      edges_(std::move(edges)) {
  if (node_count_ < 2)
    throw std::invalid_argument("architecture '" + name_ + "': needs at least two nodes");
  if (edges_.empty())
    throw std::invalid_argument("architecture '" + name_ + "': needs at least one edge");

  adj_.assign(node_count_, {});
  std::set<std::uint64_t> seen;           // ordered pairs for directed, normalized otherwise
  std::set<std::uint64_t> skeleton_edges; // always normalized
  for (auto& [a, b] : edges_) {
    if (a >= node_count_ || b >= node_count_)
      throw std::invalid_argument("architecture '" + name_ + "': edge endpoint out of range");
    if (a == b)
      throw std::invalid_argument("architecture '" + name_ + "': self-loop on node " +
                                  std::to_string(a));
    if (!directed_ && a > b) std::swap(a, b);
    const std::uint64_t key = directed_ ? arc_key(a, b) : arc_key(std::min(a, b), std::max(a, b));
    if (!seen.insert(key).second)
      throw std::invalid_argument("architecture '" + name_ + "': duplicate edge (" +
                                  std::to_string(a) + ", " + std::to_string(b) + ")");
    if (directed_) directed_set_.push_back(key);
    skeleton_edges.insert(arc_key(std::min(a, b), std::max(a, b)));
  }
  for (const std::uint64_t key : skeleton_edges) {
    const Node a = static_cast<Node>(key >> 32);
    const Node b = static_cast<Node>(key & 0xffffffffu);
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
  std::sort(directed_set_.begin(), directed_set_.end());

  // All-pairs BFS over the skeleton; also proves connectivity.
  const std::uint32_t unreachable = node_count_;  // sentinel > any distance
  dist_.assign(static_cast<std::size_t>(node_count_) * node_count_, unreachable);
  std::deque<Node> queue;
  for (Node source = 0; source < node_count_; ++source) {
    auto* row = &dist_[static_cast<std::size_t>(source) * node_count_];
    row[source] = 0;
    queue.clear();
    queue.push_back(source);
    while (!queue.empty()) {
      const Node v = queue.front();
      queue.pop_front();
      for (const Node w : adj_[v]) {
        if (row[w] == unreachable) {
          row[w] = row[v] + 1;
          queue.push_back(w);
        }
      }
    }
    for (Node v = 0; v < node_count_; ++v)
      if (row[v] == unreachable)
        throw std::invalid_argument("architecture '" + name_ + "': skeleton is disconnected");
  }
}

bool Architecture::has_edge(Node a, Node b) const {
  if (a >= node_count_ || b >= node_count_ || a == b) return false;
  return distance(a, b) == 1;
}

bool Architecture::has_directed_edge(Node a, Node b) const {
  if (!has_edge(a, b)) return false;
  if (!directed_) return true;
  return std::binary_search(directed_set_.begin(), directed_set_.end(), arc_key(a, b));
}

std::uint32_t Architecture::eccentricity(Node v) const {
  const auto* row = &dist_[static_cast<std::size_t>(v) * node_count_];
  return *std::max_element(row, row + node_count_);
}

std::uint32_t Architecture::diameter() const {
  std::uint32_t d = 0;
  for (Node v = 0; v < node_count_; ++v) d = std::max(d, eccentricity(v));
  return d;
}

Architecture Architecture::ring(std::uint32_t n) {
  if (n < 3) throw std::invalid_argument("ring: need n >= 3");
  std::vector<NodePair> edges;
  edges.reserve(n);
  for (Node i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Architecture(n, std::move(edges), false, "ring:" + std::to_string(n));
}

Architecture Architecture::square_grid(std::uint32_t r) {
  if (r < 2) throw std::invalid_argument("square_grid: need r >= 2");
  std::vector<NodePair> edges;
  for (Node row = 0; row < r; ++row) {
    for (Node col = 0; col < r; ++col) {
      const Node v = row * r + col;
      if (col + 1 < r) edges.emplace_back(v, v + 1);
      if (row + 1 < r) edges.emplace_back(v, v + r);
    }
  }
  return Architecture(r * r, std::move(edges), false, "grid:" + std::to_string(r));
}

Architecture Architecture::cyclic_butterfly(std::uint32_t r) {
  if (r < 2 || r > 20) throw std::invalid_argument("cyclic_butterfly: need 2 <= r <= 20");
  const std::uint32_t words = 1u << r;
  const auto index = [words](std::uint32_t w, std::uint32_t col) { return col * words + w; };
  std::set<NodePair> edges;  // set: at r = 2 the straight and wrap edges coincide
  for (std::uint32_t col = 0; col < r; ++col) {
    const std::uint32_t next = (col + 1) % r;
    for (std::uint32_t w = 0; w < words; ++w) {
      for (const std::uint32_t v : {w, w ^ (1u << col)}) {
        Node a = index(w, col);
        Node b = index(v, next);
        if (a > b) std::swap(a, b);
        edges.emplace(a, b);
      }
    }
  }
  return Architecture(r * words, {edges.begin(), edges.end()}, false,
                      "butterfly:" + std::to_string(r));
}

Architecture Architecture::ibm_tokyo() {
  // IBM Q 20 Tokyo coupling map: a 4 x 5 lattice with extra diagonal
  // couplings, as published with the device.
  std::vector<NodePair> edges = {
      {0, 1},   {1, 2},   {2, 3},   {3, 4},   {0, 5},   {1, 6},   {1, 7},
      {2, 6},   {2, 7},   {3, 8},   {3, 9},   {4, 8},   {4, 9},   {5, 6},
      {5, 10},  {5, 11},  {6, 10},  {6, 11},  {6, 7},   {7, 12},  {7, 13},
      {7, 8},   {8, 12},  {8, 13},  {8, 9},   {10, 11}, {11, 16}, {11, 17},
      {11, 12}, {12, 16}, {12, 17}, {12, 13}, {13, 18}, {13, 19}, {13, 14},
      {14, 18}, {14, 19}, {15, 16}, {16, 17}, {17, 18}, {18, 19},
  };
  return Architecture(20, std::move(edges), false, "tokyo");
}

Architecture Architecture::ibmqx5() {
  // IBM QX5 coupling map, control -> target orientation as published for the
  // device. The undirected skeleton is a 2 x 8 grid.
  std::vector<NodePair> edges = {
      {1, 0},  {1, 2},   {2, 3},  {3, 14}, {3, 4},   {5, 4},   {6, 5},  {6, 11},
      {6, 7},  {7, 10},  {8, 7},  {9, 8},  {9, 10},  {11, 10}, {12, 5}, {12, 11},
      {12, 13}, {13, 4}, {13, 14}, {15, 0}, {15, 14}, {15, 2},
  };
  return Architecture(16, std::move(edges), true, "qx5");
}

Architecture Architecture::rigetti_acorn() {
  // Rigetti 19Q-Acorn lattice (20 nodes; the published topology).
  std::vector<NodePair> edges = {
      {0, 5},  {0, 6},  {1, 6},  {1, 7},  {2, 7},  {2, 8},  {3, 8},  {3, 9},
      {4, 9},  {5, 10}, {6, 11}, {7, 12}, {8, 13}, {9, 14}, {10, 15}, {10, 16},
      {11, 16}, {11, 17}, {12, 17}, {12, 18}, {13, 18}, {13, 19}, {14, 19},
  };
  return Architecture(20, std::move(edges), false, "acorn");
}

Architecture Architecture::complete(std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("complete: need n >= 2");
  std::vector<NodePair> edges;
  for (Node a = 0; a < n; ++a)
    for (Node b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  return Architecture(n, std::move(edges), false, "complete:" + std::to_string(n));
}

Architecture Architecture::from_edge_list(std::string_view text) {
  // Strip '#' comments, then read whitespace-separated tokens.
  std::string cleaned;
  cleaned.reserve(text.size());
  bool in_comment = false;
  for (const char c : text) {
    if (c == '#') in_comment = true;
    if (c == '\n') in_comment = false;
    cleaned.push_back(in_comment ? ' ' : c);
  }
  std::istringstream in(cleaned);

  std::string kind;
  if (!(in >> kind)) throw std::invalid_argument("edge list: empty input");
  bool directed = false;
  if (kind == "directed") {
    directed = true;
  } else if (kind != "undirected") {
    throw std::invalid_argument("edge list: expected 'directed' or 'undirected', got '" +
                                kind + "'");
  }
  std::int64_t count = 0;
  if (!(in >> count) || count < 2)
    throw std::invalid_argument("edge list: expected a node count >= 2");

  std::vector<NodePair> edges;
  std::int64_t a = 0, b = 0;
  while (in >> a) {
    if (!(in >> b)) throw std::invalid_argument("edge list: dangling edge endpoint");
    if (a < 0 || b < 0 || a >= count || b >= count)
      throw std::invalid_argument("edge list: endpoint out of range");
    edges.emplace_back(static_cast<Node>(a), static_cast<Node>(b));
  }
  if (!in.eof()) throw std::invalid_argument("edge list: malformed token");
  return Architecture(static_cast<std::uint32_t>(count), std::move(edges), directed,
                      "edge-list");
}

Architecture Architecture::from_name(std::string_view name) {
  const auto split = name.find(':');
  const std::string_view head = name.substr(0, split);
  std::uint32_t param = 0;
  if (split != std::string_view::npos) {
    const std::string_view tail = name.substr(split + 1);
    const auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), param);
    if (ec != std::errc() || ptr != tail.data() + tail.size())
      throw std::invalid_argument("architecture name '" + std::string(name) +
                                  "': malformed size parameter");
  }

  if (head == "ring" && param) return ring(param);
  if (head == "grid" && param) return square_grid(param);
  if (head == "butterfly" && param) return cyclic_butterfly(param);
  if (head == "complete" && param) return complete(param);
  if (name == "tokyo") return ibm_tokyo();
  if (name == "qx5") return ibmqx5();
  if (name == "acorn") return rigetti_acorn();
  throw std::invalid_argument(
      "unknown architecture '" + std::string(name) +
      "' (expected ring:N, grid:R, butterfly:R, complete:N, tokyo, qx5 or acorn)");
}

}  // namespace qroute
