#include <catch2/catch.hpp>

#include <algorithm>
#include <queue>
#include <set>

#include "qroute/architecture.hpp"

using namespace qroute;

namespace {

// Independent BFS oracle over the public edge list (ignores orientation).
std::vector<std::uint32_t> bfs_distances(const Architecture& a, Node src) {
  std::vector<std::vector<Node>> adj(a.node_count());
  for (const auto& [u, v] : a.edges()) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<std::uint32_t> dist(a.node_count(), UINT32_MAX);
  std::queue<Node> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    const Node u = q.front();
    q.pop();
    for (const Node w : adj[u])
      if (dist[w] == UINT32_MAX) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
  }
  return dist;
}

std::set<std::pair<Node, Node>> normalized_edge_set(const Architecture& a) {
  std::set<std::pair<Node, Node>> s;
  for (const auto& [u, v] : a.edges()) s.emplace(std::min(u, v), std::max(u, v));
  return s;
}

}  // namespace

TEST_CASE("construction rejects malformed graphs") {
  CHECK_THROWS_AS(Architecture(2, {{0, 0}}, false, "loop"), std::invalid_argument);
  CHECK_THROWS_AS(Architecture(2, {{0, 1}, {1, 0}}, false, "dup"), std::invalid_argument);
  CHECK_THROWS_AS(Architecture(3, {{0, 1}}, false, "disconnected"), std::invalid_argument);
  CHECK_THROWS_AS(Architecture(2, {{0, 2}}, false, "range"), std::invalid_argument);
  // A directed duplicate is the same ordered pair; opposite arcs are fine.
  CHECK_NOTHROW(Architecture(2, {{0, 1}, {1, 0}}, true, "both-ways"));
}

TEST_CASE("ring graphs") {
  const Architecture r4 = Architecture::ring(4);
  CHECK(r4.node_count() == 4);
  CHECK(normalized_edge_set(r4) ==
        std::set<std::pair<Node, Node>>{{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  CHECK(r4.diameter() == 2);
  CHECK(r4.distance(0, 2) == 2);

  const Architecture r64 = Architecture::ring(64);
  for (Node v = 0; v < 64; ++v) CHECK(r64.degree(v) == 2);

  for (std::uint32_t n = 3; n <= 20; ++n) {
    const Architecture r = Architecture::ring(n);
    const std::uint32_t expect = n % 2 == 0 ? n / 2 : (n - 1) / 2;
    CHECK(r.diameter() == expect);
  }
}

TEST_CASE("square grids") {
  const Architecture g3 = Architecture::square_grid(3);
  CHECK(g3.node_count() == 9);
  CHECK(g3.edges().size() == 12);

  CHECK(Architecture::square_grid(8).node_count() == 64);

  // A 2x2 grid is a 4-cycle through row-major corners: 0-1-3-2-0.
  const Architecture g2 = Architecture::square_grid(2);
  const std::set<std::pair<Node, Node>> square = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  CHECK(normalized_edge_set(g2) == square);

  for (std::uint32_t r = 2; r <= 13; ++r)
    CHECK(Architecture::square_grid(r).diameter() == 2 * (r - 1));
}

TEST_CASE("cyclic butterflies") {
  const Architecture b3 = Architecture::cyclic_butterfly(3);
  CHECK(b3.node_count() == 24);
  for (Node v = 0; v < b3.node_count(); ++v) CHECK(b3.degree(v) == 4);

  // Independent enumeration of the r=2 edge set by the bit rule: (w,i) and
  // (v, i+1 mod r) are adjacent when v = w or v = w xor 2^i. For r=2 the two
  // column transitions land on the same column pair, so the straight edges
  // coincide and every node ends up with degree 3, not 4.
  const std::uint32_t r = 2, words = 1u << r;
  std::set<std::pair<Node, Node>> expect;
  for (std::uint32_t i = 0; i < r; ++i)
    for (std::uint32_t w = 0; w < words; ++w) {
      const Node from = i * words + w;
      for (const std::uint32_t v : {w, w ^ (1u << i)}) {
        const Node to = ((i + 1) % r) * words + v;
        expect.emplace(std::min(from, to), std::max(from, to));
      }
    }
  const Architecture b2 = Architecture::cyclic_butterfly(2);
  CHECK(b2.node_count() == 8);
  CHECK(normalized_edge_set(b2) == expect);
  for (Node v = 0; v < b2.node_count(); ++v) CHECK(b2.degree(v) == 3);

  for (std::uint32_t k = 2; k <= 6; ++k) {
    const Architecture b = Architecture::cyclic_butterfly(k);
    CHECK(b.node_count() == k * (1u << k));
    // Logarithmic diameter: 3r/2 up to rounding, verified exactly via BFS.
    std::uint32_t diam = 0;
    for (Node v = 0; v < b.node_count(); ++v)
      for (const std::uint32_t d : bfs_distances(b, v))
        diam = std::max(diam, d);
    CHECK(b.diameter() == diam);
    CHECK(diam <= 3 * k / 2 + 1);
  }
}

TEST_CASE("named devices") {
  const Architecture tokyo = Architecture::ibm_tokyo();
  CHECK(tokyo.node_count() == 20);
  CHECK(tokyo.edges().size() == 41);
  CHECK_FALSE(tokyo.directed());

  const Architecture qx5 = Architecture::ibmqx5();
  CHECK(qx5.node_count() == 16);
  CHECK(qx5.directed());
  CHECK(qx5.edges().size() == 22);
  // Each arc is one-way: the reverse orientation must not be permitted.
  for (const auto& [u, v] : qx5.edges()) {
    CHECK(qx5.has_directed_edge(u, v));
    CHECK_FALSE(qx5.has_directed_edge(v, u));
    CHECK(qx5.has_edge(v, u));  // the skeleton ignores orientation
  }

  const Architecture acorn = Architecture::rigetti_acorn();
  CHECK(acorn.node_count() == 20);
  CHECK(acorn.edges().size() == 23);
}

TEST_CASE("complete graph") {
  const Architecture k8 = Architecture::complete(8);
  CHECK(k8.node_count() == 8);
  CHECK(k8.edges().size() == 28);
  CHECK(k8.diameter() == 1);
}

TEST_CASE("edge-list parsing") {
  const Architecture p3 = Architecture::from_edge_list("undirected 3 0 1 1 2");
  CHECK(p3.node_count() == 3);
  CHECK(p3.distance(0, 2) == 2);

  const Architecture ring4 = Architecture::from_edge_list(
      "# a four-cycle\nundirected 4\n0 1\n1 2\n2 3\n3 0\n");
  CHECK(normalized_edge_set(ring4) == normalized_edge_set(Architecture::ring(4)));

  CHECK_THROWS_AS(Architecture::from_edge_list("undirected 4 0 1 2 3"),
                  std::invalid_argument);  // disconnected
  CHECK_THROWS_AS(Architecture::from_edge_list("sideways 2 0 1"), std::invalid_argument);
}

TEST_CASE("name resolution") {
  CHECK(Architecture::from_name("ring:64").node_count() == 64);
  CHECK(Architecture::from_name("grid:8").node_count() == 64);
  CHECK(Architecture::from_name("butterfly:4").node_count() == 64);
  CHECK(Architecture::from_name("tokyo").node_count() == 20);
  CHECK(Architecture::from_name("qx5").directed());
  CHECK(Architecture::from_name("acorn").node_count() == 20);
  CHECK(Architecture::from_name("complete:8").edges().size() == 28);
  CHECK_THROWS_AS(Architecture::from_name("torus:3"), std::invalid_argument);
}

TEST_CASE("distances satisfy metric axioms") {
  for (const char* name : {"ring:9", "grid:4", "butterfly:3", "tokyo"}) {
    const Architecture a = Architecture::from_name(name);
    for (Node u = 0; u < a.node_count(); ++u) {
      const auto oracle = bfs_distances(a, u);
      CHECK(a.distance(u, u) == 0);
      for (Node v = 0; v < a.node_count(); ++v) {
        CHECK(a.distance(u, v) == oracle[v]);
        CHECK(a.distance(u, v) == a.distance(v, u));
      }
    }
  }
}

TEST_CASE("qx5 skeleton is a 2x8 grid") {
  // Row-major 2x8 grid: node = row*8 + column.
  std::set<std::pair<Node, Node>> grid;
  for (Node row = 0; row < 2; ++row)
    for (Node col = 0; col < 8; ++col) {
      const Node v = row * 8 + col;
      if (col + 1 < 8) grid.emplace(v, v + 1);
      if (row == 0) grid.emplace(v, v + 8);
    }
  const Architecture qx5 = Architecture::ibmqx5();
  // The published labelling is a ring folded over the grid, so compare
  // degree multisets and distance spectra instead of raw labels.
  std::multiset<std::uint32_t> degrees;
  for (Node v = 0; v < qx5.node_count(); ++v) degrees.insert(qx5.degree(v));
  const Architecture ref(16, std::vector<NodePair>(grid.begin(), grid.end()), false, "2x8");
  std::multiset<std::uint32_t> ref_degrees;
  for (Node v = 0; v < ref.node_count(); ++v) ref_degrees.insert(ref.degree(v));
  CHECK(degrees == ref_degrees);
  std::multiset<std::uint32_t> spectrum, ref_spectrum;
  for (Node u = 0; u < 16; ++u)
    for (Node v = 0; v < 16; ++v) {
      spectrum.insert(qx5.distance(u, v));
      ref_spectrum.insert(ref.distance(u, v));
    }
  CHECK(spectrum == ref_spectrum);
}
