#include <catch2/catch.hpp>

#include <numeric>
#include <random>

#include "qroute/placement.hpp"
#include "test_fixtures.hpp"

using namespace qroute;

namespace {

// Union-find acyclicity oracle for interaction graphs.
bool is_forest(const InteractionGraph& g) {
  std::vector<Qubit> parent(g.num_qubits);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](Qubit v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [a, b] : g.edges) {
    const Qubit ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  return true;
}

}  // namespace

TEST_CASE("interaction graph of the worked example") {
  const Circuit c = testing::textbook_circuit();
  const InteractionGraph g = build_interaction_graph(slice_timesteps(c), c.num_qubits());

  // First slice contributes (0,2) and (1,3); the second (1,2) completes the
  // path 0-2-1-3. Later pairs (0,1) and (2,3) are rejected because an endpoint
  // already has two neighbours.
  CHECK(g.edges == std::vector<QubitPair>{{0, 2}, {1, 3}, {1, 2}});
  CHECK(g.degrees() == std::vector<std::uint32_t>{1, 2, 2, 1});
  CHECK(is_forest(g));
}

TEST_CASE("repeated pairs are recorded once") {
  Circuit c(2);
  c.cx(0, 1);
  c.cx(0, 1);
  const InteractionGraph g = build_interaction_graph(slice_timesteps(c), 2);
  CHECK(g.edges == std::vector<QubitPair>{{0, 1}});
}

TEST_CASE("cycles are broken by dropping the newest edge") {
  Circuit c(4);
  c.cx(0, 1);
  c.cx(2, 3);
  c.cx(1, 2);
  c.cx(0, 3);
  // Slices: {(0,1),(2,3)} then {(0,3),(1,2)} (sorted within the slice), so
  // insertion order is (0,1),(2,3),(0,3),(1,2) and the 4-cycle that the last
  // edge closes loses exactly that edge.
  const InteractionGraph g = build_interaction_graph(slice_timesteps(c), 4);
  CHECK(g.edges == std::vector<QubitPair>{{0, 1}, {2, 3}, {0, 3}});
  CHECK(g.degrees() == std::vector<std::uint32_t>{2, 1, 1, 2});
  CHECK(is_forest(g));
}

TEST_CASE("interaction graphs are always unions of paths") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::uint32_t n = 4 + static_cast<std::uint32_t>(rng() % 8);
    Circuit c(n);
    for (int g = 0; g < 40; ++g) {
      const Qubit a = static_cast<Qubit>(rng() % n);
      Qubit b = static_cast<Qubit>(rng() % n);
      if (a == b) b = (b + 1) % n;
      c.cx(a, b);
    }
    const InteractionGraph g = build_interaction_graph(slice_timesteps(c), n);
    for (const std::uint32_t d : g.degrees()) CHECK(d <= 2);
    CHECK(is_forest(g));
  }
}

TEST_CASE("worked-example placement on a four-node ring") {
  const Circuit c = testing::textbook_circuit();
  const InteractionGraph g = build_interaction_graph(slice_timesteps(c), c.num_qubits());
  const Mapping m = initial_map(g, Architecture::ring(4));
  // The interaction path 0-2-1-3 is laid consecutively around the ring.
  CHECK(m == testing::textbook_mapping());
  CHECK(m.complete());
}

TEST_CASE("placement walks a chain onto adjacent grid nodes") {
  const Architecture grid = Architecture::square_grid(3);
  Circuit c(9);
  for (Qubit q = 0; q + 1 < 9; ++q) c.cx(q, q + 1);
  const InteractionGraph g = build_interaction_graph(slice_timesteps(c), 9);
  REQUIRE(g.edges.size() == 8);

  const Mapping m = initial_map(g, grid);
  CHECK(m.complete());
  // The walk starts on the unique maximal-degree node (the centre)...
  CHECK(m.node_of(0) == 4);
  // ...and every interaction edge lands on an architecture edge.
  for (const auto& [a, b] : g.edges) CHECK(grid.has_edge(m.node_of(a), m.node_of(b)));
}

TEST_CASE("longer components are placed first") {
  const Architecture path5 = Architecture::from_edge_list("undirected 5 0 1 1 2 2 3 3 4");
  Circuit c(5);
  c.cx(0, 1);  // two-qubit component
  c.cx(2, 3);
  c.cx(3, 4);  // three-qubit component
  const InteractionGraph g = build_interaction_graph(slice_timesteps(c), 5);

  const Mapping m = initial_map(g, path5);
  CHECK(m.complete());
  // The length-3 chain claims the central node (max degree, then minimal
  // eccentricity) before the length-2 chain gets placed.
  CHECK(m.node_of(2) == 2);
  for (const auto& [a, b] : g.edges) CHECK(path5.has_edge(m.node_of(a), m.node_of(b)));
}

TEST_CASE("non-interacting qubits stay unmapped") {
  Circuit c(4);
  c.h(2);
  c.cx(0, 1);
  const InteractionGraph g = build_interaction_graph(slice_timesteps(c), 4);
  const Mapping m = initial_map(g, Architecture::ring(4));
  CHECK(m.has_qubit(0));
  CHECK(m.has_qubit(1));
  CHECK_FALSE(m.has_qubit(2));
  CHECK_FALSE(m.has_qubit(3));
  CHECK(Architecture::ring(4).has_edge(m.node_of(0), m.node_of(1)));
}

TEST_CASE("single-qubit circuits produce an empty mapping") {
  Circuit c(3);
  c.h(0);
  c.t(1);
  const InteractionGraph g = build_interaction_graph(slice_timesteps(c), 3);
  CHECK(g.edges.empty());
  const Mapping m = initial_map(g, Architecture::ring(4));
  CHECK(m.mapped_count() == 0);
}

TEST_CASE("placement rejects more interacting qubits than nodes") {
  Circuit c(4);
  c.cx(0, 1);
  c.cx(1, 2);
  c.cx(2, 3);
  const InteractionGraph g = build_interaction_graph(slice_timesteps(c), 4);
  CHECK_THROWS_AS(initial_map(g, Architecture::ring(3)), std::invalid_argument);
}
