#include "qroute/placement.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace qroute {

std::vector<std::uint32_t> InteractionGraph::degrees() const {
  std::vector<std::uint32_t> deg(num_qubits, 0);
  for (const auto& [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

InteractionGraph build_interaction_graph(const std::vector<Timestep>& slices,
                                         std::uint32_t num_qubits) {
  InteractionGraph g;
  g.num_qubits = num_qubits;

  std::vector<std::uint32_t> deg(num_qubits, 0);
  std::vector<std::vector<Qubit>> adj(num_qubits);
  const auto connected = [&](Qubit a, Qubit b) {
    return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
  };

  for (const Timestep& step : slices) {
    std::vector<QubitPair> pairs = step.pairs;
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [a, b] : pairs) {
      if (deg[a] >= 2 || deg[b] >= 2 || connected(a, b)) continue;
      g.edges.emplace_back(a, b);
      adj[a].push_back(b);
      adj[b].push_back(a);
      ++deg[a];
      ++deg[b];
    }
  }

  // Break cycles: a component is a cycle exactly when all its vertices have
  // degree 2. Remove the most recently inserted edge of each such component.
  std::vector<std::int32_t> component(num_qubits, -1);
  std::int32_t num_components = 0;
  for (Qubit q = 0; q < num_qubits; ++q) {
    if (deg[q] == 0 || component[q] >= 0) continue;
    std::vector<Qubit> stack{q};
    component[q] = num_components;
    while (!stack.empty()) {
      const Qubit v = stack.back();
      stack.pop_back();
      for (const Qubit w : adj[v]) {
        if (component[w] < 0) {
          component[w] = num_components;
          stack.push_back(w);
        }
      }
    }
    ++num_components;
  }

  std::vector<char> is_cycle(num_components, 1);
  for (Qubit q = 0; q < num_qubits; ++q)
    if (deg[q] == 1) is_cycle[component[q]] = 0;

  std::vector<std::optional<std::size_t>> last_edge(num_components);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const std::int32_t c = component[g.edges[i].first];
    if (is_cycle[c]) last_edge[c] = i;  // edges scanned in insertion order
  }
  std::vector<std::size_t> to_remove;
  for (const auto& idx : last_edge)
    if (idx) to_remove.push_back(*idx);
  std::sort(to_remove.rbegin(), to_remove.rend());
  for (const std::size_t idx : to_remove) g.edges.erase(g.edges.begin() + idx);

  return g;
}

namespace {

/// Extracts each path component as an ordered vertex sequence, starting from
/// its lower-indexed endpoint.
std::vector<std::vector<Qubit>> path_components(const InteractionGraph& g) {
  std::vector<std::vector<Qubit>> adj(g.num_qubits);
  for (const auto& [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> visited(g.num_qubits, 0);
  std::vector<std::vector<Qubit>> paths;
  for (Qubit q = 0; q < g.num_qubits; ++q) {
    if (visited[q] || adj[q].size() != 1) continue;  // walk starts at endpoints
    std::vector<Qubit> path{q};
    visited[q] = 1;
    Qubit prev = q;
    Qubit cur = adj[q][0];
    while (true) {
      path.push_back(cur);
      visited[cur] = 1;
      Qubit next = cur;
      for (const Qubit w : adj[cur])
        if (w != prev && !visited[w]) next = w;
      if (next == cur) break;
      prev = cur;
      cur = next;
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

}  // namespace

Mapping initial_map(const InteractionGraph& graph, const Architecture& arch) {
  std::vector<std::vector<Qubit>> paths = path_components(graph);
  std::stable_sort(paths.begin(), paths.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });

  std::vector<Qubit> sequence;
  for (const auto& p : paths) sequence.insert(sequence.end(), p.begin(), p.end());
  if (sequence.size() > arch.node_count())
    throw std::invalid_argument("initial_map: more interacting qubits than nodes");

  Mapping m(graph.num_qubits, arch.node_count());
  if (sequence.empty()) return m;

  const auto best_free_node = [&]() -> Node {
    Node best = 0;
    bool have = false;
    for (Node v = 0; v < arch.node_count(); ++v) {
      if (m.occupied(v)) continue;
      if (!have) {
        best = v;
        have = true;
        continue;
      }
      if (arch.degree(v) != arch.degree(best)) {
        if (arch.degree(v) > arch.degree(best)) best = v;
      } else if (arch.eccentricity(v) < arch.eccentricity(best)) {
        best = v;
      }
    }
    return best;
  };

  Node prev = best_free_node();
  m.assign(sequence[0], prev);
  for (std::size_t k = 1; k < sequence.size(); ++k) {
    std::optional<Node> next;
    for (const Node w : arch.neighbours(prev)) {
      if (m.occupied(w)) continue;
      if (!next || arch.degree(w) > arch.degree(*next)) next = w;
    }
    if (!next) next = best_free_node();  // dead end: restart the walk
    m.assign(sequence[k], *next);
    prev = *next;
  }
  return m;
}

}  // namespace qroute
