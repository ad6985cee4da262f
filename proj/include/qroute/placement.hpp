#pragma once

#include <cstdint>
#include <vector>

#include "qroute/architecture.hpp"
#include "qroute/circuit.hpp"
#include "qroute/mapping.hpp"

namespace qroute {

/// Interaction graph used for initial placement: vertices are logical qubits,
/// edges record early two-qubit interactions, every vertex has degree <= 2,
/// so connected components are simple paths (cycles are broken during
/// construction post-processing).
struct InteractionGraph {
  std::uint32_t num_qubits = 0;
  std::vector<QubitPair> edges;  // in insertion order, normalized a < b

  std::vector<std::uint32_t> degrees() const;
};

/// Scans timesteps in order (pairs of one timestep visited in sorted order)
/// and adds a pair as an edge when both endpoints still have degree < 2 and
/// the edge is not already present. Cycles that form are afterwards broken by
/// removing their most recently inserted edge, leaving a disjoint union of
/// paths.
InteractionGraph build_interaction_graph(const std::vector<Timestep>& slices,
                                         std::uint32_t num_qubits);

/// Orders the interaction graph's path components by descending length,
/// concatenates them into one sequence and walks it onto the architecture:
/// the first qubit is placed on a node of maximal degree (ties: minimal
/// eccentricity, then lowest index), each following qubit on the unoccupied
/// neighbour of the previous node with maximal degree (ties: lowest index).
/// If the walk dead-ends, it restarts from the best remaining free node.
/// Qubits that interact with nothing are left unmapped.
Mapping initial_map(const InteractionGraph& graph, const Architecture& arch);

}  // namespace qroute
