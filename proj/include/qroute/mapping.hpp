#pragma once

#include <cstdint>
#include <vector>

#include "qroute/architecture.hpp"
#include "qroute/circuit.hpp"

namespace qroute {

/// A partial injective assignment of logical qubits to architecture nodes.
/// Both directions are kept consistent; unassigned entries are sentinel-free
/// via has_qubit/occupied predicates.
class Mapping {
 public:
  Mapping() = default;
  Mapping(std::uint32_t num_qubits, std::uint32_t num_nodes);

  std::uint32_t num_qubits() const { return static_cast<std::uint32_t>(to_node_.size()); }
  std::uint32_t num_nodes() const { return static_cast<std::uint32_t>(to_qubit_.size()); }

  bool has_qubit(Qubit q) const { return to_node_[q] >= 0; }
  bool occupied(Node v) const { return to_qubit_[v] >= 0; }

  /// Node of a mapped qubit; throws std::out_of_range if unmapped.
  Node node_of(Qubit q) const;

  /// Qubit at an occupied node; throws std::out_of_range if empty.
  Qubit qubit_at(Node v) const;

  /// Maps q to the free node v. Throws std::invalid_argument if q is already
  /// mapped or v occupied.
  void assign(Qubit q, Node v);

  /// Exchanges the contents of two nodes (either may be empty).
  void swap_nodes(Node a, Node b);

  /// Number of mapped qubits.
  std::uint32_t mapped_count() const { return mapped_; }

  /// True when every qubit is mapped.
  bool complete() const { return mapped_ == num_qubits(); }

  /// Identity assignment q -> q; requires num_qubits <= num_nodes.
  static Mapping identity(std::uint32_t num_qubits, std::uint32_t num_nodes);

  bool operator==(const Mapping&) const = default;

 private:
  std::vector<std::int32_t> to_node_;   // qubit -> node, -1 when unmapped
  std::vector<std::int32_t> to_qubit_;  // node -> qubit, -1 when empty
  std::uint32_t mapped_ = 0;
};

}  // namespace qroute
