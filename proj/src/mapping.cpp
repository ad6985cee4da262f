#include "qroute/mapping.hpp"

#include <stdexcept>
#include <string>

namespace qroute {

Mapping::Mapping(std::uint32_t num_qubits, std::uint32_t num_nodes)
    : to_node_(num_qubits, -1), to_qubit_(num_nodes, -1) {}

Node Mapping::node_of(Qubit q) const {
  const std::int32_t v = to_node_.at(q);
  if (v < 0) throw std::out_of_range("mapping: qubit " + std::to_string(q) + " is unmapped");
  return static_cast<Node>(v);
}

Qubit Mapping::qubit_at(Node v) const {
  const std::int32_t q = to_qubit_.at(v);
  if (q < 0) throw std::out_of_range("mapping: node " + std::to_string(v) + " is empty");
  return static_cast<Qubit>(q);
}

void Mapping::assign(Qubit q, Node v) {
  if (to_node_.at(q) >= 0)
    throw std::invalid_argument("mapping: qubit " + std::to_string(q) + " already mapped");
  if (to_qubit_.at(v) >= 0)
    throw std::invalid_argument("mapping: node " + std::to_string(v) + " already occupied");
  to_node_[q] = static_cast<std::int32_t>(v);
  to_qubit_[v] = static_cast<std::int32_t>(q);
  ++mapped_;
}

void Mapping::swap_nodes(Node a, Node b) {
  const std::int32_t qa = to_qubit_.at(a);
  const std::int32_t qb = to_qubit_.at(b);
  to_qubit_[a] = qb;
  to_qubit_[b] = qa;
  if (qa >= 0) to_node_[qa] = static_cast<std::int32_t>(b);
  if (qb >= 0) to_node_[qb] = static_cast<std::int32_t>(a);
}

Mapping Mapping::identity(std::uint32_t num_qubits, std::uint32_t num_nodes) {
  if (num_qubits > num_nodes)
    throw std::invalid_argument("mapping: more qubits than nodes");
  Mapping m(num_qubits, num_nodes);
  for (Qubit q = 0; q < num_qubits; ++q) m.assign(q, q);
  return m;
}

}  // namespace qroute
