#include "qroute/circuit.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qroute {

const char* gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::T: return "t";
    case GateKind::S: return "s";
    case GateKind::U1: return "u1";
    case GateKind::U2: return "u2";
    case GateKind::U3: return "u3";
    case GateKind::CX: return "cx";
    case GateKind::CZ: return "cz";
    case GateKind::Swap: return "swap";
    case GateKind::Measure: return "measure";
    case GateKind::Barrier: return "barrier";
  }
  throw std::logic_error("gate_name: unknown GateKind");
}

unsigned gate_param_count(GateKind kind) {
  switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::U1: return 1;
    case GateKind::U2: return 2;
    case GateKind::U3: return 3;
    default: return 0;
  }
}

bool is_two_qubit(GateKind kind) {
  return kind == GateKind::CX || kind == GateKind::CZ || kind == GateKind::Swap;
}

void Circuit::set_register_names(std::string qreg, std::string creg) {
  if (qreg.empty()) throw std::invalid_argument("quantum register name must not be empty");
  qreg_name_ = std::move(qreg);
  creg_name_ = std::move(creg);
}

void Circuit::add_gate(Gate g) {
  const auto err = [&](const std::string& what) {
    throw std::invalid_argument(std::string(gate_name(g.kind)) + ": " + what);
  };

  if (g.kind == GateKind::Barrier) {
    if (g.qubits.empty()) err("barrier needs at least one qubit");
  } else if (is_two_qubit(g.kind)) {
    if (g.qubits.size() != 2) err("expected exactly two qubit operands");
    if (g.qubits[0] == g.qubits[1]) err("operands must be distinct");
  } else {
    if (g.qubits.size() != 1) err("expected exactly one qubit operand");
  }
  for (Qubit q : g.qubits) {
    if (q >= num_qubits_)
      err("qubit " + std::to_string(q) + " out of range (register has " +
          std::to_string(num_qubits_) + ")");
  }
  if (g.params.size() != gate_param_count(g.kind)) err("wrong number of parameters");
  if (g.kind == GateKind::Measure) {
    if (g.clbit < 0 || static_cast<std::uint32_t>(g.clbit) >= num_clbits_)
      err("classical bit out of range");
  } else if (g.clbit != -1) {
    err("only measure may carry a classical bit");
  }
  gates_.push_back(std::move(g));
}

std::vector<Timestep> slice_timesteps(const Circuit& c) {
  std::vector<Timestep> steps;
  Timestep current;
  std::vector<char> used(c.num_qubits(), 0);

  const auto close = [&] {
    if (!current.empty()) {
      steps.push_back(std::move(current));
      current = Timestep{};
      std::fill(used.begin(), used.end(), 0);
    }
  };

  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    const Gate& g = c.gates()[i];
    if (g.kind == GateKind::Barrier) {
      close();
      continue;
    }
    if (!is_two_qubit(g.kind)) continue;  // single-qubit gates and measures
    const Qubit a = std::min(g.qubits[0], g.qubits[1]);
    const Qubit b = std::max(g.qubits[0], g.qubits[1]);
    if (used[a] || used[b]) close();
    current.pairs.emplace_back(a, b);
    current.gate_refs.push_back(i);
    used[a] = used[b] = 1;
  }
  close();
  return steps;
}

std::size_t timestep_count(const Circuit& c) { return slice_timesteps(c).size(); }

Circuit asap_reorder(const Circuit& c) {
  const auto& gs = c.gates();
  // Dependency wires: one per qubit, one per classical bit, and a virtual
  // fence wire shared by all barriers so no gate migrates across one.
  const std::size_t nq = c.num_qubits();
  std::vector<unsigned> wire_level(nq + c.num_clbits(), 0);
  std::vector<unsigned> level(gs.size(), 0);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    const Gate& g = gs[i];
    unsigned lv = 0;
    const auto see = [&](std::size_t w) { lv = std::max(lv, wire_level[w]); };
    const auto bump = [&](std::size_t w) { wire_level[w] = lv; };
    if (g.kind == GateKind::Barrier) {
      for (std::size_t w = 0; w < wire_level.size(); ++w) see(w);
      ++lv;
      for (std::size_t w = 0; w < wire_level.size(); ++w) bump(w);
    } else {
      for (const Qubit q : g.qubits) see(q);
      if (g.clbit >= 0) see(nq + static_cast<std::size_t>(g.clbit));
      ++lv;
      for (const Qubit q : g.qubits) bump(q);
      if (g.clbit >= 0) bump(nq + static_cast<std::size_t>(g.clbit));
    }
    level[i] = lv;
  }
  std::vector<std::size_t> order(gs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return level[a] < level[b]; });
  Circuit out(c.num_qubits(), c.num_clbits());
  out.set_register_names(c.qreg_name(), c.creg_name());
  for (const std::size_t i : order) out.add_gate(gs[i]);
  return out;
}

double density(const Timestep& step, std::uint32_t num_qubits) {
  if (num_qubits < 2) throw std::invalid_argument("density: need at least two qubits");
  if (step.empty()) throw std::invalid_argument("density: timestep is empty");
  return static_cast<double>(step.size()) / static_cast<double>(num_qubits / 2);
}

std::size_t cx_count(const Circuit& c) {
  std::size_t n = 0;
  for (const Gate& g : c.gates())
    if (g.kind == GateKind::CX) ++n;
  return n;
}

std::size_t cx_depth(const Circuit& c) {
  std::vector<std::size_t> wire_depth(c.num_qubits(), 0);
  std::size_t depth = 0;
  for (const Gate& g : c.gates()) {
    if (g.kind != GateKind::CX) continue;
    const std::size_t d = std::max(wire_depth[g.qubits[0]], wire_depth[g.qubits[1]]) + 1;
    wire_depth[g.qubits[0]] = wire_depth[g.qubits[1]] = d;
    depth = std::max(depth, d);
  }
  return depth;
}

}  // namespace qroute
