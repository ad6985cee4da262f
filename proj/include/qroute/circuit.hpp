#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qroute {

using Qubit = std::uint32_t;
using QubitPair = std::pair<Qubit, Qubit>;

/// Gate vocabulary: the OpenQASM 2.0 subset understood by this library.
enum class GateKind : std::uint8_t {
  H,
  X,
  Y,
  Z,
  RX,
  RY,
  RZ,
  T,
  S,
  U1,
  U2,
  U3,
  CX,
  CZ,
  Swap,
  Measure,
  Barrier,
};

/// Lowercase OpenQASM mnemonic for a gate kind ("cx", "u3", ...).
const char* gate_name(GateKind kind);

/// Number of angle parameters carried by a gate kind (u3 -> 3, cx -> 0, ...).
unsigned gate_param_count(GateKind kind);

/// True for the two-qubit kinds CX, CZ and Swap.
bool is_two_qubit(GateKind kind);

/// One gate instance. Two-qubit kinds have exactly two distinct operands,
/// Barrier has one or more, everything else (Measure included) exactly one.
struct Gate {
  GateKind kind;
  std::vector<Qubit> qubits;
  std::vector<double> params;  ///< rotation angles in radians
  std::int32_t clbit = -1;     ///< classical target of a Measure, else -1

  bool operator==(const Gate&) const = default;
};

/// A gate-list circuit over one quantum register. Qubits are dense indices
/// [0, num_qubits); classical bits are dense indices [0, num_clbits).
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::uint32_t num_qubits, std::uint32_t num_clbits = 0)
      : num_qubits_(num_qubits), num_clbits_(num_clbits) {}

  std::uint32_t num_qubits() const { return num_qubits_; }
  std::uint32_t num_clbits() const { return num_clbits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::vector<Gate>& gates() { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  const std::string& qreg_name() const { return qreg_name_; }
  const std::string& creg_name() const { return creg_name_; }
  void set_register_names(std::string qreg, std::string creg);

  /// Appends a gate after validating operand counts, ranges and parameters.
  /// Throws std::invalid_argument on any violation.
  void add_gate(Gate g);

  // Convenience builders used throughout the tests and benchmark generators.
  void h(Qubit q) { add_gate({GateKind::H, {q}, {}}); }
  void x(Qubit q) { add_gate({GateKind::X, {q}, {}}); }
  void y(Qubit q) { add_gate({GateKind::Y, {q}, {}}); }
  void z(Qubit q) { add_gate({GateKind::Z, {q}, {}}); }
  void t(Qubit q) { add_gate({GateKind::T, {q}, {}}); }
  void s(Qubit q) { add_gate({GateKind::S, {q}, {}}); }
  void rx(double angle, Qubit q) { add_gate({GateKind::RX, {q}, {angle}}); }
  void ry(double angle, Qubit q) { add_gate({GateKind::RY, {q}, {angle}}); }
  void rz(double angle, Qubit q) { add_gate({GateKind::RZ, {q}, {angle}}); }
  void u1(double lambda, Qubit q) { add_gate({GateKind::U1, {q}, {lambda}}); }
  void u2(double phi, double lambda, Qubit q) {
    add_gate({GateKind::U2, {q}, {phi, lambda}});
  }
  void u3(double theta, double phi, double lambda, Qubit q) {
    add_gate({GateKind::U3, {q}, {theta, phi, lambda}});
  }
  void cx(Qubit control, Qubit target) {
    add_gate({GateKind::CX, {control, target}, {}});
  }
  void cz(Qubit a, Qubit b) { add_gate({GateKind::CZ, {a, b}, {}}); }
  void swap(Qubit a, Qubit b) { add_gate({GateKind::Swap, {a, b}, {}}); }
  void measure(Qubit q, std::uint32_t clbit) {
    Gate g{GateKind::Measure, {q}, {}};
    g.clbit = static_cast<std::int32_t>(clbit);
    add_gate(std::move(g));
  }
  void barrier(std::vector<Qubit> qubits) {
    add_gate({GateKind::Barrier, std::move(qubits), {}});
  }

  bool operator==(const Circuit&) const = default;

 private:
  std::uint32_t num_qubits_ = 0;
  std::uint32_t num_clbits_ = 0;
  std::string qreg_name_ = "q";
  std::string creg_name_ = "c";
  std::vector<Gate> gates_;
};

/// One timestep of a sliced circuit: a set of pairwise-disjoint interacting
/// qubit pairs. `pairs[i]` is the (normalized, a<b) operand pair of the gate
/// at `gate_refs[i]` in the source circuit.
struct Timestep {
  std::vector<QubitPair> pairs;
  std::vector<std::size_t> gate_refs;

  bool empty() const { return pairs.empty(); }
  std::size_t size() const { return pairs.size(); }
};

/// Greedy left-to-right partition of the circuit's two-qubit gates into
/// timesteps. A two-qubit gate joins the current timestep unless one of its
/// qubits is already used there, in which case it opens a new timestep.
/// Single-qubit gates and measurements are ignored; a barrier closes the
/// current timestep.
std::vector<Timestep> slice_timesteps(const Circuit& c);

/// Number of timesteps of `c` under slice_timesteps (0 for circuits without
/// two-qubit gates). A Swap counts as a single gate here.
std::size_t timestep_count(const Circuit& c);

/// Two-qubit gate density of one timestep: |pairs| / floor(n/2), in (0, 1].
/// Throws std::invalid_argument for n < 2 or an empty timestep.
double density(const Timestep& step, std::uint32_t num_qubits);

/// Stable-reorders the gate list so every gate sits at its earliest
/// dependency-respecting level (longest chain of shared-qubit predecessors).
/// The relative order of gates on each qubit is preserved, so the circuit's
/// unitary is unchanged, but greedy timestep slicing of the result packs
/// independent gates together instead of being at the mercy of list order.
Circuit asap_reorder(const Circuit& c);

/// Number of CX gates in the circuit (other kinds are not counted).
std::size_t cx_count(const Circuit& c);

/// Circuit depth counting only CX gates; all other gates are transparent.
std::size_t cx_depth(const Circuit& c);

}  // namespace qroute
