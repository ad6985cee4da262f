#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qroute/architecture.hpp"
#include "qroute/circuit.hpp"
#include "qroute/mapping.hpp"
#include "qroute/router.hpp"

namespace qroute {

using Amplitude = std::complex<double>;

// ---------------------------------------------------------------------------
// Conformance
// ---------------------------------------------------------------------------

struct ConformanceViolation {
  std::size_t gate_index;
  std::string what;
};

struct ConformanceReport {
  std::vector<ConformanceViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Lists every two-qubit gate that does not act on a skeleton edge of `arch`;
/// with `directed_strict`, additionally every CX whose control->target
/// orientation is not a directed arc. An empty report is a pass.
ConformanceReport check_conformance(const Circuit& c, const Architecture& arch,
                                    bool directed_strict = false);

// ---------------------------------------------------------------------------
// Trace equivalence
// ---------------------------------------------------------------------------

struct TraceReport {
  bool ok = false;
  std::string detail;  ///< empty on success, first mismatch otherwise
  explicit operator bool() const { return ok; }
};

/// Replays `result.routed` against `input`: swaps fold into a running
/// node-content permutation (an input SWAP gate is consumed from the input
/// stream instead when it is the next expected gate on both wires), and every
/// other gate must match the next expected input gate on its wires, in
/// per-wire order, with identical kind, parameters and classical bit. Finally
/// the accumulated permutation must agree with result.final.
TraceReport check_trace_equivalence(const Circuit& input, const RoutingResult& result);

// ---------------------------------------------------------------------------
// Statevector simulation
// ---------------------------------------------------------------------------

/// Dense 2^n statevector, wire k = bit k of the amplitude index.
class StateVector {
 public:
  explicit StateVector(std::uint32_t num_qubits);  // |0...0>

  std::uint32_t num_qubits() const { return n_; }
  std::size_t size() const { return amps_.size(); }
  Amplitude& operator[](std::size_t i) { return amps_[i]; }
  const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;

  /// Applies one gate. Barrier is a no-op; Measure throws
  /// std::invalid_argument (simulation is unitary only).
  void apply(const Gate& g);

 private:
  std::uint32_t n_ = 0;
  std::vector<Amplitude> amps_;
};

/// Hard cap of the public simulate() entry points.
inline constexpr std::uint32_t kMaxSimQubits = 12;

/// Runs c from |0...0>. Throws std::invalid_argument when c has more than
/// kMaxSimQubits qubits or contains a Measure gate.
StateVector simulate(const Circuit& c);

/// Runs c from the given state (c.num_qubits() must equal the state's width).
StateVector simulate(const Circuit& c, StateVector state);

/// One random single-qubit state per wire (normalized Gaussian pairs).
std::vector<std::array<Amplitude, 2>> random_qubit_states(std::uint32_t n,
                                                          std::mt19937_64& rng);

/// Product state of per-wire single-qubit states.
StateVector product_state(const std::vector<std::array<Amplitude, 2>>& wires);

/// |<a|b>| (1 for equal states up to global phase).
double overlap(const StateVector& a, const StateVector& b);

/// Relabels wires: wire w of s becomes wire perm[w] of the result.
StateVector apply_wire_permutation(const StateVector& s, const std::vector<Qubit>& perm);

// ---------------------------------------------------------------------------
// Equivalence oracles
// ---------------------------------------------------------------------------

struct EquivalenceOptions {
  unsigned random_trials = 8;  ///< random product states tried (plus |0...0>)
  std::uint64_t seed = 0x5eedu;
  double threshold = 1.0 - 1e-9;  ///< minimum overlap accepted
};

/// True when relabeling c2's output wires by `perm` reproduces c1 on |0...0>
/// and on `random_trials` random product states: |<P(perm) sim(c2, x),
/// sim(c1, x)>| > threshold for every tried x. Both circuits must have the
/// same width, at most kMaxSimQubits.
bool equivalent_up_to_permutation(const Circuit& c1, const Circuit& c2,
                                  const std::vector<Qubit>& perm,
                                  const EquivalenceOptions& opt = {});

struct EquivalenceReport {
  bool ok = false;
  double min_overlap = 0.0;
  std::string detail;
  explicit operator bool() const { return ok; }
};

/// End-to-end statevector check of a routing (optionally post-synthesis)
/// output. `output` acts on architecture nodes; it may be result.routed or any
/// rewrite of it. Only wires actually touched by gates or mappings are
/// simulated; untouched nodes hold |0> on both sides and factor out. Measure
/// gates are ignored on both sides. Each trial feeds random single-qubit
/// states into the input's wires (placed at their initial nodes on the output
/// side) and requires the output state to equal the input's final state
/// relocated per result.final.
EquivalenceReport routed_statevector_equivalent(const Circuit& input, const Circuit& output,
                                                const RoutingResult& result,
                                                const EquivalenceOptions& opt = {});

// ---------------------------------------------------------------------------
// Dense unitaries (test oracles for the synthesis identities)
// ---------------------------------------------------------------------------

using Unitary = std::vector<std::vector<Amplitude>>;  // [row][column]

/// Full 2^n x 2^n matrix of the circuit (n <= 10).
Unitary unitary_of(const Circuit& c);

/// max_ij |a_ij - b_ij|
double max_entry_distance(const Unitary& a, const Unitary& b);

/// max_ij |a_ij * e^{i phi} - b_ij| minimized over the global phase phi
/// (fixed by the largest-magnitude entry of a).
double phase_aligned_distance(const Unitary& a, const Unitary& b);

}  // namespace qroute
