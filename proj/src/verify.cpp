#include "qroute/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace qroute {

// ---------------------------------------------------------------------------
// Conformance
// ---------------------------------------------------------------------------

ConformanceReport check_conformance(const Circuit& c, const Architecture& arch,
                                    bool directed_strict) {
  ConformanceReport report;
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    const Gate& g = c.gates()[i];
    if (!is_two_qubit(g.kind)) continue;
    const Node a = g.qubits[0];
    const Node b = g.qubits[1];
    if (a >= arch.node_count() || b >= arch.node_count() || !arch.has_edge(a, b)) {
      report.violations.push_back(
          {i, gate_name(g.kind) + std::string(" on non-edge (") + std::to_string(a) +
                  "," + std::to_string(b) + ")"});
    } else if (directed_strict && g.kind == GateKind::CX && !arch.has_directed_edge(a, b)) {
      report.violations.push_back(
          {i, std::string("cx against edge direction (") + std::to_string(a) + "->" +
                  std::to_string(b) + ")"});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Trace equivalence
// ---------------------------------------------------------------------------

namespace {

TraceReport trace_fail(std::size_t routed_index, const std::string& why) {
  TraceReport r;
  r.ok = false;
  r.detail = "routed gate " + std::to_string(routed_index) + ": " + why;
  return r;
}

}  // namespace

TraceReport check_trace_equivalence(const Circuit& input, const RoutingResult& result) {
  const Circuit& routed = result.routed;
  const std::uint32_t num_nodes = routed.num_qubits();
  if (result.initial.num_qubits() != input.num_qubits() ||
      result.initial.num_nodes() != num_nodes)
    return trace_fail(0, "mapping dimensions do not match the circuits");

  // content[v] = input wire whose state node v currently carries, -1 if none.
  std::vector<std::int32_t> content(num_nodes, -1);
  for (Qubit q = 0; q < input.num_qubits(); ++q)
    if (result.initial.has_qubit(q)) content[result.initial.node_of(q)] = static_cast<std::int32_t>(q);

  FrontierTracker pending(input);

  for (std::size_t i = 0; i < routed.gates().size(); ++i) {
    const Gate& g = routed.gates()[i];
    if (g.kind == GateKind::Swap) {
      const Node a = g.qubits[0];
      const Node b = g.qubits[1];
      const std::int32_t x = content[a];
      const std::int32_t y = content[b];
      if (x >= 0 && y >= 0) {
        const std::size_t nx = pending.next_on_wire(static_cast<Qubit>(x));
        if (nx != FrontierTracker::npos &&
            nx == pending.next_on_wire(static_cast<Qubit>(y))) {
          const Gate& expect = input.gates()[nx];
          if (expect.kind == GateKind::Swap &&
              expect.qubits == std::vector<Qubit>{static_cast<Qubit>(x), static_cast<Qubit>(y)}) {
            pending.consume(nx);  // an input swap: content correspondence unchanged
            continue;
          }
        }
      }
      std::swap(content[a], content[b]);  // a routing swap
      continue;
    }

    // Any other gate must be the next expected input gate on all its wires.
    std::vector<Qubit> logical(g.qubits.size());
    for (std::size_t k = 0; k < g.qubits.size(); ++k) {
      const std::int32_t w = content[g.qubits[k]];
      if (w < 0) return trace_fail(i, "gate acts on an empty wire");
      logical[k] = static_cast<Qubit>(w);
    }
    const std::size_t expect_idx = pending.next_on_wire(logical[0]);
    if (expect_idx == FrontierTracker::npos)
      return trace_fail(i, "no input gate left on wire " + std::to_string(logical[0]));
    for (const Qubit w : logical)
      if (pending.next_on_wire(w) != expect_idx)
        return trace_fail(i, "wires expect different input gates");
    const Gate& expect = input.gates()[expect_idx];
    if (expect.kind != g.kind || expect.qubits != logical || expect.params != g.params ||
        expect.clbit != g.clbit)
      return trace_fail(i, "does not match input gate " + std::to_string(expect_idx));
    pending.consume(expect_idx);
  }

  if (!pending.done()) {
    TraceReport r;
    r.detail = "routed circuit ends with input gates still pending";
    return r;
  }

  for (Qubit q = 0; q < input.num_qubits(); ++q) {
    if (!result.initial.has_qubit(q)) continue;
    if (!result.final.has_qubit(q))
      return trace_fail(routed.gates().size(), "qubit missing from final mapping");
    if (content[result.final.node_of(q)] != static_cast<std::int32_t>(q))
      return trace_fail(routed.gates().size(),
                        "final mapping disagrees with the replayed permutation for qubit " +
                            std::to_string(q));
  }

  TraceReport r;
  r.ok = true;
  return r;
}

// ---------------------------------------------------------------------------
// Statevector engine
// ---------------------------------------------------------------------------

namespace {

using Mat2 = std::array<Amplitude, 4>;  // row-major [m00 m01 m10 m11]

Mat2 single_qubit_matrix(const Gate& g) {
  using namespace std::complex_literals;
  const double isq = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::H:
      return {isq, isq, isq, -isq};
    case GateKind::X:
      return {0, 1, 1, 0};
    case GateKind::Y:
      return {0, -1i, 1i, 0};
    case GateKind::Z:
      return {1, 0, 0, -1};
    case GateKind::S:
      return {1, 0, 0, 1i};
    case GateKind::T:
      return {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)};
    case GateKind::RX: {
      const double h = g.params[0] / 2;
      return {std::cos(h), -1i * std::sin(h), -1i * std::sin(h), std::cos(h)};
    }
    case GateKind::RY: {
      const double h = g.params[0] / 2;
      return {std::cos(h), -std::sin(h), std::sin(h), std::cos(h)};
    }
    case GateKind::RZ: {
      const double h = g.params[0] / 2;
      return {std::polar(1.0, -h), 0, 0, std::polar(1.0, h)};
    }
    case GateKind::U1:
      return {1, 0, 0, std::polar(1.0, g.params[0])};
    case GateKind::U2: {
      const double phi = g.params[0], lam = g.params[1];
      return {isq, -isq * std::polar(1.0, lam), isq * std::polar(1.0, phi),
              isq * std::polar(1.0, phi + lam)};
    }
    case GateKind::U3: {
      const double h = g.params[0] / 2, phi = g.params[1], lam = g.params[2];
      return {std::cos(h), -std::polar(1.0, lam) * std::sin(h),
              std::polar(1.0, phi) * std::sin(h),
              std::polar(1.0, phi + lam) * std::cos(h)};
    }
    default:
      throw std::logic_error("not a single-qubit unitary");
  }
}

}  // namespace

StateVector::StateVector(std::uint32_t num_qubits)
    : n_(num_qubits), amps_(std::size_t{1} << num_qubits) {
  if (num_qubits >= 26) throw std::invalid_argument("statevector too large");
  amps_[0] = 1.0;
}

double StateVector::norm() const {
  double s = 0;
  for (const Amplitude& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::apply(const Gate& g) {
  switch (g.kind) {
    case GateKind::Barrier:
      return;
    case GateKind::Measure:
      throw std::invalid_argument("cannot simulate a measurement");
    case GateKind::CX: {
      const std::size_t cb = std::size_t{1} << g.qubits[0];
      const std::size_t tb = std::size_t{1} << g.qubits[1];
      for (std::size_t i = 0; i < amps_.size(); ++i)
        if ((i & cb) && !(i & tb)) std::swap(amps_[i], amps_[i | tb]);
      return;
    }
    case GateKind::CZ: {
      const std::size_t ab = std::size_t{1} << g.qubits[0];
      const std::size_t bb = std::size_t{1} << g.qubits[1];
      for (std::size_t i = 0; i < amps_.size(); ++i)
        if ((i & ab) && (i & bb)) amps_[i] = -amps_[i];
      return;
    }
    case GateKind::Swap: {
      const std::size_t ab = std::size_t{1} << g.qubits[0];
      const std::size_t bb = std::size_t{1} << g.qubits[1];
      for (std::size_t i = 0; i < amps_.size(); ++i)
        if ((i & ab) && !(i & bb)) std::swap(amps_[i], amps_[(i ^ ab) | bb]);
      return;
    }
    default: {
      const Mat2 m = single_qubit_matrix(g);
      const std::size_t bit = std::size_t{1} << g.qubits[0];
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) continue;
        const Amplitude a0 = amps_[i];
        const Amplitude a1 = amps_[i | bit];
        amps_[i] = m[0] * a0 + m[1] * a1;
        amps_[i | bit] = m[2] * a0 + m[3] * a1;
      }
      return;
    }
  }
}

StateVector simulate(const Circuit& c) {
  if (c.num_qubits() > kMaxSimQubits)
    throw std::invalid_argument("simulate: circuit exceeds " +
                                std::to_string(kMaxSimQubits) + " qubits");
  return simulate(c, StateVector(c.num_qubits()));
}

StateVector simulate(const Circuit& c, StateVector state) {
  if (c.num_qubits() != state.num_qubits())
    throw std::invalid_argument("simulate: state width does not match the circuit");
  for (const Gate& g : c.gates()) state.apply(g);
  return state;
}

std::vector<std::array<Amplitude, 2>> random_qubit_states(std::uint32_t n,
                                                          std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<std::array<Amplitude, 2>> out(n);
  for (auto& w : out) {
    do {
      w[0] = {gauss(rng), gauss(rng)};
      w[1] = {gauss(rng), gauss(rng)};
    } while (std::norm(w[0]) + std::norm(w[1]) < 1e-12);
    const double inv = 1.0 / std::sqrt(std::norm(w[0]) + std::norm(w[1]));
    w[0] *= inv;
    w[1] *= inv;
  }
  return out;
}

StateVector product_state(const std::vector<std::array<Amplitude, 2>>& wires) {
  StateVector s(static_cast<std::uint32_t>(wires.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    Amplitude a = 1.0;
    for (std::size_t w = 0; w < wires.size(); ++w) a *= wires[w][(i >> w) & 1];
    s[i] = a;
  }
  return s;
}

double overlap(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("overlap: different widths");
  Amplitude inner = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) inner += std::conj(a[i]) * b[i];
  return std::abs(inner);
}

StateVector apply_wire_permutation(const StateVector& s, const std::vector<Qubit>& perm) {
  const std::uint32_t n = s.num_qubits();
  if (perm.size() != n) throw std::invalid_argument("permutation width mismatch");
  std::vector<char> seen(n, 0);
  for (const Qubit p : perm) {
    if (p >= n || seen[p]) throw std::invalid_argument("not a permutation");
    seen[p] = 1;
  }
  StateVector out(n);
  out[0] = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::size_t j = 0;
    for (std::uint32_t w = 0; w < n; ++w)
      if ((i >> w) & 1) j |= std::size_t{1} << perm[w];
    out[j] = s[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Equivalence oracles
// ---------------------------------------------------------------------------

namespace {

Circuit strip_measures(const Circuit& c) {
  Circuit out(c.num_qubits(), c.num_clbits());
  out.set_register_names(c.qreg_name(), c.creg_name());
  for (const Gate& g : c.gates())
    if (g.kind != GateKind::Measure) out.add_gate(g);
  return out;
}

}  // namespace

bool equivalent_up_to_permutation(const Circuit& c1, const Circuit& c2,
                                  const std::vector<Qubit>& perm,
                                  const EquivalenceOptions& opt) {
  const std::uint32_t n = c1.num_qubits();
  if (c2.num_qubits() != n || perm.size() != n)
    throw std::invalid_argument("equivalent_up_to_permutation: width mismatch");
  if (n > kMaxSimQubits)
    throw std::invalid_argument("equivalent_up_to_permutation: too many qubits");
  const Circuit a = strip_measures(c1);
  const Circuit b = strip_measures(c2);

  std::mt19937_64 rng(opt.seed);
  for (unsigned trial = 0; trial <= opt.random_trials; ++trial) {
    StateVector start(n);
    if (trial > 0) start = product_state(random_qubit_states(n, rng));
    const StateVector s1 = simulate(a, start);
    const StateVector s2 = apply_wire_permutation(simulate(b, std::move(start)), perm);
    if (overlap(s2, s1) <= opt.threshold) return false;
  }
  return true;
}

EquivalenceReport routed_statevector_equivalent(const Circuit& input, const Circuit& output,
                                                const RoutingResult& result,
                                                const EquivalenceOptions& opt) {
  EquivalenceReport report;
  report.min_overlap = 1.0;
  const std::uint32_t n = input.num_qubits();
  const std::uint32_t nodes = output.num_qubits();
  if (result.initial.num_qubits() != n || result.initial.num_nodes() != nodes ||
      result.node_permutation.size() != nodes) {
    report.detail = "result dimensions do not match the circuits";
    return report;
  }

  std::vector<char> touched(nodes, 0);
  for (const Gate& g : output.gates())
    for (const Qubit v : g.qubits) touched[v] = 1;

  // Complete the mappings: wires the input never uses still need somewhere to
  // live. A node untouched by any gate keeps them out of the simulation; if
  // none is free, fall back to the tracked slot permutation.
  Mapping ini = result.initial;
  Mapping fin = result.final;
  std::vector<char> silent(n, 0);
  for (Qubit q = 0; q < n; ++q) {
    if (ini.has_qubit(q)) continue;
    bool placed = false;
    for (Node v = 0; v < nodes && !placed; ++v) {
      if (!touched[v] && !ini.occupied(v) && !fin.occupied(v)) {
        ini.assign(q, v);
        fin.assign(q, v);
        silent[q] = 1;
        placed = true;
      }
    }
    if (!placed) {
      for (Node v = 0; v < nodes && !placed; ++v) {
        const Node w = result.node_permutation[v];
        if (!ini.occupied(v) && !fin.occupied(w)) {
          ini.assign(q, v);
          fin.assign(q, w);
          placed = true;
        }
      }
    }
    if (!placed) {
      report.detail = "no free node for an unused input wire";
      return report;
    }
  }
  for (Qubit q = 0; q < n; ++q) {
    if (silent[q]) continue;
    if (!fin.has_qubit(q)) {
      report.detail = "final mapping misses qubit " + std::to_string(q);
      return report;
    }
    touched[ini.node_of(q)] = 1;
    touched[fin.node_of(q)] = 1;
  }

  std::vector<Node> wires;  // touched nodes, ascending; index = compact wire
  for (Node v = 0; v < nodes; ++v)
    if (touched[v]) wires.push_back(v);
  std::vector<std::uint32_t> compact(nodes, 0);
  for (std::size_t i = 0; i < wires.size(); ++i) compact[wires[i]] = static_cast<std::uint32_t>(i);
  const std::uint32_t m = static_cast<std::uint32_t>(wires.size());
  if (n > 22 || m > 22)
    throw std::invalid_argument("routed_statevector_equivalent: too many live wires");

  const Circuit bare_output = strip_measures(output);
  Circuit compact_output(m, 0);
  for (const Gate& g : bare_output.gates()) {
    Gate cg = g;
    for (Qubit& v : cg.qubits) v = compact[v];
    compact_output.add_gate(std::move(cg));
  }
  const Circuit bare_input = strip_measures(input);

  std::mt19937_64 rng(opt.seed);
  for (unsigned trial = 0; trial <= opt.random_trials; ++trial) {
    std::vector<std::array<Amplitude, 2>> in_wires(n, {Amplitude{1.0}, Amplitude{0.0}});
    if (trial > 0) {
      auto rnd = random_qubit_states(n, rng);
      for (Qubit q = 0; q < n; ++q)
        if (!silent[q]) in_wires[q] = rnd[q];
    }

    const StateVector in_out = simulate(bare_input, product_state(in_wires));

    std::vector<std::array<Amplitude, 2>> out_wires(m, {Amplitude{1.0}, Amplitude{0.0}});
    for (Qubit q = 0; q < n; ++q)
      if (!silent[q]) out_wires[compact[ini.node_of(q)]] = in_wires[q];
    StateVector actual = product_state(out_wires);
    for (const Gate& g : compact_output.gates()) actual.apply(g);

    StateVector expected(m);
    expected[0] = 0.0;
    for (std::size_t i = 0; i < in_out.size(); ++i) {
      std::size_t e = 0;
      bool live = true;
      for (Qubit q = 0; q < n && live; ++q) {
        if (!((i >> q) & 1)) continue;
        if (silent[q])
          live = false;  // silent wires stay |0>, their amplitude is zero
        else
          e |= std::size_t{1} << compact[fin.node_of(q)];
      }
      if (live) expected[e] += in_out[i];
    }

    const double f = overlap(actual, expected);
    report.min_overlap = std::min(report.min_overlap, f);
    if (f <= opt.threshold) {
      report.detail = "overlap " + std::to_string(f) + " on trial " + std::to_string(trial);
      return report;
    }
  }
  report.ok = true;
  return report;
}

// ---------------------------------------------------------------------------
// Dense unitaries
// ---------------------------------------------------------------------------

Unitary unitary_of(const Circuit& c) {
  const std::uint32_t n = c.num_qubits();
  if (n > 10) throw std::invalid_argument("unitary_of: too many qubits");
  const std::size_t dim = std::size_t{1} << n;
  Unitary u(dim, std::vector<Amplitude>(dim));
  for (std::size_t j = 0; j < dim; ++j) {
    StateVector s(n);
    s[0] = 0.0;
    s[j] = 1.0;
    for (const Gate& g : c.gates()) s.apply(g);
    for (std::size_t i = 0; i < dim; ++i) u[i][j] = s[i];
  }
  return u;
}

double max_entry_distance(const Unitary& a, const Unitary& b) {
  if (a.size() != b.size()) throw std::invalid_argument("unitary size mismatch");
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
  return worst;
}

double phase_aligned_distance(const Unitary& a, const Unitary& b) {
  if (a.size() != b.size()) throw std::invalid_argument("unitary size mismatch");
  std::size_t bi = 0, bj = 0;
  double best = -1;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (std::abs(a[i][j]) > best) {
        best = std::abs(a[i][j]);
        bi = i;
        bj = j;
      }
  if (best < 1e-14) return max_entry_distance(a, b);
  Amplitude phase = b[bi][bj] / a[bi][bj];
  const double mag = std::abs(phase);
  if (mag < 1e-14) return max_entry_distance(a, b);
  phase /= mag;
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      worst = std::max(worst, std::abs(a[i][j] * phase - b[i][j]));
  return worst;
}

}  // namespace qroute
