#include "qroute/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <numbers>
#include <stdexcept>

namespace qroute {

namespace {

Circuit same_shell(const Circuit& c) {
  Circuit out(c.num_qubits(), c.num_clbits());
  out.set_register_names(c.qreg_name(), c.creg_name());
  return out;
}

void emit_swap_as_cx(Circuit& out, Node a, Node b) {
  out.cx(a, b);
  out.cx(b, a);
  out.cx(a, b);
}

}  // namespace

Circuit decompose_swaps(const Circuit& c) {
  Circuit out = same_shell(c);
  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::Swap)
      emit_swap_as_cx(out, g.qubits[0], g.qubits[1]);
    else
      out.add_gate(g);
  }
  return out;
}

Circuit decompose_swaps(const Circuit& c, const Architecture& arch) {
  if (!arch.directed()) return decompose_swaps(c);
  Circuit out = same_shell(c);
  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::Swap) {
      Node a = g.qubits[0];
      Node b = g.qubits[1];
      if (!arch.has_directed_edge(a, b) && arch.has_directed_edge(b, a)) std::swap(a, b);
      emit_swap_as_cx(out, a, b);
    } else {
      out.add_gate(g);
    }
  }
  return out;
}

Circuit redirect_cnots(const Circuit& c, const Architecture& arch) {
  if (!arch.directed()) return c;
  Circuit out = same_shell(c);
  for (const Gate& g : c.gates()) {
    if (g.kind != GateKind::CX) {
      out.add_gate(g);
      continue;
    }
    const Node a = g.qubits[0];
    const Node b = g.qubits[1];
    if (!arch.has_edge(a, b))
      throw std::invalid_argument("redirect_cnots: CX on nodes " + std::to_string(a) +
                                  "," + std::to_string(b) + " is not on an edge");
    if (arch.has_directed_edge(a, b)) {
      out.add_gate(g);
    } else {
      out.h(a);
      out.h(b);
      out.cx(b, a);
      out.h(a);
      out.h(b);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// cleanup
// ---------------------------------------------------------------------------

namespace {

bool is_rotation(GateKind k) {
  return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ ||
         k == GateKind::U1;
}

bool commutes_with_control(GateKind k) { return k == GateKind::RZ || k == GateKind::U1; }
bool commutes_with_target(GateKind k) { return k == GateKind::RX; }

double normalize_angle(double theta) {
  return std::remainder(theta, 2.0 * std::numbers::pi);  // into [-pi, pi]
}

constexpr double kZeroAngle = 1e-12;
constexpr std::ptrdiff_t kNone = -1;

/// Per-wire doubly linked list over the gate sequence, so "the next gate
/// touching this wire" is O(1) and removals are local.
class WireLinks {
 public:
  explicit WireLinks(const std::vector<Gate>& gates, std::uint32_t num_wires)
      : links_(gates.size()) {
    std::vector<std::ptrdiff_t> last(num_wires, kNone);
    for (std::size_t i = 0; i < gates.size(); ++i) {
      for (const Qubit w : distinct_wires(gates[i])) {
        links_[i].push_back({w, last[w], kNone});
        if (last[w] != kNone) link_for(last[w], w)->next = static_cast<std::ptrdiff_t>(i);
        last[w] = static_cast<std::ptrdiff_t>(i);
      }
    }
  }

  static std::vector<Qubit> distinct_wires(const Gate& g) {
    std::vector<Qubit> ws(g.qubits);
    std::sort(ws.begin(), ws.end());
    ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
    return ws;
  }

  std::ptrdiff_t next(std::size_t i, Qubit w) const { return link_for(i, w)->next; }
  std::ptrdiff_t prev(std::size_t i, Qubit w) const { return link_for(i, w)->prev; }

  /// Detaches gate i from every wire list, returning its former neighbours
  /// (for worklist reseeding).
  std::vector<std::ptrdiff_t> remove(std::size_t i) {
    std::vector<std::ptrdiff_t> affected;
    for (Link& l : links_[i]) {
      if (l.prev != kNone) {
        link_for(l.prev, l.wire)->next = l.next;
        affected.push_back(l.prev);
      }
      if (l.next != kNone) {
        link_for(l.next, l.wire)->prev = l.prev;
        affected.push_back(l.next);
      }
      l.prev = l.next = kNone;
    }
    return affected;
  }

 private:
  struct Link {
    Qubit wire;
    std::ptrdiff_t prev, next;
  };

  const Link* link_for(std::ptrdiff_t i, Qubit w) const {
    for (const Link& l : links_[i])
      if (l.wire == w) return &l;
    throw std::logic_error("cleanup: gate does not touch the queried wire");
  }
  Link* link_for(std::ptrdiff_t i, Qubit w) {
    return const_cast<Link*>(static_cast<const WireLinks*>(this)->link_for(i, w));
  }

  std::vector<std::vector<Link>> links_;
};

class Cleaner {
 public:
  explicit Cleaner(const Circuit& c)
      : circuit_(c), gates_(c.gates()), alive_(gates_.size(), true),
        links_(gates_, c.num_qubits()) {}

  Circuit run() {
    for (std::size_t i = 0; i < gates_.size(); ++i) work_.push_back(i);
    // Every successful rewrite removes a gate, so the amount of work is
    // linear; the cap only guards against a rule-implementation bug.
    std::size_t budget = 16 * gates_.size() + 1024;
    while (!work_.empty()) {
      if (budget-- == 0) throw std::logic_error("cleanup: rewriting did not terminate");
      const std::size_t i = work_.front();
      work_.pop_front();
      if (!alive_[i]) continue;
      try_rules(i);
    }
    Circuit out = same_shell(circuit_);
    for (std::size_t i = 0; i < gates_.size(); ++i)
      if (alive_[i]) out.add_gate(gates_[i]);
    return out;
  }

 private:
  void try_rules(std::size_t i) {
    const Gate& g = gates_[i];
    if (g.kind == GateKind::CX) {
      cancel_cx(i);
    } else if (g.kind == GateKind::H) {
      cancel_h(i);
    } else if (is_rotation(g.kind)) {
      if (!fuse_rotation(i)) commute_and_fuse(i);
    }
  }

  void cancel_cx(std::size_t i) {
    const Gate& g = gates_[i];
    const std::ptrdiff_t j = links_.next(i, g.qubits[0]);
    if (j == kNone || j != links_.next(i, g.qubits[1])) return;
    const Gate& h = gates_[j];
    if (h.kind == GateKind::CX && h.qubits == g.qubits) {
      kill(i);
      kill(j);
    }
  }

  void cancel_h(std::size_t i) {
    const Qubit w = gates_[i].qubits[0];
    const std::ptrdiff_t j = links_.next(i, w);
    if (j == kNone) return;
    if (gates_[j].kind == GateKind::H && gates_[j].qubits[0] == w) {
      kill(i);
      kill(j);
    }
  }

  bool fuse_rotation(std::size_t i) {
    const Gate& g = gates_[i];
    const Qubit w = g.qubits[0];
    const std::ptrdiff_t j = links_.next(i, w);
    if (j == kNone || gates_[j].kind != g.kind) return false;
    fuse_into(j, g.params[0]);
    kill(i);
    return true;
  }

  void commute_and_fuse(std::size_t i) {
    const Gate& g = gates_[i];
    const Qubit w = g.qubits[0];
    const std::ptrdiff_t j = links_.next(i, w);
    if (j == kNone || gates_[j].kind != GateKind::CX) return;
    const bool passes = (commutes_with_control(g.kind) && gates_[j].qubits[0] == w) ||
                        (commutes_with_target(g.kind) && gates_[j].qubits[1] == w);
    if (!passes) return;
    const std::ptrdiff_t k = links_.next(j, w);
    if (k == kNone || gates_[k].kind != g.kind) return;
    fuse_into(k, g.params[0]);
    kill(i);
  }

  void fuse_into(std::ptrdiff_t target, double angle) {
    Gate& t = gates_[target];
    t.params[0] = normalize_angle(t.params[0] + angle);
    enqueue(target);
    if (std::abs(t.params[0]) < kZeroAngle) kill(target);
  }

  void kill(std::ptrdiff_t i) {
    alive_[i] = false;
    for (const std::ptrdiff_t n : links_.remove(i)) enqueue(n);
  }

  void enqueue(std::ptrdiff_t i) {
    if (i != kNone && alive_[i]) work_.push_back(static_cast<std::size_t>(i));
  }

  const Circuit& circuit_;
  std::vector<Gate> gates_;
  std::vector<char> alive_;
  WireLinks links_;
  std::deque<std::size_t> work_;
};

}  // namespace

Circuit cleanup(const Circuit& c) { return Cleaner(c).run(); }

}  // namespace qroute
