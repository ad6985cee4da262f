#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "qroute/architecture.hpp"
#include "qroute/circuit.hpp"
#include "qroute/mapping.hpp"

namespace qroute {

/// Tunables of the routing pass.
struct RoutingConfig {
  /// Number of future slices examined beyond the frontier when ranking
  /// candidate swaps.
  unsigned lookahead = 4;
  /// Seed for randomized tie-breaking among equally ranked candidates.
  /// 0 (the default) keeps the fully deterministic rule: the candidate with
  /// the lexicographically largest edge wins.
  std::uint64_t seed = 0;
  /// Permit the two-disjoint-swaps fallback stage before brute force.
  bool allow_pair_fallback = true;
};

/// Result of routing a circuit onto an architecture. The routed circuit acts
/// on architecture nodes (its qubit count equals the node count).
struct RoutingResult {
  Circuit routed;
  Mapping initial;  ///< where each logical qubit started (lazy placements included)
  Mapping final;    ///< where each logical qubit ended
  /// node_permutation[u] = node that now holds the content which started at
  /// node u (empty slots are tracked too, so this is a full permutation).
  std::vector<Node> node_permutation;
  unsigned swap_count = 0;
  unsigned fallback_count = 0;  ///< selections that needed stage 2 or 3
};

/// Descending-sorted vector of the node distances of a slice's unresolved
/// pairs (pairs at distance 1 are dropped). Compared lexicographically, so
/// the leading entry — the maximum distance — dominates.
class DistanceVector {
 public:
  DistanceVector() = default;
  explicit DistanceVector(std::vector<std::uint32_t> entries);

  const std::vector<std::uint32_t>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::uint32_t max() const { return entries_.empty() ? 0 : entries_.front(); }
  std::size_t count_at_max() const;

  std::strong_ordering operator<=>(const DistanceVector& other) const;
  bool operator==(const DistanceVector&) const = default;

 private:
  std::vector<std::uint32_t> entries_;
};

/// Distance vector of slice `s` under mapping `m`. Pairs whose qubits are not
/// all mapped are skipped; throws std::out_of_range only if the slice's own
/// invariants are broken elsewhere.
DistanceVector distance_vector(const Timestep& s, const Mapping& m, const Architecture& arch);

/// Every skeleton edge with at least one endpoint holding a qubit that
/// participates in an unresolved (distance >= 2) pair of `s`. Sorted
/// ascending, duplicate free.
std::vector<NodePair> candidate_swaps(const Timestep& s, const Mapping& m,
                                      const Architecture& arch);

/// A swap decision: a layer of node-disjoint swaps (stage 1), two disjoint
/// swaps admitted jointly (stage 2) or a chain of swaps walking a maximally
/// distant pair together (stage 3).
struct SwapPlan {
  std::vector<NodePair> swaps;  // applied left to right
  int stage = 1;
};

/// Chooses swaps for the current situation. `slices[0]` is the frontier (must
/// contain at least one unresolved pair); following entries are lookahead
/// slices. Stage 1 grows a maximal layer of node-disjoint swaps; each
/// addition must pass one of three admission rungs given the swaps already in
/// the layer: pointwise frontier improvement (no frontier pair further apart,
/// at least one strictly closer), lexicographic improvement of the sorted
/// frontier distances (a nearer pair may yield to a farther one), or
/// pre-positioning that brings a pair of a lookahead slice closer without
/// hurting any earlier slice. Candidates at every addition are refined by
/// successive argmin of the distance vector over slices[0], slices[1], ...;
/// remaining ties fall to the deterministic rule (largest edge) or the seeded
/// random rule. If no layer can be built, pairs of disjoint candidate swaps
/// admitted jointly are tried (stage 2), and as a last resort the most
/// distant pair is walked together along a shortest path (stage 3).
SwapPlan select_swap(const std::vector<Timestep>& slices, const Mapping& m,
                     const Architecture& arch, const RoutingConfig& cfg);

/// Tracks which gates of a circuit are ready to execute: a gate is ready when
/// all earlier gates sharing one of its qubits have been consumed.
class FrontierTracker {
 public:
  explicit FrontierTracker(const Circuit& c);

  bool done() const { return remaining_ == 0; }

  /// Returned by next_on_wire when a wire has no gates left.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Index of the next unconsumed gate touching wire q, or npos.
  std::size_t next_on_wire(Qubit q) const {
    return cursor_[q] < wire_gates_[q].size() ? wire_gates_[q][cursor_[q]] : npos;
  }

  /// Indices of all ready gates, ascending.
  std::vector<std::size_t> ready() const;

  /// The ready two-qubit gates as a slice (pairs normalized, refs ascending).
  Timestep frontier() const;

  /// Marks a ready gate as executed. Throws std::logic_error if not ready.
  void consume(std::size_t gate_index);

  /// Future slices after the current frontier: repeatedly consuming every
  /// ready gate yields the following layers of two-qubit gates. Does not
  /// modify this tracker. Returns at most `count` slices.
  std::vector<Timestep> lookahead(unsigned count) const;

 private:
  bool gate_ready(std::size_t gate_index) const;

  const Circuit* circuit_;
  std::vector<std::vector<std::size_t>> wire_gates_;  // per qubit, ascending
  std::vector<std::size_t> cursor_;                   // per qubit
  std::size_t remaining_ = 0;
};

/// Routes `c` onto `arch` starting from `start` (may be partial or empty;
/// qubits are then placed lazily: next to their partner when first needed by
/// a two-qubit gate, on the lowest free node otherwise). The main loop
/// alternates between emitting every executable gate (the frontier is
/// recomputed after every mapping update) and applying the swaps chosen by
/// select_swap. The emitted list is normalised with asap_reorder, which keeps
/// the per-node gate order; swaps appear as explicit Swap gates in the
/// result.
RoutingResult route(const Circuit& c, const Architecture& arch, const Mapping& start,
                    const RoutingConfig& cfg = {});

}  // namespace qroute
