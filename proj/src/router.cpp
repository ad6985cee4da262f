#include "qroute/router.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace qroute {

// ---------------------------------------------------------------------------
// DistanceVector
// ---------------------------------------------------------------------------

DistanceVector::DistanceVector(std::vector<std::uint32_t> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.rbegin(), entries_.rend());
}

std::size_t DistanceVector::count_at_max() const {
  std::size_t n = 0;
  while (n < entries_.size() && entries_[n] == entries_.front()) ++n;
  return n;
}

std::strong_ordering DistanceVector::operator<=>(const DistanceVector& other) const {
  const std::size_t common = std::min(entries_.size(), other.entries_.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (entries_[i] != other.entries_[i])
      return entries_[i] <=> other.entries_[i];
  }
  return entries_.size() <=> other.entries_.size();
}

DistanceVector distance_vector(const Timestep& s, const Mapping& m,
                               const Architecture& arch) {
  std::vector<std::uint32_t> ds;
  ds.reserve(s.pairs.size());
  for (const auto& [a, b] : s.pairs) {
    if (!m.has_qubit(a) || !m.has_qubit(b)) continue;
    const std::uint32_t d = arch.distance(m.node_of(a), m.node_of(b));
    if (d >= 2) ds.push_back(d);
  }
  return DistanceVector(std::move(ds));
}

// ---------------------------------------------------------------------------
// Candidate generation and selection
// ---------------------------------------------------------------------------

namespace {

std::vector<NodePair> skeleton_edges(const Architecture& arch) {
  std::vector<NodePair> edges;
  for (Node v = 0; v < arch.node_count(); ++v)
    for (const Node w : arch.neighbours(v))
      if (w > v) edges.emplace_back(v, w);
  return edges;  // ascending by construction
}

/// Relocations of a few qubits, used to evaluate candidate swaps (and to
/// accumulate a layer of disjoint swaps) without copying the whole mapping.
struct MovedContents {
  struct Move {
    Qubit qubit;
    Node node;
  };
  std::vector<Move> moves;

  void add_swap(const Mapping& m, Node a, Node b) {
    if (m.occupied(a)) moves.push_back({m.qubit_at(a), b});
    if (m.occupied(b)) moves.push_back({m.qubit_at(b), a});
  }

  Node node_of(Qubit q, const Mapping& m) const {
    for (const Move& mv : moves)
      if (mv.qubit == q) return mv.node;
    return m.node_of(q);
  }

  bool touches(Qubit q) const {
    for (const Move& mv : moves)
      if (mv.qubit == q) return true;
    return false;
  }
};

DistanceVector eval_slice(const Timestep& s, const Mapping& m, const Architecture& arch,
                          const MovedContents& moved) {
  std::vector<std::uint32_t> ds;
  ds.reserve(s.pairs.size());
  for (const auto& [a, b] : s.pairs) {
    if (!m.has_qubit(a) || !m.has_qubit(b)) continue;
    const std::uint32_t d = arch.distance(moved.node_of(a, m), moved.node_of(b, m));
    if (d >= 2) ds.push_back(d);
  }
  return DistanceVector(std::move(ds));
}

struct Plan {
  std::vector<NodePair> swaps;
  MovedContents moved;
};

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::vector<NodePair> candidate_swaps(const Timestep& s, const Mapping& m,
                                      const Architecture& arch) {
  std::vector<char> involved(arch.node_count(), 0);  // nodes holding an unresolved qubit
  for (const auto& [a, b] : s.pairs) {
    if (!m.has_qubit(a) || !m.has_qubit(b)) continue;
    const Node va = m.node_of(a);
    const Node vb = m.node_of(b);
    if (arch.distance(va, vb) >= 2) involved[va] = involved[vb] = 1;
  }
  std::vector<NodePair> result;
  for (const NodePair& e : skeleton_edges(arch))
    if (involved[e.first] || involved[e.second]) result.push_back(e);
  return result;
}

SwapPlan select_swap(const std::vector<Timestep>& slices, const Mapping& m,
                     const Architecture& arch, const RoutingConfig& cfg) {
  if (slices.empty()) throw std::invalid_argument("select_swap: no slices");
  const Timestep& s0 = slices[0];

  // Base distances of the frontier pairs; index pairs by qubit for the
  // incremental admission test below.
  struct FrontPair {
    Qubit a, b;
    std::uint32_t dist;
  };
  std::vector<FrontPair> front;
  std::vector<std::int32_t> pair_of_qubit(m.num_qubits(), -1);
  std::vector<std::uint32_t> base_entries;
  for (const auto& [a, b] : s0.pairs) {
    if (!m.has_qubit(a) || !m.has_qubit(b)) continue;
    const std::uint32_t d = arch.distance(m.node_of(a), m.node_of(b));
    pair_of_qubit[a] = pair_of_qubit[b] = static_cast<std::int32_t>(front.size());
    front.push_back({a, b, d});
    if (d >= 2) base_entries.push_back(d);
  }
  const DistanceVector base(std::move(base_entries));
  if (base.empty())
    throw std::invalid_argument("select_swap: frontier has no unresolved pair");

  // Admission: strict pointwise improvement of the frontier distances.  No
  // pair touched by the plan may end up further apart, and at least one must
  // end up strictly closer.  Untouched pairs keep their distance, so this is
  // equivalent to comparing the full per-pair distance family pointwise.
  const auto admitted = [&](const MovedContents& moved) {
    std::vector<std::int32_t> affected;
    for (const auto& mv : moved.moves) {
      const std::int32_t p = pair_of_qubit[mv.qubit];
      if (p >= 0 && std::find(affected.begin(), affected.end(), p) == affected.end())
        affected.push_back(p);
    }
    bool improves = false;
    for (const std::int32_t p : affected) {
      const FrontPair& fp = front[p];
      const std::uint32_t nd = arch.distance(moved.node_of(fp.a, m), moved.node_of(fp.b, m));
      if (nd > fp.dist) return false;
      if (nd < fp.dist) improves = true;
    }
    return improves;
  };

  const std::vector<NodePair> candidates = candidate_swaps(s0, m, arch);
  const unsigned examine =
      std::min<unsigned>(static_cast<unsigned>(slices.size()), 1 + cfg.lookahead);

  const auto refine = [&](std::vector<Plan> admitted_plans) -> Plan {
    for (unsigned t = 0; t < examine && admitted_plans.size() > 1; ++t) {
      std::vector<DistanceVector> keys;
      keys.reserve(admitted_plans.size());
      for (const Plan& p : admitted_plans)
        keys.push_back(eval_slice(slices[t], m, arch, p.moved));
      const DistanceVector* best = &keys[0];
      for (const DistanceVector& k : keys)
        if (k < *best) best = &k;
      std::vector<Plan> kept;
      for (std::size_t i = 0; i < admitted_plans.size(); ++i)
        if (keys[i] == *best) kept.push_back(std::move(admitted_plans[i]));
      admitted_plans = std::move(kept);
    }
    std::size_t chosen = admitted_plans.size() - 1;  // plans are generated in
    // ascending edge order, so the last one has the lexicographically largest
    // swap list — the deterministic tie-break.
    if (cfg.seed != 0 && admitted_plans.size() > 1) {
      std::uint64_t h = cfg.seed;
      for (const Plan& p : admitted_plans)
        for (const auto& [a, b] : p.swaps)
          h = mix64(h ^ ((static_cast<std::uint64_t>(a) << 32) | b));
      chosen = static_cast<std::size_t>(mix64(h) % admitted_plans.size());
    }
    return std::move(admitted_plans[chosen]);
  };

  // Stage 1: grow a maximal set of node-disjoint swaps and emit it
  // back-to-back, so the output slicer schedules the whole set as one
  // timestep and independent pairs progress in parallel instead of taking
  // turns.  Each addition is admitted by the first rung of a ladder that
  // accepts it, evaluated against the moves accumulated so far:
  //
  //   1. pointwise: no frontier pair moves further apart and at least one
  //      gets strictly closer;
  //   2. lexicographic: the sorted frontier distances get strictly smaller,
  //      so a nearer pair may be pushed outward when that unblocks a farther
  //      one — the escape hatch for congested regions with no pointwise move;
  //   3. pre-positioning for an upcoming slice t: some pair of slice t gets
  //      strictly closer while no pair of slices 0..t moves further apart,
  //      so qubits whose frontier work is done start travelling towards
  //      their next partners.
  //
  // Every rung strictly decreases the tuple (sorted frontier distances,
  // then slice-by-slice total distances) in lexicographic order, so repeated
  // calls cannot cycle.  Ties at each addition are refined across lookahead
  // slices exactly like a lone swap would be.
  struct TierPair {
    Qubit a, b;
  };
  std::vector<std::vector<TierPair>> tier_pairs(examine);
  std::vector<std::vector<std::int32_t>> tier_of_qubit(
      examine, std::vector<std::int32_t>(m.num_qubits(), -1));
  for (unsigned t = 0; t < examine; ++t) {
    for (const auto& [a, b] : slices[t].pairs) {
      if (!m.has_qubit(a) || !m.has_qubit(b)) continue;
      tier_of_qubit[t][a] = tier_of_qubit[t][b] =
          static_cast<std::int32_t>(tier_pairs[t].size());
      tier_pairs[t].push_back({a, b});
    }
  }
  const std::vector<NodePair> all_edges = skeleton_edges(arch);

  // Dense position tables for the accumulated layer: node_now[q] is the node
  // currently holding qubit q, qubit_now[v] the qubit at node v (-1 when
  // empty).  A candidate swap is then a two-entry overlay on top of these
  // tables, so every admission or refinement probe costs O(1) per qubit
  // instead of a scan of the accumulated move list.
  std::vector<Node> node_now(m.num_qubits(), 0);
  std::vector<std::int32_t> qubit_now(arch.node_count(), -1);
  for (Qubit q = 0; q < m.num_qubits(); ++q)
    if (m.has_qubit(q)) {
      node_now[q] = m.node_of(q);
      qubit_now[node_now[q]] = static_cast<std::int32_t>(q);
    }

  // Positions under "swap the contents of (u, v)" on top of the layer.
  struct Probe {
    Node u, v;
    std::int32_t qa, qb;  // qubits sitting at u and v, -1 when empty
    const std::vector<Node>* base;
    Node pos(Qubit q) const {
      if (qa >= 0 && q == static_cast<Qubit>(qa)) return v;
      if (qb >= 0 && q == static_cast<Qubit>(qb)) return u;
      return (*base)[q];
    }
  };
  const auto make_probe = [&](const NodePair& e) {
    return Probe{e.first, e.second, qubit_now[e.first], qubit_now[e.second], &node_now};
  };

  // Refinement over tied candidate edges, mirroring `refine`: successively
  // keep the edges whose overlay minimises each lookahead slice's distance
  // vector, then break remaining ties towards the largest edge (or by seed).
  const auto refine_edges = [&](std::vector<NodePair> tied) -> NodePair {
    for (unsigned t = 0; t < examine && tied.size() > 1; ++t) {
      std::vector<DistanceVector> keys;
      keys.reserve(tied.size());
      for (const NodePair& e : tied) {
        const Probe probe = make_probe(e);
        std::vector<std::uint32_t> ds;
        ds.reserve(slices[t].pairs.size());
        for (const auto& [a, b] : slices[t].pairs) {
          if (!m.has_qubit(a) || !m.has_qubit(b)) continue;
          const std::uint32_t d = arch.distance(probe.pos(a), probe.pos(b));
          if (d >= 2) ds.push_back(d);
        }
        keys.emplace_back(std::move(ds));
      }
      const DistanceVector* best = &keys[0];
      for (const DistanceVector& k : keys)
        if (k < *best) best = &k;
      std::vector<NodePair> kept;
      for (std::size_t i = 0; i < tied.size(); ++i)
        if (keys[i] == *best) kept.push_back(tied[i]);
      tied = std::move(kept);
    }
    std::size_t chosen = tied.size() - 1;  // candidates are generated in
    // ascending edge order, so the last survivor is the lexicographically
    // largest edge — the deterministic tie-break.
    if (cfg.seed != 0 && tied.size() > 1) {
      std::uint64_t h = cfg.seed;
      for (const auto& [a, b] : tied)
        h = mix64(h ^ ((static_cast<std::uint64_t>(a) << 32) | b));
      chosen = static_cast<std::size_t>(mix64(h) % tied.size());
    }
    return tied[chosen];
  };

  std::vector<NodePair> layer;
  std::vector<char> used(arch.node_count(), 0);
  std::vector<std::vector<std::uint32_t>> tier_dist(examine);
  for (unsigned t = 0; t < examine; ++t) tier_dist[t].resize(tier_pairs[t].size());
  for (;;) {
    for (unsigned t = 0; t < examine; ++t)
      for (std::size_t p = 0; p < tier_pairs[t].size(); ++p)
        tier_dist[t][p] =
            arch.distance(node_now[tier_pairs[t][p].a], node_now[tier_pairs[t][p].b]);

    // Collects swaps admissible at `tier`; `lex` switches rung 1 to rung 2.
    std::vector<NodePair> extensions;
    const auto collect = [&](unsigned tier, bool lex) {
      std::vector<char> involved(arch.node_count(), 0);
      for (std::size_t p = 0; p < tier_pairs[tier].size(); ++p) {
        if (tier_dist[tier][p] < 2) continue;
        involved[node_now[tier_pairs[tier][p].a]] = 1;
        involved[node_now[tier_pairs[tier][p].b]] = 1;
      }
      for (const NodePair& e : all_edges) {
        if (used[e.first] || used[e.second]) continue;
        if (!involved[e.first] && !involved[e.second]) continue;
        const Probe probe = make_probe(e);
        bool ok;
        if (lex) {
          std::vector<std::uint32_t> nd(tier_dist[0]);
          for (const std::int32_t q : {probe.qa, probe.qb}) {
            if (q < 0) continue;
            const std::int32_t pr = tier_of_qubit[0][static_cast<Qubit>(q)];
            if (pr < 0) continue;
            const TierPair& fp = tier_pairs[0][pr];
            nd[pr] = arch.distance(probe.pos(fp.a), probe.pos(fp.b));
          }
          std::vector<std::uint32_t> before, after;
          for (std::size_t pr = 0; pr < nd.size(); ++pr) {
            if (tier_dist[0][pr] >= 2) before.push_back(tier_dist[0][pr]);
            if (nd[pr] >= 2) after.push_back(nd[pr]);
          }
          ok = DistanceVector(std::move(after)) < DistanceVector(std::move(before));
        } else {
          bool improves = false;
          bool worsens = false;
          for (const std::int32_t q : {probe.qa, probe.qb}) {
            if (q < 0 || worsens) continue;
            for (unsigned j = 0; j <= tier; ++j) {
              const std::int32_t pr = tier_of_qubit[j][static_cast<Qubit>(q)];
              if (pr < 0) continue;
              const TierPair& fp = tier_pairs[j][pr];
              const std::uint32_t d2 = arch.distance(probe.pos(fp.a), probe.pos(fp.b));
              if (d2 > tier_dist[j][pr]) {
                worsens = true;
                break;
              }
              if (j == tier && d2 < tier_dist[j][pr]) improves = true;
            }
          }
          ok = improves && !worsens;
        }
        if (ok) extensions.push_back(e);
      }
    };
    collect(0, /*lex=*/false);
    if (extensions.empty()) collect(0, /*lex=*/true);
    for (unsigned t = 1; t < examine && extensions.empty(); ++t)
      collect(t, /*lex=*/false);
    if (extensions.empty()) break;

    const NodePair next = refine_edges(std::move(extensions));
    used[next.first] = used[next.second] = 1;
    const std::int32_t qa = qubit_now[next.first];
    const std::int32_t qb = qubit_now[next.second];
    if (qa >= 0) node_now[static_cast<Qubit>(qa)] = next.second;
    if (qb >= 0) node_now[static_cast<Qubit>(qb)] = next.first;
    std::swap(qubit_now[next.first], qubit_now[next.second]);
    layer.push_back(next);
  }
  if (!layer.empty()) return SwapPlan{std::move(layer), 1};

  // Stage 2: pairs of disjoint swaps.
  if (cfg.allow_pair_fallback) {
    std::vector<Plan> stage2;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      for (std::size_t j = i + 1; j < candidates.size(); ++j) {
        const NodePair& e1 = candidates[i];
        const NodePair& e2 = candidates[j];
        if (e1.first == e2.first || e1.first == e2.second || e1.second == e2.first ||
            e1.second == e2.second)
          continue;
        Plan p;
        p.swaps = {e1, e2};
        p.moved.add_swap(m, e1.first, e1.second);
        p.moved.add_swap(m, e2.first, e2.second);
        if (admitted(p.moved)) stage2.push_back(std::move(p));
      }
    }
    if (!stage2.empty()) return SwapPlan{refine(std::move(stage2)).swaps, 2};
  }

  // Stage 3: walk the most distant pair together along a shortest path.
  const FrontPair* worst = nullptr;
  for (const FrontPair& fp : front) {
    if (fp.dist < 2) continue;
    if (!worst || fp.dist > worst->dist ||
        (fp.dist == worst->dist && std::make_pair(fp.a, fp.b) < std::make_pair(worst->a, worst->b)))
      worst = &fp;
  }
  SwapPlan plan;
  plan.stage = 3;
  Node cur = m.node_of(worst->a);
  const Node target = m.node_of(worst->b);
  while (arch.distance(cur, target) > 1) {
    Node next = cur;
    for (const Node w : arch.neighbours(cur)) {
      if (arch.distance(w, target) + 1 == arch.distance(cur, target)) {
        next = w;
        break;  // neighbours are sorted: first hit is the lowest index
      }
    }
    plan.swaps.emplace_back(std::min(cur, next), std::max(cur, next));
    cur = next;
  }
  return plan;
}

// ---------------------------------------------------------------------------
// FrontierTracker
// ---------------------------------------------------------------------------

FrontierTracker::FrontierTracker(const Circuit& c)
    : circuit_(&c), wire_gates_(c.num_qubits()), cursor_(c.num_qubits(), 0) {
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    const Gate& g = c.gates()[i];
    std::vector<Qubit> distinct(g.qubits);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (const Qubit q : distinct) wire_gates_[q].push_back(i);
  }
  remaining_ = c.gates().size();
}

bool FrontierTracker::gate_ready(std::size_t gate_index) const {
  const Gate& g = circuit_->gates()[gate_index];
  for (const Qubit q : g.qubits) {
    const auto& wire = wire_gates_[q];
    if (cursor_[q] >= wire.size() || wire[cursor_[q]] != gate_index) return false;
  }
  return true;
}

std::vector<std::size_t> FrontierTracker::ready() const {
  std::vector<std::size_t> result;
  for (Qubit q = 0; q < wire_gates_.size(); ++q) {
    if (cursor_[q] >= wire_gates_[q].size()) continue;
    const std::size_t idx = wire_gates_[q][cursor_[q]];
    if (gate_ready(idx)) result.push_back(idx);
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

Timestep FrontierTracker::frontier() const {
  Timestep step;
  for (const std::size_t idx : ready()) {
    const Gate& g = circuit_->gates()[idx];
    if (!is_two_qubit(g.kind)) continue;
    step.pairs.emplace_back(std::min(g.qubits[0], g.qubits[1]),
                            std::max(g.qubits[0], g.qubits[1]));
    step.gate_refs.push_back(idx);
  }
  return step;
}

void FrontierTracker::consume(std::size_t gate_index) {
  if (!gate_ready(gate_index))
    throw std::logic_error("FrontierTracker: gate " + std::to_string(gate_index) +
                           " is not ready");
  const Gate& g = circuit_->gates()[gate_index];
  std::vector<Qubit> distinct(g.qubits);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (const Qubit q : distinct) ++cursor_[q];
  --remaining_;
}

std::vector<Timestep> FrontierTracker::lookahead(unsigned count) const {
  FrontierTracker scratch(*this);
  // Skip past the current layer: consume ready non-two-qubit gates, then the
  // current two-qubit frontier itself.
  const auto drain_trivial = [&scratch] {
    bool progress = true;
    while (progress) {
      progress = false;
      for (const std::size_t idx : scratch.ready()) {
        if (!is_two_qubit(scratch.circuit_->gates()[idx].kind)) {
          scratch.consume(idx);
          progress = true;
        }
      }
    }
  };
  const auto consume_frontier = [&scratch] {
    for (const std::size_t idx : scratch.frontier().gate_refs) scratch.consume(idx);
  };

  drain_trivial();
  consume_frontier();

  std::vector<Timestep> slices;
  while (slices.size() < count && !scratch.done()) {
    drain_trivial();
    const Timestep step = scratch.frontier();
    if (step.empty()) break;  // only measures/barriers left
    slices.push_back(step);
    consume_frontier();
  }
  return slices;
}

// ---------------------------------------------------------------------------
// route
// ---------------------------------------------------------------------------

namespace {

class RouteState {
 public:
  RouteState(const Circuit& c, const Architecture& arch, const Mapping& start,
             const RoutingConfig& cfg)
      : circuit_(c), arch_(arch), cfg_(cfg), tracker_(c) {
    if (c.num_qubits() > arch.node_count())
      throw std::invalid_argument("route: circuit has more qubits than the architecture");
    if (start.num_qubits() == 0 && start.num_nodes() == 0) {
      map_ = Mapping(c.num_qubits(), arch.node_count());
    } else {
      if (start.num_qubits() != c.num_qubits() || start.num_nodes() != arch.node_count())
        throw std::invalid_argument("route: initial mapping has wrong dimensions");
      map_ = start;
    }
    result_.initial = map_;
    result_.routed = Circuit(arch.node_count(), c.num_clbits());
    result_.routed.set_register_names(c.qreg_name(), c.creg_name());
    pos_.resize(arch.node_count());
    origin_at_.resize(arch.node_count());
    for (Node v = 0; v < arch.node_count(); ++v) pos_[v] = origin_at_[v] = v;
  }

  RoutingResult run() {
    while (true) {
      emit_executable();
      if (tracker_.done()) break;
      apply_swaps();
    }
    // Emission order follows the routing loop (gates as they become
    // executable, swap layers in between).  Normalising to earliest
    // dependency-respecting positions keeps the same per-node gate order —
    // hence the same unitary and edge conformance — while letting greedy
    // slicing pack independent work into shared timesteps.
    result_.routed = asap_reorder(result_.routed);
    result_.final = map_;
    result_.node_permutation = pos_;
    return std::move(result_);
  }

 private:
  void emit_executable() {
    bool progress = true;
    while (progress) {
      progress = false;
      for (const std::size_t idx : tracker_.ready()) {
        const Gate& g = circuit_.gates()[idx];
        if (is_two_qubit(g.kind)) {
          ensure_pair_mapped(g.qubits[0], g.qubits[1]);
          const Node a = map_.node_of(g.qubits[0]);
          const Node b = map_.node_of(g.qubits[1]);
          if (!arch_.has_edge(a, b)) continue;  // needs routing
          Gate out = g;
          out.qubits = {a, b};
          result_.routed.add_gate(std::move(out));
          // An explicit SWAP in the input is emitted at the nodes currently
          // holding its operands and exchanges their states in place, so the
          // qubit-to-node mapping must not move: relabelling on top of the
          // physical exchange would apply the swap twice.  (The trace checker
          // consumes such a swap from the input stream when replaying.)
          tracker_.consume(idx);
        } else {
          Gate out = g;
          for (Qubit& q : out.qubits) {
            ensure_single_mapped(q);
            q = map_.node_of(q);
          }
          result_.routed.add_gate(std::move(out));
          tracker_.consume(idx);
        }
        progress = true;
        break;  // mapping may have changed: recompute the ready set
      }
    }
  }

  void apply_swaps() {
    std::vector<Timestep> slices{tracker_.frontier()};
    std::vector<Timestep> future = tracker_.lookahead(cfg_.lookahead);
    slices.insert(slices.end(), std::make_move_iterator(future.begin()),
                  std::make_move_iterator(future.end()));
    const SwapPlan plan = select_swap(slices, map_, arch_, cfg_);
    if (plan.swaps.empty())
      throw std::logic_error("route: swap selection made no progress");
    for (const auto& [a, b] : plan.swaps) {
      result_.routed.swap(a, b);
      apply_permutation_swap(a, b);
      ++result_.swap_count;
    }
    if (plan.stage > 1) ++result_.fallback_count;
  }

  /// Exchanges node contents in the mapping and the origin permutation.
  void apply_permutation_swap(Node a, Node b) {
    map_.swap_nodes(a, b);
    const Node origin_a = origin_at_[a];
    const Node origin_b = origin_at_[b];
    std::swap(origin_at_[a], origin_at_[b]);
    pos_[origin_a] = b;
    pos_[origin_b] = a;
  }

  void place(Qubit q, Node v) {
    map_.assign(q, v);
    // The content currently at v is an untouched empty slot; its origin is
    // where this qubit conceptually started.
    result_.initial.assign(q, origin_at_[v]);
  }

  void ensure_single_mapped(Qubit q) {
    if (map_.has_qubit(q)) return;
    for (Node v = 0; v < arch_.node_count(); ++v) {
      if (!map_.occupied(v)) {
        place(q, v);
        return;
      }
    }
    throw std::logic_error("route: no free node left");
  }

  void ensure_pair_mapped(Qubit qa, Qubit qb) {
    if (map_.has_qubit(qa) && map_.has_qubit(qb)) return;
    if (!map_.has_qubit(qa) && !map_.has_qubit(qb)) {
      // Both fresh: lexicographically smallest free adjacent node pair.
      for (Node v = 0; v < arch_.node_count(); ++v) {
        if (map_.occupied(v)) continue;
        for (const Node w : arch_.neighbours(v)) {
          if (w > v && !map_.occupied(w)) {
            place(qa, v);
            place(qb, w);
            return;
          }
        }
      }
      // No free adjacent pair: fall back to lowest free + nearest free.
      ensure_single_mapped(qa);
      ensure_single_mapped_near(qb, map_.node_of(qa));
      return;
    }
    if (map_.has_qubit(qa)) {
      ensure_single_mapped_near(qb, map_.node_of(qa));
    } else {
      ensure_single_mapped_near(qa, map_.node_of(qb));
    }
  }

  /// Places q on the free node nearest to `anchor` (ties: lowest index).
  void ensure_single_mapped_near(Qubit q, Node anchor) {
    if (map_.has_qubit(q)) return;
    std::optional<Node> best;
    for (Node v = 0; v < arch_.node_count(); ++v) {
      if (map_.occupied(v)) continue;
      if (!best || arch_.distance(anchor, v) < arch_.distance(anchor, *best)) best = v;
    }
    if (!best) throw std::logic_error("route: no free node left");
    place(q, *best);
  }

  const Circuit& circuit_;
  const Architecture& arch_;
  const RoutingConfig& cfg_;
  FrontierTracker tracker_;
  Mapping map_;
  RoutingResult result_;
  std::vector<Node> pos_;        // origin slot -> current node
  std::vector<Node> origin_at_;  // current node -> origin slot
};

}  // namespace

RoutingResult route(const Circuit& c, const Architecture& arch, const Mapping& start,
                    const RoutingConfig& cfg) {
  return RouteState(c, arch, start, cfg).run();
}

}  // namespace qroute
