#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "qroute/synthesis.hpp"
#include "qroute/verify.hpp"
#include "test_fixtures.hpp"

using namespace qroute;

namespace {

constexpr double kUnitaryTol = 1e-12;  // identity rewrites: exact up to roundoff
constexpr double kPhaseTol = 1e-9;     // random-angle chains: accumulated roundoff

std::size_t two_qubit_count(const Circuit& c) {
  std::size_t n = 0;
  for (const Gate& g : c.gates())
    if (is_two_qubit(g.kind)) ++n;
  return n;
}

Circuit random_unitary_circuit(std::uint32_t n, int gates, std::mt19937_64& rng) {
  Circuit c(n);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int i = 0; i < gates; ++i) {
    const Qubit a = static_cast<Qubit>(rng() % n);
    switch (rng() % 6) {
      case 0: c.h(a); break;
      case 1: c.rx(angle(rng), a); break;
      case 2: c.ry(angle(rng), a); break;
      case 3: c.rz(angle(rng), a); break;
      case 4: c.u1(angle(rng), a); break;
      default: {
        Qubit b = static_cast<Qubit>(rng() % n);
        if (a == b) b = (b + 1) % n;
        c.cx(a, b);
        break;
      }
    }
  }
  return c;
}

}  // namespace

TEST_CASE("swap decomposition emits the three-CX identity") {
  Circuit c(2);
  c.swap(0, 1);
  const Circuit out = decompose_swaps(c);
  REQUIRE(out.size() == 3);
  CHECK(out.gates()[0] == Gate{GateKind::CX, {0, 1}, {}});
  CHECK(out.gates()[1] == Gate{GateKind::CX, {1, 0}, {}});
  CHECK(out.gates()[2] == Gate{GateKind::CX, {0, 1}, {}});
  CHECK(max_entry_distance(unitary_of(c), unitary_of(out)) < kUnitaryTol);
}

TEST_CASE("swap decomposition leaves other gates untouched") {
  Circuit c(3, 1);
  c.h(0);
  c.swap(0, 2);
  c.rz(0.25, 1);
  c.measure(2, 0);
  const Circuit out = decompose_swaps(c);
  REQUIRE(out.size() == 6);
  CHECK(out.gates()[0] == c.gates()[0]);
  CHECK(out.gates()[4] == c.gates()[2]);
  CHECK(out.gates()[5] == c.gates()[3]);
  CHECK(out.num_clbits() == 1);
}

TEST_CASE("arc-aligned decomposition plus redirect is orientation pure") {
  const Architecture arc = Architecture::from_edge_list("directed 2 0 1");
  Circuit c(2);
  c.swap(1, 0);  // given against the arc on purpose

  const Circuit aligned = decompose_swaps(c, arc);
  REQUIRE(aligned.size() == 3);
  CHECK(aligned.gates()[0] == Gate{GateKind::CX, {0, 1}, {}});
  CHECK(aligned.gates()[1] == Gate{GateKind::CX, {1, 0}, {}});
  CHECK(aligned.gates()[2] == Gate{GateKind::CX, {0, 1}, {}});

  const Circuit redirected = redirect_cnots(aligned, arc);
  // Only the middle CX needs conjugation: 3 CX + 4 H in total.
  std::size_t cxs = 0, hs = 0;
  for (const Gate& g : redirected.gates()) {
    if (g.kind == GateKind::CX) ++cxs;
    if (g.kind == GateKind::H) ++hs;
  }
  CHECK(cxs == 3);
  CHECK(hs == 4);
  CHECK(check_conformance(redirected, arc, /*directed_strict=*/true).ok());
  CHECK(max_entry_distance(unitary_of(c), unitary_of(redirected)) < kUnitaryTol);
}

TEST_CASE("redirect rewrites only misoriented CX gates") {
  const Architecture arc = Architecture::from_edge_list("directed 2 0 1");

  Circuit with_arc(2);
  with_arc.cx(0, 1);
  CHECK(redirect_cnots(with_arc, arc) == with_arc);

  Circuit against(2);
  against.cx(1, 0);
  const Circuit out = redirect_cnots(against, arc);
  REQUIRE(out.size() == 5);
  CHECK(out.gates()[0] == Gate{GateKind::H, {1}, {}});
  CHECK(out.gates()[1] == Gate{GateKind::H, {0}, {}});
  CHECK(out.gates()[2] == Gate{GateKind::CX, {0, 1}, {}});
  CHECK(out.gates()[3] == Gate{GateKind::H, {1}, {}});
  CHECK(out.gates()[4] == Gate{GateKind::H, {0}, {}});
  CHECK(max_entry_distance(unitary_of(against), unitary_of(out)) < kUnitaryTol);

  // Undirected targets pass through untouched, even a "misoriented" CX.
  CHECK(redirect_cnots(against, Architecture::ring(4)) == against);

  Circuit off_edge(3);
  off_edge.cx(0, 2);
  const Architecture path = Architecture::from_edge_list("directed 3 0 1 1 2");
  CHECK_THROWS_AS(redirect_cnots(off_edge, path), std::invalid_argument);
}

TEST_CASE("cleanup cancels adjacent identical CX pairs") {
  Circuit c(2);
  c.cx(0, 1);
  c.cx(0, 1);
  CHECK(cleanup(c).empty());

  Circuit blocked(2);
  blocked.cx(0, 1);
  blocked.h(1);
  blocked.cx(0, 1);
  CHECK(cleanup(blocked).size() == 3);

  Circuit reversed(2);
  reversed.cx(0, 1);
  reversed.cx(1, 0);
  CHECK(cleanup(reversed).size() == 2);  // different orientation: no cancel
}

TEST_CASE("cleanup cancels adjacent H pairs") {
  Circuit c(1);
  c.h(0);
  c.h(0);
  CHECK(cleanup(c).empty());

  Circuit blocked(1);
  blocked.h(0);
  blocked.t(0);
  blocked.h(0);
  CHECK(cleanup(blocked).size() == 3);

  // Measurements block the wire as well.
  Circuit measured(1, 1);
  measured.h(0);
  measured.measure(0, 0);
  measured.h(0);
  CHECK(cleanup(measured).size() == 3);
}

TEST_CASE("cleanup fuses same-kind rotations by angle addition") {
  Circuit c(1);
  c.rz(0.3, 0);
  c.rz(0.4, 0);
  const Circuit fused = cleanup(c);
  REQUIRE(fused.size() == 1);
  CHECK(fused.gates()[0].kind == GateKind::RZ);
  CHECK(fused.gates()[0].params[0] == Approx(0.7));

  Circuit zero(1);
  zero.rx(0.8, 0);
  zero.rx(-0.8, 0);
  CHECK(cleanup(zero).empty());

  Circuit wraps(1);
  wraps.rx(std::numbers::pi, 0);
  wraps.rx(std::numbers::pi, 0);
  CHECK(cleanup(wraps).empty());  // full turn: identity up to global phase

  Circuit mixed(1);
  mixed.rz(0.3, 0);
  mixed.rx(0.4, 0);
  CHECK(cleanup(mixed).size() == 2);  // different kinds never fuse
}

TEST_CASE("cleanup commutes diagonal rotations past CX to enable fusion") {
  Circuit control_side(2);
  control_side.rz(0.3, 0);
  control_side.cx(0, 1);
  control_side.rz(0.4, 0);
  const Circuit a = cleanup(control_side);
  REQUIRE(a.size() == 2);
  CHECK(a.gates()[0].kind == GateKind::CX);
  CHECK(a.gates()[1].params[0] == Approx(0.7));
  CHECK(phase_aligned_distance(unitary_of(control_side), unitary_of(a)) < kPhaseTol);

  Circuit target_side(2);
  target_side.rx(0.3, 1);
  target_side.cx(0, 1);
  target_side.rx(0.4, 1);
  const Circuit b = cleanup(target_side);
  REQUIRE(b.size() == 2);
  CHECK(b.gates()[1].params[0] == Approx(0.7));
  CHECK(phase_aligned_distance(unitary_of(target_side), unitary_of(b)) < kPhaseTol);

  // RZ on the target does not commute; neither does RX on the control.
  Circuit rz_target(2);
  rz_target.rz(0.3, 1);
  rz_target.cx(0, 1);
  rz_target.rz(0.4, 1);
  CHECK(cleanup(rz_target).size() == 3);

  Circuit rx_control(2);
  rx_control.rx(0.3, 0);
  rx_control.cx(0, 1);
  rx_control.rx(0.4, 0);
  CHECK(cleanup(rx_control).size() == 3);
}

TEST_CASE("fusion is statevector-exact for random angle chains") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    Circuit c(1);
    const int kind = trial % 4;
    for (int g = 0; g < 4; ++g) {
      const double a = angle(rng);
      if (kind == 0) c.rx(a, 0);
      if (kind == 1) c.ry(a, 0);
      if (kind == 2) c.rz(a, 0);
      if (kind == 3) c.u1(a, 0);
    }
    const Circuit out = cleanup(c);
    CHECK(out.size() <= 1);
    CHECK(phase_aligned_distance(unitary_of(c), unitary_of(out)) < kPhaseTol);
  }
}

TEST_CASE("cleanup preserves unitaries of random circuits") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Circuit c = random_unitary_circuit(4, 30, rng);
    const Circuit out = cleanup(c);
    CHECK(two_qubit_count(out) <= two_qubit_count(c));
    CHECK(phase_aligned_distance(unitary_of(c), unitary_of(out)) < kPhaseTol);
    // Fixpoint: a second pass finds nothing further to rewrite.
    CHECK(cleanup(out) == out);
  }
}

TEST_CASE("cleanup after decomposition keeps routed circuits conformant") {
  const Circuit input = testing::textbook_circuit();
  const Architecture ring = Architecture::ring(4);
  const RoutingResult result = route(input, ring, testing::textbook_mapping());

  const Circuit decomposed = decompose_swaps(result.routed);
  const Circuit cleaned = cleanup(decomposed);
  CHECK(check_conformance(cleaned, ring).ok());
  CHECK(two_qubit_count(cleaned) <= two_qubit_count(decomposed));
  CHECK(routed_statevector_equivalent(input, cleaned, result).ok);
}
