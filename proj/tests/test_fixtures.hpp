#pragma once

#include "qroute/circuit.hpp"
#include "qroute/mapping.hpp"

namespace qroute::testing {

/// The four-qubit example used throughout the test suite: ten gates whose
/// two-qubit skeleton slices into
///   [{(0,2),(1,3)}, {(1,2)}, {(0,1),(2,3)}, {(0,1)}].
inline Circuit textbook_circuit() {
  Circuit c(4, 4);
  c.h(0);
  c.cx(0, 2);
  c.cx(1, 3);
  c.t(2);
  c.cx(1, 2);
  c.h(3);
  c.cx(0, 1);
  c.cx(2, 3);
  c.s(1);
  c.cx(0, 1);
  return c;
}

/// The hand-picked starting placement for the textbook circuit on ring(4):
/// interaction path q0–q2–q1–q3 laid consecutively around the ring, so the
/// first two slices are executable immediately and the whole circuit routes
/// with a single swap on nodes (2,3).
inline Mapping textbook_mapping() {
  Mapping m(4, 4);
  m.assign(0, 0);
  m.assign(2, 1);
  m.assign(1, 2);
  m.assign(3, 3);
  return m;
}

}  // namespace qroute::testing
