#pragma once

#include "qroute/architecture.hpp"
#include "qroute/circuit.hpp"

namespace qroute {

/// Replaces every Swap(a,b) with CX(a,b); CX(b,a); CX(a,b). Other gates pass
/// through unchanged.
Circuit decompose_swaps(const Circuit& c);

/// Like decompose_swaps(c), but on a directed architecture the first and last
/// CX of each triple run along the permitted arc, so a later redirect pass
/// only has to conjugate the middle one (3 CX + 4 H per swap instead of 8 H).
Circuit decompose_swaps(const Circuit& c, const Architecture& arch);

/// Rewrites every CX whose control->target orientation is not an arc of the
/// directed architecture as H(a); H(b); CX(b,a); H(a); H(b). Gates already
/// oriented along an arc, and all gates on undirected architectures, are
/// unchanged. Throws std::invalid_argument for a CX that is not on a skeleton
/// edge at all (that would be a routing bug, not a direction problem).
Circuit redirect_cnots(const Circuit& c, const Architecture& arch);

/// Local rewriting to a fixpoint:
///   (a) two identical CX gates with no intervening gate on either wire cancel;
///   (b) adjacent H·H on one wire cancel;
///   (c) adjacent rotations of the same kind (RX, RY, RZ or U1) on one wire
///       fuse by angle addition mod 2*pi; zero-angle gates are deleted;
///   (d) an RZ/U1 immediately before a CX control, or an RX immediately before
///       a CX target, commutes past the CX when a rotation of the same kind
///       waits on the other side, enabling (c).
/// Every rule removes at least one gate, so the rewriting terminates; no rule
/// introduces a two-qubit gate, so conformance is preserved.
Circuit cleanup(const Circuit& c);

}  // namespace qroute
