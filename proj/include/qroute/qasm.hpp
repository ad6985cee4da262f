#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qroute/circuit.hpp"

namespace qroute {

/// Error raised while parsing OpenQASM text. Carries 1-based source position.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses an OpenQASM 2.0 program restricted to: one quantum register,
/// optional classical registers (flattened into one index space), the gate
/// set {h,x,y,z,rx,ry,rz,t,s,u1,u2,u3,cx,cz,swap}, measure and barrier.
/// Angle expressions support numbers, `pi`, unary +/-, the four arithmetic
/// operators and parentheses. Gates on three or more qubits, user-defined
/// gates and classical control are rejected with a ParseError naming the
/// offending construct.
Circuit parse_qasm(std::string_view text);

/// Reads and parses a file; IO failures raise std::runtime_error.
Circuit parse_qasm_file(const std::filesystem::path& path);

/// Serializes a circuit back to OpenQASM 2.0, one statement per line.
/// Round-trip safe: parse_qasm(emit_qasm(c)) is gate-for-gate identical to c
/// (angles are printed with enough digits to reproduce the exact double).
std::string emit_qasm(const Circuit& c);

}  // namespace qroute
