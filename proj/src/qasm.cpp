#include "qroute/qasm.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace qroute {

ParseError::ParseError(std::string message, int line, int column)
    : std::runtime_error("qasm:" + std::to_string(line) + ":" + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class TokKind { Identifier, Number, String, Symbol, Arrow, End };

struct Token {
  TokKind kind;
  std::string text;
  double value = 0.0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_ws_and_comments();
    Token tok;
    tok.line = line_;
    tok.col = col_;
    if (pos_ >= src_.size()) {
      tok.kind = TokKind::End;
      return tok;
    }
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        tok.text += advance();
      tok.kind = TokKind::Identifier;
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
        tok.text += advance();
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        tok.text += advance();
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) tok.text += advance();
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
          tok.text += advance();
      }
      const char* begin = tok.text.data();
      const char* end = begin + tok.text.size();
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc() || ptr != end)
        throw ParseError("malformed number '" + tok.text + "'", tok.line, tok.col);
      tok.kind = TokKind::Number;
      tok.value = value;
      return tok;
    }
    if (c == '"') {
      advance();
      while (pos_ < src_.size() && src_[pos_] != '"') tok.text += advance();
      if (pos_ >= src_.size()) throw ParseError("unterminated string", tok.line, tok.col);
      advance();
      tok.kind = TokKind::String;
      return tok;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      advance();
      advance();
      tok.kind = TokKind::Arrow;
      tok.text = "->";
      return tok;
    }
    tok.kind = TokKind::Symbol;
    tok.text = advance();
    return tok;
  }

 private:
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_ws_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

const std::map<std::string, GateKind, std::less<>>& gate_table() {
  static const std::map<std::string, GateKind, std::less<>> table = {
      {"h", GateKind::H},   {"x", GateKind::X},   {"y", GateKind::Y},
      {"z", GateKind::Z},   {"rx", GateKind::RX}, {"ry", GateKind::RY},
      {"rz", GateKind::RZ}, {"t", GateKind::T},   {"s", GateKind::S},
      {"u1", GateKind::U1}, {"u2", GateKind::U2}, {"u3", GateKind::U3},
      {"cx", GateKind::CX}, {"cz", GateKind::CZ}, {"swap", GateKind::Swap},
  };
  return table;
}

// Names of common qelib1 gates we deliberately do not support, kept separate
// from truly unknown identifiers so the error message can say why.
bool is_known_unsupported_gate(std::string_view name) {
  static const char* names[] = {"ccx", "cswap", "ch",  "crz", "cu1", "cu3", "tdg",
                                "sdg", "id",    "u0",  "u",   "p",   "sx",  "sxdg",
                                "csx", "cp",    "rzz", "rxx", "cy",  "c3x", "c4x"};
  for (const char* n : names)
    if (name == n) return true;
  return false;
}

struct Reference {
  std::string reg;
  std::optional<std::uint32_t> index;  // nullopt = whole register
  int line, col;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { consume(); }

  Circuit run() {
    expect_identifier("OPENQASM");
    const Token version = expect(TokKind::Number, "version number");
    if (version.text.rfind("2", 0) != 0)
      throw ParseError("unsupported OPENQASM version '" + version.text + "'", version.line,
                       version.col);
    expect_symbol(";");

    while (cur_.kind != TokKind::End) statement();

    // A program with no qreg parses to an empty circuit; any statement that
    // references a qubit reports the missing register at its own position.
    return std::move(circuit_);
  }

 private:
  void statement() {
    const Token head = expect(TokKind::Identifier, "statement");
    const std::string& name = head.text;
    if (name == "include") {
      expect(TokKind::String, "file name");
      expect_symbol(";");
    } else if (name == "qreg") {
      declare_qreg(head);
    } else if (name == "creg") {
      declare_creg();
    } else if (name == "measure") {
      measure_statement();
    } else if (name == "barrier") {
      barrier_statement();
    } else if (name == "gate" || name == "opaque") {
      throw ParseError("user-defined gates are not supported", head.line, head.col);
    } else if (name == "if") {
      throw ParseError("classical control ('if') is not supported", head.line, head.col);
    } else if (name == "reset") {
      throw ParseError("'reset' is not supported", head.line, head.col);
    } else {
      gate_statement(head);
    }
  }

  void declare_qreg(const Token& head) {
    if (qreg_seen_)
      throw ParseError("multiple quantum registers are not supported", head.line, head.col);
    const Token name = expect(TokKind::Identifier, "register name");
    const std::uint32_t size = bracket_size();
    expect_symbol(";");
    if (size == 0) throw ParseError("register must have positive size", name.line, name.col);
    qreg_seen_ = true;
    qreg_name_ = name.text;
    Circuit fresh(size, 0);
    // Classical registers may have been declared first; carry them over.
    fresh = Circuit(size, circuit_.num_clbits());
    circuit_ = std::move(fresh);
  }

  void declare_creg() {
    const Token name = expect(TokKind::Identifier, "register name");
    const std::uint32_t size = bracket_size();
    expect_symbol(";");
    if (size == 0) throw ParseError("register must have positive size", name.line, name.col);
    if (creg_offsets_.count(name.text))
      throw ParseError("duplicate classical register '" + name.text + "'", name.line, name.col);
    creg_offsets_[name.text] = total_clbits_;
    creg_sizes_[name.text] = size;
    if (creg_name_.empty()) creg_name_ = name.text;
    total_clbits_ += size;
    Circuit widened(circuit_.num_qubits(), total_clbits_);
    widened.set_register_names(circuit_.qreg_name(), creg_name_);
    for (const Gate& g : circuit_.gates()) widened.add_gate(g);
    circuit_ = std::move(widened);
  }

  void measure_statement() {
    const Reference q = reference();
    expect(TokKind::Arrow, "'->'");
    const Reference c = reference();
    expect_symbol(";");
    const auto offset_it = creg_offsets_.find(c.reg);
    if (offset_it == creg_offsets_.end())
      throw ParseError("unknown classical register '" + c.reg + "'", c.line, c.col);
    check_qreg(q);
    finalize_names();
    if (!q.index && !c.index) {
      if (circuit_.num_qubits() != creg_sizes_[c.reg])
        throw ParseError("measure broadcast needs equally sized registers", q.line, q.col);
      for (std::uint32_t i = 0; i < circuit_.num_qubits(); ++i)
        circuit_.measure(i, offset_it->second + i);
      return;
    }
    if (!q.index || !c.index)
      throw ParseError("measure operands must both be indexed or both whole registers",
                       q.line, q.col);
    if (*c.index >= creg_sizes_[c.reg])
      throw ParseError("classical index out of range", c.line, c.col);
    check_qubit_index(q);
    circuit_.measure(*q.index, offset_it->second + *c.index);
  }

  void barrier_statement() {
    std::vector<Reference> refs{reference()};
    while (cur_.kind == TokKind::Symbol && cur_.text == ",") {
      consume();
      refs.push_back(reference());
    }
    expect_symbol(";");
    finalize_names();
    std::vector<Qubit> qubits;
    for (const Reference& r : refs) {
      check_qreg(r);
      if (r.index) {
        check_qubit_index(r);
        qubits.push_back(*r.index);
      } else {
        for (std::uint32_t i = 0; i < circuit_.num_qubits(); ++i) qubits.push_back(i);
      }
    }
    circuit_.barrier(std::move(qubits));
  }

  void gate_statement(const Token& head) {
    const auto it = gate_table().find(head.text);
    if (it == gate_table().end()) {
      if (is_known_unsupported_gate(head.text))
        throw ParseError("gate '" + head.text + "' is outside the supported set", head.line,
                         head.col);
      throw ParseError("unknown gate '" + head.text + "'", head.line, head.col);
    }
    const GateKind kind = it->second;

    std::vector<double> params;
    if (cur_.kind == TokKind::Symbol && cur_.text == "(") {
      consume();
      if (!(cur_.kind == TokKind::Symbol && cur_.text == ")")) {
        params.push_back(expression());
        while (cur_.kind == TokKind::Symbol && cur_.text == ",") {
          consume();
          params.push_back(expression());
        }
      }
      expect_symbol(")");
    }
    if (params.size() != gate_param_count(kind))
      throw ParseError("gate '" + head.text + "' expects " +
                           std::to_string(gate_param_count(kind)) + " parameter(s)",
                       head.line, head.col);

    std::vector<Reference> refs{reference()};
    while (cur_.kind == TokKind::Symbol && cur_.text == ",") {
      consume();
      refs.push_back(reference());
    }
    expect_symbol(";");
    if (refs.size() > 2 || (is_two_qubit(kind) && refs.size() != 2) ||
        (!is_two_qubit(kind) && refs.size() != 1))
      throw ParseError("gate '" + head.text + "' applied to " + std::to_string(refs.size()) +
                           " operands; gates on three or more qubits are not supported",
                       head.line, head.col);

    finalize_names();
    for (const Reference& r : refs) check_qreg(r);

    if (is_two_qubit(kind)) {
      // One register means a whole-register two-qubit broadcast would alias.
      for (const Reference& r : refs)
        if (!r.index)
          throw ParseError("two-qubit gates require indexed operands", r.line, r.col);
      check_qubit_index(refs[0]);
      check_qubit_index(refs[1]);
      if (*refs[0].index == *refs[1].index)
        throw ParseError("two-qubit gate operands must be distinct", refs[0].line, refs[0].col);
      circuit_.add_gate({kind, {*refs[0].index, *refs[1].index}, std::move(params)});
      return;
    }
    if (refs[0].index) {
      check_qubit_index(refs[0]);
      circuit_.add_gate({kind, {*refs[0].index}, params});
    } else {
      for (std::uint32_t i = 0; i < circuit_.num_qubits(); ++i)
        circuit_.add_gate({kind, {i}, params});
    }
  }

  // expression := term (('+'|'-') term)*
  double expression() {
    double value = term();
    while (cur_.kind == TokKind::Symbol && (cur_.text == "+" || cur_.text == "-")) {
      const bool add = cur_.text == "+";
      consume();
      const double rhs = term();
      value = add ? value + rhs : value - rhs;
    }
    return value;
  }

  // term := factor (('*'|'/') factor)*
  double term() {
    double value = factor();
    while (cur_.kind == TokKind::Symbol && (cur_.text == "*" || cur_.text == "/")) {
      const bool mul = cur_.text == "*";
      consume();
      const double rhs = factor();
      if (!mul && rhs == 0.0) throw ParseError("division by zero", cur_.line, cur_.col);
      value = mul ? value * rhs : value / rhs;
    }
    return value;
  }

  // factor := ('+'|'-') factor | number | 'pi' | '(' expression ')'
  double factor() {
    if (cur_.kind == TokKind::Symbol && (cur_.text == "-" || cur_.text == "+")) {
      const bool neg = cur_.text == "-";
      consume();
      const double v = factor();
      return neg ? -v : v;
    }
    if (cur_.kind == TokKind::Number) {
      const double v = cur_.value;
      consume();
      return v;
    }
    if (cur_.kind == TokKind::Identifier && cur_.text == "pi") {
      consume();
      return M_PI;
    }
    if (cur_.kind == TokKind::Symbol && cur_.text == "(") {
      consume();
      const double v = expression();
      expect_symbol(")");
      return v;
    }
    throw ParseError("expected angle expression, got '" + cur_.text + "'", cur_.line, cur_.col);
  }

  Reference reference() {
    const Token name = expect(TokKind::Identifier, "register reference");
    Reference r{name.text, std::nullopt, name.line, name.col};
    if (cur_.kind == TokKind::Symbol && cur_.text == "[") {
      consume();
      const Token idx = expect(TokKind::Number, "index");
      if (idx.text.find('.') != std::string::npos || idx.value < 0)
        throw ParseError("index must be a non-negative integer", idx.line, idx.col);
      r.index = static_cast<std::uint32_t>(idx.value);
      expect_symbol("]");
    }
    return r;
  }

  void check_qreg(const Reference& r) {
    if (creg_offsets_.count(r.reg))
      throw ParseError("expected a quantum register, got classical '" + r.reg + "'", r.line,
                       r.col);
    if (!qreg_seen_ || r.reg != qreg_name_)
      throw ParseError("unknown quantum register '" + r.reg + "'", r.line, r.col);
  }

  void check_qubit_index(const Reference& r) {
    if (*r.index >= circuit_.num_qubits())
      throw ParseError("qubit index " + std::to_string(*r.index) + " out of range (register '" +
                           r.reg + "' has " + std::to_string(circuit_.num_qubits()) + ")",
                       r.line, r.col);
  }

  std::uint32_t bracket_size() {
    expect_symbol("[");
    const Token size = expect(TokKind::Number, "register size");
    if (size.text.find('.') != std::string::npos)
      throw ParseError("register size must be an integer", size.line, size.col);
    expect_symbol("]");
    return static_cast<std::uint32_t>(size.value);
  }

  void finalize_names() {
    if (!names_final_) {
      circuit_.set_register_names(qreg_name_, creg_name_.empty() ? "c" : creg_name_);
      names_final_ = true;
    }
  }

  Token expect(TokKind kind, const std::string& what) {
    if (cur_.kind != kind)
      throw ParseError("expected " + what + ", got '" + cur_.text + "'", cur_.line, cur_.col);
    Token t = cur_;
    consume();
    return t;
  }

  void expect_identifier(const std::string& text) {
    if (cur_.kind != TokKind::Identifier || cur_.text != text)
      throw ParseError("expected '" + text + "'", cur_.line, cur_.col);
    consume();
  }

  void expect_symbol(const std::string& text) {
    if (cur_.kind != TokKind::Symbol || cur_.text != text)
      throw ParseError("expected '" + text + "', got '" + cur_.text + "'", cur_.line, cur_.col);
    consume();
  }

  void consume() { cur_ = lexer_.next(); }

  Lexer lexer_;
  Token cur_;
  Circuit circuit_;
  bool qreg_seen_ = false;
  bool names_final_ = false;
  std::string qreg_name_;
  std::string creg_name_;
  std::map<std::string, std::uint32_t> creg_offsets_;
  std::map<std::string, std::uint32_t> creg_sizes_;
  std::uint32_t total_clbits_ = 0;
};

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return std::to_string(v);  // unreachable for finite doubles
  return std::string(buf, ptr);
}

}  // namespace

Circuit parse_qasm(std::string_view text) { return Parser(text).run(); }

Circuit parse_qasm_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_qasm(buffer.str());
}

std::string emit_qasm(const Circuit& c) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  if (c.num_qubits() > 0)
    out << "qreg " << c.qreg_name() << "[" << c.num_qubits() << "];\n";
  if (c.num_clbits() > 0)
    out << "creg " << c.creg_name() << "[" << c.num_clbits() << "];\n";

  const std::string& q = c.qreg_name();
  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::Measure) {
      out << "measure " << q << "[" << g.qubits[0] << "] -> " << c.creg_name() << "["
          << g.clbit << "];\n";
      continue;
    }
    out << gate_name(g.kind);
    if (!g.params.empty()) {
      out << "(";
      for (std::size_t i = 0; i < g.params.size(); ++i) {
        if (i) out << ",";
        out << format_double(g.params[i]);
      }
      out << ")";
    }
    out << " ";
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
      if (i) out << ",";
      out << q << "[" << g.qubits[i] << "]";
    }
    out << ";\n";
  }
  return out.str();
}

}  // namespace qroute
