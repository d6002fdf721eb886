#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cutlab/graph.hpp"

namespace cutlab {

// Operand of a gate: either a circuit input X_k or another gate G_j.
struct GateRef {
  enum class Kind : std::uint8_t { Input, Gate };
  Kind kind = Kind::Input;
  std::uint32_t index = 0;  // 0-based: Input k -> X_{k+1}, Gate i -> G_{i+1}

  static GateRef input(std::uint32_t k) { return GateRef{Kind::Input, k}; }
  static GateRef gate(std::uint32_t i) { return GateRef{Kind::Gate, i}; }
  bool is_input() const { return kind == Kind::Input; }
  bool operator==(const GateRef&) const = default;
};

enum class GateKind : std::uint8_t { Nor, Not };

struct Gate {
  GateKind kind = GateKind::Not;
  GateRef a;
  GateRef b;  // Nor only
};

// Normalized boolean circuit. gates[i] is G_{i+1} in the conventional
// numbering: gates are topologically ordered with operands at strictly
// larger indices, outputs are G_1..G_m with G_m the most significant bit.
//
// Evaluation convention: a NOT gate whose operand is a circuit input HOLDS
// that input (forwards its value unchanged). Negating an input takes a
// holder followed by a NOT gate. This is the convention the gadget
// compiler's input wiring realizes, and output oracles depend on it.
struct Circuit {
  std::uint32_t input_count = 0;
  std::uint32_t output_count = 0;
  std::vector<Gate> gates;

  std::uint32_t gate_count() const { return static_cast<std::uint32_t>(gates.size()); }
};

enum class NormalForm { Section4, Appendix };

struct Violation {
  std::string what;
};

// Structural checks. Empty result iff the circuit satisfies the selected
// normal form:
//   Section4: NOR-only with fanin 2, distinct operands, topological order,
//             every input occurring exactly once.
//   Appendix: NOR gates (fanin 2, distinct gate operands, fanout exactly 1)
//             or NOT gates (fanout <= 2); inputs occur only in the top n
//             gates, which are NOT gates holding one input each with fanout
//             exactly 1; outputs G_1..G_m are NOT gates with fanout 0.
std::vector<Violation> validate_normal_form(const Circuit& c, NormalForm mode);

// Throws std::invalid_argument on reference/topology errors.
void validate_references(const Circuit& c);

// Per-gate values, index i -> value of G_{i+1}. NOR(a,b) = !(a|b),
// NOT(gate) = !value, NOT(input) holds the input.
std::vector<std::uint8_t> eval(const Circuit& c, const std::vector<std::uint8_t>& x);

// Output bits value(G_1)..value(G_m), least significant first.
std::vector<std::uint8_t> output_bits(const Circuit& c, const std::vector<std::uint8_t>& x);

// Output read as a binary number: sum value(G_i) * 2^(i-1).
Weight cf_objective(const Circuit& c, const std::vector<std::uint8_t>& x);

// Lexicographically-first single-bit flip with a strictly larger objective,
// or nullopt iff x is a CIRCUITFLIP local optimum.
std::optional<std::vector<std::uint8_t>> cf_improving_neighbor(const Circuit& c,
                                                               const std::vector<std::uint8_t>& x);

// Appendix-normal circuit with one input and one output per entry of
// `copy_input`: output j carries the input when copy_input[j] is true and
// its complement otherwise. Used to build bias subgraphs.
Circuit unary_fanout_circuit(const std::vector<bool>& copy_input);

}  // namespace cutlab
