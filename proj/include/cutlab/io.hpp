#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cutlab/circuit.hpp"
#include "cutlab/comparing.hpp"
#include "cutlab/compile.hpp"
#include "cutlab/flip.hpp"
#include "cutlab/graph.hpp"

namespace cutlab {

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(column) +
                           ": " + what),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

// Graph format ("p maxcut <n> <m>" header, 1-based ids, '#' comments):
//   e <u> <v> <w>   decimal weight
//   x <u> <v> <k>   weight 2^k
// The emitter writes x-lines for powers of two with exponent >= 1, so
// emit(parse(emit(g))) is byte-identical.
Graph parse_graph(const std::string& text);
std::string emit_graph(const Graph& g);

// Circuit format, ids unique and references previously declared:
//   input <id>
//   gate <id> NOR <a> <b>
//   gate <id> NOT <a>
//   outputs <id>...      least significant first; must be the most recently
//                        declared gates, newest first
Circuit parse_circuit(const std::string& text);
std::string emit_circuit(const Circuit& c);

Partition parse_partition(const std::string& text);
std::string emit_partition(const Partition& p);

// JSON documents (all carry "schema": "cutlab/1"). Weights are serialized
// as decimal strings; they routinely exceed 2^53.
std::string trace_to_json(const FlipTrace<Weight>& trace, PivotRule rule, std::uint64_t seed,
                          std::uint64_t step_limit);
std::string check_to_json(const Graph& g, const Partition& p);
std::string optima_to_json(const std::vector<Partition>& optima);
std::string role_map_to_json(const CompiledGraph& cg);
std::string node_map_to_json(const DegradedGadget& dg);
std::string verification_to_json(const VerificationReport& report);

}  // namespace cutlab
