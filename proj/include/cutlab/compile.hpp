#pragma once

#include <cstdint>
#include <vector>

#include "cutlab/circuit.hpp"
#include "cutlab/graph.hpp"

namespace cutlab {

// Graph compiled from an Appendix-normal circuit with N gates.
// Nodes are v_1..v_{3N+1}: v_i (i <= N) carries gate G_i, v_{N+1}..v_{3N+1}
// form the alternating chain. All weights are powers of two, max degree 4,
// every node is type I or III.
//
// Local optima come in complementary pairs; the anchor node v_{3N} selects
// the phase ("canonical" means color(anchor) = 1). In the canonical phase of
// a circuit-value compilation the optimum is unique and node colors equal
// gate values.
struct CompiledGraph {
  Graph graph;
  std::uint32_t gate_count = 0;   // N
  std::uint32_t input_count = 0;  // n
  std::uint32_t output_count = 0; // m
  bool looker_mode = false;
  std::vector<NodeId> s_nodes;  // input-holding gate nodes, X_1 first
  std::vector<NodeId> t_nodes;  // output gate nodes v_1..v_m, LSB first
  NodeId anchor = 0;            // v_{3N}

  NodeId gate_node(std::uint32_t gate_1based) const { return gate_1based - 1; }
  NodeId chain_node(std::uint32_t index_1based) const { return index_1based - 1; }
};

// Circuit-value mode: input values are baked in by wiring each input-holding
// gate to the chain node of the opposite color, so canonical local optima
// reproduce the whole evaluation. Requires Appendix normal form.
CompiledGraph compile_cvp(const Circuit& c, const std::vector<std::uint8_t>& assignment);

// Looker mode: the circuit-value graph minus the input wiring. The holder
// nodes s_i and the output nodes t_j have degree one; in every canonical
// local optimum, c(t) = f(c(s)) for the compiled function f.
CompiledGraph compile_looker(const Circuit& c);

// Every weight multiplied by factor; local optima are unchanged.
Graph scale(const Graph& g, const Weight& factor);

struct BiasRecord {
  NodeId feeder;       // composite id of the looker node left adjacent to the target
  NodeId target;       // host node (composite id) receiving the bias
  Weight edge_weight;  // weight of that unique biaser edge
};

struct Composite {
  Graph graph;
  Weight host_scale;                    // host weights were multiplied by this
  std::vector<NodeId> looker_node_map;  // looker node id -> composite id
  std::vector<BiasRecord> wiring;
  NodeId looker_anchor = 0;  // composite id of the looker's phase anchor
};

// Couples a looker to a host graph. Each looker input s_i is identified with
// look_at[i]; each output t_j is identified with bias_targets[j], so the
// output gate's unique edge becomes the biaser edge at the target: at looker-
// good states its far end carries the complement of f_j, rewarding the target
// for taking f_j. The host is scaled up until the whole looker weighs less
// than the scaled budget, hence every biaser edge weight is <= budget and
// looker edges cannot flip host decisions away from the targets (the s_i
// edges sit in the cut at every composite local optimum).
//
// Lookers containing NOR gates compute f only in their canonical chain phase
// (pin or filter on looker_anchor = 1); pure-NOT lookers are phase-free.
Composite attach_biaser(const Graph& host, const CompiledGraph& looker,
                        const std::vector<NodeId>& look_at,
                        const std::vector<NodeId>& bias_targets, const Weight& budget);

}  // namespace cutlab
