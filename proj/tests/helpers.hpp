#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "cutlab/circuit.hpp"
#include "cutlab/compile.hpp"
#include "cutlab/flip.hpp"
#include "cutlab/graph.hpp"
#include "cutlab/rng.hpp"

namespace cutlab::testing {

// Random small weighted graph (simple, connected not guaranteed).
inline Graph random_graph(Rng& rng, std::size_t n, double edge_prob, std::uint64_t max_w = 1000) {
  Graph g(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (uniform01(rng) < edge_prob) g.add_edge(u, v, Weight(1 + bounded(rng, max_w)));
  return g;
}

// Random Appendix-normal circuit by rejection: holders on top, outputs at
// the bottom, interior NOR/NOT wiring chosen against fanout capacities.
inline Circuit random_appendix_circuit(Rng& rng, std::uint32_t max_gates,
                                       std::uint32_t max_inputs = 3) {
  for (int attempt = 0; attempt < 20000; ++attempt) {
    const std::uint32_t N = 3 + static_cast<std::uint32_t>(bounded(rng, max_gates - 2));
    const std::uint32_t n =
        1 + static_cast<std::uint32_t>(bounded(rng, std::min(max_inputs, N - 2)));
    if (n + 1 >= N) continue;
    const std::uint32_t m = 1 + static_cast<std::uint32_t>(bounded(rng, N - n - 1));

    Circuit c;
    c.input_count = n;
    c.output_count = m;
    c.gates.resize(N);
    // capacities: holder 1, NOR 1, interior NOT 2; outputs take none
    std::vector<int> cap(N, 0);
    std::vector<bool> must_use(N, false);
    for (std::uint32_t i = 0; i < N; ++i) {
      if (i >= N - n) {
        c.gates[i] = Gate{GateKind::Not, GateRef::input(i - (N - n)), {}};
        cap[i] = 1;
        must_use[i] = true;
      }
    }
    for (std::uint32_t i = m; i < N - n; ++i) {
      const bool nor = bounded(rng, 2) == 0;
      c.gates[i].kind = nor ? GateKind::Nor : GateKind::Not;
      cap[i] = nor ? 1 : 2;
      must_use[i] = true;
    }
    for (std::uint32_t i = 0; i < m; ++i) c.gates[i].kind = GateKind::Not;

    bool ok = true;
    for (std::uint32_t ii = N - n; ii > 0 && ok; --ii) {
      const std::uint32_t i = ii - 1;
      const std::uint32_t lo = std::max(i + 1, m);
      auto pick = [&](std::optional<std::uint32_t> avoid) -> std::optional<std::uint32_t> {
        std::vector<std::uint32_t> unused, any;
        for (std::uint32_t j = lo; j < N; ++j) {
          if (cap[j] <= 0 || (avoid && *avoid == j)) continue;
          any.push_back(j);
          if (must_use[j]) unused.push_back(j);
        }
        // favor gates that still need a consumer
        const auto& pool = (!unused.empty() && bounded(rng, 4) != 0) ? unused : any;
        if (pool.empty()) return std::nullopt;
        return pool[bounded(rng, pool.size())];
      };
      if (c.gates[i].kind == GateKind::Nor) {
        const auto a = pick(std::nullopt);
        if (!a) { ok = false; break; }
        --cap[*a]; must_use[*a] = false;
        const auto b = pick(*a);
        if (!b) { ok = false; break; }
        --cap[*b]; must_use[*b] = false;
        c.gates[i].a = GateRef::gate(*a);
        c.gates[i].b = GateRef::gate(*b);
      } else {
        const auto a = pick(std::nullopt);
        if (!a) { ok = false; break; }
        --cap[*a]; must_use[*a] = false;
        c.gates[i].a = GateRef::gate(*a);
      }
    }
    if (!ok) continue;
    if (validate_normal_form(c, NormalForm::Appendix).empty()) return c;
  }
  throw std::runtime_error("failed to synthesize a normal-form circuit");
}

// Free-form circuit for the CIRCUITFLIP tests (topological, no normal form).
inline Circuit random_free_circuit(Rng& rng, std::uint32_t inputs, std::uint32_t gates,
                                   std::uint32_t outputs) {
  Circuit c;
  c.input_count = inputs;
  c.output_count = outputs;
  c.gates.resize(gates);
  for (std::uint32_t i = 0; i < gates; ++i) {
    auto ref = [&]() {
      // operands: later gates or inputs
      const std::uint32_t later = gates - i - 1;
      const std::uint64_t roll = bounded(rng, later + inputs);
      if (roll < later) return GateRef::gate(i + 1 + static_cast<std::uint32_t>(roll));
      return GateRef::input(static_cast<std::uint32_t>(roll - later));
    };
    if (bounded(rng, 2) == 0 && (gates - i - 1) + inputs >= 2) {
      c.gates[i].kind = GateKind::Nor;
      c.gates[i].a = ref();
      do {
        c.gates[i].b = ref();
      } while (c.gates[i].b == c.gates[i].a);
    } else {
      c.gates[i].kind = GateKind::Not;
      c.gates[i].a = ref();
    }
  }
  return c;
}

// Colors of the gate nodes of a compiled graph, re-anchored so that the
// phase node is black, as a 0/1 vector indexed by gate (0-based).
inline std::vector<std::uint8_t> gate_colors_anchored(const CompiledGraph& cg,
                                                      const Partition& p) {
  const bool flip = !p.color(cg.anchor);
  std::vector<std::uint8_t> out(cg.gate_count);
  for (std::uint32_t i = 1; i <= cg.gate_count; ++i)
    out[i - 1] = static_cast<std::uint8_t>(p.color(cg.gate_node(i)) != flip ? 1 : 0);
  return out;
}

inline std::vector<std::uint8_t> bits_of(std::uint32_t mask, std::size_t n) {
  std::vector<std::uint8_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>((mask >> i) & 1);
  return out;
}

}  // namespace cutlab::testing
