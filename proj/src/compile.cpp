#include "cutlab/compile.hpp"

#include <stdexcept>

namespace cutlab {

namespace {

void require_appendix_normal(const Circuit& c) {
  const auto violations = validate_normal_form(c, NormalForm::Appendix);
  if (!violations.empty())
    throw std::invalid_argument("circuit is not in normal form: " + violations.front().what);
}

// Shared construction. In circuit-value mode each holder gets its input
// wiring edge; in looker mode holders stay at degree one.
CompiledGraph compile_impl(const Circuit& c, const std::vector<std::uint8_t>* assignment) {
  require_appendix_normal(c);
  const std::uint32_t N = c.gate_count();
  const std::uint32_t n = c.input_count;
  const std::uint32_t m = c.output_count;

  CompiledGraph out;
  out.gate_count = N;
  out.input_count = n;
  out.output_count = m;
  out.looker_mode = assignment == nullptr;
  out.graph = Graph(3 * std::size_t(N) + 1);
  out.s_nodes.assign(n, 0);
  out.t_nodes.resize(m);
  out.anchor = out.chain_node(3 * N);

  Graph& g = out.graph;
  auto pow2 = [](std::uint32_t e) { return Weight(1) << e; };

  for (std::uint32_t i1 = 1; i1 <= N; ++i1) {
    const Gate& gate = c.gates[i1 - 1];
    const NodeId node = out.gate_node(i1);
    if (gate.kind == GateKind::Nor) {
      g.add_edge(node, out.gate_node(gate.a.index + 1), pow2(i1));
      g.add_edge(node, out.gate_node(gate.b.index + 1), pow2(i1));
      g.add_edge(node, out.chain_node(N + 2 * i1), pow2(i1));
    } else if (!gate.a.is_input()) {
      g.add_edge(node, out.gate_node(gate.a.index + 1), pow2(i1));
    } else {
      out.s_nodes[gate.a.index] = node;
      if (assignment) {
        // A holder is type I, so its heaviest edge ends up in the cut. In the
        // canonical phase even chain offsets are black and odd ones white;
        // wiring to the opposite color pins the holder to its input value.
        const bool value = (*assignment)[gate.a.index] != 0;
        const NodeId chain = value ? out.chain_node(N + 2 * i1 - 1)   // white side
                                   : out.chain_node(N + 2 * i1);      // black side
        g.add_edge(node, chain, pow2(i1));
      }
    }
  }
  for (std::uint32_t j = N + 1; j <= 3 * N; ++j)
    g.add_edge(out.chain_node(j), out.chain_node(j + 1), pow2(j));

  for (std::uint32_t j = 1; j <= m; ++j) out.t_nodes[j - 1] = out.gate_node(j);
  return out;
}

}  // namespace

CompiledGraph compile_cvp(const Circuit& c, const std::vector<std::uint8_t>& assignment) {
  if (assignment.size() != c.input_count) throw std::invalid_argument("assignment length mismatch");
  return compile_impl(c, &assignment);
}

CompiledGraph compile_looker(const Circuit& c) { return compile_impl(c, nullptr); }

Graph scale(const Graph& g, const Weight& factor) {
  if (factor < 1) throw std::invalid_argument("scale factor must be >= 1");
  std::vector<Weight> ws;
  ws.reserve(g.edge_count());
  for (const auto& e : g.edges()) ws.push_back(e.w * factor);
  return g.with_weights(std::move(ws));
}

Composite attach_biaser(const Graph& host, const CompiledGraph& looker,
                        const std::vector<NodeId>& look_at,
                        const std::vector<NodeId>& bias_targets, const Weight& budget) {
  if (budget < 1) throw std::invalid_argument("budget must be positive");
  if (look_at.size() != looker.s_nodes.size())
    throw std::invalid_argument("look_at size must match the looker inputs");
  if (bias_targets.size() != looker.t_nodes.size())
    throw std::invalid_argument("bias size must match the looker outputs");
  for (NodeId v : look_at)
    if (v >= host.node_count()) throw std::out_of_range("look_at node out of range");
  {
    std::vector<NodeId> seen = bias_targets;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw std::invalid_argument("a host node may receive at most one biaser edge");
    for (NodeId v : bias_targets)
      if (v >= host.node_count()) throw std::out_of_range("bias target out of range");
  }

  // Scale the host until the whole looker sits below the scaled budget.
  const Weight looker_total = looker.graph.total_weight();
  Weight host_scale = 1;
  while (host_scale * budget <= looker_total) host_scale <<= 1;

  Composite out;
  out.host_scale = host_scale;

  const std::size_t H = host.node_count();
  std::vector<NodeId> map(looker.graph.node_count(), 0);
  std::vector<bool> merged(looker.graph.node_count(), false);
  for (std::size_t i = 0; i < look_at.size(); ++i) {
    map[looker.s_nodes[i]] = look_at[i];
    merged[looker.s_nodes[i]] = true;
  }
  for (std::size_t j = 0; j < bias_targets.size(); ++j) {
    if (merged[looker.t_nodes[j]])
      throw std::invalid_argument("looker input and output roles overlap");
    map[looker.t_nodes[j]] = bias_targets[j];
    merged[looker.t_nodes[j]] = true;
  }
  std::size_t next = H;
  for (std::size_t v = 0; v < map.size(); ++v)
    if (!merged[v]) map[v] = static_cast<NodeId>(next++);

  Graph g(next);
  for (const auto& e : host.edges()) g.add_edge(e.u, e.v, e.w * host_scale);
  for (const auto& e : looker.graph.edges()) {
    if (merged[e.u] && merged[e.v])
      throw std::invalid_argument("looker wiring would identify two host nodes; use a deeper circuit");
    g.add_edge(map[e.u], map[e.v], e.w);
  }

  for (std::size_t j = 0; j < bias_targets.size(); ++j) {
    const NodeId t = looker.t_nodes[j];
    const auto& inc = looker.graph.incident(t);
    // output gates have exactly one looker edge; that edge is the biaser edge
    out.wiring.push_back(BiasRecord{map[inc.front().neighbor], bias_targets[j],
                                    looker.graph.weight(inc.front().edge)});
  }
  out.looker_node_map = std::move(map);
  out.looker_anchor = out.looker_node_map[looker.anchor];
  out.graph = std::move(g);
  return out;
}

}  // namespace cutlab
