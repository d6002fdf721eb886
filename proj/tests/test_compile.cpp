#include "doctest.h"

#include "cutlab/compile.hpp"
#include "cutlab/flip.hpp"
#include "cutlab/io.hpp"
#include "helpers.hpp"

using namespace cutlab;

namespace {

// holder G_2 -> output NOT G_1
Circuit minimal_circuit() {
  Circuit c;
  c.input_count = 1;
  c.output_count = 1;
  c.gates = {Gate{GateKind::Not, GateRef::gate(1), {}},
             Gate{GateKind::Not, GateRef::input(0), {}}};
  return c;
}

// f(a, b) = !NOR(a, b) = a | b  (holders G_4, G_3; NOR G_2; output NOT G_1)
Circuit or_circuit() {
  Circuit c;
  c.input_count = 2;
  c.output_count = 1;
  c.gates = {Gate{GateKind::Not, GateRef::gate(1), {}},
             Gate{GateKind::Nor, GateRef::gate(2), GateRef::gate(3)},
             Gate{GateKind::Not, GateRef::input(1), {}},
             Gate{GateKind::Not, GateRef::input(0), {}}};
  return c;
}

// identity: holder G_3 -> NOT G_2 -> output NOT G_1
Circuit identity_1bit() {
  Circuit c;
  c.input_count = 1;
  c.output_count = 1;
  c.gates = {Gate{GateKind::Not, GateRef::gate(1), {}},
             Gate{GateKind::Not, GateRef::gate(2), {}},
             Gate{GateKind::Not, GateRef::input(0), {}}};
  return c;
}

void check_structure(const CompiledGraph& cg) {
  CHECK(cg.graph.node_count() == 3 * std::size_t(cg.gate_count) + 1);
  CHECK(cg.graph.max_degree() <= 4);
  for (NodeId v = 0; v < cg.graph.node_count(); ++v) {
    const auto cls = classify_node(cg.graph, v);
    CHECK((cls.type == NodeType::TypeI || cls.type == NodeType::TypeIII));
  }
  for (const auto& e : cg.graph.edges()) {
    const unsigned bit = boost::multiprecision::msb(e.w);
    CHECK((Weight(1) << bit) == e.w);  // power of two
  }
}

// colors of the holder nodes must equal the assignment, every gate node its value
void check_cvp_semantics(const Circuit& c, const std::vector<std::uint8_t>& x) {
  const CompiledGraph cg = compile_cvp(c, x);
  check_structure(cg);
  const auto optima = enumerate_local_optima(cg.graph);
  REQUIRE(optima.size() == 1);
  const auto colors = testing::gate_colors_anchored(cg, optima.front());
  const auto values = eval(c, x);
  for (std::uint32_t i = 0; i < cg.gate_count; ++i) CHECK(colors[i] == values[i]);
}

}  // namespace

TEST_CASE("minimal compilation matches the stated shape") {
  const Circuit c = minimal_circuit();
  const CompiledGraph cg = compile_cvp(c, {1});
  CHECK(cg.graph.node_count() == 7);
  // chain edges v3-v4, ..., v6-v7 with weights 2^3..2^6
  for (std::uint32_t j = 3; j <= 6; ++j) {
    bool found = false;
    for (const auto& e : cg.graph.edges()) {
      if ((e.u == cg.chain_node(j) && e.v == cg.chain_node(j + 1)) ||
          (e.v == cg.chain_node(j) && e.u == cg.chain_node(j + 1))) {
        CHECK(e.w == (Weight(1) << j));
        found = true;
      }
    }
    CHECK(found);
  }
  check_structure(cg);
}

TEST_CASE("circuit-value compilation reproduces the evaluation at its unique optimum") {
  check_cvp_semantics(minimal_circuit(), {0});
  check_cvp_semantics(minimal_circuit(), {1});
  for (std::uint32_t mask = 0; mask < 4; ++mask)
    check_cvp_semantics(or_circuit(), testing::bits_of(mask, 2));

  Rng rng(404);
  for (int it = 0; it < 8; ++it) {
    const Circuit c = testing::random_appendix_circuit(rng, 5);
    for (std::uint32_t mask = 0; mask < (1u << c.input_count); ++mask)
      check_cvp_semantics(c, testing::bits_of(mask, c.input_count));
  }
}

TEST_CASE("assignment length is checked") {
  CHECK_THROWS_AS(compile_cvp(minimal_circuit(), {0, 1}), std::invalid_argument);
}

TEST_CASE("the chain alternates in every canonical optimum") {
  Rng rng(2718);
  for (int it = 0; it < 5; ++it) {
    const Circuit c = testing::random_appendix_circuit(rng, 5);
    const auto x = testing::bits_of(static_cast<std::uint32_t>(rng()), c.input_count);
    const CompiledGraph cg = compile_cvp(c, x);
    const auto optima = enumerate_local_optima(cg.graph);
    REQUIRE(optima.size() == 1);
    const Partition& p = optima.front();
    const std::uint32_t N = cg.gate_count;
    for (std::uint32_t j = N + 1; j <= 3 * N; ++j)
      CHECK(p.color(cg.chain_node(j)) != p.color(cg.chain_node(j + 1)));
  }
}

TEST_CASE("looker endpoints have degree one") {
  const CompiledGraph cg = compile_looker(or_circuit());
  for (NodeId s : cg.s_nodes) CHECK(cg.graph.degree(s) == 1);
  for (NodeId t : cg.t_nodes) CHECK(cg.graph.degree(t) == 1);
  check_structure(cg);
}

TEST_CASE("lookers compute their function under pinned inputs") {
  for (const Circuit& c : {or_circuit(), identity_1bit()}) {
    const CompiledGraph cg = compile_looker(c);
    for (std::uint32_t mask = 0; mask < (1u << c.input_count); ++mask) {
      const auto x = testing::bits_of(mask, c.input_count);
      std::vector<std::pair<NodeId, bool>> pins;
      for (std::size_t i = 0; i < x.size(); ++i) pins.emplace_back(cg.s_nodes[i], x[i] != 0);
      pins.emplace_back(cg.anchor, true);  // select the canonical phase
      const auto optima = pinned_local_optima(cg.graph, pins);
      REQUIRE(optima.size() == 1);
      const auto f = output_bits(c, x);
      for (std::size_t j = 0; j < f.size(); ++j)
        CHECK(optima.front().color(cg.t_nodes[j]) == (f[j] != 0));
    }
  }
}

TEST_CASE("scale preserves structure and local optima") {
  Rng rng(3);
  const Graph g = testing::random_graph(rng, 8, 0.5, 40);
  CHECK(emit_graph(scale(g, 1)) == emit_graph(g));
  const Graph doubled = scale(g, 2);
  for (int it = 0; it < 10; ++it) {
    Partition p(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) p.set(v, (rng() & 1) != 0);
    CHECK(cut_weight(doubled, p) == 2 * cut_weight(g, p));
  }
  for (const Weight k : {Weight(2), Weight(7), Weight(1) << 40}) {
    const auto a = enumerate_local_optima(g);
    const auto b = enumerate_local_optima(scale(g, k));
    CHECK(a == b);
  }
  CHECK_THROWS_AS(scale(g, 0), std::invalid_argument);
}

TEST_CASE("attach_biaser: a free target takes the biased color in every optimum") {
  // pure-NOT looker (phase-free): target biased toward the looked-at color
  Graph host(2);  // node 0 looked at, node 1 the target; both otherwise free
  const CompiledGraph looker = compile_looker(identity_1bit());
  const Composite comp = attach_biaser(host, looker, {0}, {1}, 3);
  CHECK(comp.graph.total_weight() < comp.host_scale * 3 + looker.graph.total_weight() + 1);
  const auto optima = enumerate_local_optima(comp.graph, 24);
  CHECK(!optima.empty());
  for (const auto& p : optima) CHECK(p.color(1) == p.color(0));
}

TEST_CASE("attach_biaser: a heavy host edge overrides the bias") {
  Graph host(3);
  host.add_edge(1, 2, 10);  // heavier than the budget
  const CompiledGraph looker = compile_looker(identity_1bit());
  const Composite comp = attach_biaser(host, looker, {0}, {1}, 1);
  const auto optima = enumerate_local_optima(comp.graph, 24);
  CHECK(!optima.empty());
  for (const auto& p : optima) CHECK(p.color(1) != p.color(2));
}

TEST_CASE("attach_biaser scaling and wiring discipline") {
  Graph host(4);
  host.add_edge(2, 3, 5);
  const CompiledGraph looker = compile_looker(identity_1bit());
  const Weight budget = 2;
  const Composite comp = attach_biaser(host, looker, {0}, {1}, budget);
  CHECK(comp.host_scale * budget > looker.graph.total_weight());
  REQUIRE(comp.wiring.size() == 1);
  CHECK(comp.wiring[0].target == 1);
  CHECK(comp.wiring[0].edge_weight <= comp.host_scale * budget);
  // at most one biaser edge per target
  const CompiledGraph twin = compile_looker(unary_fanout_circuit({true, true}));
  CHECK_THROWS_AS(attach_biaser(host, twin, {0}, {2, 2}, 1), std::invalid_argument);

  // non-target host nodes keep host-side happiness in every composite optimum
  const auto optima = enumerate_local_optima(comp.graph, 24);
  const Graph scaled_host = scale(host, comp.host_scale);
  for (const auto& p : optima) {
    Partition hp(host.node_count());
    for (NodeId v = 0; v < host.node_count(); ++v) hp.set(v, p.color(v));
    for (NodeId v = 0; v < host.node_count(); ++v) {
      if (v == 1) continue;  // the bias target is allowed to move
      CHECK(gain(scaled_host, hp, v) <= 0);
    }
  }
}
