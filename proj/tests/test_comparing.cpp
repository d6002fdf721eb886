#include "doctest.h"

#include "cutlab/comparing.hpp"
#include "cutlab/flip.hpp"
#include "helpers.hpp"

using namespace cutlab;

namespace {

// star host: center 0, pair nodes 2i-1 and 2i, biaser-edge endpoint last
Graph star_host(const std::vector<Weight>& pair_weights, const Weight& d) {
  Graph g(2 * pair_weights.size() + 2);
  for (std::size_t i = 0; i < pair_weights.size(); ++i) {
    g.add_edge(0, static_cast<NodeId>(2 * i + 1), pair_weights[i]);
    g.add_edge(0, static_cast<NodeId>(2 * i + 2), pair_weights[i]);
  }
  g.add_edge(0, static_cast<NodeId>(2 * pair_weights.size() + 1), d);
  return g;
}

BiaserAttestation attest(const Graph& g) {
  return BiaserAttestation{static_cast<NodeId>(g.node_count() - 1), "test biaser"};
}

}  // namespace

TEST_CASE("comparing_spec grouping and validation") {
  const Graph ok = star_host({8, 4}, 2);
  const ComparingSpec spec = comparing_spec(ok, 0, attest(ok));
  CHECK(spec.arity() == 2);
  CHECK(spec.pairs[0].weight == 8);
  CHECK(spec.pairs[1].weight == 4);
  CHECK(spec.bias_weight == 2);

  // 8 >= 2*5 fails
  const Graph ratio = star_host({8, 5}, 2);
  CHECK_THROWS_WITH_AS(
      (void)comparing_spec(ratio, 0, attest(ratio)),
      "pair weights must at least halve row by row", std::invalid_argument);

  // biaser attested on one of the heavy edges: the rest cannot pair up
  Graph odd(4);
  odd.add_edge(0, 1, 8);
  odd.add_edge(0, 2, 8);
  odd.add_edge(0, 3, 4);
  CHECK_THROWS_AS((void)comparing_spec(odd, 0, BiaserAttestation{1, ""}), std::invalid_argument);
  // ...but attested on the light edge it is a valid m=1 pattern (8 >= 2*4)
  CHECK(comparing_spec(odd, 0, BiaserAttestation{3, ""}).arity() == 1);

  // a_m >= 2d violated
  const Graph heavy_bias = star_host({8, 4}, 3);
  CHECK_THROWS_AS((void)comparing_spec(heavy_bias, 0, attest(heavy_bias)), std::invalid_argument);

  // even incident degree: no possible biaser edge
  Graph even(3);
  even.add_edge(0, 1, 8);
  even.add_edge(0, 2, 8);
  CHECK_THROWS_AS((void)comparing_spec(even, 0, BiaserAttestation{1, ""}), std::invalid_argument);

  CHECK_THROWS_AS((void)comparing_spec(ok, 0, BiaserAttestation{0xdead, ""}),
                  std::invalid_argument);  // not adjacent
}

TEST_CASE("semantics compares the pair numbers") {
  const Graph g = star_host({8, 4}, 2);
  const ComparingSpec spec = comparing_spec(g, 0, attest(g));
  auto colors = [&](bool u11, bool u12, bool u21, bool u22, bool u) {
    NeighborColors c;
    c[spec.pairs[0].first_node] = u11;
    c[spec.pairs[0].second_node] = u12;
    c[spec.pairs[1].first_node] = u21;
    c[spec.pairs[1].second_node] = u22;
    c[spec.bias_node] = u;
    return c;
  };
  // a = 10b = 2, b = complement(00) = 11b = 3 -> a < b -> black
  CHECK(semantics(spec, colors(1, 0, 0, 0, false)) == true);
  // a = 2, b = complement(01) = 10b = 2 -> tie -> bias color = !c(u)
  CHECK(semantics(spec, colors(1, 0, 0, 1, false)) == true);
  CHECK(semantics(spec, colors(1, 0, 0, 1, true)) == false);
  // every fully split coloring is a tie
  for (std::uint32_t mask = 0; mask < 4; ++mask) {
    const bool b0 = mask & 1, b1 = mask & 2;
    CHECK(semantics(spec, colors(b0, !b0, b1, !b1, false)) == true);
  }
}

TEST_CASE("decisive_pair picks the heaviest equal pair") {
  const Graph g = star_host({8, 4, 2}, 1);
  const ComparingSpec spec = comparing_spec(g, 0, attest(g));
  auto colors = [&](std::vector<std::pair<bool, bool>> rows) {
    NeighborColors c;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      c[spec.pairs[i].first_node] = rows[i].first;
      c[spec.pairs[i].second_node] = rows[i].second;
    }
    c[spec.bias_node] = false;
    return c;
  };
  CHECK(decisive_pair(spec, colors({{1, 0}, {1, 1}, {0, 0}})) == 2);
  CHECK_FALSE(decisive_pair(spec, colors({{1, 0}, {0, 1}, {1, 0}})).has_value());
  CHECK(decisive_pair(spec, colors({{1, 1}, {0, 1}, {1, 0}})) == 1);
}

TEST_CASE("star oracle: the pinned center color equals semantics()") {
  for (std::size_t m = 1; m <= 3; ++m) {
    std::vector<Weight> ws;
    for (std::size_t i = 1; i <= m; ++i) ws.push_back(Weight(1) << (m - i + 2));
    const Graph g = star_host(ws, 2);
    const ComparingSpec spec = comparing_spec(g, 0, attest(g));
    for (std::uint32_t mask = 0; mask < (1u << (2 * m + 1)); ++mask) {
      NeighborColors colors;
      std::vector<std::pair<NodeId, bool>> pins;
      for (NodeId v = 1; v < g.node_count(); ++v) {
        const bool c = (mask >> (v - 1)) & 1;
        colors[v] = c;
        pins.emplace_back(v, c);
      }
      const auto optima = pinned_local_optima(g, pins);
      REQUIRE(optima.size() == 1);
      CHECK(optima.front().color(0) == semantics(spec, colors));
    }
  }
}

TEST_CASE("degrade shapes: node counts, degrees, external preservation") {
  Rng rng(1212);
  for (int it = 0; it < 12; ++it) {
    // random valid weight profile, odd weights and slack included
    const std::size_t m = 1 + bounded(rng, 4);
    Weight d = 1 + bounded(rng, 5);
    std::vector<Weight> ws(m);
    ws[m - 1] = 2 * d + bounded(rng, 9);
    for (std::size_t i = m - 1; i > 0; --i) ws[i - 1] = 2 * ws[i] + bounded(rng, 17);
    Graph g = star_host(ws, d);
    // extra host structure hanging off the externals
    const NodeId extra = static_cast<NodeId>(g.node_count() - 1);
    Graph host(g.node_count() + 1);
    for (const auto& e : g.edges()) host.add_edge(e.u, e.v, e.w);
    host.add_edge(1, static_cast<NodeId>(host.node_count() - 1), 3);

    const ComparingSpec spec = comparing_spec(host, 0, BiaserAttestation{extra, ""});
    const DegradedGadget dg = degrade(host, spec);

    CHECK(dg.internal_count() == 4 * m - 1);
    for (NodeId v : dg.internals()) CHECK(dg.graph.degree(v) <= 5);
    // externals keep their degree: the edge to v is replaced one for one
    for (NodeId old = 1; old < host.node_count(); ++old)
      CHECK(dg.graph.degree(dg.host_node_map[old]) == host.degree(old));
    // bias subgraph edges all lie strictly below the scaled bias weight
    const Weight scaled_d = spec.bias_weight * dg.host_scale;
    for (NodeId v : dg.internals()) {
      Weight lightest = scaled_d;
      for (const auto& inc : dg.graph.incident(v))
        lightest = std::min(lightest, dg.graph.weight(inc.edge));
      CHECK(lightest < scaled_d);  // the bias edge
    }
  }
}

TEST_CASE("col decodes only the two uniform patterns") {
  const Graph g = star_host({8, 4}, 2);
  const ComparingSpec spec = comparing_spec(g, 0, attest(g));
  const DegradedGadget dg = degrade_with_pinned_bias(g, spec, false);
  Partition p(dg.graph.node_count());
  for (NodeId e : dg.entry1) p.set(e, false);
  for (NodeId e : dg.entry2) p.set(e, false);
  for (NodeId r : dg.relay1) p.set(r, true);
  for (NodeId r : dg.relay2) p.set(r, true);
  CHECK(col(dg, p) == false);
  for (NodeId v : dg.internals()) p.flip(v);
  CHECK(col(dg, p) == true);
  p.flip(dg.entry1[0]);
  CHECK_FALSE(col(dg, p).has_value());
}

TEST_CASE("theorem-1 equivalence holds exhaustively for small arities") {
  for (std::size_t m : {1, 2}) {
    const auto report = verify_theorem1(m);
    CHECK(report.pass);
    CHECK(report.failures.empty());
    CHECK(report.neighbor_cases == (1u << (2 * m)));
  }
  CHECK_THROWS_AS(verify_theorem1(0), std::invalid_argument);
  CHECK_THROWS_AS(verify_theorem1(4), std::invalid_argument);
}

TEST_CASE("column-1 propagation: known upper rows force entry and relay") {
  // with u_i^1 opposing the bias for rows i <= q, entry1/relay1 are correct
  // there in every pinned optimum, whatever the rest of the boundary does
  Rng rng(909);
  const std::size_t m = 3;
  std::vector<Weight> ws{16, 8, 4};
  const Graph g = star_host(ws, 2);
  const ComparingSpec spec = comparing_spec(g, 0, attest(g));
  for (std::size_t q = 1; q <= m; ++q) {
    for (int rep = 0; rep < 8; ++rep) {
      const bool kappa = (rng() & 1) != 0;
      const DegradedGadget dg = degrade_with_pinned_bias(g, spec, kappa);
      std::vector<std::optional<bool>> pins(dg.graph.node_count());
      for (std::size_t i = 0; i < m; ++i) {
        const bool first = i < q ? !kappa : ((rng() & 1) != 0);
        pins[dg.host_node_map[spec.pairs[i].first_node]] = first;
        pins[dg.host_node_map[spec.pairs[i].second_node]] = (rng() & 1) != 0;
      }
      pins[dg.host_node_map[spec.bias_node]] = !kappa;
      for (std::size_t j = 0; j < dg.phantom_nodes.size(); ++j)
        pins[dg.phantom_nodes[j]] = dg.phantom_colors[j];
      for (const auto& p : pinned_local_optima(dg.graph, pins, 16)) {
        for (std::size_t i = 0; i < q; ++i) {
          CHECK(p.color(dg.entry1[i]) == kappa);
          CHECK(p.color(dg.relay1[i]) == !kappa);
        }
      }
    }
  }
}

TEST_CASE("all-correct internals leave external gains unchanged up to scale") {
  Rng rng(515);
  for (int it = 0; it < 10; ++it) {
    std::vector<Weight> ws{8, 4};
    Graph host = star_host(ws, 2);
    const ComparingSpec spec = comparing_spec(host, 0, attest(host));
    // any boundary coloring with the theorem's precondition: bias = expected
    const std::uint32_t mask = static_cast<std::uint32_t>(bounded(rng, 1u << 4));
    NeighborColors colors;
    Partition hp(host.node_count());
    for (NodeId v = 1; v <= 4; ++v) {
      const bool c = (mask >> (v - 1)) & 1;
      colors[v] = c;
      hp.set(v, c);
    }
    colors[spec.bias_node] = false;
    const bool e0 = semantics(spec, colors);
    colors[spec.bias_node] = !e0;  // precondition-consistent
    const bool expected = semantics(spec, colors);
    hp.set(spec.bias_node, !expected);
    hp.set(0, expected);

    const DegradedGadget dg = degrade_with_pinned_bias(host, spec, expected);
    Partition dp(dg.graph.node_count());
    for (NodeId v = 1; v < host.node_count(); ++v) dp.set(dg.host_node_map[v], hp.color(v));
    for (NodeId e : dg.entry1) dp.set(e, expected);
    for (NodeId e : dg.entry2) dp.set(e, expected);
    for (NodeId r : dg.relay1) dp.set(r, !expected);
    for (NodeId r : dg.relay2) dp.set(r, !expected);
    for (std::size_t j = 0; j < dg.phantom_nodes.size(); ++j)
      dp.set(dg.phantom_nodes[j], dg.phantom_colors[j]);

    for (std::size_t i = 0; i < spec.arity(); ++i) {
      for (NodeId u : {spec.pairs[i].first_node, spec.pairs[i].second_node}) {
        const Weight before = gain(host, hp, u);
        const Weight after = gain(dg.graph, dp, dg.host_node_map[u]);
        CHECK(after == before * dg.host_scale);
      }
    }
  }
}

TEST_CASE("degrading with the compiled bias subgraph matches semantics end to end") {
  // m = 1 star; the composite (24 nodes) is small enough to enumerate
  const Graph g = star_host({8}, 2);
  const ComparingSpec spec = comparing_spec(g, 0, attest(g));
  const DegradedGadget dg = degrade(g, spec);
  REQUIRE(dg.graph.node_count() <= 24);
  CHECK(dg.internal_count() == 3);  // one row: two entries, one relay

  for (std::uint32_t mask = 0; mask < 4; ++mask) {
    NeighborColors colors;
    colors[spec.pairs[0].first_node] = (mask & 1) != 0;
    colors[spec.pairs[0].second_node] = (mask & 2) != 0;
    colors[spec.bias_node] = false;
    const bool s0 = semantics(spec, colors);
    colors[spec.bias_node] = true;
    const bool s1 = semantics(spec, colors);
    std::vector<bool> u_choices;
    if (s0 == s1)
      u_choices.push_back(!s0);  // decisive: precondition fixes c(u)
    else
      u_choices = {false, true};
    for (bool cu : u_choices) {
      colors[spec.bias_node] = cu;
      const bool expected = semantics(spec, colors);
      std::vector<std::pair<NodeId, bool>> pins;
      for (const auto& [node, c] : colors) pins.emplace_back(dg.host_node_map[node], c);
      const auto optima = pinned_local_optima(dg.graph, pins, 24);
      CHECK(!optima.empty());
      for (const auto& p : optima) {
        const auto decoded = col(dg, p);
        REQUIRE(decoded.has_value());
        CHECK(*decoded == expected);
      }
    }
  }
}
