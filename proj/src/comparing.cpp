#include "cutlab/comparing.hpp"

#include <algorithm>
#include <stdexcept>

#include "cutlab/flip.hpp"

namespace cutlab {

ComparingSpec comparing_spec(const Graph& g, NodeId v, const BiaserAttestation& attestation) {
  if (v >= g.node_count()) throw std::out_of_range("comparing node out of range");
  const auto& inc = g.incident(v);
  if (inc.size() < 3 || inc.size() % 2 == 0)
    throw std::invalid_argument("comparing node needs 2m+1 incident edges");

  ComparingSpec spec;
  spec.center = v;
  spec.attested = attestation;
  spec.bias_node = attestation.biaser_node;

  std::vector<std::pair<Weight, NodeId>> rest;
  bool found_biaser = false;
  for (const auto& e : inc) {
    if (e.neighbor == attestation.biaser_node) {
      spec.bias_weight = g.weight(e.edge);
      found_biaser = true;
    } else {
      rest.emplace_back(g.weight(e.edge), e.neighbor);
    }
  }
  if (!found_biaser) throw std::invalid_argument("attested biaser node is not adjacent");

  std::sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;  // stable tie-break by node id; unobservable
  });
  for (std::size_t i = 0; i + 1 < rest.size(); i += 2) {
    if (rest[i].first != rest[i + 1].first)
      throw std::invalid_argument("incident weights do not form equal pairs");
    spec.pairs.push_back(ComparingPair{rest[i].second, rest[i + 1].second, rest[i].first});
  }
  for (std::size_t i = 0; i + 1 < spec.pairs.size(); ++i) {
    if (spec.pairs[i].weight < 2 * spec.pairs[i + 1].weight)
      throw std::invalid_argument("pair weights must at least halve row by row");
  }
  if (spec.pairs.back().weight < 2 * spec.bias_weight)
    throw std::invalid_argument("lightest pair must weigh at least twice the biaser edge");
  return spec;
}

namespace {

bool color_of(const NeighborColors& colors, NodeId v) {
  const auto it = colors.find(v);
  if (it == colors.end()) throw std::invalid_argument("missing neighbor color");
  return it->second;
}

}  // namespace

bool semantics(const ComparingSpec& spec, const NeighborColors& colors) {
  // a and b agree on every split row; the heaviest equal row decides.
  for (const auto& pair : spec.pairs) {
    const bool c1 = color_of(colors, pair.first_node);
    const bool c2 = color_of(colors, pair.second_node);
    if (c1 == c2) return !c1;  // bit of a = c1 > bit of b = !c2  <=>  c1 = 1 -> white
  }
  return !color_of(colors, spec.bias_node);  // tie: the bias color
}

std::optional<std::size_t> decisive_pair(const ComparingSpec& spec, const NeighborColors& colors) {
  for (std::size_t i = 0; i < spec.pairs.size(); ++i)
    if (color_of(colors, spec.pairs[i].first_node) == color_of(colors, spec.pairs[i].second_node))
      return i + 1;
  return std::nullopt;
}

std::vector<NodeId> DegradedGadget::internals() const {
  std::vector<NodeId> out;
  out.insert(out.end(), entry1.begin(), entry1.end());
  out.insert(out.end(), entry2.begin(), entry2.end());
  out.insert(out.end(), relay1.begin(), relay1.end());
  out.insert(out.end(), relay2.begin(), relay2.end());
  return out;
}

namespace {

// Shared skeleton builder. The bias realization differs between the compiled
// and the verification variant, so it is injected afterwards.
//
// Weight scheme (host pre-scaled so every a_i is even):
//   row backbone  E1_i - R1_i and E2_i - R2_i  : a_i
//   row crossing  R{1,2}_i - E{1,2}_{i+1}      : a_i / 2   (all four)
//   closing edge  R1_m - E2_m                  : a_m
// Every propagation step of the gadget is then an exact tie broken by the
// sub-d bias edge, and the halving condition a_i >= 2 a_{i+1} yields the
// remaining strict inequalities.
struct SkeletonResult {
  Graph graph;
  std::vector<NodeId> host_map;
  std::vector<NodeId> entry1, entry2, relay1, relay2;
  std::vector<DegradedGadget::Rewired> rewired;
  Weight scale;
};

SkeletonResult build_skeleton(const Graph& g, const ComparingSpec& spec, const Weight& scale,
                              std::size_t extra_nodes) {
  const std::size_t m = spec.arity();
  const NodeId v = spec.center;
  const std::size_t H = g.node_count();

  SkeletonResult r;
  r.scale = scale;
  r.host_map.resize(H);
  for (NodeId w = 0; w < H; ++w) r.host_map[w] = w < v ? w : w - 1;
  r.host_map[v] = 0;  // never used

  const std::size_t base = H - 1;
  const std::size_t internal = 4 * m - 1;
  Graph out(base + internal + extra_nodes);
  auto id = [&](std::size_t offset) { return static_cast<NodeId>(base + offset); };
  for (std::size_t i = 0; i < m; ++i) {
    r.entry1.push_back(id(i));
    r.entry2.push_back(id(m + i));
    r.relay1.push_back(id(2 * m + i));
    if (i + 1 < m) r.relay2.push_back(id(3 * m + i));
  }

  for (const auto& e : g.edges()) {
    if (e.u == v || e.v == v) continue;
    out.add_edge(r.host_map[e.u], r.host_map[e.v], e.w * scale);
  }

  for (std::size_t i = 0; i < m; ++i) {
    const Weight a = spec.pairs[i].weight * scale;
    const Weight half = a / 2;
    out.add_edge(r.host_map[spec.pairs[i].first_node], r.entry1[i], a);
    out.add_edge(r.host_map[spec.pairs[i].second_node], r.entry2[i], a);
    r.rewired.push_back({r.host_map[spec.pairs[i].first_node], r.entry1[i], a});
    r.rewired.push_back({r.host_map[spec.pairs[i].second_node], r.entry2[i], a});
    out.add_edge(r.entry1[i], r.relay1[i], a);
    if (i + 1 < m) {
      out.add_edge(r.entry2[i], r.relay2[i], a);
      out.add_edge(r.relay1[i], r.entry1[i + 1], half);
      out.add_edge(r.relay1[i], r.entry2[i + 1], half);
      out.add_edge(r.relay2[i], r.entry1[i + 1], half);
      out.add_edge(r.relay2[i], r.entry2[i + 1], half);
    }
  }
  out.add_edge(r.relay1[m - 1], r.entry2[m - 1], spec.pairs[m - 1].weight * scale);

  r.graph = std::move(out);
  return r;
}

Weight choose_scale(const ComparingSpec& spec, const Weight& biaser_max_weight) {
  // Power of two: even row weights, and every bias-subgraph edge strictly
  // below the scaled bias weight.
  Weight scale = 2;
  while (scale * spec.bias_weight <= biaser_max_weight) scale <<= 1;
  return scale;
}

}  // namespace

DegradedGadget degrade(const Graph& g, const ComparingSpec& spec) {
  const std::size_t m = spec.arity();

  // Bias subgraph: looks at u, biases entries to the opposite of c(u) and
  // relays to c(u). With output-node identification the bias color is the
  // compiled function itself: negation for entries, identity for relays.
  std::vector<bool> copy_input;
  for (std::size_t i = 0; i < 2 * m; ++i) copy_input.push_back(false);      // entries
  for (std::size_t i = 0; i + 1 < 2 * m; ++i) copy_input.push_back(true);   // relays
  const Circuit biaser_circuit = unary_fanout_circuit(copy_input);
  const CompiledGraph biaser = compile_looker(biaser_circuit);

  Weight biaser_max{0};
  for (const auto& e : biaser.graph.edges()) biaser_max = std::max(biaser_max, e.w);
  const Weight scale = choose_scale(spec, biaser_max);

  const std::size_t biaser_extra = biaser.graph.node_count() - 1 - biaser.t_nodes.size();
  SkeletonResult sk = build_skeleton(g, spec, scale, biaser_extra);

  DegradedGadget dg;
  dg.removed_center = spec.center;
  dg.host_scale = scale;
  dg.host_node_map = std::move(sk.host_map);
  dg.entry1 = std::move(sk.entry1);
  dg.entry2 = std::move(sk.entry2);
  dg.relay1 = std::move(sk.relay1);
  dg.relay2 = std::move(sk.relay2);
  dg.rewired = std::move(sk.rewired);

  // Identify the bias subgraph's input with u and its outputs with the
  // internal nodes, in the same order the circuit was synthesized.
  std::vector<NodeId> targets;
  targets.insert(targets.end(), dg.entry1.begin(), dg.entry1.end());
  targets.insert(targets.end(), dg.entry2.begin(), dg.entry2.end());
  targets.insert(targets.end(), dg.relay1.begin(), dg.relay1.end());
  targets.insert(targets.end(), dg.relay2.begin(), dg.relay2.end());

  std::vector<NodeId> map(biaser.graph.node_count(), 0);
  std::vector<bool> merged(biaser.graph.node_count(), false);
  map[biaser.s_nodes[0]] = dg.host_node_map[spec.bias_node];
  merged[biaser.s_nodes[0]] = true;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    map[biaser.t_nodes[j]] = targets[j];
    merged[biaser.t_nodes[j]] = true;
  }
  std::size_t next = g.node_count() - 1 + (4 * m - 1);
  for (std::size_t w = 0; w < map.size(); ++w)
    if (!merged[w]) map[w] = static_cast<NodeId>(next++);

  Graph out = std::move(sk.graph);
  for (const auto& e : biaser.graph.edges()) {
    if (merged[e.u] && merged[e.v])
      throw std::logic_error("bias subgraph too shallow");
    out.add_edge(map[e.u], map[e.v], e.w);
  }
  dg.biaser_node_map = std::move(map);
  dg.graph = std::move(out);
  return dg;
}

DegradedGadget degrade_with_pinned_bias(const Graph& g, const ComparingSpec& spec,
                                        bool bias_color) {
  const std::size_t m = spec.arity();
  Weight scale = 1;
  for (const auto& pair : spec.pairs)
    if (pair.weight % 2 != 0) scale = 2;
  if (spec.bias_weight * scale < 2) scale = 2;  // room for a unit bias edge

  SkeletonResult sk = build_skeleton(g, spec, scale, 4 * m - 1);

  DegradedGadget dg;
  dg.phantom_mode = true;
  dg.removed_center = spec.center;
  dg.host_scale = scale;
  dg.host_node_map = std::move(sk.host_map);
  dg.entry1 = std::move(sk.entry1);
  dg.entry2 = std::move(sk.entry2);
  dg.relay1 = std::move(sk.relay1);
  dg.relay2 = std::move(sk.relay2);
  dg.rewired = std::move(sk.rewired);

  Graph out = std::move(sk.graph);
  // One phantom source per internal node, pinned to the complement of the
  // node's bias color so the unit edge rewards the biased color.
  std::vector<NodeId> targets;
  targets.insert(targets.end(), dg.entry1.begin(), dg.entry1.end());
  targets.insert(targets.end(), dg.entry2.begin(), dg.entry2.end());
  targets.insert(targets.end(), dg.relay1.begin(), dg.relay1.end());
  targets.insert(targets.end(), dg.relay2.begin(), dg.relay2.end());
  const std::size_t base = g.node_count() - 1 + (4 * m - 1);
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const NodeId phantom = static_cast<NodeId>(base + j);
    const bool is_entry = j < 2 * m;
    const bool target_bias = is_entry ? bias_color : !bias_color;
    out.add_edge(phantom, targets[j], 1);
    dg.phantom_nodes.push_back(phantom);
    dg.phantom_colors.push_back(!target_bias);
  }
  dg.graph = std::move(out);
  return dg;
}

std::optional<bool> col(const DegradedGadget& dg, const Partition& p) {
  require_match(dg.graph, p);
  auto all = [&](const std::vector<NodeId>& nodes, bool c) {
    for (NodeId v : nodes)
      if (p.color(v) != c) return false;
    return true;
  };
  for (bool candidate : {false, true}) {
    if (all(dg.entry1, candidate) && all(dg.entry2, candidate) &&
        all(dg.relay1, !candidate) && all(dg.relay2, !candidate))
      return candidate;
  }
  return std::nullopt;
}

VerificationReport verify_theorem1(std::size_t m) {
  if (m < 1 || m > 3) throw std::invalid_argument("m must be in {1,2,3}");
  VerificationReport report;
  report.m = m;

  // Canonical star host: v = 0, pairs (2i-1, 2i), u = 2m+1.
  const Weight d = 2;
  Graph star(2 * m + 2);
  for (std::size_t i = 1; i <= m; ++i) {
    const Weight a = (Weight(1) << (m - i + 1)) * d;
    star.add_edge(0, static_cast<NodeId>(2 * i - 1), a);
    star.add_edge(0, static_cast<NodeId>(2 * i), a);
  }
  const NodeId u = static_cast<NodeId>(2 * m + 1);
  star.add_edge(0, u, d);
  const ComparingSpec spec = comparing_spec(star, 0, BiaserAttestation{u, "canonical star"});

  for (std::uint32_t mask = 0; mask < (1u << (2 * m)); ++mask) {
    ++report.neighbor_cases;
    NeighborColors colors;
    for (std::size_t i = 0; i < m; ++i) {
      colors[spec.pairs[i].first_node] = ((mask >> (2 * i)) & 1) != 0;
      colors[spec.pairs[i].second_node] = ((mask >> (2 * i + 1)) & 1) != 0;
    }
    // Precondition-consistent bias: on a tie both u colors qualify (the
    // expected color follows the bias); otherwise u must oppose the
    // comparison's outcome.
    std::vector<bool> u_colors;
    colors[u] = false;
    const bool s0 = semantics(spec, colors);
    colors[u] = true;
    const bool s1 = semantics(spec, colors);
    if (s0 == s1)
      u_colors.push_back(!s0);  // decisive
    else
      u_colors = {false, true};  // weakly indifferent

    for (bool cu : u_colors) {
      ++report.bias_cases;
      colors[u] = cu;
      const bool expected = semantics(spec, colors);
      const DegradedGadget dg = degrade_with_pinned_bias(star, spec, expected);

      std::vector<std::optional<bool>> pins(dg.graph.node_count());
      for (const auto& [node, c] : colors) pins[dg.host_node_map[node]] = c;
      for (std::size_t j = 0; j < dg.phantom_nodes.size(); ++j)
        pins[dg.phantom_nodes[j]] = dg.phantom_colors[j];

      const auto optima = pinned_local_optima(dg.graph, pins, 16);
      report.optima_checked += optima.size();

      Partition correct(dg.graph.node_count());
      for (std::size_t v = 0; v < dg.graph.node_count(); ++v)
        if (pins[v].has_value()) correct.set(static_cast<NodeId>(v), *pins[v]);
      for (NodeId e : dg.entry1) correct.set(e, expected);
      for (NodeId e : dg.entry2) correct.set(e, expected);
      for (NodeId r : dg.relay1) correct.set(r, !expected);
      for (NodeId r : dg.relay2) correct.set(r, !expected);

      const std::string tag = "pairs=" + std::to_string(mask) + " c(u)=" + std::to_string(cu);
      if (optima.size() != 1) {
        report.failures.push_back(tag + ": expected exactly one pinned optimum, got " +
                                  std::to_string(optima.size()));
        continue;
      }
      if (!(optima.front() == correct)) {
        report.failures.push_back(tag + ": optimum is not the all-correct pattern");
        continue;
      }
      const auto decoded = col(dg, optima.front());
      if (!decoded.has_value() || *decoded != expected)
        report.failures.push_back(tag + ": col() does not decode the expected color");
    }
  }
  report.pass = report.failures.empty();
  return report;
}

}  // namespace cutlab
