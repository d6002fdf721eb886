#include "cutlab/flip.hpp"

#include <algorithm>
#include <limits>

namespace cutlab {

std::string to_string(PivotRule rule) {
  switch (rule) {
    case PivotRule::FirstImprovement: return "first";
    case PivotRule::BestImprovement: return "best";
    case PivotRule::RandomImprovement: return "random";
  }
  return "?";
}

std::optional<PivotRule> parse_pivot_rule(const std::string& name) {
  if (name == "first") return PivotRule::FirstImprovement;
  if (name == "best") return PivotRule::BestImprovement;
  if (name == "random") return PivotRule::RandomImprovement;
  return std::nullopt;
}

std::uint64_t default_step_limit(const Graph& g) {
  const std::uint64_t n = g.node_count();
  std::uint64_t log_w = 1;
  const Weight total = g.total_weight();
  if (total > 1) {
    const unsigned bits = boost::multiprecision::msb(total);  // floor(log2)
    log_w = bits;
    if ((Weight(1) << bits) != total) ++log_w;  // ceil
    if (log_w == 0) log_w = 1;
  }
  return 2 * n * n * log_w;
}

namespace {

// Enumeration core shared by the two oracles. Per-node incidence is flattened
// once; weights fold to int64 when the total fits, else the loop runs on
// cpp_int (same code path, heavier arithmetic).
template <class WI>
struct Arcs {
  std::vector<std::uint32_t> neighbor;
  std::vector<WI> weight;
};

template <class WI>
bool node_happy(const Arcs<WI>& arcs, const std::vector<std::uint8_t>& colors, std::uint32_t v) {
  // gain = sum(same-colored) - sum(cut); happy iff gain <= 0
  WI acc{};
  const std::uint8_t cv = colors[v];
  for (std::size_t k = 0; k < arcs.neighbor.size(); ++k) {
    if (colors[arcs.neighbor[k]] == cv)
      acc += arcs.weight[k];
    else
      acc -= arcs.weight[k];
  }
  return acc <= 0;
}

template <class WI>
std::vector<Arcs<WI>> build_arcs(const Graph& g) {
  std::vector<Arcs<WI>> arcs(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (const auto& inc : g.incident(v)) {
      arcs[v].neighbor.push_back(inc.neighbor);
      if constexpr (std::is_same_v<WI, std::int64_t>)
        arcs[v].weight.push_back(g.weight(inc.edge).convert_to<std::int64_t>());
      else
        arcs[v].weight.push_back(g.weight(inc.edge));
    }
  }
  return arcs;
}

template <class WI>
std::vector<Partition> enumerate_core(const Graph& g,
                                      const std::vector<std::optional<bool>>& pins,
                                      bool exempt_pinned, bool fix_node0) {
  const auto arcs = build_arcs<WI>(g);
  const std::size_t n = g.node_count();
  std::vector<std::uint8_t> colors(n, 0);
  std::vector<std::uint32_t> free_nodes;
  std::vector<std::uint32_t> checked;  // nodes whose happiness is required
  for (std::uint32_t v = 0; v < n; ++v) {
    if (pins[v].has_value()) {
      colors[v] = *pins[v] ? 1 : 0;
      if (!exempt_pinned) checked.push_back(v);
    } else {
      if (!(fix_node0 && v == 0)) free_nodes.push_back(v);
      checked.push_back(v);
    }
  }

  std::vector<Partition> out;
  const std::uint64_t total = std::uint64_t(1) << free_nodes.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t i = 0; i < free_nodes.size(); ++i)
      colors[free_nodes[i]] = static_cast<std::uint8_t>((mask >> i) & 1);
    bool ok = true;
    for (std::uint32_t v : checked) {
      if (!node_happy(arcs[v], colors, v)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Partition p(n);
    for (std::uint32_t v = 0; v < n; ++v) p.set(v, colors[v] != 0);
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Partition> enumerate_dispatch(const Graph& g,
                                          const std::vector<std::optional<bool>>& pins,
                                          bool exempt_pinned, bool fix_node0) {
  // int64 is safe when the total weight leaves headroom for signed sums.
  const Weight total = g.total_weight();
  if (total < Weight(std::numeric_limits<std::int64_t>::max() / 4))
    return enumerate_core<std::int64_t>(g, pins, exempt_pinned, fix_node0);
  return enumerate_core<Weight>(g, pins, exempt_pinned, fix_node0);
}

}  // namespace

std::vector<Partition> enumerate_local_optima(const Graph& g, std::size_t cap) {
  if (g.node_count() > cap)
    throw std::invalid_argument("graph too large for exhaustive enumeration (cap " +
                                std::to_string(cap) + ")");
  std::vector<std::optional<bool>> pins(g.node_count());
  return enumerate_dispatch(g, pins, /*exempt_pinned=*/false, /*fix_node0=*/true);
}

std::vector<Partition> pinned_local_optima(const Graph& g,
                                           const std::vector<std::optional<bool>>& pins,
                                           std::size_t cap) {
  if (pins.size() != g.node_count()) throw std::invalid_argument("pin vector length mismatch");
  std::size_t free_count = 0;
  for (const auto& pin : pins)
    if (!pin.has_value()) ++free_count;
  if (free_count > cap)
    throw std::invalid_argument("too many free nodes for pinned enumeration (cap " +
                                std::to_string(cap) + ")");
  return enumerate_dispatch(g, pins, /*exempt_pinned=*/true, /*fix_node0=*/false);
}

std::vector<Partition> pinned_local_optima(const Graph& g,
                                           const std::vector<std::pair<NodeId, bool>>& pins,
                                           std::size_t cap) {
  std::vector<std::optional<bool>> dense(g.node_count());
  for (const auto& [v, c] : pins) {
    if (v >= g.node_count()) throw std::out_of_range("pin id out of range");
    dense[v] = c;
  }
  return pinned_local_optima(g, dense, cap);
}

}  // namespace cutlab
