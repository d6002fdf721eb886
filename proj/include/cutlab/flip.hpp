#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cutlab/graph.hpp"
#include "cutlab/rng.hpp"

namespace cutlab {

// Every rule selects only nodes with gain > 0. Nodes with gain 0 are happy,
// so improving sequences are strictly monotone and terminate.
enum class PivotRule { FirstImprovement, BestImprovement, RandomImprovement };

std::string to_string(PivotRule rule);
std::optional<PivotRule> parse_pivot_rule(const std::string& name);

template <class W>
struct FlipStep {
  NodeId node;
  W gain;  // at the time of the flip; always > 0
};

template <class W>
struct FlipTrace {
  Partition initial;
  Partition final_partition;
  std::vector<FlipStep<W>> steps;
  bool reached_limit = false;
  W final_cut{};
  std::size_t step_count() const { return steps.size(); }
};

// 2 * n^2 * max(1, ceil(log2(total weight))): generous for desk scale and
// never reached when the limit exceeds the total weight (integer gains >= 1).
std::uint64_t default_step_limit(const Graph& g);

namespace detail {

template <class W>
std::vector<W> all_gains(const BasicGraph<W>& g, const Partition& p) {
  std::vector<W> gains(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) gains[v] = gain(g, p, v);
  return gains;
}

}  // namespace detail

// FLIP local search. Deterministic given (g, p0, rule, step_limit, seed);
// the seed only matters for RandomImprovement.
template <class W>
FlipTrace<W> run_flip(const BasicGraph<W>& g, const Partition& p0, PivotRule rule,
                      std::uint64_t step_limit, std::uint64_t seed) {
  require_match(g, p0);
  FlipTrace<W> trace;
  trace.initial = p0;
  Partition p = p0;
  std::vector<W> gains = detail::all_gains(g, p);
  Rng rng(seed);
  std::vector<NodeId> unhappy;
  const W zero{};

  while (trace.steps.size() < step_limit) {
    NodeId pick = 0;
    bool found = false;
    switch (rule) {
      case PivotRule::FirstImprovement:
        for (NodeId v = 0; v < g.node_count(); ++v)
          if (gains[v] > zero) {
            pick = v;
            found = true;
            break;
          }
        break;
      case PivotRule::BestImprovement: {
        for (NodeId v = 0; v < g.node_count(); ++v)
          if (gains[v] > zero && (!found || gains[v] > gains[pick])) {
            pick = v;
            found = true;
          }
        break;
      }
      case PivotRule::RandomImprovement: {
        unhappy.clear();
        for (NodeId v = 0; v < g.node_count(); ++v)
          if (gains[v] > zero) unhappy.push_back(v);
        if (!unhappy.empty()) {
          pick = unhappy[static_cast<std::size_t>(bounded(rng, unhappy.size()))];
          found = true;
        }
        break;
      }
    }
    if (!found) break;

    trace.steps.push_back(FlipStep<W>{pick, gains[pick]});
    const bool old_color = p.color(pick);
    p.flip(pick);
    gains[pick] = -gains[pick];
    for (const auto& inc : g.incident(pick)) {
      const W& w = g.weight(inc.edge);
      if (p.color(inc.neighbor) == old_color)
        gains[inc.neighbor] -= w + w;  // edge joined the cut
      else
        gains[inc.neighbor] += w + w;  // edge left the cut
    }
  }

  for (NodeId v = 0; v < g.node_count() && !trace.reached_limit; ++v)
    if (gains[v] > zero) trace.reached_limit = true;
  trace.final_partition = p;
  trace.final_cut = cut_weight(g, p);
  return trace;
}

// Exhaustive oracle: all local optima, canonicalized with color(node 0) = 0,
// in lexicographic order of the color string. Throws if node_count > cap.
std::vector<Partition> enumerate_local_optima(const Graph& g, std::size_t cap = 24);

// Colorings extending `pins` in which every non-pinned node has gain <= 0
// (pinned nodes are exempt from happiness). Throws if the number of free
// nodes exceeds cap or a pin id is out of range.
std::vector<Partition> pinned_local_optima(const Graph& g,
                                           const std::vector<std::optional<bool>>& pins,
                                           std::size_t cap = 24);

// Convenience overload: sparse pin list (node, color).
std::vector<Partition> pinned_local_optima(const Graph& g,
                                           const std::vector<std::pair<NodeId, bool>>& pins,
                                           std::size_t cap = 24);

}  // namespace cutlab
