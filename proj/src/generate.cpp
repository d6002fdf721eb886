#include "cutlab/generate.hpp"

#include <stdexcept>

#include "cutlab/rng.hpp"

namespace cutlab {

Graph random_degree_capped_graph(std::size_t n, std::size_t degree_cap, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("need at least two nodes");
  Rng rng(seed);
  Graph g(n);
  const std::size_t target = n * degree_cap / 2;
  std::size_t attempts = 0;
  const std::size_t attempt_cap = 80 * target + 1000;
  while (g.edge_count() < target && attempts < attempt_cap) {
    ++attempts;
    const NodeId u = static_cast<NodeId>(bounded(rng, n));
    const NodeId v = static_cast<NodeId>(bounded(rng, n));
    if (u == v || g.degree(u) >= degree_cap || g.degree(v) >= degree_cap) continue;
    if (g.has_edge(u, v)) continue;
    g.add_edge(u, v, 1);
  }
  return g;
}

Graph random_cubic_graph(std::size_t n, std::uint64_t seed, std::uint64_t weight_lo,
                         std::uint64_t weight_hi) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("cubic graphs need even n >= 4");
  if (weight_lo < 1 || weight_hi < weight_lo) throw std::invalid_argument("bad weight range");
  Rng rng(seed);

  for (int attempt = 0; attempt < 1000; ++attempt) {
    // pairing model: three stubs per node, shuffled, paired off
    std::vector<NodeId> stubs;
    stubs.reserve(3 * n);
    for (std::size_t v = 0; v < n; ++v)
      for (int k = 0; k < 3; ++k) stubs.push_back(static_cast<NodeId>(v));
    for (std::size_t i = stubs.size(); i > 1; --i)
      std::swap(stubs[i - 1], stubs[bounded(rng, i)]);

    Graph g(n);
    bool ok = true;
    for (std::size_t i = 0; i < stubs.size() && ok; i += 2) {
      const NodeId u = stubs[i], v = stubs[i + 1];
      if (u == v || g.has_edge(u, v)) {
        ok = false;
        break;
      }
      const std::uint64_t w = weight_lo + bounded(rng, weight_hi - weight_lo + 1);
      g.add_edge(u, v, Weight(w));
    }
    if (ok) return g;
  }
  throw std::runtime_error("pairing model failed to produce a simple cubic graph");
}

Partition random_partition(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Partition p(n);
  for (std::size_t v = 0; v < n; ++v) p.set(static_cast<NodeId>(v), (rng() & 1) != 0);
  return p;
}

}  // namespace cutlab
