#pragma once

#include <cstdint>

#include "cutlab/graph.hpp"

namespace cutlab {

// Random simple graph with all degrees <= degree_cap, aiming for
// floor(n * degree_cap / 2) edges (fewer if sampling stalls). Unit weights.
Graph random_degree_capped_graph(std::size_t n, std::size_t degree_cap, std::uint64_t seed);

// Random 3-regular simple graph via the pairing model with retries; n even,
// n >= 4. Weights uniform in [weight_lo, weight_hi].
Graph random_cubic_graph(std::size_t n, std::uint64_t seed, std::uint64_t weight_lo = 1,
                         std::uint64_t weight_hi = 1u << 20);

// Random partition, each color a fair coin.
Partition random_partition(std::size_t n, std::uint64_t seed);

}  // namespace cutlab
