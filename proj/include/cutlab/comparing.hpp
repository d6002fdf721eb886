#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cutlab/compile.hpp"
#include "cutlab/graph.hpp"

namespace cutlab {

// A comparing node v has 2m+1 neighbors: m pairs (u_i^1, u_i^2) joined to v
// by equal weights a_1 >= ... >= a_m with a_i >= 2 a_{i+1}, plus one light
// biaser edge to u with weight d where a_m >= 2d. At local optima its color
// compares the binary number a (bits c(u_i^1), row 1 most significant)
// against b (whose complement is read off the u_i^2 side).
struct ComparingPair {
  NodeId first_node;   // u_i^1
  NodeId second_node;  // u_i^2
  Weight weight;       // a_i
};

// Condition (ii) — that u belongs to a subgraph which looks at other nodes
// and biases v — is a property of local optima, not of the edge list, so the
// caller attests it instead of the library re-deriving it.
struct BiaserAttestation {
  NodeId biaser_node;  // u
  std::string biaser_description;
};

struct ComparingSpec {
  NodeId center = 0;  // v
  std::vector<ComparingPair> pairs;
  NodeId bias_node = 0;  // u
  Weight bias_weight;    // d
  BiaserAttestation attested;

  std::size_t arity() const { return pairs.size(); }  // m
};

// Groups v's incident edges into the comparing pattern; throws
// std::invalid_argument naming the failed condition (wrong arity, unpaired
// weights, ratio violation, biaser too heavy, biaser not adjacent).
ComparingSpec comparing_spec(const Graph& g, NodeId v, const BiaserAttestation& attestation);

using NeighborColors = std::map<NodeId, bool>;

// The color v must take in a local optimum: white (0) if a > b, black (1)
// if a < b, the bias color (opposite of c(u)) on a tie.
bool semantics(const ComparingSpec& spec, const NeighborColors& colors);

// Smallest 1-based row whose pair is equally colored (the heaviest such
// pair); nullopt iff v is weakly indifferent.
std::optional<std::size_t> decisive_pair(const ComparingSpec& spec, const NeighborColors& colors);

// Degree-<=5 replacement of a comparing node. Rows i = 1..m hold
//   entry nodes  E[col][i]  (the paper's v_{i,1}^col, externally attached)
//   relay nodes  R[col][i]  (v_{i,2}^col; column 2 stops at row m-1)
// "Correct" colors: entries take the bias color, relays its complement; the
// col() decoder reads the comparing node's color off that pattern.
struct DegradedGadget {
  Graph graph;
  NodeId removed_center = 0;          // original id of v in the host
  Weight host_scale;                  // host weights were multiplied by this
  std::vector<NodeId> host_node_map;  // host id -> new id (center maps to its old slot, unused)
  std::vector<NodeId> entry1, entry2; // size m
  std::vector<NodeId> relay1;         // size m
  std::vector<NodeId> relay2;         // size m-1

  struct Rewired {
    NodeId external;  // u_i^k (new id)
    NodeId attached;  // its entry node
    Weight weight;    // scaled a_i
  };
  std::vector<Rewired> rewired;

  // Bias realization: either a compiled subgraph looking at u (biaser_*
  // fields) or pinned phantom sources (verification mode).
  bool phantom_mode = false;
  std::vector<NodeId> phantom_nodes;       // one per internal node
  std::vector<bool> phantom_colors;        // the color each phantom is pinned to
  std::vector<NodeId> biaser_node_map;     // looker id -> new id (compiled mode)
  std::size_t internal_count() const { return 4 * entry1.size() - 1; }
  std::vector<NodeId> internals() const;
};

// Degrades v: removes it, rewires each u_i^k to an entry node with (scaled)
// weight a_i, installs the propagation skeleton, and attaches a compiled
// subgraph that looks at u and biases entries away from c(u) and relays
// toward it, every one of its edges strictly below the scaled bias weight.
// The host is scaled by a power of two (>= 2) so all row weights are even.
DegradedGadget degrade(const Graph& g, const ComparingSpec& spec);

// Verification variant: same skeleton, but the biases come from pinned
// phantom nodes realizing "bias toward kappa" directly. Exhaustive checks
// enumerate only the 4m-1 internal nodes this way.
DegradedGadget degrade_with_pinned_bias(const Graph& g, const ComparingSpec& spec,
                                        bool bias_color);

// Reads the comparing node's color off the internal pattern: 0 if all
// entries are white and all relays black, 1 in the mirrored case, nullopt
// otherwise.
std::optional<bool> col(const DegradedGadget& dg, const Partition& p);

struct VerificationReport {
  std::size_t m = 0;
  std::size_t neighbor_cases = 0;   // pair colorings examined
  std::size_t bias_cases = 0;       // (coloring, precondition-consistent bias) pairs
  std::size_t optima_checked = 0;
  std::vector<std::string> failures;
  bool pass = false;
};

// Exhaustive check of the local-optimum equivalence on the canonical star
// host (a_i = 2^(m-i+1) * d, d = 2): for every neighbor coloring and every
// precondition-consistent bias, the degraded gadget's pinned local optima
// are exactly the all-correct pattern for the expected color.
VerificationReport verify_theorem1(std::size_t m);

}  // namespace cutlab
