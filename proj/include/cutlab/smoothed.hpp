#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cutlab/flip.hpp"
#include "cutlab/graph.hpp"

namespace cutlab {

// Real-weighted twin of Graph for the smoothed path. Weights may go negative
// after perturbation; w_max records the pre-normalization maximum.
struct RealGraph {
  BasicGraph<double> graph;
  double w_max = 1.0;
};

// Divides every weight by the maximum; the largest weight becomes exactly 1.
// Throws on edgeless graphs.
RealGraph normalize(const Graph& g);

// Adds an independent N(0, sigma^2) deviate to every weight, edges visited
// in list order. Deterministic per seed. Requires 0 < sigma < 1.
RealGraph perturb(const RealGraph& rg, double sigma, std::uint64_t seed);

struct TrialStats {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t degree_max = 0;
  bool degree_warning = false;  // degree_max above ceil(degree_coeff * log2 n)
  double sigma = 0;
  std::uint64_t seed = 0;
  std::size_t steps = 0;
  double min_flip_gain = 0;  // minimum positive gain over the run; 0 if no steps
  double final_cut = 0;
  bool converged = true;
  std::size_t tiny_gain_flips = 0;       // gain below the trust floor (1e-9)
  std::size_t floor_events = 0;          // gain <= tau*delta*sigma / (n * 2^d_i)
  std::size_t floor_events_fixed_d = 0;  // same with d = degree_max
};

// Perturbs, starts from a seeded random partition, runs FLIP to a local
// optimum (safety-capped; non-termination is reported via converged=false).
// The guarantees target logarithmic degrees, so a degree above
// ceil(degree_coeff * log2 n) only raises the warning flag.
TrialStats run_trial(const RealGraph& rg, double sigma, std::uint64_t seed, PivotRule rule,
                     double tau = 0.01, double delta = 0.1, std::size_t step_cap = 0,
                     double degree_coeff = 2.0);

struct Claim17Result {
  double empirical = 0;
  double bound = 0;      // delta' * 2^-k
  double std_error = 0;  // binomial SE of the estimate
  std::size_t hits = 0;
  std::size_t samples = 0;
  double interval_halfwidth = 0;  // delta' * sigma / (c * 2^k)
  bool pass = false;              // empirical <= bound + 3 * SE
};

// Monte-Carlo check of the Gaussian anti-concentration bound
//   Pr[ |sum_{j in S} X_j - sum_{j not in S} X_j - a| <= delta'*sigma/(c*2^k) ]
//     <= delta' * 2^-k.
// subset holds 1-based indices into {1..k}.
Claim17Result claim17_check(std::size_t k, const std::vector<std::size_t>& subset, double a,
                            double delta_prime, double sigma, std::size_t trials, double c,
                            std::uint64_t seed);

struct ExperimentConfig {
  std::vector<std::size_t> sizes;
  double degree_coeff = 2.0;  // d = ceil(degree_coeff * log2 n)
  std::vector<double> sigmas;
  std::size_t trials = 50;
  std::vector<PivotRule> rules{PivotRule::BestImprovement};
  std::uint64_t seed = 1;
  double tau = 0.01;
  double delta = 0.1;
  std::size_t threads = 1;
  // Constants in the quantile check Pr[T < delta^-2 c' n^k1 sigma^-k2] > 1-delta.
  double cprime = 1.0;
  double k1 = 4.0;
  double k2 = 1.0;
};

struct CellAggregate {
  std::size_t n = 0;
  std::size_t d = 0;
  double sigma = 0;
  PivotRule rule = PivotRule::BestImprovement;
  double median_steps = 0;
  std::size_t max_steps = 0;
  double min_min_gain = 0;
};

struct SmoothedReport {
  ExperimentConfig config;
  std::vector<TrialStats> trials;
  std::vector<CellAggregate> cells;
  // log(median steps) ~ k1 * log n + k2 * log(1/sigma) + const
  double fitted_n_exponent = 0;
  double fitted_sigma_exponent = 0;
  bool sigma_fit_available = false;
  bool all_converged = false;
  double floor_fraction = 0;          // flips at or below the per-node gain floor
  double floor_fraction_fixed_d = 0;
  bool floor_ok = false;              // floor_fraction <= delta
  double eq1_quantile = 0;            // fraction of trials below the configured bound
  bool eq1_ok = false;
  double fitted_step_constant = 0;    // max steps * delta * sigma / (n^2 log2^2 n 2^d)
};

SmoothedReport experiment(const ExperimentConfig& config);

std::string report_to_json(const SmoothedReport& report);

}  // namespace cutlab
