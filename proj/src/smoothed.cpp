#include "cutlab/smoothed.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "cutlab/generate.hpp"
#include "cutlab/rng.hpp"

namespace cutlab {

RealGraph normalize(const Graph& g) {
  if (g.edge_count() == 0) throw std::invalid_argument("cannot normalize an edgeless graph");
  Weight wmax{0};
  for (const auto& e : g.edges()) wmax = std::max(wmax, e.w);
  RealGraph rg;
  rg.w_max = wmax.convert_to<double>();
  rg.graph = BasicGraph<double>(g.node_count());
  for (const auto& e : g.edges()) {
    const double w = Weight(e.w).convert_to<double>() / rg.w_max;
    rg.graph.add_edge(e.u, e.v, w);
  }
  return rg;
}

RealGraph perturb(const RealGraph& rg, double sigma, std::uint64_t seed) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("sigma must lie in (0,1)");
  Rng rng(seed);
  std::vector<double> ws;
  ws.reserve(rg.graph.edge_count());
  for (const auto& e : rg.graph.edges()) ws.push_back(e.w + sigma * standard_gaussian(rng));
  RealGraph out;
  out.w_max = rg.w_max;
  out.graph = rg.graph.with_weights(std::move(ws));
  return out;
}

TrialStats run_trial(const RealGraph& rg, double sigma, std::uint64_t seed, PivotRule rule,
                     double tau, double delta, std::size_t step_cap, double degree_coeff) {
  const std::size_t n = rg.graph.node_count();
  TrialStats stats;
  stats.n = n;
  stats.m = rg.graph.edge_count();
  stats.degree_max = rg.graph.max_degree();
  stats.degree_warning =
      n > 1 && double(stats.degree_max) > std::ceil(degree_coeff * std::log2(double(n)));
  stats.sigma = sigma;
  stats.seed = seed;

  const RealGraph pg = perturb(rg, sigma, derive_seed(seed, 1));
  const Partition start = random_partition(n, derive_seed(seed, 2));
  if (step_cap == 0) {
    const double cap = 64.0 * double(n) * double(n) * (std::log2(double(n)) + 2.0);
    step_cap = static_cast<std::size_t>(cap);
  }

  const auto trace = run_flip(pg.graph, start, rule, step_cap, derive_seed(seed, 3));
  stats.steps = trace.step_count();
  stats.converged = !trace.reached_limit;
  stats.final_cut = trace.final_cut;
  stats.min_flip_gain = 0.0;
  for (const auto& step : trace.steps) {
    if (stats.min_flip_gain == 0.0 || step.gain < stats.min_flip_gain)
      stats.min_flip_gain = step.gain;
    if (step.gain < 1e-9) ++stats.tiny_gain_flips;
    const std::size_t di = pg.graph.degree(step.node);
    const double floor_i = tau * delta * sigma / (double(n) * std::ldexp(1.0, int(di)));
    if (step.gain <= floor_i) ++stats.floor_events;
    const double floor_fixed =
        tau * delta * sigma / (double(n) * std::ldexp(1.0, int(stats.degree_max)));
    if (step.gain <= floor_fixed) ++stats.floor_events_fixed_d;
  }
  return stats;
}

Claim17Result claim17_check(std::size_t k, const std::vector<std::size_t>& subset, double a,
                            double delta_prime, double sigma, std::size_t trials, double c,
                            std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (trials == 0) throw std::invalid_argument("need at least one sample");
  if (!(delta_prime > 0.0 && delta_prime < 1.0))
    throw std::invalid_argument("delta' must lie in (0,1)");
  std::vector<int> sign(k, -1);
  for (std::size_t idx : subset) {
    if (idx < 1 || idx > k) throw std::invalid_argument("subset index out of range");
    sign[idx - 1] = +1;
  }

  Claim17Result r;
  r.samples = trials;
  r.bound = delta_prime * std::ldexp(1.0, -int(k));
  r.interval_halfwidth = delta_prime * sigma / (c * std::ldexp(1.0, int(k)));
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    double s = -a;
    for (std::size_t j = 0; j < k; ++j) s += sign[j] * (sigma * standard_gaussian(rng));
    if (std::abs(s) <= r.interval_halfwidth) ++r.hits;
  }
  r.empirical = double(r.hits) / double(trials);
  r.std_error = std::sqrt(std::max(r.empirical * (1.0 - r.empirical), 1.0 / double(trials)) /
                          double(trials));
  r.pass = r.empirical <= r.bound + 3.0 * r.std_error;
  return r;
}

namespace {

double median(std::vector<double> xs) {
  if (xs.empty()) return 0;
  std::sort(xs.begin(), xs.end());
  const std::size_t h = xs.size() / 2;
  return xs.size() % 2 ? xs[h] : 0.5 * (xs[h - 1] + xs[h]);
}

// Least squares for y = k1*x1 + k2*x2 + c (or y = k1*x1 + c when x2 is
// constant). Tiny normal-equation solve; inputs are a handful of cells.
struct FitResult {
  double k1 = 0, k2 = 0;
  bool has_k2 = false;
};

FitResult fit_exponents(const std::vector<double>& x1, const std::vector<double>& x2,
                        const std::vector<double>& y) {
  const std::size_t n = x1.size();
  FitResult f;
  if (n < 2) return f;
  const bool x2_varies = [&] {
    for (double v : x2)
      if (std::abs(v - x2.front()) > 1e-12) return true;
    return false;
  }();

  auto solve3 = [](double m[3][4]) {
    for (int col = 0; col < 3; ++col) {
      int piv = col;
      for (int r = col + 1; r < 3; ++r)
        if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
      std::swap(m[col], m[piv]);
      if (std::abs(m[col][col]) < 1e-12) return false;
      for (int r = 0; r < 3; ++r) {
        if (r == col) continue;
        const double q = m[r][col] / m[col][col];
        for (int cc = col; cc < 4; ++cc) m[r][cc] -= q * m[col][cc];
      }
    }
    return true;
  };

  if (x2_varies) {
    double m[3][4] = {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
    for (std::size_t i = 0; i < n; ++i) {
      const double row[3] = {x1[i], x2[i], 1.0};
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) m[r][c] += row[r] * row[c];
        m[r][3] += row[r] * y[i];
      }
    }
    if (solve3(m)) {
      f.k1 = m[0][3] / m[0][0];
      f.k2 = m[1][3] / m[1][1];
      f.has_k2 = true;
    }
    return f;
  }
  // simple regression on x1
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x1[i];
    sy += y[i];
    sxx += x1[i] * x1[i];
    sxy += x1[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) > 1e-12) f.k1 = (n * sxy - sx * sy) / denom;
  return f;
}

}  // namespace

SmoothedReport experiment(const ExperimentConfig& config) {
  if (config.sizes.empty() || config.sigmas.empty() || config.trials == 0)
    throw std::invalid_argument("empty experiment grid");
  for (std::size_t n : config.sizes)
    if (n < 2) throw std::invalid_argument("sizes must be >= 2");

  SmoothedReport report;
  report.config = config;

  struct Job {
    std::size_t size_idx, sigma_idx, rule_idx, trial_idx;
  };
  std::vector<Job> jobs;
  std::vector<RealGraph> bases(config.sizes.size());
  std::vector<std::size_t> degrees(config.sizes.size());
  for (std::size_t si = 0; si < config.sizes.size(); ++si) {
    const std::size_t n = config.sizes[si];
    const std::size_t d =
        static_cast<std::size_t>(std::ceil(config.degree_coeff * std::log2(double(n))));
    degrees[si] = d;
    bases[si] = normalize(random_degree_capped_graph(n, d, derive_seed(config.seed, 17, si)));
    for (std::size_t gi = 0; gi < config.sigmas.size(); ++gi)
      for (std::size_t ri = 0; ri < config.rules.size(); ++ri)
        for (std::size_t t = 0; t < config.trials; ++t) jobs.push_back(Job{si, gi, ri, t});
  }

  report.trials.resize(jobs.size());
  auto worker = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j < hi; ++j) {
      const Job& job = jobs[j];
      const std::uint64_t seed =
          derive_seed(config.seed, job.size_idx * 1000 + job.sigma_idx,
                      job.rule_idx, job.trial_idx);
      report.trials[j] = run_trial(bases[job.size_idx], config.sigmas[job.sigma_idx], seed,
                                   config.rules[job.rule_idx], config.tau, config.delta, 0,
                                   config.degree_coeff);
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, config.threads);
  if (threads == 1) {
    worker(0, jobs.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (jobs.size() + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t lo = std::min(jobs.size(), t * chunk);
      const std::size_t hi = std::min(jobs.size(), lo + chunk);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  // aggregate per (n, sigma, rule) cell
  report.all_converged = true;
  std::size_t total_flips = 0, floor_flips = 0, floor_flips_fixed = 0;
  std::size_t eq1_hits = 0;
  double max_constant = 0;
  std::vector<double> fit_x1, fit_x2, fit_y;
  for (std::size_t si = 0; si < config.sizes.size(); ++si) {
    for (std::size_t gi = 0; gi < config.sigmas.size(); ++gi) {
      for (std::size_t ri = 0; ri < config.rules.size(); ++ri) {
        CellAggregate cell;
        cell.n = config.sizes[si];
        cell.d = degrees[si];
        cell.sigma = config.sigmas[gi];
        cell.rule = config.rules[ri];
        std::vector<double> steps;
        for (std::size_t j = 0; j < jobs.size(); ++j) {
          const Job& job = jobs[j];
          if (job.size_idx != si || job.sigma_idx != gi || job.rule_idx != ri) continue;
          const TrialStats& s = report.trials[j];
          steps.push_back(double(s.steps));
          cell.max_steps = std::max(cell.max_steps, s.steps);
          if (s.steps > 0 && (cell.min_min_gain == 0 || s.min_flip_gain < cell.min_min_gain))
            cell.min_min_gain = s.min_flip_gain;
          report.all_converged = report.all_converged && s.converged;
          total_flips += s.steps;
          floor_flips += s.floor_events;
          floor_flips_fixed += s.floor_events_fixed_d;
          const double bound = std::pow(config.delta, -2.0) * config.cprime *
                               std::pow(double(cell.n), config.k1) *
                               std::pow(cell.sigma, -config.k2);
          if (double(s.steps) < bound) ++eq1_hits;
          const double denom = double(cell.n) * double(cell.n) *
                               std::pow(std::log2(double(cell.n)), 2.0) *
                               std::ldexp(1.0, int(cell.d));
          max_constant =
              std::max(max_constant, double(s.steps) * config.delta * cell.sigma / denom);
        }
        cell.median_steps = median(steps);
        report.cells.push_back(cell);
        if (cell.median_steps > 0) {
          fit_x1.push_back(std::log(double(cell.n)));
          fit_x2.push_back(std::log(1.0 / cell.sigma));
          fit_y.push_back(std::log(cell.median_steps));
        }
      }
    }
  }

  const FitResult fit = fit_exponents(fit_x1, fit_x2, fit_y);
  report.fitted_n_exponent = fit.k1;
  report.fitted_sigma_exponent = fit.k2;
  report.sigma_fit_available = fit.has_k2;
  report.floor_fraction = total_flips ? double(floor_flips) / double(total_flips) : 0.0;
  report.floor_fraction_fixed_d =
      total_flips ? double(floor_flips_fixed) / double(total_flips) : 0.0;
  report.floor_ok = report.floor_fraction <= config.delta;
  report.eq1_quantile = report.trials.empty() ? 0.0 : double(eq1_hits) / double(report.trials.size());
  report.eq1_ok = report.eq1_quantile > 1.0 - config.delta;
  report.fitted_step_constant = max_constant;
  return report;
}

std::string report_to_json(const SmoothedReport& report) {
  nlohmann::json j;
  j["schema"] = "cutlab/1";
  nlohmann::json cfg;
  cfg["sizes"] = report.config.sizes;
  cfg["degree_coeff"] = report.config.degree_coeff;
  cfg["sigmas"] = report.config.sigmas;
  cfg["trials"] = report.config.trials;
  {
    std::vector<std::string> rules;
    for (auto r : report.config.rules) rules.push_back(to_string(r));
    cfg["rules"] = rules;
  }
  cfg["seed"] = report.config.seed;
  cfg["tau"] = report.config.tau;
  cfg["delta"] = report.config.delta;
  cfg["cprime"] = report.config.cprime;
  cfg["k1"] = report.config.k1;
  cfg["k2"] = report.config.k2;
  j["config"] = cfg;

  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : report.trials) {
    trials.push_back({{"n", t.n},
                      {"m", t.m},
                      {"d", t.degree_max},
                      {"sigma", t.sigma},
                      {"seed", t.seed},
                      {"steps", t.steps},
                      {"min_gain", t.min_flip_gain},
                      {"final_cut", t.final_cut},
                      {"converged", t.converged},
                      {"degree_warning", t.degree_warning},
                      {"tiny_gain_flips", t.tiny_gain_flips},
                      {"floor_events", t.floor_events}});
  }
  j["trials"] = trials;

  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : report.cells) {
    cells.push_back({{"n", c.n},
                     {"d", c.d},
                     {"sigma", c.sigma},
                     {"rule", to_string(c.rule)},
                     {"median_steps", c.median_steps},
                     {"max_steps", c.max_steps},
                     {"min_min_gain", c.min_min_gain}});
  }
  j["aggregates"] = cells;
  j["fits"] = {{"n_exponent", report.fitted_n_exponent},
               {"sigma_exponent", report.fitted_sigma_exponent},
               {"sigma_fit_available", report.sigma_fit_available},
               {"step_constant", report.fitted_step_constant}};
  j["checks"] = {{"all_converged", report.all_converged},
                 {"floor_fraction", report.floor_fraction},
                 {"floor_fraction_fixed_d", report.floor_fraction_fixed_d},
                 {"floor_ok", report.floor_ok},
                 {"eq1_quantile", report.eq1_quantile},
                 {"eq1_ok", report.eq1_ok}};
  return j.dump(2) + "\n";
}

}  // namespace cutlab
