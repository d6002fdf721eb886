#include "cutlab/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cutlab/generate.hpp"
#include "cutlab/io.hpp"
#include "cutlab/rng.hpp"
#include "cutlab/smoothed.hpp"

namespace cutlab {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

PivotRule rule_from(const std::string& name) {
  const auto rule = parse_pivot_rule(name);
  if (!rule) throw std::runtime_error("unknown pivot rule '" + name + "'");
  return *rule;
}

std::vector<std::pair<NodeId, bool>> parse_pins(const std::string& text, std::size_t n) {
  // "3=1,7=0" with 1-based ids
  std::vector<std::pair<NodeId, bool>> pins;
  if (text.empty()) return pins;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::runtime_error("pin format is <node>=<color>");
    const long id = std::stol(item.substr(0, eq));
    const std::string color = item.substr(eq + 1);
    if (id < 1 || static_cast<std::size_t>(id) > n) throw std::runtime_error("pin id out of range");
    if (color != "0" && color != "1") throw std::runtime_error("pin color must be 0 or 1");
    pins.emplace_back(static_cast<NodeId>(id - 1), color == "1");
  }
  return pins;
}

int cmd_compile(const std::string& circuit_path, const std::string& mode,
                const std::string& assignment, const std::string& out_path,
                const std::string& role_map_path) {
  const Circuit c = parse_circuit(slurp(circuit_path));
  CompiledGraph cg;
  if (mode == "cvp") {
    std::vector<std::uint8_t> x;
    for (char ch : assignment) {
      if (ch != '0' && ch != '1') throw std::runtime_error("assignment charset is {0,1}");
      x.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    cg = compile_cvp(c, x);
  } else if (mode == "looker") {
    cg = compile_looker(c);
  } else {
    throw std::runtime_error("mode must be cvp or looker");
  }
  write_output(out_path, emit_graph(cg.graph));
  if (!role_map_path.empty()) write_output(role_map_path, role_map_to_json(cg));
  return 0;
}

int cmd_flip(const std::string& graph_path, const std::string& start, const std::string& rule_name,
             std::uint64_t seed, std::uint64_t step_limit, const std::string& out_path) {
  const Graph g = parse_graph(slurp(graph_path));
  Partition p0;
  if (start == "random")
    p0 = random_partition(g.node_count(), derive_seed(seed, 0xa11));
  else if (start == "zeros")
    p0 = Partition(g.node_count());
  else
    p0 = parse_partition(slurp(start));
  if (step_limit == 0) step_limit = default_step_limit(g);
  const auto trace = run_flip(g, p0, rule_from(rule_name), step_limit, derive_seed(seed, 0xf11));
  write_output(out_path, trace_to_json(trace, rule_from(rule_name), seed, step_limit));
  return 0;
}

int cmd_check(const std::string& graph_path, const std::string& partition_path,
              const std::string& out_path) {
  const Graph g = parse_graph(slurp(graph_path));
  const Partition p = parse_partition(slurp(partition_path));
  write_output(out_path, check_to_json(g, p));
  return 0;
}

int cmd_enumerate(const std::string& graph_path, std::size_t cap, const std::string& pins_text,
                  const std::string& out_path) {
  const Graph g = parse_graph(slurp(graph_path));
  std::vector<Partition> optima;
  if (pins_text.empty()) {
    optima = enumerate_local_optima(g, cap);
  } else {
    optima = pinned_local_optima(g, parse_pins(pins_text, g.node_count()), cap);
  }
  write_output(out_path, optima_to_json(optima));
  return 0;
}

int cmd_degrade(const std::string& graph_path, std::uint64_t node, std::uint64_t biaser,
                const std::string& out_path, const std::string& node_map_path) {
  const Graph g = parse_graph(slurp(graph_path));
  if (node < 1 || node > g.node_count()) throw std::runtime_error("--node out of range");
  if (biaser < 1 || biaser > g.node_count()) throw std::runtime_error("--biaser out of range");
  const auto spec =
      comparing_spec(g, static_cast<NodeId>(node - 1),
                     BiaserAttestation{static_cast<NodeId>(biaser - 1), "attested via --biaser"});
  const DegradedGadget dg = degrade(g, spec);
  write_output(out_path, emit_graph(dg.graph));
  if (!node_map_path.empty()) write_output(node_map_path, node_map_to_json(dg));
  return 0;
}

int cmd_verify_theorem1(std::size_t m, const std::string& out_path) {
  const VerificationReport report = verify_theorem1(m);
  write_output(out_path, verification_to_json(report));
  std::cerr << (report.pass ? "PASS" : "FAIL") << " comparing-gadget equivalence, m=" << m
            << " (" << report.bias_cases << " bias cases)\n";
  return report.pass ? 0 : 1;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stoull(item));
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stod(item));
  return out;
}

int cmd_smooth(const std::string& sizes, const std::string& sigmas, std::size_t trials,
               const std::string& rules, std::uint64_t seed, double degree_coeff, double tau,
               double delta, std::size_t threads, const std::string& out_path) {
  ExperimentConfig config;
  config.sizes = parse_size_list(sizes);
  config.sigmas = parse_double_list(sigmas);
  config.trials = trials;
  config.seed = seed;
  config.degree_coeff = degree_coeff;
  config.tau = tau;
  config.delta = delta;
  config.threads = threads;
  config.rules.clear();
  std::istringstream in(rules);
  std::string item;
  while (std::getline(in, item, ',')) config.rules.push_back(rule_from(item));
  const SmoothedReport report = experiment(config);
  write_output(out_path, report_to_json(report));
  return 0;
}

int cmd_claim17(std::size_t k, const std::string& subset_text, double a, double dprime,
                double sigma, std::size_t samples, double c, std::uint64_t seed,
                const std::string& out_path) {
  std::vector<std::size_t> subset;
  if (!subset_text.empty()) subset = parse_size_list(subset_text);
  const Claim17Result r = claim17_check(k, subset, a, dprime, sigma, samples, c, seed);
  nlohmann::json j;
  j["schema"] = "cutlab/1";
  j["k"] = k;
  j["subset"] = subset;
  j["a"] = a;
  j["delta_prime"] = dprime;
  j["sigma"] = sigma;
  j["samples"] = samples;
  j["c"] = c;
  j["seed"] = seed;
  j["interval_halfwidth"] = r.interval_halfwidth;
  j["hits"] = r.hits;
  j["empirical"] = r.empirical;
  j["bound"] = r.bound;
  j["std_error"] = r.std_error;
  j["pass"] = r.pass;
  write_output(out_path, j.dump(2) + "\n");
  return r.pass ? 0 : 1;
}

int cmd_cubic_bench(const std::string& sizes_text, std::size_t starts, std::uint64_t seed,
                    std::uint64_t weight_lo, std::uint64_t weight_hi, const std::string& out_path) {
  const auto sizes = parse_size_list(sizes_text);
  if (sizes.size() < 2) throw std::runtime_error("need at least two sizes for a slope");
  nlohmann::json rows = nlohmann::json::array();
  std::vector<double> log_n, log_steps;
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    const std::size_t n = sizes[si];
    const Graph g = random_cubic_graph(n, derive_seed(seed, 31, si), weight_lo, weight_hi);
    const std::uint64_t limit = default_step_limit(g);
    std::size_t max_steps = 0;
    for (std::size_t s = 0; s < starts; ++s) {
      const Partition p0 = random_partition(n, derive_seed(seed, 32, si, s));
      const auto trace =
          run_flip(g, p0, PivotRule::BestImprovement, limit, derive_seed(seed, 33, si, s));
      if (trace.reached_limit) throw std::runtime_error("cubic run hit the step limit");
      max_steps = std::max(max_steps, trace.step_count());
    }
    rows.push_back({{"n", n}, {"starts", starts}, {"max_steps", max_steps}});
    log_n.push_back(std::log(double(n)));
    log_steps.push_back(std::log(double(std::max<std::size_t>(max_steps, 1))));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    sx += log_n[i];
    sy += log_steps[i];
    sxx += log_n[i] * log_n[i];
    sxy += log_n[i] * log_steps[i];
  }
  const double slope =
      (double(log_n.size()) * sxy - sx * sy) / (double(log_n.size()) * sxx - sx * sx);
  nlohmann::json j;
  j["schema"] = "cutlab/1";
  j["seed"] = seed;
  j["rows"] = rows;
  j["loglog_slope"] = slope;
  write_output(out_path, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"cutlab: local Max-Cut gadget compiler and FLIP laboratory"};
  app.require_subcommand(1);

  std::string circuit_path, graph_path, partition_path, mode, assignment;
  std::string out_path, role_map_path, node_map_path, start = "random", rule = "best";
  std::string pins_text, sizes = "64,128,256", sigmas = "0.1", rules = "best", subset_text;
  std::uint64_t seed = 1, step_limit = 0, node = 0, biaser = 0;
  std::uint64_t weight_lo = 1, weight_hi = 1u << 20;
  std::size_t cap = 24, trials = 50, samples = 100000, threads = 1, k = 4, m_rows = 2;
  std::size_t starts = 20;
  double a = 0.0, dprime = 0.2, sigma = 0.1, c_const = 10.0;
  double degree_coeff = 2.0, tau = 0.01, delta = 0.1;

  auto* compile = app.add_subcommand("compile", "compile a circuit into a Max-Cut gadget graph");
  compile->add_option("--circuit", circuit_path)->required();
  compile->add_option("--mode", mode, "cvp|looker")->required();
  compile->add_option("--assignment", assignment, "input bits (cvp mode)");
  compile->add_option("--out", out_path, "graph output (default stdout)");
  compile->add_option("--role-map", role_map_path, "role map JSON output");

  auto* flip = app.add_subcommand("flip", "run FLIP local search");
  flip->add_option("--graph", graph_path)->required();
  flip->add_option("--start", start, "random|zeros|<partition file>");
  flip->add_option("--rule", rule, "first|best|random");
  flip->add_option("--seed", seed);
  flip->add_option("--step-limit", step_limit, "0 = default bound");
  flip->add_option("--out", out_path);

  auto* check = app.add_subcommand("check", "local-optimum verdict and unhappy nodes");
  check->add_option("--graph", graph_path)->required();
  check->add_option("--partition", partition_path)->required();
  check->add_option("--out", out_path);

  auto* enumerate = app.add_subcommand("enumerate", "exhaustively list local optima");
  enumerate->add_option("--graph", graph_path)->required();
  enumerate->add_option("--cap", cap);
  enumerate->add_option("--pins", pins_text, "e.g. 3=1,7=0 (1-based)");
  enumerate->add_option("--out", out_path);

  auto* degrade_cmd = app.add_subcommand("degrade", "replace a comparing node by the gadget");
  degrade_cmd->add_option("--graph", graph_path)->required();
  degrade_cmd->add_option("--node", node, "comparing node (1-based)")->required();
  degrade_cmd->add_option("--biaser", biaser, "biaser-edge endpoint (1-based)")->required();
  degrade_cmd->add_option("--out", out_path);
  degrade_cmd->add_option("--node-map", node_map_path);

  auto* verify = app.add_subcommand("verify-theorem1", "exhaustive gadget equivalence check");
  verify->add_option("--m", m_rows, "rows, 1..3")->required();
  verify->add_option("--out", out_path);

  auto* smooth = app.add_subcommand("smooth", "smoothed-analysis experiment grid");
  smooth->add_option("--sizes", sizes);
  smooth->add_option("--sigmas", sigmas);
  smooth->add_option("--trials", trials);
  smooth->add_option("--rules", rules);
  smooth->add_option("--seed", seed);
  smooth->add_option("--degree-coeff", degree_coeff);
  smooth->add_option("--tau", tau);
  smooth->add_option("--delta", delta);
  smooth->add_option("--threads", threads);
  smooth->add_option("--out", out_path);

  auto* claim17 = app.add_subcommand("claim17", "Monte-Carlo tail-bound check");
  claim17->add_option("--k", k);
  claim17->add_option("--subset", subset_text, "1-based indices, e.g. 1,3");
  claim17->add_option("--a", a);
  claim17->add_option("--dprime", dprime);
  claim17->add_option("--sigma", sigma);
  claim17->add_option("--samples", samples);
  claim17->add_option("--c", c_const);
  claim17->add_option("--seed", seed);
  claim17->add_option("--out", out_path);

  auto* cubic = app.add_subcommand("cubic-bench", "FLIP step growth on random cubic graphs");
  cubic->add_option("--sizes", sizes);
  cubic->add_option("--starts", starts);
  cubic->add_option("--seed", seed);
  cubic->add_option("--weight-lo", weight_lo);
  cubic->add_option("--weight-hi", weight_hi);
  cubic->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(compile))
      return cmd_compile(circuit_path, mode, assignment, out_path, role_map_path);
    if (app.got_subcommand(flip))
      return cmd_flip(graph_path, start, rule, seed, step_limit, out_path);
    if (app.got_subcommand(check)) return cmd_check(graph_path, partition_path, out_path);
    if (app.got_subcommand(enumerate)) return cmd_enumerate(graph_path, cap, pins_text, out_path);
    if (app.got_subcommand(degrade_cmd))
      return cmd_degrade(graph_path, node, biaser, out_path, node_map_path);
    if (app.got_subcommand(verify)) return cmd_verify_theorem1(m_rows, out_path);
    if (app.got_subcommand(smooth))
      return cmd_smooth(sizes, sigmas, trials, rules, seed, degree_coeff, tau, delta, threads,
                        out_path);
    if (app.got_subcommand(claim17))
      return cmd_claim17(k, subset_text, a, dprime, sigma, samples, c_const, seed, out_path);
    if (app.got_subcommand(cubic))
      return cmd_cubic_bench(sizes, starts, seed, weight_lo, weight_hi, out_path);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace cutlab
