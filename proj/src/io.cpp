#include "cutlab/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "json.hpp"

namespace cutlab {

namespace {

struct Line {
  std::size_t number;  // 1-based
  std::vector<std::string> tokens;
  std::vector<std::size_t> columns;  // 1-based start column per token
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::size_t line_no = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    Line line;
    line.number = line_no;
    std::size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      if (raw[i] == '#') break;
      const std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      line.tokens.push_back(raw.substr(start, i - start));
      line.columns.push_back(start + 1);
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

std::uint64_t parse_u64(const Line& line, std::size_t tok, const char* what,
                        std::uint64_t min_value) {
  const std::string& s = line.tokens[tok];
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError(line.number, line.columns[tok], std::string(what) + " must be a number");
  std::uint64_t v = 0;
  for (char c : s) {
    if (v > (std::numeric_limits<std::uint64_t>::max() - 9) / 10)
      throw ParseError(line.number, line.columns[tok], std::string(what) + " out of range");
    v = v * 10 + std::uint64_t(c - '0');
  }
  if (v < min_value)
    throw ParseError(line.number, line.columns[tok],
                     std::string(what) + " must be >= " + std::to_string(min_value));
  return v;
}

Weight parse_weight(const Line& line, std::size_t tok) {
  const std::string& s = line.tokens[tok];
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError(line.number, line.columns[tok], "weight must be a decimal number");
  Weight w(s);
  if (w <= 0) throw ParseError(line.number, line.columns[tok], "weight must be positive");
  return w;
}

void expect_tokens(const Line& line, std::size_t count, const char* form) {
  if (line.tokens.size() != count)
    throw ParseError(line.number, 1, std::string("expected '") + form + "'");
}

// exponent k >= 1 if w == 2^k, else nullopt (weight 1 stays an e-line)
std::optional<unsigned> power_exponent(const Weight& w) {
  if (w < 2) return std::nullopt;
  const unsigned bit = boost::multiprecision::msb(w);
  if ((Weight(1) << bit) == w) return bit;
  return std::nullopt;
}

std::string wstr(const Weight& w) { return w.str(); }

}  // namespace

Graph parse_graph(const std::string& text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, 1, "empty graph file");
  const Line& head = lines.front();
  if (head.tokens[0] != "p")
    throw ParseError(head.number, head.columns[0], "expected 'p maxcut <n> <m>' header");
  expect_tokens(head, 4, "p maxcut <n> <m>");
  if (head.tokens[1] != "maxcut")
    throw ParseError(head.number, head.columns[1], "unknown problem type");
  const std::uint64_t n = parse_u64(head, 2, "node count", 0);
  const std::uint64_t m = parse_u64(head, 3, "edge count", 0);

  Graph g(n);
  std::size_t edges_seen = 0;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const std::string& kind = line.tokens[0];
    if (kind != "e" && kind != "x")
      throw ParseError(line.number, line.columns[0], "expected an 'e' or 'x' edge line");
    expect_tokens(line, 4, kind == "e" ? "e <u> <v> <w>" : "x <u> <v> <exponent>");
    const std::uint64_t u = parse_u64(line, 1, "node id", 1);
    const std::uint64_t v = parse_u64(line, 2, "node id", 1);
    if (u > n) throw ParseError(line.number, line.columns[1], "node id exceeds node count");
    if (v > n) throw ParseError(line.number, line.columns[2], "node id exceeds node count");
    Weight w;
    if (kind == "e") {
      w = parse_weight(line, 3);
    } else {
      const std::uint64_t k = parse_u64(line, 3, "exponent", 0);
      if (k > 1u << 20) throw ParseError(line.number, line.columns[3], "exponent too large");
      w = Weight(1) << static_cast<unsigned>(k);
    }
    try {
      g.add_edge(static_cast<NodeId>(u - 1), static_cast<NodeId>(v - 1), std::move(w));
    } catch (const std::exception& ex) {
      throw ParseError(line.number, line.columns[0], ex.what());
    }
    ++edges_seen;
  }
  if (edges_seen != m)
    throw ParseError(lines.back().number, 1,
                     "header announces " + std::to_string(m) + " edges, file has " +
                         std::to_string(edges_seen));
  return g;
}

std::string emit_graph(const Graph& g) {
  std::ostringstream out;
  out << "p maxcut " << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) {
    if (const auto k = power_exponent(e.w))
      out << "x " << e.u + 1 << ' ' << e.v + 1 << ' ' << *k << '\n';
    else
      out << "e " << e.u + 1 << ' ' << e.v + 1 << ' ' << wstr(e.w) << '\n';
  }
  return out.str();
}

Circuit parse_circuit(const std::string& text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, 1, "empty circuit file");

  struct Decl {
    bool is_input;
    std::uint32_t ordinal;  // input ordinal or gate declaration position
  };
  std::map<std::uint64_t, Decl> ids;
  std::uint32_t inputs = 0;
  struct RawGate {
    GateKind kind;
    std::uint64_t a, b;
    const Line* line;
    std::size_t a_tok, b_tok;
  };
  std::vector<RawGate> raw;
  std::vector<std::uint64_t> output_ids;
  bool outputs_seen = false;

  for (const auto& line : lines) {
    const std::string& kw = line.tokens[0];
    if (kw == "input") {
      expect_tokens(line, 2, "input <id>");
      const std::uint64_t id = parse_u64(line, 1, "id", 1);
      if (!ids.emplace(id, Decl{true, inputs}).second)
        throw ParseError(line.number, line.columns[1], "duplicate id");
      ++inputs;
    } else if (kw == "gate") {
      if (line.tokens.size() < 4)
        throw ParseError(line.number, 1, "expected 'gate <id> NOR|NOT <refs>'");
      const std::uint64_t id = parse_u64(line, 1, "id", 1);
      const std::string& op = line.tokens[2];
      RawGate rg;
      rg.line = &line;
      if (op == "NOR") {
        expect_tokens(line, 5, "gate <id> NOR <a> <b>");
        rg.kind = GateKind::Nor;
        rg.a = parse_u64(line, 3, "reference", 1);
        rg.b = parse_u64(line, 4, "reference", 1);
        rg.a_tok = 3;
        rg.b_tok = 4;
      } else if (op == "NOT") {
        expect_tokens(line, 4, "gate <id> NOT <a>");
        rg.kind = GateKind::Not;
        rg.a = rg.b = parse_u64(line, 3, "reference", 1);
        rg.a_tok = rg.b_tok = 3;
      } else {
        throw ParseError(line.number, line.columns[2], "unknown gate kind '" + op + "'");
      }
      if (!ids.emplace(id, Decl{false, static_cast<std::uint32_t>(raw.size())}).second)
        throw ParseError(line.number, line.columns[1], "duplicate id");
      raw.push_back(rg);
    } else if (kw == "outputs") {
      if (outputs_seen) throw ParseError(line.number, line.columns[0], "duplicate outputs line");
      if (line.tokens.size() < 2) throw ParseError(line.number, 1, "outputs needs at least one id");
      for (std::size_t t = 1; t < line.tokens.size(); ++t)
        output_ids.push_back(parse_u64(line, t, "output id", 1));
      outputs_seen = true;
    } else {
      throw ParseError(line.number, line.columns[0], "unknown directive '" + kw + "'");
    }
  }
  if (raw.empty()) throw ParseError(lines.back().number, 1, "circuit has no gates");
  if (!outputs_seen) throw ParseError(lines.back().number, 1, "missing outputs line");

  // Declaration order is evaluation order: the k-th declared gate (0-based)
  // is G_{N-k} in the conventional numbering.
  const std::uint32_t N = static_cast<std::uint32_t>(raw.size());
  Circuit c;
  c.input_count = inputs;
  c.output_count = static_cast<std::uint32_t>(output_ids.size());
  c.gates.resize(N);

  auto resolve = [&](const RawGate& rg, std::uint64_t id, std::size_t tok) -> GateRef {
    const auto it = ids.find(id);
    if (it == ids.end())
      throw ParseError(rg.line->number, rg.line->columns[tok], "dangling reference");
    if (it->second.is_input) return GateRef::input(it->second.ordinal);
    return GateRef::gate(N - 1 - it->second.ordinal);
  };
  for (std::uint32_t k = 0; k < N; ++k) {
    const RawGate& rg = raw[k];
    Gate gate;
    gate.kind = rg.kind;
    gate.a = resolve(rg, rg.a, rg.a_tok);
    if (rg.kind == GateKind::Nor) gate.b = resolve(rg, rg.b, rg.b_tok);
    c.gates[N - 1 - k] = gate;
  }
  if (c.output_count > N)
    throw ParseError(lines.back().number, 1, "more outputs than gates");
  for (std::size_t j = 0; j < output_ids.size(); ++j) {
    const auto it = ids.find(output_ids[j]);
    if (it == ids.end() || it->second.is_input)
      throw ParseError(lines.back().number, 1, "output id does not name a gate");
    // output j (LSB) must be the (N-1-j)-th declared gate, i.e. G_{j+1}
    if (N - 1 - it->second.ordinal != j)
      throw ParseError(lines.back().number, 1,
                       "outputs must list the most recently declared gates, newest first");
  }
  try {
    validate_references(c);
  } catch (const std::exception& ex) {
    throw ParseError(lines.back().number, 1, ex.what());
  }
  return c;
}

std::string emit_circuit(const Circuit& c) {
  validate_references(c);
  const std::uint32_t n = c.input_count;
  const std::uint32_t N = c.gate_count();
  std::ostringstream out;
  for (std::uint32_t k = 0; k < n; ++k) out << "input " << k + 1 << '\n';
  // canonical ids: inputs 1..n, gates n+1.. in declaration order (G_N first)
  auto ref_id = [&](const GateRef& r) -> std::uint64_t {
    if (r.is_input()) return r.index + 1;
    return n + (N - r.index);  // gate G_{i+1} was declared at position N-1-i
  };
  for (std::uint32_t k = 0; k < N; ++k) {
    const std::uint32_t gate_index = N - 1 - k;  // declaration position k holds G_{gate_index+1}
    const Gate& g = c.gates[gate_index];
    out << "gate " << n + k + 1;
    if (g.kind == GateKind::Nor)
      out << " NOR " << ref_id(g.a) << ' ' << ref_id(g.b) << '\n';
    else
      out << " NOT " << ref_id(g.a) << '\n';
  }
  out << "outputs";
  for (std::uint32_t j = 0; j < c.output_count; ++j) out << ' ' << n + N - j;
  out << '\n';
  return out.str();
}

Partition parse_partition(const std::string& text) {
  std::size_t end = text.size();
  while (end > 0 && (text[end - 1] == '\n' || text[end - 1] == '\r')) --end;
  const std::string bits = text.substr(0, end);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i] != '0' && bits[i] != '1')
      throw ParseError(1, i + 1, "partition charset is {0,1}");
  if (bits.find('\n') != std::string::npos) throw ParseError(2, 1, "expected a single line");
  return Partition::from_string(bits);
}

std::string emit_partition(const Partition& p) { return p.to_string() + "\n"; }

std::string trace_to_json(const FlipTrace<Weight>& trace, PivotRule rule, std::uint64_t seed,
                          std::uint64_t step_limit) {
  nlohmann::json j;
  j["schema"] = "cutlab/1";
  j["rule"] = to_string(rule);
  j["seed"] = seed;
  j["step_limit"] = step_limit;
  j["initial"] = trace.initial.to_string();
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : trace.steps)
    steps.push_back({{"node", s.node + 1}, {"gain", wstr(s.gain)}});
  j["steps"] = steps;
  j["step_count"] = trace.step_count();
  j["final"] = trace.final_partition.to_string();
  j["final_cut"] = wstr(trace.final_cut);
  j["reached_limit"] = trace.reached_limit;
  return j.dump(2) + "\n";
}

std::string check_to_json(const Graph& g, const Partition& p) {
  nlohmann::json j;
  j["schema"] = "cutlab/1";
  const auto unhappy = unhappy_nodes(g, p);
  nlohmann::json ids = nlohmann::json::array();
  for (NodeId v : unhappy) ids.push_back(v + 1);
  j["local_optimum"] = unhappy.empty();
  j["unhappy"] = ids;
  j["cut_weight"] = wstr(cut_weight(g, p));
  return j.dump(2) + "\n";
}

std::string optima_to_json(const std::vector<Partition>& optima) {
  nlohmann::json j;
  j["schema"] = "cutlab/1";
  j["count"] = optima.size();
  nlohmann::json list = nlohmann::json::array();
  for (const auto& p : optima) list.push_back(p.to_string());
  j["optima"] = list;
  return j.dump(2) + "\n";
}

std::string role_map_to_json(const CompiledGraph& cg) {
  nlohmann::json j;
  j["schema"] = "cutlab/1";
  j["mode"] = cg.looker_mode ? "looker" : "cvp";
  j["gates"] = cg.gate_count;
  j["inputs"] = cg.input_count;
  j["outputs"] = cg.output_count;
  j["node_count"] = cg.graph.node_count();
  nlohmann::json gates = nlohmann::json::array();
  for (std::uint32_t i = 1; i <= cg.gate_count; ++i)
    gates.push_back({{"gate", i}, {"node", cg.gate_node(i) + 1}});
  j["gate_nodes"] = gates;
  nlohmann::json chain = nlohmann::json::array();
  for (std::uint32_t i = cg.gate_count + 1; i <= 3 * cg.gate_count + 1; ++i)
    chain.push_back({{"index", i}, {"node", cg.chain_node(i) + 1}});
  j["chain_nodes"] = chain;
  auto plus1 = [](const std::vector<NodeId>& xs) {
    std::vector<std::uint64_t> out;
    for (NodeId v : xs) out.push_back(v + 1);
    return out;
  };
  j["s_nodes"] = plus1(cg.s_nodes);
  j["t_nodes"] = plus1(cg.t_nodes);
  j["anchor"] = cg.anchor + 1;
  return j.dump(2) + "\n";
}

std::string node_map_to_json(const DegradedGadget& dg) {
  nlohmann::json j;
  j["schema"] = "cutlab/1";
  j["removed_center"] = dg.removed_center + 1;
  j["host_scale"] = wstr(dg.host_scale);
  auto plus1 = [](const std::vector<NodeId>& xs) {
    std::vector<std::uint64_t> out;
    for (NodeId v : xs) out.push_back(v + 1);
    return out;
  };
  j["entry1"] = plus1(dg.entry1);
  j["entry2"] = plus1(dg.entry2);
  j["relay1"] = plus1(dg.relay1);
  j["relay2"] = plus1(dg.relay2);
  nlohmann::json rw = nlohmann::json::array();
  for (const auto& r : dg.rewired)
    rw.push_back({{"external", r.external + 1}, {"attached", r.attached + 1}, {"weight", wstr(r.weight)}});
  j["rewired"] = rw;
  nlohmann::json host_map = nlohmann::json::array();
  for (std::size_t v = 0; v < dg.host_node_map.size(); ++v) {
    if (static_cast<NodeId>(v) == dg.removed_center) continue;
    host_map.push_back({{"old", v + 1}, {"new", dg.host_node_map[v] + 1}});
  }
  j["host_nodes"] = host_map;
  return j.dump(2) + "\n";
}

std::string verification_to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["schema"] = "cutlab/1";
  j["m"] = report.m;
  j["neighbor_cases"] = report.neighbor_cases;
  j["bias_cases"] = report.bias_cases;
  j["optima_checked"] = report.optima_checked;
  j["failures"] = report.failures;
  j["pass"] = report.pass;
  return j.dump(2) + "\n";
}

}  // namespace cutlab
