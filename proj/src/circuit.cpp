#include "cutlab/circuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace cutlab {

namespace {

std::string gate_name(std::uint32_t idx0) { return "G" + std::to_string(idx0 + 1); }

// References of a gate (1 for NOT, 2 for NOR).
std::vector<GateRef> operands(const Gate& g) {
  if (g.kind == GateKind::Nor) return {g.a, g.b};
  return {g.a};
}

}  // namespace

void validate_references(const Circuit& c) {
  if (c.output_count == 0 || c.output_count > c.gate_count())
    throw std::invalid_argument("output count out of range");
  for (std::uint32_t i = 0; i < c.gate_count(); ++i) {
    for (const GateRef& r : operands(c.gates[i])) {
      if (r.is_input()) {
        if (r.index >= c.input_count)
          throw std::invalid_argument(gate_name(i) + " references missing input");
      } else {
        if (r.index >= c.gate_count())
          throw std::invalid_argument(gate_name(i) + " references missing gate");
        if (r.index <= i)
          throw std::invalid_argument(gate_name(i) + " violates topological order");
      }
    }
  }
}

std::vector<Violation> validate_normal_form(const Circuit& c, NormalForm mode) {
  std::vector<Violation> out;
  auto flag = [&out](std::string msg) { out.push_back(Violation{std::move(msg)}); };

  const std::uint32_t n = c.input_count;
  const std::uint32_t N = c.gate_count();
  const std::uint32_t m = c.output_count;
  if (m == 0 || m > N) {
    flag("output count out of range");
    return out;
  }

  std::vector<std::uint32_t> fanout(N, 0);
  std::vector<std::uint32_t> input_uses(n, 0);
  for (std::uint32_t i = 0; i < N; ++i) {
    for (const GateRef& r : operands(c.gates[i])) {
      if (r.is_input()) {
        if (r.index >= n)
          flag(gate_name(i) + ": dangling input reference");
        else
          ++input_uses[r.index];
      } else {
        if (r.index >= N) {
          flag(gate_name(i) + ": dangling gate reference");
        } else {
          if (r.index <= i) flag(gate_name(i) + ": topological order violated");
          ++fanout[r.index];
        }
      }
    }
    if (c.gates[i].kind == GateKind::Nor && c.gates[i].a == c.gates[i].b)
      flag(gate_name(i) + ": duplicate inputs");
  }
  for (std::uint32_t k = 0; k < n; ++k)
    if (input_uses[k] != 1)
      flag("input X" + std::to_string(k + 1) + " occurs " + std::to_string(input_uses[k]) +
           " times (expected exactly once)");

  if (mode == NormalForm::Section4) {
    for (std::uint32_t i = 0; i < N; ++i)
      if (c.gates[i].kind != GateKind::Nor) flag(gate_name(i) + ": only NOR gates allowed");
    return out;
  }

  // Appendix mode.
  if (m + n > N) flag("outputs overlap input-holding gates (need m + n <= N)");
  for (std::uint32_t i = 0; i < N; ++i) {
    const Gate& g = c.gates[i];
    const bool is_output = i < m;
    const bool is_holder_slot = i >= N - n;
    const bool holds_input =
        g.kind == GateKind::Not && g.a.is_input();

    if (g.kind == GateKind::Nor) {
      if (g.a.is_input() || g.b.is_input())
        flag(gate_name(i) + ": inputs may occur only in input-holding NOT gates");
      if (fanout[i] != 1 && !is_output) flag(gate_name(i) + ": NOR fanout must be exactly 1");
      if (is_output) flag(gate_name(i) + ": output gates must be NOT gates");
      if (is_holder_slot) flag(gate_name(i) + ": top gates must hold the circuit inputs");
    } else {
      if (holds_input) {
        if (!is_holder_slot)
          flag(gate_name(i) + ": input-holding gate outside the top positions");
        if (fanout[i] != 1)
          flag(gate_name(i) + ": input-holding gate fanout must be exactly 1");
      } else {
        if (is_holder_slot) flag(gate_name(i) + ": top gates must hold the circuit inputs");
        if (fanout[i] > 2) flag(gate_name(i) + ": NOT fanout must be at most 2");
      }
      if (is_output) {
        if (fanout[i] != 0) flag(gate_name(i) + ": output gates must have fanout 0");
        if (holds_input) flag(gate_name(i) + ": output gates must not hold inputs");
      }
    }
  }
  return out;
}

std::vector<std::uint8_t> eval(const Circuit& c, const std::vector<std::uint8_t>& x) {
  if (x.size() != c.input_count) throw std::invalid_argument("input length mismatch");
  validate_references(c);
  const std::uint32_t N = c.gate_count();
  std::vector<std::uint8_t> value(N, 0);
  auto ref_value = [&](const GateRef& r) -> std::uint8_t {
    return r.is_input() ? x[r.index] : value[r.index];
  };
  for (std::uint32_t ii = N; ii > 0; --ii) {
    const std::uint32_t i = ii - 1;
    const Gate& g = c.gates[i];
    if (g.kind == GateKind::Nor) {
      value[i] = static_cast<std::uint8_t>(!(ref_value(g.a) || ref_value(g.b)));
    } else if (g.a.is_input()) {
      value[i] = x[g.a.index];  // holder: forwards the input
    } else {
      value[i] = static_cast<std::uint8_t>(!value[g.a.index]);
    }
  }
  return value;
}

std::vector<std::uint8_t> output_bits(const Circuit& c, const std::vector<std::uint8_t>& x) {
  const auto value = eval(c, x);
  return std::vector<std::uint8_t>(value.begin(), value.begin() + c.output_count);
}

Weight cf_objective(const Circuit& c, const std::vector<std::uint8_t>& x) {
  const auto bits = output_bits(c, x);
  Weight obj{};
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) obj += Weight(1) << i;
  return obj;
}

std::optional<std::vector<std::uint8_t>> cf_improving_neighbor(
    const Circuit& c, const std::vector<std::uint8_t>& x) {
  const Weight current = cf_objective(c, x);
  std::vector<std::uint8_t> y = x;
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] ^= 1;
    if (cf_objective(c, y) > current) return y;
    y[i] ^= 1;
  }
  return std::nullopt;
}

Circuit unary_fanout_circuit(const std::vector<bool>& copy_input) {
  // Output j = NOT(feeder); a copying output needs a feeder carrying the
  // complement of the input, a negating one a feeder carrying the input.
  // Feeders come from an inverter spine hanging off the single holder:
  //   holder (x) -> s1 (!x) -> s2 (x) -> ...
  // Spine gate k has one slot left for an output (two at the tail).
  const std::size_t m = copy_input.size();
  if (m == 0) throw std::invalid_argument("at least one output required");
  std::size_t need_not_x = 0, need_x = 0;
  for (bool copy : copy_input) (copy ? need_not_x : need_x) += 1;

  std::size_t spine = 0;
  const auto capacity_ok = [&](std::size_t L) {
    // slots of value !x at odd spine positions, x at even; tail has 2 slots.
    std::size_t cap_not_x = 0, cap_x = 0;
    if (L == 0) {
      cap_x = 1;  // the holder itself
    } else {
      for (std::size_t k = 1; k <= L; ++k) {
        const std::size_t slots = (k == L) ? 2 : 1;
        if (k % 2 == 1)
          cap_not_x += slots;
        else
          cap_x += slots;
      }
    }
    return cap_not_x >= need_not_x && cap_x >= need_x;
  };
  while (!capacity_ok(spine)) ++spine;

  const std::uint32_t N = static_cast<std::uint32_t>(1 + spine + m);
  Circuit c;
  c.input_count = 1;
  c.output_count = static_cast<std::uint32_t>(m);
  c.gates.resize(N);

  const std::uint32_t holder = N - 1;  // top gate holds the input
  c.gates[holder] = Gate{GateKind::Not, GateRef::input(0), {}};

  // spine gate k (1-based from the holder) sits at index holder - k
  std::vector<std::uint32_t> slot_gate;  // available feeder gates
  std::vector<bool> slot_is_x;
  std::vector<std::size_t> slot_left;
  if (spine == 0) {
    slot_gate.push_back(holder);
    slot_is_x.push_back(true);
    slot_left.push_back(1);
  } else {
    for (std::size_t k = 1; k <= spine; ++k) {
      const std::uint32_t idx = holder - static_cast<std::uint32_t>(k);
      const std::uint32_t prev = holder - static_cast<std::uint32_t>(k - 1);
      c.gates[idx] = Gate{GateKind::Not, GateRef::gate(prev), {}};
      slot_gate.push_back(idx);
      slot_is_x.push_back(k % 2 == 0);
      slot_left.push_back(k == spine ? 2 : 1);
    }
  }

  auto take_slot = [&](bool want_x) -> std::uint32_t {
    for (std::size_t s = 0; s < slot_gate.size(); ++s) {
      if (slot_is_x[s] == want_x && slot_left[s] > 0) {
        --slot_left[s];
        return slot_gate[s];
      }
    }
    throw std::logic_error("fanout slot accounting is wrong");
  };

  for (std::size_t j = 0; j < m; ++j) {
    const bool want_x_feeder = !copy_input[j];  // NOT(x) = !x; NOT(!x) = x
    const std::uint32_t feeder = take_slot(want_x_feeder);
    c.gates[j] = Gate{GateKind::Not, GateRef::gate(feeder), {}};
  }
  return c;
}

}  // namespace cutlab
