// Copyright 2026 The qccd-sta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qccd/architecture.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <queue>
#include <sstream>

#include <fmt/format.h>

namespace qccd {

namespace {

constexpr TrapId kUnplaced = std::numeric_limits<TrapId>::max();

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::string_view to_string(Topology t) {
  return t == Topology::linear ? "linear" : "ring";
}

Topology parse_topology(std::string_view s) {
  if (s == "linear") {
    return Topology::linear;
  }
  if (s == "ring") {
    return Topology::ring;
  }
  throw InputError("unknown topology '" + std::string(s) +
                   "' (expected linear or ring)");
}

void TimingModel::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"t_1q", t_1q},       {"t_2q_base", t_2q_base},
      {"t_2q_slope", t_2q_slope}, {"t_swap_factor", t_swap_factor},
      {"t_split", t_split}, {"t_move", t_move},
      {"t_merge", t_merge}};
  for (const auto& [name, value] : fields) {
    if (!(value > 0.0)) {
      throw InputError(std::string("timing.") + name + " must be > 0");
    }
  }
}

void DeviceSpec::validate() const {
  if (n_traps == 0) {
    throw InputError("device needs at least one trap");
  }
  if (capacity == 0) {
    throw InputError("trap capacity must be positive");
  }
  if (excess_capacity >= capacity) {
    throw InputError(fmt::format(
        "excess_capacity ({}) must be smaller than capacity ({})",
        excess_capacity, capacity));
  }
  timing.validate();
}

std::string DeviceSpec::summary() const {
  return fmt::format("{} {}x{} excess {}", to_string(topology), n_traps,
                     capacity, excess_capacity);
}

DeviceSpec parse_device(std::string_view text) {
  DeviceSpec spec;
  bool in_timing = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> void {
    throw InputError("device line " + std::to_string(line_no) + ": " + what);
  };
  auto to_uint = [&](std::string_view v) {
    std::size_t out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) {
      fail("expected non-negative integer, got '" + std::string(v) + "'");
    }
    return out;
  };
  auto to_double = [&](std::string_view v) {
    std::string s(v);
    std::size_t used = 0;
    double out = 0.0;
    try {
      out = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) {
      fail("expected number, got '" + s + "'");
    }
    return out;
  };
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      eol = text.size();
    }
    ++line_no;
    auto line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line != "[timing]") {
        fail("unknown table '" + std::string(line) + "'");
      }
      in_timing = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail("expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (in_timing) {
      auto& tm = spec.timing;
      double* field = nullptr;
      if (key == "t_1q") field = &tm.t_1q;
      else if (key == "t_2q_base") field = &tm.t_2q_base;
      else if (key == "t_2q_slope") field = &tm.t_2q_slope;
      else if (key == "t_swap_factor") field = &tm.t_swap_factor;
      else if (key == "t_split") field = &tm.t_split;
      else if (key == "t_move") field = &tm.t_move;
      else if (key == "t_merge") field = &tm.t_merge;
      if (field == nullptr) {
        fail("unknown timing key '" + std::string(key) + "'");
      }
      *field = to_double(value);
      continue;
    }
    if (key == "topology") {
      spec.topology = parse_topology(value);
    } else if (key == "traps") {
      spec.n_traps = to_uint(value);
    } else if (key == "capacity") {
      spec.capacity = to_uint(value);
    } else if (key == "excess_capacity") {
      spec.excess_capacity = to_uint(value);
    } else {
      fail("unknown key '" + std::string(key) + "'");
    }
  }
  spec.validate();
  return spec;
}

DeviceSpec load_device(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open device file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_device(buf.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

TrapGraph::TrapGraph(Topology topology, std::size_t n_traps)
    : topology_(topology), n_traps_(n_traps), adjacency_(n_traps) {
  for (TrapId t = 0; t < n_traps_; ++t) {
    for (const Side s : {Side::right, Side::left}) {
      if (const auto n = across(t, s)) {
        auto& adj = adjacency_[t];
        if (std::find(adj.begin(), adj.end(), *n) == adj.end()) {
          adj.push_back(*n);
        }
      }
    }
  }
  dist_.assign(n_traps_, std::vector<std::size_t>(n_traps_, 0));
  parent_.assign(n_traps_, std::vector<TrapId>(n_traps_, 0));
  for (TrapId src = 0; src < n_traps_; ++src) {
    std::vector<bool> seen(n_traps_, false);
    std::queue<TrapId> frontier;
    frontier.push(src);
    seen[src] = true;
    parent_[src][src] = src;
    while (!frontier.empty()) {
      const TrapId u = frontier.front();
      frontier.pop();
      for (const TrapId v : adjacency_[u]) {
        if (!seen[v]) {
          seen[v] = true;
          dist_[src][v] = dist_[src][u] + 1;
          parent_[src][v] = u;
          frontier.push(v);
        }
      }
    }
  }
}

std::optional<TrapId> TrapGraph::across(TrapId t, Side side) const {
  if (side == Side::right) {
    if (t + 1 < n_traps_) {
      return t + 1;
    }
    if (topology_ == Topology::ring && n_traps_ > 1) {
      return 0;
    }
    return std::nullopt;
  }
  if (t > 0) {
    return t - 1;
  }
  if (topology_ == Topology::ring && n_traps_ > 1) {
    return static_cast<TrapId>(n_traps_ - 1);
  }
  return std::nullopt;
}

bool TrapGraph::adjacent(TrapId a, TrapId b) const {
  const auto& adj = adjacency_.at(a);
  return std::find(adj.begin(), adj.end(), b) != adj.end();
}

std::vector<TrapId> TrapGraph::path(TrapId a, TrapId b) const {
  std::vector<TrapId> out{b};
  const auto& parent = parent_.at(a);
  TrapId cur = b;
  while (cur != a) {
    cur = parent[cur];
    out.push_back(cur);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Side TrapGraph::exit_side(TrapId from, TrapId to) const {
  if (across(from, Side::right) == to) {
    return Side::right;
  }
  if (across(from, Side::left) == to) {
    return Side::left;
  }
  throw IllegalOpError(
      fmt::format("traps {} and {} are not adjacent", from, to));
}

Side TrapGraph::facing_side(TrapId from, TrapId to) const {
  if (from == to) {
    return Side::right;
  }
  const auto p = path(from, to);
  return exit_side(from, p[1]);
}

std::size_t TrapGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& adj : adjacency_) {
    n += adj.size();
  }
  return n / 2;
}

std::string_view to_string(OpKind k) {
  switch (k) {
    case OpKind::gate1:
      return "gate1";
    case OpKind::gate2:
      return "gate2";
    case OpKind::swap:
      return "swap";
    case OpKind::shuttle:
      return "shuttle";
  }
  return "?";
}

PhysOp PhysOp::gate1(std::size_t gate_index, Qubit q, TrapId trap) {
  PhysOp op;
  op.kind = OpKind::gate1;
  op.a = op.b = q;
  op.trap = op.dest = trap;
  op.gate = gate_index;
  return op;
}

PhysOp PhysOp::gate2(std::size_t gate_index, Qubit q0, Qubit q1, TrapId trap) {
  PhysOp op;
  op.kind = OpKind::gate2;
  op.a = q0;
  op.b = q1;
  op.trap = op.dest = trap;
  op.gate = gate_index;
  return op;
}

PhysOp PhysOp::swap(TrapId trap, std::size_t pos, Qubit left, Qubit right) {
  PhysOp op;
  op.kind = OpKind::swap;
  op.a = left;
  op.b = right;
  op.trap = op.dest = trap;
  op.pos = pos;
  return op;
}

PhysOp PhysOp::shuttle(Qubit q, TrapId from, TrapId to, Side side) {
  PhysOp op;
  op.kind = OpKind::shuttle;
  op.a = op.b = q;
  op.trap = from;
  op.dest = to;
  op.side = side;
  return op;
}

std::vector<Qubit> PhysOp::qubits() const {
  if (kind == OpKind::gate2 || kind == OpKind::swap) {
    return {a, b};
  }
  return {a};
}

std::vector<TrapId> PhysOp::traps_held() const {
  if (kind == OpKind::shuttle) {
    return {trap, dest};
  }
  return {trap};
}

namespace {

const DeviceSpec& validated(const DeviceSpec& spec) {
  spec.validate();
  return spec;
}

}  // namespace

DeviceState::DeviceState(const DeviceSpec& spec)
    : spec_(std::make_shared<const DeviceSpec>(validated(spec))),
      graph_(std::make_shared<const TrapGraph>(spec.topology, spec.n_traps)),
      chains_(spec.n_traps) {}

std::vector<std::size_t> DeviceState::occupancies() const {
  std::vector<std::size_t> out;
  out.reserve(chains_.size());
  for (const auto& c : chains_) {
    out.push_back(c.size());
  }
  return out;
}

bool DeviceState::contains(Qubit q) const {
  return q < trap_of_.size() && trap_of_[q] != kUnplaced;
}

TrapId DeviceState::trap_of(Qubit q) const {
  if (!contains(q)) {
    throw IllegalOpError(fmt::format("qubit {} is not on the device", q));
  }
  return trap_of_[q];
}

std::size_t DeviceState::position_of(Qubit q) const {
  const auto& c = chains_.at(trap_of(q));
  return static_cast<std::size_t>(std::find(c.begin(), c.end(), q) - c.begin());
}

std::size_t DeviceState::ion_count() const {
  std::size_t n = 0;
  for (const auto& c : chains_) {
    n += c.size();
  }
  return n;
}

std::size_t DeviceState::swaps_to_boundary(Qubit q, Side side) const {
  const auto pos = position_of(q);
  return side == Side::left ? pos : occupancy(trap_of(q)) - 1 - pos;
}

void DeviceState::load(Qubit q, TrapId t) {
  if (contains(q)) {
    throw IllegalOpError(fmt::format("qubit {} is already loaded", q));
  }
  if (full(t)) {
    throw IllegalOpError(fmt::format("trap {} is full", t));
  }
  if (q >= trap_of_.size()) {
    trap_of_.resize(q + 1, kUnplaced);
  }
  chains_.at(t).push_back(q);
  trap_of_[q] = t;
}

void DeviceState::check_gate_trap(const PhysOp& op, Qubit q) const {
  if (!contains(q) || trap_of_[q] != op.trap) {
    throw IllegalOpError(fmt::format(
        "{} on trap {}: qubit {} is not in that trap", to_string(op.kind),
        op.trap, q));
  }
}

void DeviceState::apply(const PhysOp& op) {
  if (op.trap >= chains_.size() || op.dest >= chains_.size()) {
    throw IllegalOpError(fmt::format("{} references a missing trap",
                                     to_string(op.kind)));
  }
  switch (op.kind) {
    case OpKind::gate1:
      check_gate_trap(op, op.a);
      return;
    case OpKind::gate2:
      if (op.a == op.b) {
        throw IllegalOpError("gate2 operands must differ");
      }
      check_gate_trap(op, op.a);
      check_gate_trap(op, op.b);
      return;
    case OpKind::swap: {
      auto& c = chains_[op.trap];
      if (op.pos + 1 >= c.size()) {
        throw IllegalOpError(fmt::format(
            "swap on trap {}: positions {},{} outside chain of {}", op.trap,
            op.pos, op.pos + 1, c.size()));
      }
      if (c[op.pos] != op.a || c[op.pos + 1] != op.b) {
        throw IllegalOpError(fmt::format(
            "swap on trap {}: expected ions {},{} at positions {},{}", op.trap,
            op.a, op.b, op.pos, op.pos + 1));
      }
      std::swap(c[op.pos], c[op.pos + 1]);
      return;
    }
    case OpKind::shuttle: {
      if (graph_->across(op.trap, op.side) != op.dest) {
        throw IllegalOpError(fmt::format(
            "shuttle {}->{}: traps not adjacent through the {} boundary",
            op.trap, op.dest, op.side == Side::left ? "left" : "right"));
      }
      check_gate_trap(op, op.a);
      auto& src = chains_[op.trap];
      const bool at_boundary = op.side == Side::left ? src.front() == op.a
                                                     : src.back() == op.a;
      if (!at_boundary) {
        throw IllegalOpError(fmt::format(
            "shuttle {}->{}: qubit {} not at boundary facing trap {}",
            op.trap, op.dest, op.a, op.dest));
      }
      if (full(op.dest)) {
        throw IllegalOpError(fmt::format(
            "shuttle {}->{}: destination trap is full ({} ions)", op.trap,
            op.dest, occupancy(op.dest)));
      }
      if (op.side == Side::left) {
        src.erase(src.begin());
      } else {
        src.pop_back();
      }
      auto& dst = chains_[op.dest];
      // Enters through the destination boundary facing the source.
      if (op.side == Side::right) {
        dst.insert(dst.begin(), op.a);
      } else {
        dst.push_back(op.a);
      }
      trap_of_[op.a] = op.dest;
      return;
    }
  }
}

std::string DeviceState::describe() const {
  std::string out = "[";
  for (std::size_t t = 0; t < chains_.size(); ++t) {
    if (t > 0) {
      out += " |";
    }
    for (const Qubit q : chains_[t]) {
      out += fmt::format(" {}", q);
    }
  }
  out += " ]";
  return out;
}

DeviceState apply_op(DeviceState state, const PhysOp& op) {
  state.apply(op);
  return state;
}

DeviceState build_device(const DeviceSpec& spec) { return DeviceState(spec); }

std::size_t trap_distance(const DeviceState& state, TrapId a, TrapId b) {
  return state.graph().distance(a, b);
}

double two_qubit_duration(const TimingModel& tm, std::size_t n_ions) {
  const double extra = n_ions > 0 ? static_cast<double>(n_ions - 1) : 0.0;
  return tm.t_2q_base * (1.0 + tm.t_2q_slope * extra);
}

double op_duration(const TimingModel& tm, const PhysOp& op,
                   std::span<const std::size_t> occupancy) {
  switch (op.kind) {
    case OpKind::gate1:
      return tm.t_1q;
    case OpKind::gate2:
      return two_qubit_duration(tm, occupancy[op.trap]);
    case OpKind::swap:
      return tm.t_swap_factor * two_qubit_duration(tm, occupancy[op.trap]);
    case OpKind::shuttle:
      return tm.t_split + tm.t_move + tm.t_merge;
  }
  return 0.0;
}

}  // namespace qccd
