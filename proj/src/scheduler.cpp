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

#include "qccd/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "qccd/router.hpp"

namespace qccd {

Metrics compute_metrics(const Schedule& s) {
  Metrics m;
  for (const auto& so : s.ops) {
    switch (so.op.kind) {
      case OpKind::gate1:
        ++m.gates_1q;
        break;
      case OpKind::gate2:
        ++m.gates_2q;
        break;
      case OpKind::swap:
        ++m.swaps;
        break;
      case OpKind::shuttle:
        ++m.shuttles;
        break;
    }
    m.total_time = std::max(m.total_time, so.end);
  }
  return m;
}

namespace {

void check_placement(const Circuit& c, const Placement& p,
                     const DeviceSpec& spec) {
  if (p.n_qubits() != c.n_qubits()) {
    throw InputError(fmt::format("placement covers {} qubits, circuit has {}",
                                 p.n_qubits(), c.n_qubits()));
  }
  if (!p.complete()) {
    throw InputError("placement leaves qubits unassigned");
  }
  if (p.n_traps() != spec.n_traps) {
    throw InputError(fmt::format("placement has {} traps, device has {}",
                                 p.n_traps(), spec.n_traps));
  }
}

}  // namespace

ScheduleResult schedule(const Circuit& c, const Placement& p,
                        const DeviceSpec& spec,
                        const SchedulerOptions& options) {
  spec.validate();
  check_placement(c, p, spec);
  DeviceState state = p.to_state(spec);
  const auto dag = dependency_graph(c);
  PendingGates pending(c, options.lookahead);

  const std::size_t n = c.size();
  std::vector<std::size_t> waiting(n);
  std::vector<double> pred_done(n, 0.0);
  std::set<std::size_t> ready;
  for (std::size_t g = 0; g < n; ++g) {
    waiting[g] = dag.predecessors(g).size();
    if (waiting[g] == 0) {
      ready.insert(g);
    }
  }
  std::vector<double> trap_free(spec.n_traps, 0.0);

  ScheduleResult result;
  auto& ops = result.schedule.ops;

  auto commit = [&](const PhysOp& op, double earliest) {
    const auto occ = state.occupancies();
    double start = earliest;
    const auto held = op.traps_held();
    for (const TrapId t : held) {
      start = std::max(start, trap_free[t]);
    }
    const double end = start + op_duration(spec.timing, op, occ);
    state.apply(op);
    for (const TrapId t : held) {
      trap_free[t] = end;
    }
    ops.push_back({op, start, end});
    return end;
  };

  double now = 0.0;
  std::size_t done = 0;
  while (done < n) {
    for (auto it = ready.begin(); it != ready.end();) {
      const std::size_t g = *it;
      const Gate& gate = c.gate(g);
      bool blocked = pred_done[g] > now;
      for (const Qubit q : gate.operands) {
        blocked = blocked || trap_free[state.trap_of(q)] > now;
      }
      if (blocked) {
        ++it;
        continue;
      }

      double end = 0.0;
      if (!gate.is_two_qubit()) {
        const Qubit q = gate.operands[0];
        end = commit(PhysOp::gate1(g, q, state.trap_of(q)), now);
      } else {
        const Qubit a = gate.operands[0];
        const Qubit b = gate.operands[1];
        double chain = now;
        if (state.trap_of(a) != state.trap_of(b)) {
          const auto res = resolve_gate(gate, state, pending);
          for (const auto& op : res.ops) {
            chain = commit(op, chain);
          }
        }
        end = commit(PhysOp::gate2(g, a, b, state.trap_of(a)), chain);
      }
      pending.complete(gate);
      ++done;
      it = ready.erase(it);
      for (const auto h : dag.successors(g)) {
        pred_done[h] = std::max(pred_done[h], end);
        if (--waiting[h] == 0) {
          ready.insert(h);
        }
      }
    }
    if (done == n) {
      break;
    }
    double next = std::numeric_limits<double>::infinity();
    for (const double f : trap_free) {
      if (f > now) {
        next = std::min(next, f);
      }
    }
    for (const auto g : ready) {
      if (pred_done[g] > now) {
        next = std::min(next, pred_done[g]);
      }
    }
    if (!std::isfinite(next)) {
      throw std::logic_error("scheduler stalled: dependency cycle");
    }
    now = next;
  }
  result.metrics = compute_metrics(result.schedule);
  result.schedule.makespan = result.metrics.total_time;
  return result;
}

std::string_view to_string(Violation v) {
  switch (v) {
    case Violation::none:
      return "none";
    case Violation::illegal_op:
      return "illegal-op";
    case Violation::gate_coverage:
      return "gate-coverage";
    case Violation::qubit_order:
      return "qubit-order";
    case Violation::trap_overlap:
      return "trap-overlap";
    case Violation::capacity:
      return "capacity";
  }
  return "?";
}

Verdict verify_schedule(const Schedule& s, const Circuit& c, const Placement& p,
                        const DeviceSpec& spec) {
  constexpr double kEps = 1e-12;
  auto fail = [](Violation v, std::size_t i, std::string msg) {
    return Verdict{v, i, std::move(msg)};
  };

  if (p.n_traps() != spec.n_traps || p.n_qubits() != c.n_qubits() ||
      !p.complete()) {
    return fail(Violation::illegal_op, 0, "placement does not match inputs");
  }
  for (TrapId t = 0; t < p.n_traps(); ++t) {
    if (p.count(t) > spec.capacity) {
      return fail(Violation::capacity, 0,
                  fmt::format("initial trap {} holds {} > {}", t, p.count(t),
                              spec.capacity));
    }
  }
  DeviceState state = p.to_state(spec);

  // Gate lists per qubit, to check program order.
  std::vector<std::vector<std::size_t>> per_qubit(c.n_qubits());
  for (const auto& g : c.gates()) {
    for (const Qubit q : g.operands) {
      per_qubit[q].push_back(g.index);
    }
  }
  std::vector<std::size_t> cursor(c.n_qubits(), 0);
  std::vector<double> qubit_free(c.n_qubits(), 0.0);
  std::vector<double> trap_free(spec.n_traps, 0.0);
  std::vector<bool> seen(c.size(), false);

  std::vector<std::size_t> order(s.ops.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) {
    return s.ops[x].start < s.ops[y].start;
  });

  for (const auto i : order) {
    const auto& so = s.ops[i];
    const auto& op = so.op;
    if (op.trap >= spec.n_traps || op.dest >= spec.n_traps) {
      return fail(Violation::illegal_op, i, "op references a missing trap");
    }
    for (const TrapId t : op.traps_held()) {
      if (so.start < trap_free[t] - kEps) {
        return fail(Violation::trap_overlap, i,
                    fmt::format("trap {} busy until {} but op starts at {}", t,
                                trap_free[t], so.start));
      }
    }
    for (const Qubit q : op.qubits()) {
      if (q >= c.n_qubits()) {
        return fail(Violation::illegal_op, i,
                    fmt::format("qubit {} out of range", q));
      }
      if (so.start < qubit_free[q] - kEps) {
        return fail(Violation::qubit_order, i,
                    fmt::format("qubit {} busy until {} but op starts at {}", q,
                                qubit_free[q], so.start));
      }
    }
    const double expected = op_duration(spec.timing, op, state.occupancies());
    if (std::abs((so.end - so.start) - expected) > 1e-9 * expected + kEps) {
      return fail(Violation::illegal_op, i,
                  fmt::format("{} lasts {} s, expected {} s", to_string(op.kind),
                              so.end - so.start, expected));
    }

    if (op.is_gate()) {
      if (op.gate >= c.size()) {
        return fail(Violation::gate_coverage, i, "gate index out of range");
      }
      const auto& g = c.gate(op.gate);
      const bool arity_ok = (op.kind == OpKind::gate2) == g.is_two_qubit();
      const bool operands_ok =
          g.is_two_qubit()
              ? (op.a == g.operands[0] && op.b == g.operands[1])
              : op.a == g.operands[0];
      if (!arity_ok || !operands_ok) {
        return fail(Violation::gate_coverage, i,
                    fmt::format("op does not match circuit gate {}", op.gate));
      }
      if (seen[op.gate]) {
        return fail(Violation::gate_coverage, i,
                    fmt::format("gate {} executed twice", op.gate));
      }
      seen[op.gate] = true;
      for (const Qubit q : g.operands) {
        if (cursor[q] >= per_qubit[q].size() ||
            per_qubit[q][cursor[q]] != op.gate) {
          return fail(Violation::qubit_order, i,
                      fmt::format("gate {} out of program order on qubit {}",
                                  op.gate, q));
        }
        ++cursor[q];
      }
      for (const Qubit q : g.operands) {
        if (!state.contains(q) || state.trap_of(q) != op.trap) {
          return fail(Violation::gate_coverage, i,
                      fmt::format("gate {} operand {} not in trap {}", op.gate,
                                  q, op.trap));
        }
      }
    }
    if (op.kind == OpKind::shuttle && op.dest < spec.n_traps &&
        state.occupancy(op.dest) >= spec.capacity) {
      return fail(Violation::capacity, i,
                  fmt::format("shuttle into full trap {}", op.dest));
    }
    try {
      state.apply(op);
    } catch (const IllegalOpError& e) {
      return fail(Violation::illegal_op, i, e.what());
    }
    for (const TrapId t : op.traps_held()) {
      trap_free[t] = so.end;
    }
    for (const Qubit q : op.qubits()) {
      qubit_free[q] = so.end;
    }
  }
  for (std::size_t g = 0; g < c.size(); ++g) {
    if (!seen[g]) {
      return fail(Violation::gate_coverage, s.ops.size(),
                  fmt::format("gate {} never executed", g));
    }
  }
  double last = 0.0;
  for (const auto& so : s.ops) {
    last = std::max(last, so.end);
  }
  if (std::abs(last - s.makespan) > kEps) {
    return fail(Violation::illegal_op, s.ops.size(),
                fmt::format("makespan {} differs from last op end {}",
                            s.makespan, last));
  }
  return {};
}

void write_schedule(std::ostream& out, const Schedule& s) {
  out << "start_us,end_us,kind,qubits,traps\n";
  for (const auto& so : s.ops) {
    const auto qs = so.op.qubits();
    const auto ts = so.op.traps_held();
    fmt::print(out, "{:.3f},{:.3f},{},{},{}\n", so.start * 1e6, so.end * 1e6,
               to_string(so.op.kind), fmt::join(qs, ";"), fmt::join(ts, ";"));
  }
}

void write_metrics(std::ostream& out, const Metrics& m) {
  fmt::print(out,
             "shuttles={}\nswaps={}\ngates_1q={}\ngates_2q={}\n"
             "total_time_s={:.9f}\n",
             m.shuttles, m.swaps, m.gates_1q, m.gates_2q, m.total_time);
}

}  // namespace qccd
