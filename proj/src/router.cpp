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

#include "qccd/router.hpp"

#include <algorithm>
#include <tuple>

#include <fmt/format.h>

namespace qccd {

PendingGates::PendingGates(const Circuit& c,
                           std::optional<std::size_t> lookahead)
    : per_qubit_(c.n_qubits()),
      cursor_(c.n_qubits(), 0),
      lookahead_(lookahead) {
  for (const auto& g : c.gates()) {
    if (g.is_two_qubit()) {
      per_qubit_[g.operands[0]].push_back({g.index, g.operands[1]});
      per_qubit_[g.operands[1]].push_back({g.index, g.operands[0]});
    }
  }
}

void PendingGates::complete(const Gate& g) {
  if (!g.is_two_qubit()) {
    return;
  }
  for (const Qubit q : g.operands) {
    auto& cur = cursor_[q];
    const auto& list = per_qubit_[q];
    if (cur < list.size() && list[cur].gate == g.index) {
      ++cur;
    }
  }
}

std::vector<Qubit> PendingGates::partners(Qubit q) const {
  const auto& list = per_qubit_.at(q);
  auto end = list.size();
  if (lookahead_) {
    end = std::min(end, cursor_[q] + *lookahead_);
  }
  std::vector<Qubit> out;
  for (auto i = cursor_[q]; i < end; ++i) {
    out.push_back(list[i].partner);
  }
  return out;
}

std::size_t PendingGates::count_in_trap(Qubit q, TrapId t,
                                        const DeviceState& state) const {
  const auto& list = per_qubit_.at(q);
  auto end = list.size();
  if (lookahead_) {
    end = std::min(end, cursor_[q] + *lookahead_);
  }
  std::size_t n = 0;
  for (auto i = cursor_[q]; i < end; ++i) {
    if (state.trap_of(list[i].partner) == t) {
      ++n;
    }
  }
  return n;
}

MoveDecision select_mover(const Gate& gate, const DeviceState& state,
                          const PendingGates& pending) {
  const Qubit qa = gate.operands.at(0);
  const Qubit qb = gate.operands.at(1);
  const TrapId ta = state.trap_of(qa);
  const TrapId tb = state.trap_of(qb);
  const auto& graph = state.graph();

  auto score = [&](Qubit q, TrapId own, TrapId other) {
    return static_cast<long>(pending.count_in_trap(q, other, state)) -
           static_cast<long>(pending.count_in_trap(q, own, state));
  };
  auto swaps = [&](Qubit q, TrapId own, TrapId other) {
    return state.swaps_to_boundary(q, graph.facing_side(own, other));
  };
  // Smaller key wins.
  const auto key_a = std::make_tuple(-score(qa, ta, tb), swaps(qa, ta, tb), qa);
  const auto key_b = std::make_tuple(-score(qb, tb, ta), swaps(qb, tb, ta), qb);

  MoveDecision d;
  if (key_a <= key_b) {
    d.mover = qa;
    d.partner = qb;
    d.dest_trap = tb;
    d.path = graph.path(ta, tb);
  } else {
    d.mover = qb;
    d.partner = qa;
    d.dest_trap = ta;
    d.path = graph.path(tb, ta);
  }
  return d;
}

namespace {

class MoveBuilder {
 public:
  MoveBuilder(DeviceState state, const PendingGates& pending,
              std::vector<Qubit> pinned)
      : state_(std::move(state)), pending_(pending), pinned_(std::move(pinned)) {}

  // Swaps q to the given end of its chain.
  void walk_to(Qubit q, Side side) {
    const TrapId t = state_.trap_of(q);
    auto pos = state_.position_of(q);
    if (side == Side::right) {
      while (pos + 1 < state_.occupancy(t)) {
        emit(PhysOp::swap(t, pos, q, state_.chain(t)[pos + 1]));
        ++pos;
      }
    } else {
      while (pos > 0) {
        emit(PhysOp::swap(t, pos - 1, state_.chain(t)[pos - 1], q));
        --pos;
      }
    }
  }

  void hop(Qubit q, TrapId to) {
    const TrapId from = state_.trap_of(q);
    const Side side = state_.graph().exit_side(from, to);
    walk_to(q, side);
    emit(PhysOp::shuttle(q, from, to, side));
  }

  // Makes one slot free in `trap`; `avoid` is not used as a destination
  // unless nothing else has room. When every neighbour is full, ions are
  // shifted one trap each along the shortest path to the nearest trap
  // with room, starting at the far end.
  void make_room(TrapId trap, TrapId avoid,
                 std::vector<std::pair<Qubit, TrapId>>& evictions) {
    if (!state_.full(trap)) {
      return;
    }
    const auto& graph = state_.graph();
    std::vector<TrapId> open;
    for (const TrapId n : graph.neighbours(trap)) {
      if (!state_.full(n)) {
        open.push_back(n);
      }
    }
    if (open.empty()) {
      const auto path = path_to_room(trap);
      for (std::size_t i = path.size() - 2; i >= 1; --i) {
        evict(path[i], {path[i + 1]}, trap, evictions);
      }
      open.push_back(path[1]);
    }
    evict(trap, open, avoid, evictions);
  }

  [[nodiscard]] std::vector<PhysOp>& ops() { return ops_; }

 private:
  std::vector<TrapId> path_to_room(TrapId trap) const {
    const auto& graph = state_.graph();
    std::optional<std::pair<std::size_t, TrapId>> best;
    for (TrapId t = 0; t < state_.spec().n_traps; ++t) {
      if (state_.full(t)) {
        continue;
      }
      const auto cand = std::make_pair(graph.distance(trap, t), t);
      if (!best || cand < *best) {
        best = cand;
      }
    }
    if (!best) {
      throw DeadlockError(fmt::format(
          "no room can be made in trap {}; occupancy {} / capacity {}: {}",
          trap, fmt::join(state_.occupancies(), ","), state_.spec().capacity,
          state_.describe()));
    }
    return graph.path(trap, best->second);
  }

  // Victim: fewest pending gates with ions of this trap, then fewest
  // swaps to the exit, then lowest index. Destination: prefer traps
  // other than `avoid`, then lower index.
  void evict(TrapId trap, const std::vector<TrapId>& open, TrapId avoid,
             std::vector<std::pair<Qubit, TrapId>>& evictions) {
    const auto& graph = state_.graph();
    std::optional<std::tuple<std::size_t, int, std::size_t, TrapId, Qubit>> best;
    for (const Qubit v : state_.chain(trap)) {
      if (std::find(pinned_.begin(), pinned_.end(), v) != pinned_.end()) {
        continue;
      }
      const auto ties = pending_.count_in_trap(v, trap, state_);
      for (const TrapId n : open) {
        const auto cand = std::make_tuple(
            ties, n == avoid ? 1 : 0,
            state_.swaps_to_boundary(v, graph.exit_side(trap, n)), n, v);
        if (!best || cand < *best) {
          best = cand;
        }
      }
    }
    if (!best) {
      throw DeadlockError(fmt::format(
          "trap {} holds only pinned ions and is full: {}", trap,
          state_.describe()));
    }
    const TrapId dest = std::get<3>(*best);
    const Qubit victim = std::get<4>(*best);
    hop(victim, dest);
    evictions.emplace_back(victim, dest);
  }

  void emit(const PhysOp& op) {
    state_.apply(op);
    ops_.push_back(op);
  }

  DeviceState state_;
  const PendingGates& pending_;
  std::vector<Qubit> pinned_;
  std::vector<PhysOp> ops_;
};

}  // namespace

Resolution resolve_gate(const Gate& gate, const DeviceState& state,
                        const PendingGates& pending) {
  Resolution r;
  r.decision = select_mover(gate, state, pending);
  auto& d = r.decision;
  MoveBuilder builder(state, pending, {d.mover, d.partner});
  for (std::size_t i = 0; i + 1 < d.path.size(); ++i) {
    builder.make_room(d.path[i + 1], d.path[i], d.evictions);
    builder.hop(d.mover, d.path[i + 1]);
  }
  r.ops = std::move(builder.ops());
  return r;
}

}  // namespace qccd
