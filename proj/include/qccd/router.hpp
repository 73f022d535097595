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

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qccd/architecture.hpp"
#include "qccd/circuit.hpp"

namespace qccd {

/// Remaining two-qubit interactions of every qubit, in program order.
/// Gates on a qubit complete in program order, so each qubit keeps a
/// cursor into its own gate list.
class PendingGates {
 public:
  explicit PendingGates(const Circuit& c,
                        std::optional<std::size_t> lookahead = std::nullopt);

  /// Marks a gate as executed.
  void complete(const Gate& g);

  /// Pending partners of q within the lookahead window (with repeats).
  [[nodiscard]] std::vector<Qubit> partners(Qubit q) const;

  /// Number of pending gates of q whose partner currently sits in trap t.
  [[nodiscard]] std::size_t count_in_trap(Qubit q, TrapId t,
                                          const DeviceState& state) const;

 private:
  struct Entry {
    std::size_t gate;
    Qubit partner;
  };
  std::vector<std::vector<Entry>> per_qubit_;
  std::vector<std::size_t> cursor_;
  std::optional<std::size_t> lookahead_;
};

struct MoveDecision {
  Qubit mover = 0;
  Qubit partner = 0;
  TrapId dest_trap = 0;
  std::vector<TrapId> path;  // mover's trap first, destination last
  std::vector<std::pair<Qubit, TrapId>> evictions;
};

/// Chooses which operand of a split two-qubit gate travels. Each operand
/// scores (pending gates with ions in the partner's trap) minus (pending
/// gates with ions in its own trap); the higher score moves. Ties go to
/// the operand with fewer SWAPs to its exit boundary, then the lower index.
MoveDecision select_mover(const Gate& gate, const DeviceState& state,
                          const PendingGates& pending);

struct Resolution {
  MoveDecision decision;
  std::vector<PhysOp> ops;
};

/// Emits the SWAP and shuttle operations that bring the operands of `gate`
/// into one trap. Full traps along the path are first relieved by evicting
/// the resident with the fewest pending gates tied to that trap into a
/// non-full neighbour, or by shifting ions toward the nearest trap with room
/// when every neighbour is full. Throws DeadlockError when no room can be made.
Resolution resolve_gate(const Gate& gate, const DeviceState& state,
                        const PendingGates& pending);

}  // namespace qccd
