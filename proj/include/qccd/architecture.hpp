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
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qccd/errors.hpp"

namespace qccd {

enum class Topology { linear, ring };

std::string_view to_string(Topology t);
Topology parse_topology(std::string_view s);

/// Operation durations in seconds.
struct TimingModel {
  double t_1q = 10e-6;
  double t_2q_base = 100e-6;
  double t_2q_slope = 0.05;   // per additional ion in the trap
  double t_swap_factor = 3.0; // a SWAP costs this many two-qubit gates
  double t_split = 80e-6;
  double t_move = 5e-6;       // per trap-graph edge
  double t_merge = 80e-6;

  void validate() const;
  bool operator==(const TimingModel&) const = default;
};

struct DeviceSpec {
  Topology topology = Topology::linear;
  std::size_t n_traps = 1;
  std::size_t capacity = 1;
  std::size_t excess_capacity = 0;
  TimingModel timing{};

  /// Slots per trap available to the initial placement.
  [[nodiscard]] std::size_t usable_capacity() const {
    return capacity - excess_capacity;
  }
  [[nodiscard]] std::size_t total_usable() const {
    return n_traps * usable_capacity();
  }
  [[nodiscard]] std::size_t total_capacity() const {
    return n_traps * capacity;
  }
  void validate() const;
  [[nodiscard]] std::string summary() const;
  bool operator==(const DeviceSpec&) const = default;
};

/// Parses the key-value device file: `topology`, `traps`, `capacity`,
/// `excess_capacity` and an optional `[timing]` table. Unknown keys throw.
DeviceSpec parse_device(std::string_view text);
DeviceSpec load_device(const std::string& path);

/// Which end of a trap's chain an ion sits at. Chains run left to right
/// along increasing trap index; on a ring trap T-1's right end faces trap 0.
enum class Side { left, right };

inline Side opposite(Side s) { return s == Side::left ? Side::right : Side::left; }

class TrapGraph {
 public:
  TrapGraph(Topology topology, std::size_t n_traps);

  [[nodiscard]] std::size_t size() const { return n_traps_; }
  [[nodiscard]] Topology topology() const { return topology_; }
  /// Neighbours in (right, left) order, deduplicated.
  [[nodiscard]] const std::vector<TrapId>& neighbours(TrapId t) const {
    return adjacency_.at(t);
  }
  [[nodiscard]] bool adjacent(TrapId a, TrapId b) const;
  /// Hop count between traps (BFS over unit-weight edges).
  [[nodiscard]] std::size_t distance(TrapId a, TrapId b) const {
    return dist_.at(a).at(b);
  }
  /// Shortest trap sequence from a to b inclusive. On a ring, equal-length
  /// routes resolve towards increasing index.
  [[nodiscard]] std::vector<TrapId> path(TrapId a, TrapId b) const;
  /// Trap reached by leaving `t` through its `side` boundary, if any.
  [[nodiscard]] std::optional<TrapId> across(TrapId t, Side side) const;
  /// Boundary of `from` through which an ion leaves towards adjacent `to`.
  [[nodiscard]] Side exit_side(TrapId from, TrapId to) const;
  /// Boundary of `from` on the first hop of the shortest path to `to`.
  [[nodiscard]] Side facing_side(TrapId from, TrapId to) const;
  [[nodiscard]] std::size_t edge_count() const;

 private:
  Topology topology_;
  std::size_t n_traps_;
  std::vector<std::vector<TrapId>> adjacency_;
  std::vector<std::vector<std::size_t>> dist_;
  std::vector<std::vector<TrapId>> parent_;  // parent_[src][v]: BFS tree
};

enum class OpKind { gate1, gate2, swap, shuttle };

std::string_view to_string(OpKind k);

inline constexpr std::size_t kNoGate = std::numeric_limits<std::size_t>::max();

struct PhysOp {
  OpKind kind = OpKind::gate1;
  Qubit a = 0;             // gate operand, mover, or left ion of a swap
  Qubit b = 0;             // second gate operand or right ion of a swap
  TrapId trap = 0;         // host trap, or shuttle source
  TrapId dest = 0;         // shuttle destination
  std::size_t pos = 0;     // swap acts on chain positions pos, pos+1
  Side side = Side::right; // shuttle: source boundary the ion leaves by
  std::size_t gate = kNoGate;  // circuit gate index for gate ops

  static PhysOp gate1(std::size_t gate_index, Qubit q, TrapId trap);
  static PhysOp gate2(std::size_t gate_index, Qubit q0, Qubit q1, TrapId trap);
  static PhysOp swap(TrapId trap, std::size_t pos, Qubit left, Qubit right);
  static PhysOp shuttle(Qubit q, TrapId from, TrapId to, Side side);

  [[nodiscard]] bool is_gate() const {
    return kind == OpKind::gate1 || kind == OpKind::gate2;
  }
  [[nodiscard]] std::vector<Qubit> qubits() const;
  /// Traps the operation occupies while running.
  [[nodiscard]] std::vector<TrapId> traps_held() const;

  bool operator==(const PhysOp&) const = default;
};

/// Per-trap ordered ion chains. Value type; copies share the trap graph.
class DeviceState {
 public:
  explicit DeviceState(const DeviceSpec& spec);

  [[nodiscard]] const DeviceSpec& spec() const { return *spec_; }
  [[nodiscard]] const TrapGraph& graph() const { return *graph_; }
  [[nodiscard]] std::size_t n_traps() const { return chains_.size(); }

  [[nodiscard]] const std::vector<Qubit>& chain(TrapId t) const {
    return chains_.at(t);
  }
  [[nodiscard]] std::size_t occupancy(TrapId t) const {
    return chains_.at(t).size();
  }
  [[nodiscard]] std::vector<std::size_t> occupancies() const;
  [[nodiscard]] bool full(TrapId t) const {
    return occupancy(t) >= spec_->capacity;
  }
  [[nodiscard]] bool contains(Qubit q) const;
  [[nodiscard]] TrapId trap_of(Qubit q) const;
  [[nodiscard]] std::size_t position_of(Qubit q) const;
  [[nodiscard]] std::size_t ion_count() const;
  /// SWAPs needed to bring q to the given boundary of its trap.
  [[nodiscard]] std::size_t swaps_to_boundary(Qubit q, Side side) const;

  /// Appends q at the right end of trap t (initial loading).
  void load(Qubit q, TrapId t);

  /// Applies op in place. Throws IllegalOpError naming the violated
  /// precondition; the state is unchanged on error.
  void apply(const PhysOp& op);

  /// Human-readable chain dump, e.g. "[0 2 | 1 3 4]".
  [[nodiscard]] std::string describe() const;

  bool operator==(const DeviceState& o) const { return chains_ == o.chains_; }

 private:
  void check_gate_trap(const PhysOp& op, Qubit q) const;

  std::shared_ptr<const DeviceSpec> spec_;
  std::shared_ptr<const TrapGraph> graph_;
  std::vector<std::vector<Qubit>> chains_;
  std::vector<TrapId> trap_of_;  // kUnplaced when absent
};

/// Pure transition: returns the successor state.
DeviceState apply_op(DeviceState state, const PhysOp& op);

DeviceState build_device(const DeviceSpec& spec);

std::size_t trap_distance(const DeviceState& state, TrapId a, TrapId b);

/// Duration in seconds; `occupancy` gives the ion count per trap at the
/// time the op starts.
double op_duration(const TimingModel& tm, const PhysOp& op,
                   std::span<const std::size_t> occupancy);

/// Two-qubit gate time in a trap holding n ions.
double two_qubit_duration(const TimingModel& tm, std::size_t n_ions);

}  // namespace qccd
