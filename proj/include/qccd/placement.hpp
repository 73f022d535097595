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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qccd/architecture.hpp"
#include "qccd/circuit.hpp"

namespace qccd {

/// Logical qubit -> (trap, chain position). Chains are ordered left to
/// right.
class Placement {
 public:
  Placement() = default;
  Placement(std::size_t n_traps, std::size_t n_qubits)
      : chains_(n_traps), where_(n_qubits) {}

  [[nodiscard]] std::size_t n_traps() const { return chains_.size(); }
  [[nodiscard]] std::size_t n_qubits() const { return where_.size(); }
  [[nodiscard]] bool is_placed(Qubit q) const { return where_.at(q).has_value(); }
  [[nodiscard]] TrapId trap_of(Qubit q) const;
  [[nodiscard]] std::size_t position_of(Qubit q) const;
  [[nodiscard]] const std::vector<Qubit>& chain(TrapId t) const {
    return chains_.at(t);
  }
  [[nodiscard]] const std::vector<std::vector<Qubit>>& chains() const {
    return chains_;
  }
  [[nodiscard]] std::size_t count(TrapId t) const { return chains_.at(t).size(); }
  [[nodiscard]] bool complete() const;

  /// Appends q at the right end of trap t.
  void append(Qubit q, TrapId t);
  /// Moves q to one end of its own chain, shifting the others inward.
  void move_to_boundary(Qubit q, Side side);

  /// Loads the chains into a fresh device state.
  [[nodiscard]] DeviceState to_state(const DeviceSpec& spec) const;

  /// Builds a placement from explicit chains (e.g. a hand-made layout).
  static Placement from_chains(std::vector<std::vector<Qubit>> chains,
                               std::size_t n_qubits);

  bool operator==(const Placement&) const = default;

 private:
  std::vector<std::vector<Qubit>> chains_;
  std::vector<std::optional<TrapId>> where_;
};

/// One entry of the interaction-ratio list: ratio = degree / n_qubits.
struct RatioEntry {
  Qubit qubit = 0;
  std::size_t degree = 0;    // distinct partners
  std::size_t strength = 0;  // total two-qubit gates
  std::size_t n_qubits = 1;

  [[nodiscard]] double ratio() const {
    return static_cast<double>(degree) / static_cast<double>(n_qubits);
  }
  bool operator==(const RatioEntry&) const = default;
};

/// Qubits with at least one partner, sorted by ratio descending, then
/// strength descending, then index ascending.
std::vector<RatioEntry> compute_ratios(const InteractionGraph& g,
                                       std::size_t n_qubits);

struct TemporalEntry {
  QubitPair pair;
  double weight = 0.0;
  bool operator==(const TemporalEntry&) const = default;
};

/// Temporal interaction weight per pair: the sum over slices s in which
/// the pair interacts of 2^-s. Sorted by weight descending, ties by pair.
std::vector<TemporalEntry> compute_temporal_weights(const Circuit& c,
                                                    const SliceList& slices);

/// Mutable state threaded through the allocation of one circuit.
class StaContext {
 public:
  StaContext(const Circuit& c, const DeviceSpec& spec);

  [[nodiscard]] const std::vector<RatioEntry>& ratios() const { return ratios_; }
  [[nodiscard]] const std::vector<TemporalEntry>& temporal() const {
    return temporal_;
  }
  [[nodiscard]] bool in_ratio_list(Qubit q) const { return in_ratio_[q]; }
  [[nodiscard]] bool pair_live(std::size_t i) const { return live_[i]; }
  [[nodiscard]] std::optional<Qubit> ratio_head() const;
  [[nodiscard]] const Placement& placement() const { return placement_; }
  [[nodiscard]] Placement& placement() { return placement_; }
  [[nodiscard]] const DeviceSpec& spec() const { return spec_; }
  [[nodiscard]] const TrapGraph& graph() const { return graph_; }

  /// Index of the first live pair containing q, if any.
  [[nodiscard]] std::optional<std::size_t> first_pair_of(Qubit q) const;
  void remove_from_ratios(Qubit q) { in_ratio_[q] = false; }
  void remove_pair(std::size_t i) { live_[i] = false; }

  /// Places q alongside an already placed partner: the nearest trap with
  /// a free usable slot (same trap first), overflowing into excess space
  /// only when no usable slot is left.
  void place_near(Qubit q, TrapId partner_trap);
  /// Places two unplaced qubits, co-trapped when possible.
  void place_pair(Qubit first, Qubit second);
  /// Round-robin over traps for qubits without interactions.
  void place_isolated(Qubit q);

  [[nodiscard]] std::size_t usable_free(TrapId t) const;
  [[nodiscard]] std::size_t physical_free(TrapId t) const;

 private:
  const DeviceSpec& spec_;
  TrapGraph graph_;
  Placement placement_;
  std::vector<RatioEntry> ratios_;
  std::vector<bool> in_ratio_;
  std::vector<TemporalEntry> temporal_;
  std::vector<bool> live_;
  TrapId next_round_robin_ = 0;
};

/// Allocates q1 together with its temporally closest partner, first
/// recursing on the partner when it has a stronger pair elsewhere.
void map_qubit(Qubit q1, StaContext& ctx);

/// Walks pairs from lowest to highest weight and moves every split pair to
/// the facing boundaries of their traps. Trap membership is unchanged.
void order_qubits(const std::vector<TemporalEntry>& ascending,
                  const TrapGraph& graph, Placement& p);

Placement sta_place(const Circuit& c, const DeviceSpec& spec);
Placement greedy_place(const Circuit& c, const DeviceSpec& spec);
Placement random_place(const Circuit& c, const DeviceSpec& spec,
                       std::uint64_t seed);

enum class Strategy { sta, greedy, random };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view s);

Placement place(Strategy s, const Circuit& c, const DeviceSpec& spec,
                std::uint64_t seed = 0);

}  // namespace qccd
