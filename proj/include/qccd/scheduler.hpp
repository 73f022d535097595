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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qccd/architecture.hpp"
#include "qccd/circuit.hpp"
#include "qccd/placement.hpp"

namespace qccd {

struct ScheduledOp {
  PhysOp op;
  double start = 0.0;  // seconds
  double end = 0.0;

  bool operator==(const ScheduledOp&) const = default;
};

/// Operations in commit order. Per trap, commit order equals time order.
struct Schedule {
  std::vector<ScheduledOp> ops;
  double makespan = 0.0;

  bool operator==(const Schedule&) const = default;
};

struct Metrics {
  std::size_t shuttles = 0;
  std::size_t swaps = 0;
  std::size_t gates_1q = 0;
  std::size_t gates_2q = 0;
  double total_time = 0.0;  // seconds, equals the makespan

  bool operator==(const Metrics&) const = default;
};

Metrics compute_metrics(const Schedule& s);

struct SchedulerOptions {
  /// Restricts the router's pending-gate window to the next k two-qubit
  /// gates per qubit. Unlimited when empty.
  std::optional<std::size_t> lookahead;
};

struct ScheduleResult {
  Schedule schedule;
  Metrics metrics;
};

/// Earliest-ready gate-first list scheduling. At each event time the ready
/// gates are scanned in program order and every gate whose traps are idle
/// is committed, preceded by the router's movement ops when its operands
/// sit in different traps. A trap runs one operation at a time; a shuttle
/// occupies both of its traps.
ScheduleResult schedule(const Circuit& c, const Placement& p,
                        const DeviceSpec& spec,
                        const SchedulerOptions& options = {});

enum class Violation {
  none,
  illegal_op,      // state-machine legality or wrong duration
  gate_coverage,   // circuit gate missing, duplicated, or operands split
  qubit_order,     // per-qubit program order broken
  trap_overlap,    // two ops on one trap overlap in time
  capacity,        // a trap exceeds its capacity
};

std::string_view to_string(Violation v);

struct Verdict {
  Violation violation = Violation::none;
  std::size_t op_index = 0;  // index into Schedule::ops
  std::string message;

  [[nodiscard]] bool ok() const { return violation == Violation::none; }
  explicit operator bool() const { return ok(); }
};

/// Replays the schedule from the initial placement and reports the first
/// violation found, in start-time order.
Verdict verify_schedule(const Schedule& s, const Circuit& c, const Placement& p,
                        const DeviceSpec& spec);

/// Writes `start_us,end_us,kind,qubits,traps` records, one op per line.
void write_schedule(std::ostream& out, const Schedule& s);
/// Writes `key=value` lines.
void write_metrics(std::ostream& out, const Metrics& m);

}  // namespace qccd
