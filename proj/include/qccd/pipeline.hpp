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

#include "qccd/benchgen.hpp"
#include "qccd/placement.hpp"
#include "qccd/report.hpp"
#include "qccd/scheduler.hpp"

namespace qccd {

struct CompileOptions {
  Strategy strategy = Strategy::sta;
  std::uint64_t seed = 0;
  std::optional<std::size_t> lookahead;
};

struct CompileOutput {
  Placement placement;
  ScheduleResult result;
  report::RunRecord record;
};

/// Place, route and schedule `c` on `spec`, then replay the schedule with
/// verify_schedule. Throws VerificationError if the replay fails.
CompileOutput run_compile(const Circuit& c, const DeviceSpec& spec,
                          std::string benchmark, const CompileOptions& options,
                          std::string invocation = {});

enum class SweepKind { strong, weak, excess_fixed_ions, excess_var_ions };

std::string_view to_string(SweepKind k);

struct SweepSpec {
  SweepKind kind = SweepKind::strong;
  bench::Family family = bench::Family::qft;
  Topology topology = Topology::linear;
  std::uint64_t bench_seed = 1;  // QV and RND generators

  // strong / weak: trap count range
  std::size_t min_traps = 2;
  std::size_t max_traps = 14;
  // strong: ions per trap; excess sweeps: base ions per trap
  std::size_t ions_per_trap = 17;
  // weak: ions shared by all traps
  std::size_t total_ions = 180;
  std::size_t excess = 2;
  // excess sweeps: range of excess capacity, and the fixed trap count of
  // the fixed-ions regime
  std::size_t min_excess = 1;
  std::size_t max_excess = 10;
  std::size_t fixed_traps = 5;
  // logical qubits; strong sweeps fill every usable slot instead
  std::size_t qubits = 64;

  /// Defaults of each experiment: strong 2..14 traps x 17 ions; weak 180
  /// ions over 2..26 traps with 128 qubits; excess 1..10 with 5 traps of
  /// 14 ions (fixed) or 14-ion traps shrinking usable space (var).
  static SweepSpec defaults(SweepKind kind);
};

struct SweepPoint {
  std::size_t parameter = 0;  // traps, or excess capacity
  DeviceSpec device;
  std::size_t n_qubits = 0;
};

std::vector<SweepPoint> sweep_points(const SweepSpec& sweep);

/// Runs every sweep point, up to `jobs` at a time. Output is ordered by
/// sweep parameter. Points whose benchmark does not fit produce a record
/// with a "skipped: ..." status.
std::vector<report::RunRecord> run_sweep(const SweepSpec& sweep,
                                         const CompileOptions& options,
                                         unsigned jobs = 1,
                                         const std::string& invocation = {});

}  // namespace qccd
