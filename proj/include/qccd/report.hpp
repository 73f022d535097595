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
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qccd/architecture.hpp"
#include "qccd/placement.hpp"
#include "qccd/scheduler.hpp"

namespace qccd::report {

struct RunRecord {
  std::string benchmark;  // e.g. "qft-64"
  Strategy strategy = Strategy::sta;
  DeviceSpec device;
  std::size_t n_qubits = 0;
  std::uint64_t seed = 0;
  Metrics metrics;
  double compile_seconds = 0.0;  // wall clock; excluded from CSV by default
  std::string status = "ok";     // anything else marks a skipped point
  std::string invocation;

  [[nodiscard]] bool ok() const { return status == "ok"; }
};

/// Mean and sample standard deviation.
struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

/// Welford accumulation; stddev uses n-1 and is 0 for fewer than 2 values.
Summary summarize(std::span<const double> values);

struct EmitOptions {
  bool wall_clock = false;  // adds a compile_s column (not reproducible)
  bool summaries = true;    // mean/stddev rows after multi-seed groups
};

enum class Format { csv, json };

Format parse_format(std::string_view s);

void write_csv(std::ostream& out, const std::vector<RunRecord>& records,
               const EmitOptions& options = {});
void write_json(std::ostream& out, const std::vector<RunRecord>& records,
                const EmitOptions& options = {});
/// Writes to `path`; throws std::runtime_error on I/O failure.
void emit(const std::vector<RunRecord>& records, Format format,
          const std::string& path, const EmitOptions& options = {});

/// Reads back the per-run rows of a CSV written by write_csv (summary rows
/// are skipped).
std::vector<RunRecord> read_csv(std::string_view text);

struct ComparisonRow {
  std::string benchmark;
  std::string device;
  std::size_t n_qubits = 0;
  double baseline_time = 0.0;   // mean over seeds
  double candidate_time = 0.0;
  double delta_time_pct = 0.0;  // positive: candidate faster
  double baseline_shuttles = 0.0;
  double candidate_shuttles = 0.0;
  double baseline_swaps = 0.0;
  double candidate_swaps = 0.0;
};

/// Pairs records by (benchmark, device, qubits) and reports the relative
/// time saving of `candidate` over `baseline`. Throws InputError when a
/// configuration is present for only one of the two strategies.
std::vector<ComparisonRow> compare(const std::vector<RunRecord>& records,
                                   Strategy baseline, Strategy candidate);

double delta_percent(double baseline, double candidate);

void write_comparison(std::ostream& out, const std::vector<ComparisonRow>& rows,
                      Strategy baseline, Strategy candidate);

}  // namespace qccd::report
