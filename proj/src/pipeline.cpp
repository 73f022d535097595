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


#include "qccd/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <thread>
#include <utility>

#include <fmt/format.h>

#include "qccd/errors.hpp"

namespace qccd {

CompileOutput run_compile(const Circuit& c, const DeviceSpec& spec,
                          std::string benchmark, const CompileOptions& options,
                          std::string invocation) {
  const auto t0 = std::chrono::steady_clock::now();
  Placement p = place(options.strategy, c, spec, options.seed);
  ScheduleResult result =
      schedule(c, p, spec, SchedulerOptions{options.lookahead});
  const auto t1 = std::chrono::steady_clock::now();

  const Verdict verdict = verify_schedule(result.schedule, c, p, spec);
  if (!verdict.ok()) {
    throw VerificationError(fmt::format("schedule verification failed ({}) at op {}: {}",
                                        to_string(verdict.violation),
                                        verdict.op_index, verdict.message));
  }

  report::RunRecord rec;
  rec.benchmark = std::move(benchmark);
  rec.strategy = options.strategy;
  rec.device = spec;
  rec.n_qubits = c.n_qubits();
  rec.seed = options.seed;
  rec.metrics = result.metrics;
  rec.compile_seconds = std::chrono::duration<double>(t1 - t0).count();
  rec.invocation = std::move(invocation);
  return CompileOutput{std::move(p), std::move(result), std::move(rec)};
}

std::string_view to_string(SweepKind k) {
  switch (k) {
    case SweepKind::strong: return "strong";
    case SweepKind::weak: return "weak";
    case SweepKind::excess_fixed_ions: return "excess-fixed";
    case SweepKind::excess_var_ions: return "excess-var";
  }
  return "?";
}

SweepSpec SweepSpec::defaults(SweepKind kind) {
  SweepSpec s;
  s.kind = kind;
  switch (kind) {
    case SweepKind::strong:
      s.min_traps = 2;
      s.max_traps = 14;
      s.ions_per_trap = 17;
      break;
    case SweepKind::weak:
      s.min_traps = 2;
      s.max_traps = 26;
      s.total_ions = 180;
      s.qubits = 128;
      break;
    case SweepKind::excess_fixed_ions:
    case SweepKind::excess_var_ions:
      s.ions_per_trap = 14;
      s.qubits = 64;
      break;
  }
  return s;
}

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

DeviceSpec make_device(Topology topo, std::size_t traps, std::size_t capacity,
                       std::size_t excess) {
  DeviceSpec d;
  d.topology = topo;
  d.n_traps = traps;
  d.capacity = capacity;
  d.excess_capacity = excess;
  return d;
}

}  // namespace

std::vector<SweepPoint> sweep_points(const SweepSpec& sw) {
  std::vector<SweepPoint> points;
  switch (sw.kind) {
    case SweepKind::strong:
      for (std::size_t t = sw.min_traps; t <= sw.max_traps; ++t) {
        DeviceSpec d = make_device(sw.topology, t, sw.ions_per_trap, sw.excess);
        std::size_t n = 0;
        if (sw.ions_per_trap > sw.excess) {
          n = bench::largest_valid_size(sw.family, d.total_usable());
        }
        points.push_back({t, d, n});
      }
      break;
    case SweepKind::weak:
      for (std::size_t t = sw.min_traps; t <= sw.max_traps; ++t) {
        points.push_back({t,
                          make_device(sw.topology, t,
                                      ceil_div(sw.total_ions, t), sw.excess),
                          sw.qubits});
      }
      break;
    case SweepKind::excess_fixed_ions:
      for (std::size_t e = sw.min_excess; e <= sw.max_excess; ++e) {
        points.push_back({e,
                          make_device(sw.topology, sw.fixed_traps,
                                      sw.ions_per_trap + e, e),
                          sw.qubits});
      }
      break;
    case SweepKind::excess_var_ions:
      for (std::size_t e = sw.min_excess; e <= sw.max_excess; ++e) {
        if (e >= sw.ions_per_trap) {
          throw InputError(fmt::format(
              "excess {} leaves no usable slots in {}-ion traps", e,
              sw.ions_per_trap));
        }
        const std::size_t traps =
            std::max<std::size_t>(2, ceil_div(sw.qubits, sw.ions_per_trap - e));
        points.push_back(
            {e, make_device(sw.topology, traps, sw.ions_per_trap, e),
             sw.qubits});
      }
      break;
  }
  return points;
}

namespace {

report::RunRecord run_point(const SweepSpec& sw, const SweepPoint& pt,
                            const CompileOptions& options,
                            const std::string& invocation) {
  report::RunRecord skipped;
  skipped.benchmark = fmt::format("{}-{}", bench::to_string(sw.family), pt.n_qubits);
  skipped.strategy = options.strategy;
  skipped.device = pt.device;
  skipped.n_qubits = pt.n_qubits;
  skipped.seed = options.seed;
  skipped.invocation = invocation;

  if (pt.n_qubits == 0) {
    skipped.status = "skipped: no valid benchmark size fits";
    return skipped;
  }
  if (pt.n_qubits > pt.device.total_usable()) {
    skipped.status = fmt::format("skipped: {} qubits exceed {} usable slots",
                                 pt.n_qubits, pt.device.total_usable());
    return skipped;
  }
  bench::BenchmarkSpec bs;
  bs.family = sw.family;
  bs.n_qubits = pt.n_qubits;
  bs.seed = sw.bench_seed;
  try {
    bs.validate();
  } catch (const InputError& e) {
    skipped.status = fmt::format("skipped: {}", e.what());
    return skipped;
  }
  const Circuit c = bench::generate(bs);
  return run_compile(c, pt.device, skipped.benchmark, options, invocation)
      .record;
}

}  // namespace

std::vector<report::RunRecord> run_sweep(const SweepSpec& sw,
                                         const CompileOptions& options,
                                         unsigned jobs,
                                         const std::string& invocation) {
  const std::vector<SweepPoint> points = sweep_points(sw);
  std::vector<report::RunRecord> out(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        out[i] = run_point(sw, points[i], options, invocation);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n_threads =
      std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::max<std::size_t>(1, points.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace qccd
