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


#include "qccd/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qccd/errors.hpp"
#include "qccd/pipeline.hpp"

namespace qccd {

namespace {

namespace fs = std::filesystem;

struct DeviceFlags {
  std::string file;
  std::string topology = "linear";
  std::size_t traps = 6;
  std::size_t capacity = 17;
  std::size_t excess = 2;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--device", file, "device description file");
    cmd->add_option("--topology", topology, "linear or ring")
        ->capture_default_str();
    cmd->add_option("--traps", traps, "number of traps")->capture_default_str();
    cmd->add_option("--capacity", capacity, "ions per trap")
        ->capture_default_str();
    cmd->add_option("--excess", excess, "excess capacity per trap")
        ->capture_default_str();
  }

  [[nodiscard]] DeviceSpec resolve() const {
    if (!file.empty()) {
      return load_device(file);
    }
    DeviceSpec d;
    d.topology = parse_topology(topology);
    d.n_traps = traps;
    d.capacity = capacity;
    d.excess_capacity = excess;
    d.validate();
    return d;
  }
};

struct BenchFlags {
  std::string family;
  std::size_t qubits = 0;
  std::optional<std::size_t> rounds;
  std::optional<std::size_t> gates;
  std::uint64_t seed = 1;

  [[nodiscard]] bench::BenchmarkSpec resolve() const {
    bench::BenchmarkSpec s;
    s.family = bench::parse_family(family);
    s.n_qubits = qubits;
    s.rounds = rounds;
    s.gates = gates;
    s.seed = seed;
    s.validate();
    return s;
  }
};

std::string join_invocation(const std::vector<std::string>& args) {
  std::string s = "qccd";
  for (const auto& a : args) {
    s += ' ';
    if (a.find_first_of(" \t\"") == std::string::npos && !a.empty()) {
      s += a;
    } else {
      s += '"' + a + '"';
    }
  }
  return s;
}

std::vector<Strategy> parse_strategies(const std::vector<std::string>& names) {
  std::vector<Strategy> out;
  for (const auto& n : names) {
    out.push_back(parse_strategy(n));
  }
  return out;
}

std::string format_ext(report::Format f) {
  return f == report::Format::csv ? "csv" : "json";
}

void write_records(const std::vector<report::RunRecord>& records,
                   report::Format format, const std::string& out_dir,
                   const std::string& stem, const report::EmitOptions& emit_opts,
                   std::ostream& out) {
  if (out_dir.empty()) {
    if (format == report::Format::csv) {
      report::write_csv(out, records, emit_opts);
    } else {
      report::write_json(out, records, emit_opts);
    }
    return;
  }
  fs::create_directories(out_dir);
  report::emit(records, format,
               (fs::path(out_dir) / (stem + "." + format_ext(format))).string(),
               emit_opts);
}

std::uint64_t seed_for(Strategy s, std::uint64_t base, std::size_t k) {
  return s == Strategy::random ? base + k : base;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Trapped-ion QCCD compiler with spatio-temporal qubit placement",
               "qccd"};
  app.require_subcommand(1);

  std::vector<std::string> placements{"sta"};
  std::uint64_t seed = 0;
  std::size_t seed_count = 1;
  std::optional<std::size_t> lookahead;
  std::string out_dir;
  std::string format_name = "csv";
  bool wall_clock = false;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--placement", placements, "sta, greedy or random")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--seed", seed, "placement seed")->capture_default_str();
    cmd->add_option("--seeds", seed_count,
                    "number of consecutive seeds for random placement")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--lookahead", lookahead,
                    "pending two-qubit gates per qubit seen by the router");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--format", format_name, "csv or json")
        ->capture_default_str();
    cmd->add_flag("--wall-clock", wall_clock,
                  "add compile wall-clock seconds to records");
  };

  // compile
  auto* compile = app.add_subcommand("compile", "compile one circuit");
  std::string circuit_file;
  BenchFlags compile_bench;
  DeviceFlags compile_device;
  compile->add_option("circuit", circuit_file,
                      "circuit file (native text or OpenQASM 2)");
  compile->add_option("--bench", compile_bench.family,
                      "generate a benchmark family instead of reading a file");
  compile->add_option("--qubits", compile_bench.qubits, "benchmark qubits");
  compile->add_option("--rounds", compile_bench.rounds, "QV rounds");
  compile->add_option("--gates", compile_bench.gates, "RND two-qubit gates");
  compile->add_option("--bench-seed", compile_bench.seed,
                      "QV/RND generator seed")
      ->capture_default_str();
  compile_device.add_to(compile);
  add_run_flags(compile);
  bool print_schedule = false;
  compile->add_flag("--schedule", print_schedule,
                    "print the schedule instead of records when --out is unset");

  // bench gen
  auto* bench_cmd = app.add_subcommand("bench", "benchmark circuits");
  bench_cmd->require_subcommand(1);
  auto* gen = bench_cmd->add_subcommand("gen", "generate a benchmark circuit");
  BenchFlags gen_flags;
  std::string gen_out;
  gen->add_option("--family", gen_flags.family, "ca, da, qaoa, qft, qv, rnd")
      ->required();
  gen->add_option("--qubits", gen_flags.qubits, "logical qubits")->required();
  gen->add_option("--rounds", gen_flags.rounds, "QV rounds");
  gen->add_option("--gates", gen_flags.gates, "RND two-qubit gates");
  gen->add_option("--seed", gen_flags.seed, "generator seed")
      ->capture_default_str();
  gen->add_option("-o,--output", gen_out, "output file (stdout if unset)");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "scaling experiments");
  sweep_cmd->require_subcommand(1);
  std::string sweep_family = "qft";
  std::string sweep_topology = "linear";
  std::string excess_mode = "fixed";
  std::uint64_t sweep_bench_seed = 1;
  std::optional<std::size_t> min_traps, max_traps, ions, total_ions, excess,
      min_excess, max_excess, fixed_traps, sweep_qubits;
  auto add_sweep_flags = [&](CLI::App* cmd) {
    add_run_flags(cmd);
    cmd->add_option("--family", sweep_family, "benchmark family")
        ->capture_default_str();
    cmd->add_option("--topology", sweep_topology, "linear or ring")
        ->capture_default_str();
    cmd->add_option("--bench-seed", sweep_bench_seed, "QV/RND generator seed")
        ->capture_default_str();
    cmd->add_option("--jobs", jobs, "parallel sweep points");
  };
  auto* strong = sweep_cmd->add_subcommand("strong", "fixed ions per trap");
  add_sweep_flags(strong);
  strong->add_option("--min-traps", min_traps);
  strong->add_option("--max-traps", max_traps);
  strong->add_option("--ions", ions, "ions per trap");
  strong->add_option("--excess", excess, "excess capacity per trap");
  auto* weak = sweep_cmd->add_subcommand("weak", "fixed total ions");
  add_sweep_flags(weak);
  weak->add_option("--min-traps", min_traps);
  weak->add_option("--max-traps", max_traps);
  weak->add_option("--total-ions", total_ions);
  weak->add_option("--excess", excess, "excess capacity per trap");
  weak->add_option("--qubits", sweep_qubits, "logical qubits");
  auto* excess_sweep =
      sweep_cmd->add_subcommand("excess", "growing excess capacity");
  add_sweep_flags(excess_sweep);
  excess_sweep->add_option("--mode", excess_mode, "fixed or var")
      ->check(CLI::IsMember({"fixed", "var"}))
      ->capture_default_str();
  excess_sweep->add_option("--min-excess", min_excess);
  excess_sweep->add_option("--max-excess", max_excess);
  excess_sweep->add_option("--ions", ions, "base ions per trap");
  excess_sweep->add_option("--traps", fixed_traps, "trap count (fixed mode)");
  excess_sweep->add_option("--qubits", sweep_qubits, "logical qubits");

  // compare
  auto* compare_cmd =
      app.add_subcommand("compare", "compare two strategies from CSV records");
  std::vector<std::string> compare_files;
  std::string baseline_name = "greedy";
  std::string candidate_name = "sta";
  std::string compare_out;
  compare_cmd->add_option("records", compare_files, "CSV record files")
      ->required();
  compare_cmd->add_option("--baseline", baseline_name)->capture_default_str();
  compare_cmd->add_option("--candidate", candidate_name)
      ->capture_default_str();
  compare_cmd->add_option("-o,--output", compare_out, "output file");

  std::vector<std::string> argv_store{"qccd"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) {
    argv.push_back(a.c_str());
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  const std::string invocation = join_invocation(args);

  try {
    const report::Format format = report::parse_format(format_name);
    const report::EmitOptions emit_opts{wall_clock, true};

    if (*compile) {
      if (circuit_file.empty() == compile_bench.family.empty()) {
        throw InputError("compile needs exactly one of <circuit> or --bench");
      }
      Circuit c(0);
      std::string name;
      if (!circuit_file.empty()) {
        c = load_circuit(circuit_file);
        name = fs::path(circuit_file).stem().string();
      } else {
        const auto spec = compile_bench.resolve();
        c = bench::generate(spec);
        name = fmt::format("{}-{}", bench::to_string(spec.family),
                           spec.n_qubits);
      }
      const DeviceSpec device = compile_device.resolve();
      std::vector<report::RunRecord> records;
      for (Strategy s : parse_strategies(placements)) {
        const std::size_t runs = s == Strategy::random ? seed_count : 1;
        for (std::size_t k = 0; k < runs; ++k) {
          const CompileOptions opts{s, seed_for(s, seed, k), lookahead};
          CompileOutput res = run_compile(c, device, name, opts, invocation);
          if (!out_dir.empty()) {
            fs::create_directories(out_dir);
            std::ofstream f(fs::path(out_dir) /
                            fmt::format("schedule-{}-{}-seed{}.csv", name,
                                        to_string(s), opts.seed));
            if (!f) {
              throw InputError("cannot write schedule to '" + out_dir + "'");
            }
            write_schedule(f, res.result.schedule);
          } else if (print_schedule) {
            write_schedule(out, res.result.schedule);
          }
          records.push_back(std::move(res.record));
        }
      }
      if (!print_schedule || !out_dir.empty()) {
        write_records(records, format, out_dir, "records", emit_opts, out);
      }
      return kExitOk;
    }

    if (*bench_cmd) {
      const Circuit c = bench::generate(gen_flags.resolve());
      if (gen_out.empty()) {
        out << c.to_text();
      } else {
        std::ofstream f(gen_out);
        if (!f) {
          throw InputError("cannot write '" + gen_out + "'");
        }
        f << c.to_text();
      }
      return kExitOk;
    }

    if (*sweep_cmd) {
      SweepKind kind = SweepKind::strong;
      if (*weak) {
        kind = SweepKind::weak;
      } else if (*excess_sweep) {
        kind = excess_mode == "fixed" ? SweepKind::excess_fixed_ions
                                      : SweepKind::excess_var_ions;
      }
      SweepSpec sw = SweepSpec::defaults(kind);
      sw.family = bench::parse_family(sweep_family);
      sw.topology = parse_topology(sweep_topology);
      sw.bench_seed = sweep_bench_seed;
      if (min_traps) sw.min_traps = *min_traps;
      if (max_traps) sw.max_traps = *max_traps;
      if (ions) sw.ions_per_trap = *ions;
      if (total_ions) sw.total_ions = *total_ions;
      if (excess) sw.excess = *excess;
      if (min_excess) sw.min_excess = *min_excess;
      if (max_excess) sw.max_excess = *max_excess;
      if (fixed_traps) sw.fixed_traps = *fixed_traps;
      if (sweep_qubits) sw.qubits = *sweep_qubits;
      if (sw.min_traps == 0 || sw.min_traps > sw.max_traps ||
          sw.min_excess > sw.max_excess) {
        throw InputError("empty sweep range");
      }

      std::vector<report::RunRecord> records;
      for (Strategy s : parse_strategies(placements)) {
        const std::size_t runs = s == Strategy::random ? seed_count : 1;
        for (std::size_t k = 0; k < runs; ++k) {
          const CompileOptions opts{s, seed_for(s, seed, k), lookahead};
          auto part = run_sweep(sw, opts, jobs, invocation);
          for (const auto& r : part) {
            if (!r.ok()) {
              err << fmt::format("warning: {} on {}: {}\n", r.benchmark,
                                 r.device.summary(), r.status);
            }
          }
          records.insert(records.end(), part.begin(), part.end());
        }
      }
      write_records(records, format, out_dir,
                    fmt::format("sweep-{}-{}", to_string(kind), sweep_family),
                    emit_opts, out);
      return kExitOk;
    }

    if (*compare_cmd) {
      std::vector<report::RunRecord> records;
      for (const auto& file : compare_files) {
        std::ifstream f(file);
        if (!f) {
          throw InputError("cannot open '" + file + "'");
        }
        std::stringstream ss;
        ss << f.rdbuf();
        auto part = report::read_csv(ss.str());
        records.insert(records.end(), part.begin(), part.end());
      }
      const Strategy b = parse_strategy(baseline_name);
      const Strategy cand = parse_strategy(candidate_name);
      const auto rows = report::compare(records, b, cand);
      if (compare_out.empty()) {
        report::write_comparison(out, rows, b, cand);
      } else {
        std::ofstream f(compare_out);
        if (!f) {
          throw InputError("cannot write '" + compare_out + "'");
        }
        report::write_comparison(f, rows, b, cand);
      }
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const CapacityError& e) {
    err << "placement error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DeadlockError& e) {
    err << "routing deadlock: " << e.what() << '\n';
    return kExitDeadlock;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const IllegalOpError& e) {
    err << "illegal operation: " << e.what() << '\n';
    return kExitVerification;
  } catch (const fs::filesystem_error& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace qccd
