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

#include "qccd/report.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

namespace qccd::report {

Summary summarize(std::span<const double> values) {
  Summary s;
  double m2 = 0.0;
  for (const double x : values) {
    ++s.count;
    const double delta = x - s.mean;
    s.mean += delta / static_cast<double>(s.count);
    m2 += delta * (x - s.mean);
  }
  if (s.count > 1) {
    s.stddev = std::sqrt(m2 / static_cast<double>(s.count - 1));
  }
  return s;
}

Format parse_format(std::string_view s) {
  if (s == "csv") {
    return Format::csv;
  }
  if (s == "json") {
    return Format::json;
  }
  throw InputError("unknown format '" + std::string(s) +
                   "' (expected csv or json)");
}

namespace {

constexpr std::string_view kHeader =
    "benchmark,strategy,topology,traps,capacity,excess,qubits,seed,shuttles,"
    "swaps,gates_1q,gates_2q,time_s,status,invocation";

std::string quote(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) {
    return std::string(s);
  }
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

// Records sharing everything but the seed.
std::string group_key(const RunRecord& r) {
  return fmt::format("{}|{}|{}|{}|{}|{}|{}", r.benchmark, to_string(r.strategy),
                     to_string(r.device.topology), r.device.n_traps,
                     r.device.capacity, r.device.excess_capacity, r.n_qubits);
}

struct Group {
  const RunRecord* first = nullptr;
  std::vector<double> shuttles, swaps, time;
};

std::vector<Group> multi_seed_groups(const std::vector<RunRecord>& records) {
  std::vector<Group> groups;
  std::map<std::string, std::size_t> index;
  for (const auto& r : records) {
    if (!r.ok()) {
      continue;
    }
    auto [it, inserted] = index.emplace(group_key(r), groups.size());
    if (inserted) {
      groups.push_back(Group{&r, {}, {}, {}});
    }
    auto& g = groups[it->second];
    g.shuttles.push_back(static_cast<double>(r.metrics.shuttles));
    g.swaps.push_back(static_cast<double>(r.metrics.swaps));
    g.time.push_back(r.metrics.total_time);
  }
  std::erase_if(groups, [](const Group& g) { return g.time.size() < 2; });
  return groups;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<RunRecord>& records,
               const EmitOptions& options) {
  out << kHeader << (options.wall_clock ? ",compile_s\n" : "\n");
  for (const auto& r : records) {
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{},{:.9f},{},{}",
               quote(r.benchmark), to_string(r.strategy),
               to_string(r.device.topology), r.device.n_traps,
               r.device.capacity, r.device.excess_capacity, r.n_qubits, r.seed,
               r.metrics.shuttles, r.metrics.swaps, r.metrics.gates_1q,
               r.metrics.gates_2q, r.metrics.total_time, quote(r.status),
               quote(r.invocation));
    if (options.wall_clock) {
      fmt::print(out, ",{:.6f}", r.compile_seconds);
    }
    out << '\n';
  }
  if (!options.summaries) {
    return;
  }
  for (const auto& g : multi_seed_groups(records)) {
    const auto sh = summarize(g.shuttles);
    const auto sw = summarize(g.swaps);
    const auto t = summarize(g.time);
    const auto& r = *g.first;
    for (const bool mean : {true, false}) {
      fmt::print(out, "{},{},{},{},{},{},{},{},{:.6f},{:.6f},,,{:.9f},{},{}",
                 quote(r.benchmark), to_string(r.strategy),
                 to_string(r.device.topology), r.device.n_traps,
                 r.device.capacity, r.device.excess_capacity, r.n_qubits,
                 mean ? "mean" : "stddev", mean ? sh.mean : sh.stddev,
                 mean ? sw.mean : sw.stddev, mean ? t.mean : t.stddev,
                 fmt::format("summary-of-{}", t.count), quote(r.invocation));
      out << (options.wall_clock ? ",\n" : "\n");
    }
  }
}

void write_json(std::ostream& out, const std::vector<RunRecord>& records,
                const EmitOptions& options) {
  using nlohmann::ordered_json;
  auto fixed = [](double x, double scale) {
    return std::round(x * scale) / scale;
  };
  ordered_json runs = ordered_json::array();
  for (const auto& r : records) {
    ordered_json j;
    j["benchmark"] = r.benchmark;
    j["strategy"] = to_string(r.strategy);
    j["topology"] = to_string(r.device.topology);
    j["traps"] = r.device.n_traps;
    j["capacity"] = r.device.capacity;
    j["excess"] = r.device.excess_capacity;
    j["qubits"] = r.n_qubits;
    j["seed"] = r.seed;
    j["shuttles"] = r.metrics.shuttles;
    j["swaps"] = r.metrics.swaps;
    j["gates_1q"] = r.metrics.gates_1q;
    j["gates_2q"] = r.metrics.gates_2q;
    j["time_s"] = fixed(r.metrics.total_time, 1e9);
    j["status"] = r.status;
    j["invocation"] = r.invocation;
    if (options.wall_clock) {
      j["compile_s"] = fixed(r.compile_seconds, 1e6);
    }
    runs.push_back(std::move(j));
  }
  ordered_json doc;
  doc["runs"] = std::move(runs);
  if (options.summaries) {
    ordered_json sums = ordered_json::array();
    for (const auto& g : multi_seed_groups(records)) {
      const auto sh = summarize(g.shuttles);
      const auto sw = summarize(g.swaps);
      const auto t = summarize(g.time);
      ordered_json j;
      j["benchmark"] = g.first->benchmark;
      j["strategy"] = to_string(g.first->strategy);
      j["device"] = g.first->device.summary();
      j["qubits"] = g.first->n_qubits;
      j["count"] = t.count;
      j["shuttles"] = {{"mean", fixed(sh.mean, 1e6)},
                       {"stddev", fixed(sh.stddev, 1e6)}};
      j["swaps"] = {{"mean", fixed(sw.mean, 1e6)},
                    {"stddev", fixed(sw.stddev, 1e6)}};
      j["time_s"] = {{"mean", fixed(t.mean, 1e9)},
                     {"stddev", fixed(t.stddev, 1e9)}};
      sums.push_back(std::move(j));
    }
    doc["summaries"] = std::move(sums);
  }
  out << doc.dump(2) << '\n';
}

void emit(const std::vector<RunRecord>& records, Format format,
          const std::string& path, const EmitOptions& options) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InputError("cannot open '" + path + "' for writing");
  }
  if (format == Format::csv) {
    write_csv(out, records, options);
  } else {
    write_json(out, records, options);
  }
  out.flush();
  if (!out) {
    throw InputError("failed writing '" + path + "'");
  }
}

std::vector<RunRecord> read_csv(std::string_view text) {
  std::vector<RunRecord> out;
  std::size_t pos = 0;
  bool header = true;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      eol = text.size();
    }
    const auto line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) {
      continue;
    }
    if (header) {
      if (!line.starts_with(kHeader)) {
        throw InputError("records file has an unexpected header");
      }
      header = false;
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() < 15) {
      throw InputError(
          fmt::format("records line {}: expected 15 fields", line_no));
    }
    if (f[7] == "mean" || f[7] == "stddev") {
      continue;
    }
    try {
      RunRecord r;
      r.benchmark = f[0];
      r.strategy = parse_strategy(f[1]);
      r.device.topology = parse_topology(f[2]);
      r.device.n_traps = std::stoul(f[3]);
      r.device.capacity = std::stoul(f[4]);
      r.device.excess_capacity = std::stoul(f[5]);
      r.n_qubits = std::stoul(f[6]);
      r.seed = std::stoull(f[7]);
      r.metrics.shuttles = std::stoul(f[8]);
      r.metrics.swaps = std::stoul(f[9]);
      r.metrics.gates_1q = std::stoul(f[10]);
      r.metrics.gates_2q = std::stoul(f[11]);
      r.metrics.total_time = std::stod(f[12]);
      r.status = f[13];
      r.invocation = f[14];
      out.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw InputError(
          fmt::format("records line {}: malformed field", line_no));
    }
  }
  return out;
}

double delta_percent(double baseline, double candidate) {
  return (baseline - candidate) / baseline * 100.0;
}

std::vector<ComparisonRow> compare(const std::vector<RunRecord>& records,
                                   Strategy baseline, Strategy candidate) {
  struct Acc {
    std::vector<double> time, shuttles, swaps;
  };
  struct Key {
    std::string benchmark, device;
    std::size_t qubits;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, std::pair<Acc, Acc>> table;
  for (const auto& r : records) {
    if (!r.ok() || (r.strategy != baseline && r.strategy != candidate)) {
      continue;
    }
    auto& [b, c] = table[Key{r.benchmark, r.device.summary(), r.n_qubits}];
    auto& acc = r.strategy == baseline ? b : c;
    acc.time.push_back(r.metrics.total_time);
    acc.shuttles.push_back(static_cast<double>(r.metrics.shuttles));
    acc.swaps.push_back(static_cast<double>(r.metrics.swaps));
  }
  std::vector<ComparisonRow> rows;
  for (const auto& [key, pair] : table) {
    const auto& [b, c] = pair;
    if (b.time.empty() || c.time.empty()) {
      throw InputError(fmt::format(
          "{} on {} ({} qubits) has no {} record to compare against",
          key.benchmark, key.device, key.qubits,
          to_string(b.time.empty() ? baseline : candidate)));
    }
    ComparisonRow row;
    row.benchmark = key.benchmark;
    row.device = key.device;
    row.n_qubits = key.qubits;
    row.baseline_time = summarize(b.time).mean;
    row.candidate_time = summarize(c.time).mean;
    row.delta_time_pct = delta_percent(row.baseline_time, row.candidate_time);
    row.baseline_shuttles = summarize(b.shuttles).mean;
    row.candidate_shuttles = summarize(c.shuttles).mean;
    row.baseline_swaps = summarize(b.swaps).mean;
    row.candidate_swaps = summarize(c.swaps).mean;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_comparison(std::ostream& out, const std::vector<ComparisonRow>& rows,
                      Strategy baseline, Strategy candidate) {
  fmt::print(out,
             "benchmark,device,qubits,{b}_time_s,{c}_time_s,delta_pct,"
             "{b}_shuttles,{c}_shuttles,{b}_swaps,{c}_swaps\n",
             fmt::arg("b", to_string(baseline)),
             fmt::arg("c", to_string(candidate)));
  for (const auto& r : rows) {
    fmt::print(out,
               "{},{},{},{:.9f},{:.9f},{:.2f},{:.2f},{:.2f},{:.2f},{:.2f}\n",
               quote(r.benchmark), quote(r.device), r.n_qubits,
               r.baseline_time, r.candidate_time, r.delta_time_pct,
               r.baseline_shuttles, r.candidate_shuttles, r.baseline_swaps,
               r.candidate_swaps);
  }
}

}  // namespace qccd::report
