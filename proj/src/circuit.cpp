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

#include "qccd/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace qccd {

void Circuit::add_gate(std::string label, std::vector<Qubit> operands) {
  if (operands.empty() || operands.size() > 2) {
    throw InputError("gate '" + label + "' must have one or two operands");
  }
  for (const Qubit q : operands) {
    if (q >= n_qubits_) {
      throw InputError("gate '" + label + "' operand " + std::to_string(q) +
                       " out of range (circuit has " +
                       std::to_string(n_qubits_) + " qubits)");
    }
  }
  if (operands.size() == 2 && operands[0] == operands[1]) {
    throw InputError("gate '" + label + "' has duplicate operand " +
                     std::to_string(operands[0]));
  }
  gates_.push_back(Gate{std::move(label), std::move(operands), gates_.size()});
}

std::size_t Circuit::two_qubit_count() const {
  return static_cast<std::size_t>(std::count_if(
      gates_.begin(), gates_.end(),
      [](const Gate& g) { return g.is_two_qubit(); }));
}

std::string Circuit::to_text() const {
  std::ostringstream out;
  out << "qubits " << n_qubits_ << '\n';
  for (const auto& g : gates_) {
    out << g.label;
    for (const Qubit q : g.operands) {
      out << ' ' << q;
    }
    out << '\n';
  }
  return out.str();
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') {
      ++i;
    }
    if (i > start) {
      out.push_back(s.substr(start, i - start));
    }
  }
  return out;
}

[[noreturn]] void syntax_error(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

std::size_t parse_index(std::string_view tok, std::size_t line) {
  std::size_t value = 0;
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    syntax_error(line, "expected non-negative integer, got '" +
                           std::string(tok) + "'");
  }
  return value;
}

void add_checked(Circuit& c, std::string label, std::vector<Qubit> ops,
                 std::size_t line) {
  try {
    c.add_gate(std::move(label), std::move(ops));
  } catch (const InputError& e) {
    syntax_error(line, e.what());
  }
}

Circuit parse_native(std::string_view text) {
  std::optional<Circuit> circuit;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      eol = text.size();
    }
    ++line_no;
    auto line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto toks = split_ws(trim(line));
    if (toks.empty()) {
      continue;
    }
    if (!circuit) {
      if (toks[0] != "qubits" || toks.size() != 2) {
        syntax_error(line_no, "expected 'qubits <N>' header");
      }
      circuit.emplace(parse_index(toks[1], line_no));
      continue;
    }
    if (toks.size() < 2 || toks.size() > 3) {
      syntax_error(line_no, "expected '<label> <q> [<q>]'");
    }
    std::vector<Qubit> ops;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      ops.push_back(static_cast<Qubit>(parse_index(toks[i], line_no)));
    }
    add_checked(*circuit, std::string(toks[0]), std::move(ops), line_no);
  }
  if (!circuit) {
    throw InputError("missing 'qubits <N>' header");
  }
  return std::move(*circuit);
}

// OpenQASM 2.0 subset: qreg declarations are concatenated into one index
// space; creg/barrier/measure/include/reset are ignored.
Circuit parse_qasm(std::string_view text) {
  struct Reg {
    std::size_t offset;
    std::size_t size;
  };
  std::map<std::string, Reg, std::less<>> regs;
  std::size_t total = 0;

  struct Pending {
    std::string label;
    std::vector<std::pair<std::string, std::size_t>> args;
    std::size_t line;
  };
  std::vector<Pending> pending;

  std::size_t line_no = 1;
  std::string stmt;
  std::size_t stmt_line = 1;
  auto flush = [&](std::string_view raw) {
    const auto s = trim(raw);
    if (s.empty()) {
      return;
    }
    // Split "name(params) args".
    std::size_t head_end = 0;
    while (head_end < s.size() && s[head_end] != ' ' && s[head_end] != '\t' &&
           s[head_end] != '(') {
      ++head_end;
    }
    const std::string head(s.substr(0, head_end));
    auto rest = s.substr(head_end);
    if (!rest.empty() && rest.front() == '(') {
      const auto close = rest.find(')');
      if (close == std::string_view::npos) {
        syntax_error(stmt_line, "unbalanced parenthesis");
      }
      rest = rest.substr(close + 1);
    }
    rest = trim(rest);
    if (head == "OPENQASM" || head == "include" || head == "creg" ||
        head == "barrier" || head == "measure" || head == "reset") {
      return;
    }
    auto parse_ref = [&](std::string_view ref)
        -> std::pair<std::string, std::optional<std::size_t>> {
      ref = trim(ref);
      const auto lb = ref.find('[');
      if (lb == std::string_view::npos) {
        return {std::string(ref), std::nullopt};
      }
      const auto rb = ref.find(']', lb);
      if (rb == std::string_view::npos) {
        syntax_error(stmt_line, "missing ']'");
      }
      return {std::string(trim(ref.substr(0, lb))),
              parse_index(trim(ref.substr(lb + 1, rb - lb - 1)), stmt_line)};
    };
    if (head == "qreg") {
      const auto [name, size] = parse_ref(rest);
      if (!size) {
        syntax_error(stmt_line, "qreg needs a size");
      }
      regs[name] = Reg{total, *size};
      total += *size;
      return;
    }
    Pending p{head, {}, stmt_line};
    std::size_t start = 0;
    while (start <= rest.size()) {
      auto comma = rest.find(',', start);
      if (comma == std::string_view::npos) {
        comma = rest.size();
      }
      const auto [name, idx] = parse_ref(rest.substr(start, comma - start));
      if (!idx) {
        syntax_error(stmt_line, "register broadcast is not supported");
      }
      p.args.emplace_back(name, *idx);
      start = comma + 1;
    }
    pending.push_back(std::move(p));
  };

  bool in_comment = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '\n') {
      ++line_no;
      in_comment = false;
      stmt.push_back(' ');
      continue;
    }
    if (in_comment) {
      continue;
    }
    if (ch == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      in_comment = true;
      continue;
    }
    if (ch == ';') {
      flush(stmt);
      stmt.clear();
      continue;
    }
    if (stmt.find_first_not_of(" \t\r") == std::string::npos) {
      stmt_line = line_no;
    }
    stmt.push_back(ch);
  }
  if (!trim(stmt).empty()) {
    syntax_error(stmt_line, "statement missing ';'");
  }

  Circuit c(total);
  for (auto& p : pending) {
    std::vector<Qubit> ops;
    for (const auto& [name, idx] : p.args) {
      const auto it = regs.find(name);
      if (it == regs.end()) {
        syntax_error(p.line, "unknown register '" + name + "'");
      }
      if (idx >= it->second.size) {
        syntax_error(p.line, "index " + std::to_string(idx) +
                                 " out of range for register '" + name + "'");
      }
      ops.push_back(static_cast<Qubit>(it->second.offset + idx));
    }
    add_checked(c, std::move(p.label), std::move(ops), p.line);
  }
  return c;
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos &&
      (text.substr(first).starts_with("OPENQASM") ||
       text.find("qreg") != std::string_view::npos)) {
    return parse_qasm(text);
  }
  return parse_native(text);
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open circuit file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_circuit(buf.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::size_t SliceList::gate_count() const {
  std::size_t n = 0;
  for (const auto& s : slices) {
    n += s.size();
  }
  return n;
}

SliceList compute_slices(const Circuit& c) {
  SliceList out;
  out.slice_of.assign(c.size(), -1);
  std::vector<int> last(c.n_qubits(), -1);
  for (const auto& g : c.gates()) {
    if (!g.is_two_qubit()) {
      continue;
    }
    const Qubit a = g.operands[0];
    const Qubit b = g.operands[1];
    const int s = std::max(last[a], last[b]) + 1;
    if (static_cast<std::size_t>(s) == out.slices.size()) {
      out.slices.emplace_back();
    }
    out.slices[static_cast<std::size_t>(s)].push_back(g.index);
    out.slice_of[g.index] = s;
    last[a] = last[b] = s;
  }
  return out;
}

void InteractionGraph::add_interaction(Qubit a, Qubit b, std::size_t count) {
  if (a == b) {
    throw std::invalid_argument("self interaction");
  }
  adjacency_.at(a)[b] += count;
  adjacency_.at(b)[a] += count;
}

std::size_t InteractionGraph::weight(Qubit a, Qubit b) const {
  const auto& nb = adjacency_.at(a);
  const auto it = nb.find(b);
  return it == nb.end() ? 0 : it->second;
}

std::size_t InteractionGraph::strength(Qubit q) const {
  std::size_t s = 0;
  for (const auto& [_, w] : adjacency_.at(q)) {
    s += w;
  }
  return s;
}

std::vector<std::pair<QubitPair, std::size_t>> InteractionGraph::edges() const {
  std::vector<std::pair<QubitPair, std::size_t>> out;
  for (Qubit a = 0; a < adjacency_.size(); ++a) {
    for (const auto& [b, w] : adjacency_[a]) {
      if (a < b) {
        out.push_back({{a, b}, w});
      }
    }
  }
  return out;
}

std::size_t InteractionGraph::total_weight() const {
  std::size_t s = 0;
  for (const auto& [_, w] : edges()) {
    s += w;
  }
  return s;
}

InteractionGraph interaction_graph(const Circuit& c) {
  InteractionGraph g(c.n_qubits());
  for (const auto& gate : c.gates()) {
    if (gate.is_two_qubit()) {
      g.add_interaction(gate.operands[0], gate.operands[1]);
    }
  }
  return g;
}

void DependencyGraph::add_edge(std::size_t from, std::size_t to) {
  auto& s = succ_.at(from);
  if (std::find(s.begin(), s.end(), to) != s.end()) {
    return;
  }
  s.push_back(to);
  pred_.at(to).push_back(from);
}

std::size_t DependencyGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : succ_) {
    n += s.size();
  }
  return n;
}

std::vector<std::size_t> DependencyGraph::topological_order() const {
  std::vector<std::size_t> indeg(size());
  for (std::size_t g = 0; g < size(); ++g) {
    indeg[g] = pred_[g].size();
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>>
      ready;
  for (std::size_t g = 0; g < size(); ++g) {
    if (indeg[g] == 0) {
      ready.push(g);
    }
  }
  std::vector<std::size_t> order;
  order.reserve(size());
  while (!ready.empty()) {
    const auto g = ready.top();
    ready.pop();
    order.push_back(g);
    for (const auto h : succ_[g]) {
      if (--indeg[h] == 0) {
        ready.push(h);
      }
    }
  }
  if (order.size() != size()) {
    throw std::logic_error("dependency graph has a cycle");
  }
  return order;
}

DependencyGraph dependency_graph(const Circuit& c) {
  DependencyGraph dag(c.size());
  std::vector<std::optional<std::size_t>> last(c.n_qubits());
  for (const auto& g : c.gates()) {
    for (const Qubit q : g.operands) {
      if (last[q]) {
        dag.add_edge(*last[q], g.index);
      }
      last[q] = g.index;
    }
  }
  return dag;
}

}  // namespace qccd
