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
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qccd/errors.hpp"

namespace qccd {

struct Gate {
  std::string label;
  std::vector<Qubit> operands;  // one or two entries
  std::size_t index = 0;        // position in program order

  [[nodiscard]] bool is_two_qubit() const { return operands.size() == 2; }
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::size_t n_qubits) : n_qubits_(n_qubits) {}

  /// Appends a gate, validating operand range and distinctness.
  void add_gate(std::string label, std::vector<Qubit> operands);
  void add_1q(std::string label, Qubit q) { add_gate(std::move(label), {q}); }
  void add_2q(std::string label, Qubit a, Qubit b) {
    add_gate(std::move(label), {a, b});
  }

  [[nodiscard]] std::size_t n_qubits() const { return n_qubits_; }
  [[nodiscard]] const std::vector<Gate>& gates() const { return gates_; }
  [[nodiscard]] const Gate& gate(std::size_t i) const { return gates_.at(i); }
  [[nodiscard]] std::size_t size() const { return gates_.size(); }
  [[nodiscard]] std::size_t two_qubit_count() const;

  /// Serializes to the line-oriented text format accepted by parse_circuit.
  [[nodiscard]] std::string to_text() const;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<Gate> gates_;
};

/// Parses either the native line format (`qubits N` followed by
/// `<label> <q> [<q>]` lines) or an OpenQASM 2.0 subset. Throws InputError
/// with a line number on malformed input.
Circuit parse_circuit(std::string_view text);
Circuit load_circuit(const std::string& path);

/// Two-qubit gates grouped by ASAP layer. Entries are gate indices.
struct SliceList {
  std::vector<std::vector<std::size_t>> slices;
  std::vector<int> slice_of;  // per gate; -1 for single-qubit gates

  [[nodiscard]] std::size_t size() const { return slices.size(); }
  [[nodiscard]] std::size_t gate_count() const;
};

SliceList compute_slices(const Circuit& c);

using QubitPair = std::pair<Qubit, Qubit>;  // always (min, max)

inline QubitPair make_pair_key(Qubit a, Qubit b) {
  return a < b ? QubitPair{a, b} : QubitPair{b, a};
}

class InteractionGraph {
 public:
  explicit InteractionGraph(std::size_t n) : adjacency_(n) {}

  void add_interaction(Qubit a, Qubit b, std::size_t count = 1);

  [[nodiscard]] std::size_t n_qubits() const { return adjacency_.size(); }
  [[nodiscard]] std::size_t weight(Qubit a, Qubit b) const;
  /// Number of distinct partners of q.
  [[nodiscard]] std::size_t degree(Qubit q) const {
    return adjacency_.at(q).size();
  }
  /// Sum of incident edge weights.
  [[nodiscard]] std::size_t strength(Qubit q) const;
  [[nodiscard]] const std::map<Qubit, std::size_t>& neighbours(Qubit q) const {
    return adjacency_.at(q);
  }
  /// Edges in lexicographic (min, max) order.
  [[nodiscard]] std::vector<std::pair<QubitPair, std::size_t>> edges() const;
  [[nodiscard]] std::size_t total_weight() const;

 private:
  std::vector<std::map<Qubit, std::size_t>> adjacency_;
};

InteractionGraph interaction_graph(const Circuit& c);

/// Gate dependency DAG: g -> h when h is the next gate after g on a shared
/// qubit. Covers every gate, single-qubit ones included.
class DependencyGraph {
 public:
  explicit DependencyGraph(std::size_t n) : succ_(n), pred_(n) {}

  void add_edge(std::size_t from, std::size_t to);

  [[nodiscard]] std::size_t size() const { return succ_.size(); }
  [[nodiscard]] const std::vector<std::size_t>& successors(std::size_t g) const {
    return succ_.at(g);
  }
  [[nodiscard]] const std::vector<std::size_t>& predecessors(
      std::size_t g) const {
    return pred_.at(g);
  }
  [[nodiscard]] std::size_t edge_count() const;

  /// Kahn's algorithm, smallest index first. Throws std::logic_error on a
  /// cycle.
  [[nodiscard]] std::vector<std::size_t> topological_order() const;

 private:
  std::vector<std::vector<std::size_t>> succ_;
  std::vector<std::vector<std::size_t>> pred_;
};

DependencyGraph dependency_graph(const Circuit& c);

}  // namespace qccd
