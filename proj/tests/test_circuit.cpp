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


#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "qccd/benchgen.hpp"
#include "qccd/circuit.hpp"

namespace qccd {
namespace {

using testing::random_circuit;

TEST(ParseCircuit, MinimalProgram) {
  const Circuit c = parse_circuit("qubits 2\ncx 0 1");
  EXPECT_EQ(c.n_qubits(), 2u);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c.gate(0).label, "cx");
  EXPECT_EQ(c.gate(0).operands, (std::vector<Qubit>{0, 1}));
  EXPECT_TRUE(c.gate(0).is_two_qubit());
  EXPECT_EQ(c.gate(0).index, 0u);
}

TEST(ParseCircuit, DuplicateOperandRejected) {
  EXPECT_THROW(parse_circuit("qubits 2\ncx 0 0"), InputError);
}

TEST(ParseCircuit, OperandOutOfRange) {
  EXPECT_THROW(parse_circuit("qubits 2\ncx 0 2"), InputError);
}

TEST(ParseCircuit, SyntaxErrorNamesLine) {
  try {
    parse_circuit("# header\nqubits 3\nh 0\ncx 0 1 2\n");
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos)
        << e.what();
  }
}

TEST(ParseCircuit, MissingHeader) {
  EXPECT_THROW(parse_circuit("cx 0 1\n"), InputError);
  EXPECT_THROW(parse_circuit(""), InputError);
}

TEST(ParseCircuit, CommentsAndBlankLines) {
  const Circuit c = parse_circuit(
      "  # leading comment\n\nqubits 3   # three\nh 0\n\ncx 1 2 # tail\n");
  EXPECT_EQ(c.n_qubits(), 3u);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_FALSE(c.gate(0).is_two_qubit());
  EXPECT_EQ(c.gate(1).operands, (std::vector<Qubit>{1, 2}));
}

TEST(ParseCircuit, RoundTripsThroughText) {
  std::mt19937_64 rng(7);
  const Circuit c = random_circuit(9, 60, rng);
  const Circuit back = parse_circuit(c.to_text());
  ASSERT_EQ(back.size(), c.size());
  EXPECT_EQ(back.n_qubits(), c.n_qubits());
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_EQ(back.gate(i).label, c.gate(i).label);
    EXPECT_EQ(back.gate(i).operands, c.gate(i).operands);
  }
}

TEST(ParseCircuit, Qft64FromGeneratorText) {
  const Circuit c = parse_circuit(bench::gen_qft(64).to_text());
  EXPECT_EQ(c.two_qubit_count(), 2016u);
}

TEST(ParseCircuit, OpenQasmSubset) {
  const Circuit c = parse_circuit(R"(OPENQASM 2.0;
include "qelib1.inc";
qreg a[2];
qreg b[3];
creg m[5];
h a[0];
cx a[0], b[2];
rz(0.5) b[1];
barrier a[0], a[1];
cz a[1],b[0]; // trailing comment
measure a[0] -> m[0];
)");
  EXPECT_EQ(c.n_qubits(), 5u);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c.gate(0).operands, (std::vector<Qubit>{0}));
  EXPECT_EQ(c.gate(1).operands, (std::vector<Qubit>{0, 4}));
  EXPECT_EQ(c.gate(2).label, "rz");
  EXPECT_EQ(c.gate(2).operands, (std::vector<Qubit>{3}));
  EXPECT_EQ(c.gate(3).label, "cz");
  EXPECT_EQ(c.gate(3).operands, (std::vector<Qubit>{1, 2}));
}

TEST(ParseCircuit, OpenQasmErrors) {
  EXPECT_THROW(parse_circuit("OPENQASM 2.0;\nqreg q[2];\ncx q[0], q[2];\n"),
               InputError);
  EXPECT_THROW(parse_circuit("OPENQASM 2.0;\nqreg q[2];\ncx r[0], q[1];\n"),
               InputError);
  EXPECT_THROW(parse_circuit("OPENQASM 2.0;\nqreg q[2];\nh q;\n"), InputError);
  EXPECT_THROW(parse_circuit("OPENQASM 2.0;\nqreg q[2];\ncx q[0], q[0];\n"),
               InputError);
}

TEST(Circuit, AddGateValidates) {
  Circuit c(3);
  EXPECT_THROW(c.add_2q("cx", 1, 1), InputError);
  EXPECT_THROW(c.add_1q("h", 3), InputError);
  EXPECT_THROW(c.add_gate("ccx", {0, 1, 2}), InputError);
  EXPECT_THROW(c.add_gate("nop", {}), InputError);
  c.add_2q("cx", 2, 0);
  c.add_1q("h", 1);
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(c.two_qubit_count(), 1u);
  EXPECT_EQ(c.gate(1).index, 1u);
}

TEST(LoadCircuit, MissingFile) {
  EXPECT_THROW(load_circuit("/nonexistent/circuit.txt"), InputError);
}

// --- slicing ---

TEST(Slices, DisjointPairsShareSlice) {
  Circuit c(4);
  c.add_2q("cx", 0, 1);
  c.add_2q("cx", 2, 3);
  c.add_2q("cx", 1, 2);
  const SliceList s = compute_slices(c);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s.slices[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(s.slices[1], (std::vector<std::size_t>{2}));
}

TEST(Slices, EmptyCircuit) {
  EXPECT_EQ(compute_slices(Circuit(3)).size(), 0u);
}

TEST(Slices, SingleQubitGatesAreNotSliced) {
  Circuit c(2);
  c.add_1q("h", 0);
  c.add_2q("cx", 0, 1);
  c.add_1q("h", 1);
  c.add_2q("cx", 0, 1);
  const SliceList s = compute_slices(c);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.slice_of[0], -1);
  EXPECT_EQ(s.slice_of[1], 0);
  EXPECT_EQ(s.slice_of[2], -1);
  EXPECT_EQ(s.slice_of[3], 1);
}

// ASAP layering is characterized by: no slice reuses a qubit, a gate sits
// after every earlier gate sharing a qubit, and a gate not in slice 0 has an
// earlier conflicting gate in the slice right before it.
void expect_asap(const Circuit& c, const SliceList& s) {
  std::size_t total = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    std::set<Qubit> seen;
    for (const auto gi : s.slices[k]) {
      ASSERT_EQ(s.slice_of[gi], static_cast<int>(k));
      for (const Qubit q : c.gate(gi).operands) {
        EXPECT_TRUE(seen.insert(q).second) << "slice " << k << " reuses " << q;
      }
    }
    total += s.slices[k].size();
  }
  EXPECT_EQ(total, c.two_qubit_count());
  EXPECT_EQ(s.gate_count(), c.two_qubit_count());

  for (std::size_t h = 0; h < c.size(); ++h) {
    const Gate& gh = c.gate(h);
    if (!gh.is_two_qubit()) {
      EXPECT_EQ(s.slice_of[h], -1);
      continue;
    }
    bool tight = s.slice_of[h] == 0;
    for (std::size_t g = 0; g < h; ++g) {
      const Gate& gg = c.gate(g);
      if (!gg.is_two_qubit()) {
        continue;
      }
      const bool shares =
          std::any_of(gg.operands.begin(), gg.operands.end(), [&](Qubit q) {
            return std::find(gh.operands.begin(), gh.operands.end(), q) !=
                   gh.operands.end();
          });
      if (shares) {
        EXPECT_GT(s.slice_of[h], s.slice_of[g]);
        tight = tight || s.slice_of[g] + 1 == s.slice_of[h];
      }
    }
    EXPECT_TRUE(tight) << "gate " << h << " could be sliced earlier";
  }
}

TEST(Slices, RandomCircuitsAreAsap) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Circuit c = random_circuit(2 + trial % 10, 80, rng);
    expect_asap(c, compute_slices(c));
  }
}

TEST(Slices, DeterministicAndIdempotent) {
  std::mt19937_64 rng(5);
  const Circuit c = random_circuit(12, 200, rng);
  const SliceList a = compute_slices(c);
  const SliceList b = compute_slices(c);
  EXPECT_EQ(a.slices, b.slices);
  EXPECT_EQ(a.slice_of, b.slice_of);
}

// --- interaction graph ---

TEST(InteractionGraph, CountsGates) {
  Circuit c(3);
  c.add_2q("cx", 0, 1);
  c.add_2q("cx", 1, 0);
  c.add_2q("cx", 1, 2);
  c.add_1q("h", 2);
  const InteractionGraph g = interaction_graph(c);
  EXPECT_EQ(g.weight(0, 1), 2u);
  EXPECT_EQ(g.weight(1, 0), 2u);
  EXPECT_EQ(g.weight(1, 2), 1u);
  EXPECT_EQ(g.weight(0, 2), 0u);
  EXPECT_EQ(g.degree(1), 2u);
  EXPECT_EQ(g.strength(1), 3u);
  const auto edges = g.edges();
  ASSERT_EQ(edges.size(), 2u);
  EXPECT_EQ(edges[0], std::make_pair(QubitPair{0, 1}, std::size_t{2}));
  EXPECT_EQ(edges[1], std::make_pair(QubitPair{1, 2}, std::size_t{1}));
  EXPECT_EQ(g.total_weight(), 3u);
}

TEST(InteractionGraph, NoTwoQubitGates) {
  Circuit c(4);
  c.add_1q("h", 0);
  c.add_1q("x", 3);
  const InteractionGraph g = interaction_graph(c);
  EXPECT_TRUE(g.edges().empty());
  EXPECT_EQ(g.total_weight(), 0u);
}

TEST(InteractionGraph, QaoaIsComplete) {
  const Circuit c = bench::gen_qaoa(64);
  const InteractionGraph g = interaction_graph(c);
  std::size_t pairs = 0;
  for (Qubit a = 0; a < 64; ++a) {
    for (Qubit b = a + 1; b < 64; ++b) {
      EXPECT_EQ(g.weight(a, b), 1u);
      ++pairs;
    }
  }
  EXPECT_EQ(pairs, 2016u);
  EXPECT_EQ(g.edges().size(), pairs);
}

TEST(InteractionGraph, SymmetricAndSumsToGateCount) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Circuit c = random_circuit(8, 100, rng);
    const InteractionGraph g = interaction_graph(c);
    std::size_t sum = 0;
    for (const auto& [pair, w] : g.edges()) {
      EXPECT_GE(w, 1u);
      EXPECT_EQ(g.weight(pair.first, pair.second),
                g.weight(pair.second, pair.first));
      sum += w;
    }
    EXPECT_EQ(sum, c.two_qubit_count());
  }
}

// --- dependency graph ---

std::set<std::pair<std::size_t, std::size_t>> edge_set(const DependencyGraph& d) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t g = 0; g < d.size(); ++g) {
    for (const auto h : d.successors(g)) {
      out.emplace(g, h);
    }
  }
  return out;
}

// For each gate and each operand, the latest earlier gate touching it.
std::set<std::pair<std::size_t, std::size_t>> pairwise_oracle(const Circuit& c) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t h = 0; h < c.size(); ++h) {
    for (const Qubit q : c.gate(h).operands) {
      for (std::size_t g = h; g-- > 0;) {
        const auto& ops = c.gate(g).operands;
        if (std::find(ops.begin(), ops.end(), q) != ops.end()) {
          out.emplace(g, h);
          break;
        }
      }
    }
  }
  return out;
}

TEST(DependencyGraph, PerQubitChaining) {
  Circuit c(4);
  c.add_2q("cx", 0, 1);
  c.add_2q("cx", 1, 2);
  c.add_2q("cx", 0, 3);
  const DependencyGraph d = dependency_graph(c);
  EXPECT_EQ(edge_set(d),
            (std::set<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 2}}));
}

TEST(DependencyGraph, SingleGate) {
  Circuit c(2);
  c.add_2q("cx", 0, 1);
  const DependencyGraph d = dependency_graph(c);
  EXPECT_EQ(d.size(), 1u);
  EXPECT_EQ(d.edge_count(), 0u);
}

TEST(DependencyGraph, DuplicateEdgesCollapse) {
  Circuit c(2);
  c.add_2q("cx", 0, 1);
  c.add_2q("cz", 1, 0);
  const DependencyGraph d = dependency_graph(c);
  EXPECT_EQ(d.edge_count(), 1u);
  EXPECT_EQ(d.predecessors(1), (std::vector<std::size_t>{0}));
}

TEST(DependencyGraph, MatchesPairwiseOracleOnRandom991) {
  const Circuit c = bench::gen_random(64, 991, 42);
  const DependencyGraph d = dependency_graph(c);
  EXPECT_EQ(edge_set(d), pairwise_oracle(c));
  std::vector<std::size_t> expected(c.size());
  std::iota(expected.begin(), expected.end(), 0);
  EXPECT_EQ(d.topological_order(), expected);
}

TEST(DependencyGraph, MatchesOracleWithSingleQubitGates) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const Circuit c = random_circuit(6, 50, rng, 0.5);
    EXPECT_EQ(edge_set(dependency_graph(c)), pairwise_oracle(c));
  }
}

bool preserves_qubit_order(const Circuit& c, const std::vector<std::size_t>& perm) {
  std::map<Qubit, std::size_t> last;
  for (const auto g : perm) {
    for (const Qubit q : c.gate(g).operands) {
      auto it = last.find(q);
      if (it != last.end() && it->second > g) {
        return false;
      }
      last[q] = g;
    }
  }
  return true;
}

bool is_topological(const DependencyGraph& d, const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> pos(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    pos[perm[i]] = i;
  }
  for (std::size_t g = 0; g < d.size(); ++g) {
    for (const auto h : d.successors(g)) {
      if (pos[g] >= pos[h]) {
        return false;
      }
    }
  }
  return true;
}

TEST(DependencyGraph, TopologicalOrdersAreExactlyQubitOrderPreserving) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n_gates = 3 + trial % 6;  // up to 8 gates
    const Circuit c = random_circuit(4, n_gates, rng, 0.6);
    const DependencyGraph d = dependency_graph(c);
    std::vector<std::size_t> perm(c.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t topo = 0;
    do {
      const bool a = is_topological(d, perm);
      EXPECT_EQ(a, preserves_qubit_order(c, perm));
      topo += a ? 1 : 0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    EXPECT_GE(topo, 1u);
  }
}

TEST(DependencyGraph, CycleDetected) {
  DependencyGraph d(2);
  d.add_edge(0, 1);
  d.add_edge(1, 0);
  EXPECT_THROW((void)d.topological_order(), std::logic_error);
}

}  // namespace
}  // namespace qccd
