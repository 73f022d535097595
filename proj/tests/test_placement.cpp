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
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "qccd/benchgen.hpp"
#include "qccd/placement.hpp"

namespace qccd {
namespace {

using testing::five_qubit_example;
using testing::make_spec;
using testing::random_circuit;

std::set<Qubit> members(const Placement& p, TrapId t) {
  return {p.chain(t).begin(), p.chain(t).end()};
}

void expect_valid(const Placement& p, const Circuit& c, const DeviceSpec& spec) {
  ASSERT_EQ(p.n_traps(), spec.n_traps);
  ASSERT_TRUE(p.complete());
  std::set<Qubit> seen;
  for (TrapId t = 0; t < spec.n_traps; ++t) {
    EXPECT_LE(p.count(t), spec.capacity);
    for (std::size_t i = 0; i < p.chain(t).size(); ++i) {
      const Qubit q = p.chain(t)[i];
      EXPECT_TRUE(seen.insert(q).second);
      EXPECT_EQ(p.trap_of(q), t);
      EXPECT_EQ(p.position_of(q), i);
    }
  }
  EXPECT_EQ(seen.size(), c.n_qubits());
  if (c.n_qubits() <= spec.total_usable()) {
    for (TrapId t = 0; t < spec.n_traps; ++t) {
      EXPECT_LE(p.count(t), spec.usable_capacity())
          << "trap " << t << " overflows although usable slots suffice";
    }
  }
}

// --- interaction ratios ---

TEST(Ratios, FiveQubitExampleHead) {
  const Circuit c = five_qubit_example();
  const auto r = compute_ratios(interaction_graph(c), c.n_qubits());
  ASSERT_EQ(r.size(), 5u);
  EXPECT_EQ(r[0].qubit, 2u);
  EXPECT_DOUBLE_EQ(r[0].ratio(), 0.8);
  std::vector<Qubit> order;
  for (const auto& e : r) {
    order.push_back(e.qubit);
  }
  EXPECT_EQ(order, (std::vector<Qubit>{2, 4, 1, 3, 0}));
}

TEST(Ratios, CompleteGraphTiesByIndex) {
  Circuit c(4);
  for (Qubit a = 0; a < 4; ++a) {
    for (Qubit b = a + 1; b < 4; ++b) {
      c.add_2q("cz", a, b);
    }
  }
  const auto r = compute_ratios(interaction_graph(c), 4);
  ASSERT_EQ(r.size(), 4u);
  for (Qubit q = 0; q < 4; ++q) {
    EXPECT_EQ(r[q].qubit, q);
    EXPECT_DOUBLE_EQ(r[q].ratio(), 0.75);
  }
}

TEST(Ratios, Star) {
  Circuit c(6);
  for (Qubit leaf = 1; leaf < 6; ++leaf) {
    c.add_2q("cx", 0, leaf);
  }
  const auto r = compute_ratios(interaction_graph(c), 6);
  ASSERT_EQ(r.size(), 6u);
  EXPECT_EQ(r[0].qubit, 0u);
  EXPECT_DOUBLE_EQ(r[0].ratio(), 5.0 / 6.0);
  for (std::size_t i = 1; i < 6; ++i) {
    EXPECT_DOUBLE_EQ(r[i].ratio(), 1.0 / 6.0);
  }
}

TEST(Ratios, StrengthBreaksDegreeTies) {
  Circuit c(4);
  c.add_2q("cx", 0, 1);
  c.add_2q("cx", 2, 3);
  c.add_2q("cx", 2, 3);
  const auto r = compute_ratios(interaction_graph(c), 4);
  std::vector<Qubit> order;
  for (const auto& e : r) {
    order.push_back(e.qubit);
  }
  EXPECT_EQ(order, (std::vector<Qubit>{2, 3, 0, 1}));
}

TEST(Ratios, IsolatedQubitsExcluded) {
  Circuit c(5);
  c.add_2q("cx", 1, 3);
  c.add_1q("h", 0);
  const auto r = compute_ratios(interaction_graph(c), 5);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_DOUBLE_EQ(r[0].ratio(), 0.2);
}

// --- temporal weights ---

TEST(Temporal, SingleSlice) {
  Circuit c(2);
  c.add_2q("cx", 0, 1);
  const auto t = compute_temporal_weights(c, compute_slices(c));
  ASSERT_EQ(t.size(), 1u);
  EXPECT_DOUBLE_EQ(t[0].weight, 1.0);
}

TEST(Temporal, SlicesZeroAndTwo) {
  Circuit c(3);
  c.add_2q("cx", 0, 1);  // slice 0
  c.add_2q("cx", 1, 2);  // slice 1
  c.add_2q("cx", 0, 1);  // slice 2
  const auto t = compute_temporal_weights(c, compute_slices(c));
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0].pair, (QubitPair{0, 1}));
  EXPECT_DOUBLE_EQ(t[0].weight, 1.25);
  EXPECT_EQ(t[1].pair, (QubitPair{1, 2}));
  EXPECT_DOUBLE_EQ(t[1].weight, 0.5);
}

TEST(Temporal, FiveQubitExampleOrder) {
  const Circuit c = five_qubit_example();
  const auto t = compute_temporal_weights(c, compute_slices(c));
  std::vector<QubitPair> order;
  for (const auto& e : t) {
    order.push_back(e.pair);
  }
  EXPECT_EQ(order, (std::vector<QubitPair>{
                       {0, 2}, {1, 3}, {1, 4}, {2, 4}, {3, 4}, {2, 3}, {1, 2}}));
}

TEST(Temporal, TiesAreLexicographic) {
  Circuit c(6);
  c.add_2q("cx", 4, 5);
  c.add_2q("cx", 2, 3);
  c.add_2q("cx", 0, 1);
  const auto t = compute_temporal_weights(c, compute_slices(c));
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t[0].pair, (QubitPair{0, 1}));
  EXPECT_EQ(t[2].pair, (QubitPair{4, 5}));
}

// Independent recomputation of the weights from the slice table.
TEST(Temporal, MatchesDirectSumAndBounds) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const Circuit c = random_circuit(7, 60, rng);
    const SliceList s = compute_slices(c);
    std::map<QubitPair, std::set<std::size_t>> slices_of;
    for (std::size_t k = 0; k < s.size(); ++k) {
      for (const auto g : s.slices[k]) {
        const auto& o = c.gate(g).operands;
        slices_of[make_pair_key(o[0], o[1])].insert(k);
      }
    }
    const auto t = compute_temporal_weights(c, s);
    ASSERT_EQ(t.size(), slices_of.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      double w = 0.0;
      for (const auto k : slices_of.at(t[i].pair)) {
        w += std::pow(2.0, -static_cast<double>(k));
      }
      EXPECT_DOUBLE_EQ(t[i].weight, w);
      EXPECT_GT(t[i].weight, 0.0);
      EXPECT_LT(t[i].weight, 2.0);
      if (i > 0) {
        EXPECT_TRUE(t[i - 1].weight > t[i].weight ||
                    (t[i - 1].weight == t[i].weight && t[i - 1].pair < t[i].pair));
      }
    }
  }
}

TEST(Temporal, EarlierSingleInteractionWeighsMore) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const Circuit c = random_circuit(10, 40, rng, 1.0);
    const SliceList s = compute_slices(c);
    std::map<QubitPair, std::vector<int>> seen;
    for (std::size_t g = 0; g < c.size(); ++g) {
      const auto& o = c.gate(g).operands;
      seen[make_pair_key(o[0], o[1])].push_back(s.slice_of[g]);
    }
    const auto t = compute_temporal_weights(c, s);
    std::map<QubitPair, double> w;
    for (const auto& e : t) {
      w[e.pair] = e.weight;
    }
    for (const auto& [pa, sa] : seen) {
      for (const auto& [pb, sb] : seen) {
        if (sa.size() == 1 && sb.size() == 1 && sa[0] < sb[0]) {
          EXPECT_GT(w[pa], w[pb]);
        }
      }
    }
  }
}

TEST(Temporal, DeepSlicesUnderflowToZero) {
  Circuit c(3);
  for (int i = 0; i < 1100; ++i) {
    c.add_2q("cx", 0, 1);
  }
  c.add_2q("cx", 1, 2);
  const auto t = compute_temporal_weights(c, compute_slices(c));
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[1].pair, (QubitPair{1, 2}));
  EXPECT_EQ(t[1].weight, 0.0);
}

// --- STA ---

TEST(Sta, MapQubitCoPlacesHeadPair) {
  const Circuit c = five_qubit_example();
  const DeviceSpec spec = make_spec(Topology::linear, 2, 4, 2);
  StaContext ctx(c, spec);
  ASSERT_EQ(ctx.ratio_head(), std::optional<Qubit>{2});
  map_qubit(2, ctx);
  EXPECT_EQ(members(ctx.placement(), 0), (std::set<Qubit>{0, 2}));
  EXPECT_FALSE(ctx.in_ratio_list(0));
  EXPECT_FALSE(ctx.in_ratio_list(2));
  EXPECT_FALSE(ctx.pair_live(0));
}

TEST(Sta, MapQubitRecursesThroughEarlierPair) {
  const Circuit c = five_qubit_example();
  const DeviceSpec spec = make_spec(Topology::linear, 2, 4, 2);
  StaContext ctx(c, spec);
  map_qubit(2, ctx);
  ASSERT_EQ(ctx.ratio_head(), std::optional<Qubit>{4});
  map_qubit(4, ctx);
  EXPECT_EQ(members(ctx.placement(), 0), (std::set<Qubit>{0, 2}));
  EXPECT_EQ(members(ctx.placement(), 1), (std::set<Qubit>{1, 3, 4}));
  EXPECT_EQ(ctx.placement().chain(1), (std::vector<Qubit>{1, 3, 4}));
  EXPECT_EQ(ctx.ratio_head(), std::nullopt);
}

TEST(Sta, FiveQubitExample) {
  const Circuit c = five_qubit_example();
  const DeviceSpec spec = make_spec(Topology::linear, 2, 4, 2);
  const Placement p = sta_place(c, spec);
  EXPECT_EQ(members(p, 0), (std::set<Qubit>{0, 2}));
  EXPECT_EQ(members(p, 1), (std::set<Qubit>{1, 3, 4}));
  // Trap 0's right end faces trap 1.
  EXPECT_EQ(p.chain(0).back(), 2u);
  EXPECT_EQ(p.chain(1).front(), 4u);
  EXPECT_EQ(p.chain(1)[1], 3u);
  EXPECT_EQ(p.chain(1), (std::vector<Qubit>{4, 3, 1}));
}

TEST(Sta, OrderQubitsSteps) {
  Placement p = Placement::from_chains({{0, 2}, {1, 3, 4}}, 5);
  const TrapGraph g(Topology::linear, 2);
  order_qubits({{{2, 3}, 0.1}}, g, p);
  EXPECT_EQ(p.chain(0), (std::vector<Qubit>{0, 2}));
  EXPECT_EQ(p.chain(1), (std::vector<Qubit>{3, 1, 4}));
  order_qubits({{{2, 4}, 0.2}}, g, p);
  EXPECT_EQ(p.chain(1), (std::vector<Qubit>{4, 3, 1}));
}

TEST(Sta, OrderQubitsCoTrappedNoOp) {
  Placement p = Placement::from_chains({{0, 1, 2}, {3, 4}}, 5);
  const Placement before = p;
  const TrapGraph g(Topology::linear, 2);
  order_qubits({{{0, 1}, 0.5}, {{3, 4}, 1.0}, {{0, 2}, 1.5}}, g, p);
  EXPECT_EQ(p, before);
}

TEST(Sta, OrderQubitsUsesRingWrap) {
  Placement p = Placement::from_chains({{0, 1, 2}, {3}, {4, 5, 6}}, 7);
  const TrapGraph g(Topology::ring, 3);
  order_qubits({{{1, 5}, 1.0}}, g, p);
  EXPECT_EQ(p.chain(0).front(), 1u);  // left end of trap 0 faces trap 2
  EXPECT_EQ(p.chain(2).back(), 5u);
}

TEST(Sta, SingleTrapHoldsEverything) {
  std::mt19937_64 rng(4);
  const Circuit c = random_circuit(9, 40, rng);
  const DeviceSpec spec = make_spec(Topology::linear, 1, 10, 1);
  const Placement p = sta_place(c, spec);
  EXPECT_EQ(p.count(0), 9u);
  expect_valid(p, c, spec);
}

TEST(Sta, Qft8KeepsHeavyPairsTogether) {
  const Circuit c = bench::gen_qft(8);
  const DeviceSpec spec = make_spec(Topology::linear, 2, 6, 2);
  const Placement p = sta_place(c, spec);
  expect_valid(p, c, spec);
  const auto t = compute_temporal_weights(c, compute_slices(c));
  // The heaviest pair is always co-trapped, and so is every later pair
  // whose endpoints were both free when it reached the head of the list.
  EXPECT_EQ(p.trap_of(t[0].pair.first), p.trap_of(t[0].pair.second));
  std::size_t together = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    together += p.trap_of(t[i].pair.first) == p.trap_of(t[i].pair.second);
  }
  EXPECT_GE(together, 3u);
}

TEST(Sta, CapacityError) {
  const Circuit c(10);
  EXPECT_THROW(sta_place(c, make_spec(Topology::linear, 2, 4, 1)),
               CapacityError);
  EXPECT_THROW(greedy_place(c, make_spec(Topology::linear, 2, 4, 1)),
               CapacityError);
  EXPECT_THROW(random_place(c, make_spec(Topology::linear, 2, 4, 1), 0),
               CapacityError);
}

TEST(Sta, OverflowUsesExcessOnlyWhenNeeded) {
  Circuit c(7);
  for (Qubit q = 0; q + 1 < 7; ++q) {
    c.add_2q("cx", q, q + 1);
  }
  const DeviceSpec spec = make_spec(Topology::linear, 2, 4, 1);
  const Placement p = sta_place(c, spec);
  EXPECT_TRUE(p.complete());
  EXPECT_LE(p.count(0), 4u);
  EXPECT_LE(p.count(1), 4u);
  EXPECT_EQ(p.count(0) + p.count(1), 7u);
}

// --- greedy ---

TEST(Greedy, HeaviestEdgeFirst) {
  Circuit c(4);
  for (int i = 0; i < 5; ++i) {
    c.add_2q("cx", 0, 1);
  }
  c.add_2q("cx", 2, 3);
  const DeviceSpec spec = make_spec(Topology::linear, 2, 3, 1);
  const Placement p = greedy_place(c, spec);
  EXPECT_EQ(members(p, 0), (std::set<Qubit>{0, 1}));
  EXPECT_EQ(members(p, 1), (std::set<Qubit>{2, 3}));
}

TEST(Greedy, ChainSpillsToNearestTrap) {
  Circuit c(3);
  c.add_2q("cx", 0, 1);
  c.add_2q("cx", 0, 1);
  c.add_2q("cx", 1, 2);
  const DeviceSpec spec = make_spec(Topology::linear, 2, 3, 1);
  const Placement p = greedy_place(c, spec);
  EXPECT_EQ(members(p, 0), (std::set<Qubit>{0, 1}));
  EXPECT_EQ(members(p, 1), (std::set<Qubit>{2}));
}

TEST(Greedy, EmptyGraphRoundRobin) {
  const Circuit c(5);
  const DeviceSpec spec = make_spec(Topology::linear, 3, 3, 1);
  const Placement p = greedy_place(c, spec);
  EXPECT_EQ(p.chain(0), (std::vector<Qubit>{0, 3}));
  EXPECT_EQ(p.chain(1), (std::vector<Qubit>{1, 4}));
  EXPECT_EQ(p.chain(2), (std::vector<Qubit>{2}));
}

// --- random ---

TEST(Random, Deterministic) {
  const Circuit c = bench::gen_qft(20);
  const DeviceSpec spec = make_spec(Topology::linear, 4, 7, 2);
  EXPECT_EQ(random_place(c, spec, 99), random_place(c, spec, 99));
  EXPECT_NE(random_place(c, spec, 99), random_place(c, spec, 100));
}

TEST(Random, FillsUsableSlots) {
  const Circuit c(12);
  const DeviceSpec spec = make_spec(Topology::ring, 3, 6, 2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Placement p = random_place(c, spec, seed);
    for (TrapId t = 0; t < 3; ++t) {
      EXPECT_EQ(p.count(t), 4u);
    }
  }
}

TEST(Random, UniformOverTwoTraps) {
  const Circuit c(8);
  const DeviceSpec spec = make_spec(Topology::linear, 2, 5, 1);
  std::vector<std::size_t> in_trap0(8, 0);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Placement p = random_place(c, spec, seed);
    for (Qubit q = 0; q < 8; ++q) {
      in_trap0[q] += p.trap_of(q) == 0;
    }
  }
  for (Qubit q = 0; q < 8; ++q) {
    const double f = static_cast<double>(in_trap0[q]) / 1000.0;
    EXPECT_NEAR(f, 0.5, 0.05) << "qubit " << q;
  }
}

// --- shared properties ---

TEST(Placement, AllStrategiesValidAndDeterministic) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t traps = 1 + trial % 4;
    const std::size_t cap = 3 + trial % 4;
    const std::size_t excess = trial % std::min<std::size_t>(cap, 3);
    const DeviceSpec spec = make_spec(
        trial % 3 ? Topology::linear : Topology::ring, traps, cap, excess);
    std::uniform_int_distribution<std::size_t> nd(2, traps * cap);
    const std::size_t n = std::max<std::size_t>(2, nd(rng));
    const Circuit c = random_circuit(n, 3 * n, rng);
    for (const auto s : {Strategy::sta, Strategy::greedy, Strategy::random}) {
      const Placement p = place(s, c, spec, trial);
      expect_valid(p, c, spec);
      EXPECT_EQ(p, place(s, c, spec, trial));
    }
  }
}

TEST(Placement, OrderQubitsPreservesMembership) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Circuit c = random_circuit(12, 50, rng);
    const DeviceSpec spec = make_spec(Topology::ring, 3, 6, 1);
    Placement p = random_place(c, spec, trial);
    std::vector<std::set<Qubit>> before;
    for (TrapId t = 0; t < 3; ++t) {
      before.push_back(members(p, t));
    }
    auto t = compute_temporal_weights(c, compute_slices(c));
    std::reverse(t.begin(), t.end());
    order_qubits(t, TrapGraph(spec.topology, spec.n_traps), p);
    for (TrapId tr = 0; tr < 3; ++tr) {
      EXPECT_EQ(members(p, tr), before[tr]);
    }
  }
}

TEST(Strategy, Names) {
  for (const auto s : {Strategy::sta, Strategy::greedy, Strategy::random}) {
    EXPECT_EQ(parse_strategy(to_string(s)), s);
  }
  EXPECT_THROW(parse_strategy("best"), InputError);
}

}  // namespace
}  // namespace qccd
