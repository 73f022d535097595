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

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "qccd/architecture.hpp"
#include "qccd/circuit.hpp"

namespace qccd::testing {

// Five-qubit circuit whose ratio head is q2 (4 of 5 partners) and whose
// temporal head is (0,2).
inline Circuit five_qubit_example() {
  Circuit c(5);
  const std::vector<std::pair<Qubit, Qubit>> gates{
      {0, 2}, {1, 3}, {0, 2}, {1, 4}, {2, 4}, {1, 3},
      {3, 4}, {2, 3}, {1, 2}, {2, 4}, {2, 4}};
  for (const auto& [a, b] : gates) {
    c.add_2q("cx", a, b);
  }
  return c;
}

// Two traps of four ions; trap 0 = [0 1 2 3], trap 1 = [4 5].
inline Circuit two_trap_example() {
  Circuit c(6);
  c.add_2q("cx", 0, 1);
  c.add_2q("cx", 4, 5);
  c.add_2q("cx", 2, 4);
  c.add_2q("cx", 2, 5);
  return c;
}

inline DeviceSpec make_spec(Topology topo, std::size_t traps,
                            std::size_t capacity, std::size_t excess) {
  DeviceSpec d;
  d.topology = topo;
  d.n_traps = traps;
  d.capacity = capacity;
  d.excess_capacity = excess;
  return d;
}

// Random circuit mixing one- and two-qubit gates.
inline Circuit random_circuit(std::size_t n, std::size_t n_gates,
                              std::mt19937_64& rng,
                              double two_qubit_fraction = 0.7) {
  Circuit c(n);
  std::uniform_int_distribution<Qubit> pick(0, static_cast<Qubit>(n - 1));
  std::bernoulli_distribution two(n >= 2 ? two_qubit_fraction : 0.0);
  for (std::size_t i = 0; i < n_gates; ++i) {
    const Qubit a = pick(rng);
    if (two(rng)) {
      Qubit b = pick(rng);
      while (b == a) {
        b = pick(rng);
      }
      c.add_2q("cx", a, b);
    } else {
      c.add_1q("h", a);
    }
  }
  return c;
}

}  // namespace qccd::testing
