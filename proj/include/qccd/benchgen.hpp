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

#include "qccd/circuit.hpp"

namespace qccd::bench {

enum class Family { ca, da, qaoa, qft, qv, rnd };

std::string_view to_string(Family f);
Family parse_family(std::string_view s);

struct BenchmarkSpec {
  Family family = Family::qft;
  std::size_t n_qubits = 2;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> rounds;  // QV; defaults to n_qubits rounds
  std::optional<std::size_t> gates;   // RND two-qubit gate budget

  void validate() const;
};

/// QFT: per target i, an H then controlled phases (i, j) for every j > i.
Circuit gen_qft(std::size_t n);

/// One-layer QAOA on the complete graph, ZZ interactions emitted in QFT
/// pair order, followed by RX mixers.
Circuit gen_qaoa(std::size_t n);

/// Quantum volume skeleton: each round pairs the qubits by a seeded
/// random perfect matching and applies three CX per pair.
Circuit gen_qv(std::size_t n, std::size_t rounds, std::uint64_t seed);

/// Cuccaro ripple-carry adder on 2k+2 qubits: c0, (b_i, a_i) interleaved,
/// then the carry-out z. Toffolis use the 6-CX decomposition.
Circuit gen_cuccaro(std::size_t n_total);

/// Draper QFT adder on 2k qubits: a = 0..k-1, b = k..2k-1.
Circuit gen_draper(std::size_t n_total);

/// Uniformly random two-qubit gates over distinct pairs.
Circuit gen_random(std::size_t n, std::size_t n_two_qubit_gates,
                   std::uint64_t seed);

/// Default RND gate budget, scaled from 991 gates at 64 qubits.
std::size_t default_random_gates(std::size_t n);

Circuit generate(const BenchmarkSpec& spec);

/// Largest register size not above `n` that the family accepts.
std::size_t largest_valid_size(Family f, std::size_t n);

}  // namespace qccd::bench
