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

#include "qccd/benchgen.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <fmt/format.h>

namespace qccd::bench {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::ca:
      return "ca";
    case Family::da:
      return "da";
    case Family::qaoa:
      return "qaoa";
    case Family::qft:
      return "qft";
    case Family::qv:
      return "qv";
    case Family::rnd:
      return "rnd";
  }
  return "?";
}

Family parse_family(std::string_view s) {
  for (const auto f : {Family::ca, Family::da, Family::qaoa, Family::qft,
                       Family::qv, Family::rnd}) {
    if (s == to_string(f)) {
      return f;
    }
  }
  throw InputError("unknown benchmark family '" + std::string(s) +
                   "' (expected ca, da, qaoa, qft, qv or rnd)");
}

void BenchmarkSpec::validate() const {
  if (n_qubits < 2) {
    throw InputError("benchmarks need at least 2 qubits");
  }
  if ((family == Family::qv || family == Family::rnd) && !seed) {
    throw InputError(fmt::format("{} benchmarks require a seed",
                                 to_string(family)));
  }
  if (largest_valid_size(family, n_qubits) != n_qubits) {
    throw InputError(fmt::format("{} cannot be built on {} qubits",
                                 to_string(family), n_qubits));
  }
}

Circuit gen_qft(std::size_t n) {
  if (n < 2) {
    throw InputError("qft needs at least 2 qubits");
  }
  Circuit c(n);
  for (Qubit i = 0; i < n; ++i) {
    c.add_1q("h", i);
    for (Qubit j = i + 1; j < n; ++j) {
      c.add_2q("cp", i, j);
    }
  }
  return c;
}

Circuit gen_qaoa(std::size_t n) {
  if (n < 2) {
    throw InputError("qaoa needs at least 2 qubits");
  }
  Circuit c(n);
  for (Qubit i = 0; i < n; ++i) {
    c.add_1q("h", i);
  }
  for (Qubit i = 0; i < n; ++i) {
    for (Qubit j = i + 1; j < n; ++j) {
      c.add_2q("rzz", i, j);
    }
  }
  for (Qubit i = 0; i < n; ++i) {
    c.add_1q("rx", i);
  }
  return c;
}

Circuit gen_qv(std::size_t n, std::size_t rounds, std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) {
    throw InputError(fmt::format("qv needs an even qubit count, got {}", n));
  }
  Circuit c(n);
  std::mt19937_64 rng(seed);
  std::vector<Qubit> perm(n);
  for (std::size_t r = 0; r < rounds; ++r) {
    std::iota(perm.begin(), perm.end(), Qubit{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t k = 0; k + 1 < n; k += 2) {
      const Qubit a = perm[k];
      const Qubit b = perm[k + 1];
      for (int layer = 0; layer < 3; ++layer) {
        c.add_1q("u3", a);
        c.add_1q("u3", b);
        c.add_2q("cx", a, b);
      }
      c.add_1q("u3", a);
      c.add_1q("u3", b);
    }
  }
  return c;
}

namespace {

void toffoli(Circuit& c, Qubit a, Qubit b, Qubit t) {
  c.add_1q("h", t);
  c.add_2q("cx", b, t);
  c.add_1q("tdg", t);
  c.add_2q("cx", a, t);
  c.add_1q("t", t);
  c.add_2q("cx", b, t);
  c.add_1q("tdg", t);
  c.add_2q("cx", a, t);
  c.add_1q("t", b);
  c.add_1q("t", t);
  c.add_1q("h", t);
  c.add_2q("cx", a, b);
  c.add_1q("t", a);
  c.add_1q("tdg", b);
  c.add_2q("cx", a, b);
}

void maj(Circuit& c, Qubit x, Qubit y, Qubit z) {
  c.add_2q("cx", z, y);
  c.add_2q("cx", z, x);
  toffoli(c, x, y, z);
}

void uma(Circuit& c, Qubit x, Qubit y, Qubit z) {
  toffoli(c, x, y, z);
  c.add_2q("cx", z, x);
  c.add_2q("cx", x, y);
}

}  // namespace

Circuit gen_cuccaro(std::size_t n_total) {
  if (n_total < 4 || n_total % 2 != 0) {
    throw InputError(fmt::format(
        "cuccaro adder needs 2k+2 qubits with k >= 1, got {}", n_total));
  }
  const std::size_t k = (n_total - 2) / 2;
  auto b = [](std::size_t i) { return static_cast<Qubit>(1 + 2 * i); };
  auto a = [](std::size_t i) { return static_cast<Qubit>(2 + 2 * i); };
  const Qubit c0 = 0;
  const auto z = static_cast<Qubit>(n_total - 1);

  Circuit c(n_total);
  maj(c, c0, b(0), a(0));
  for (std::size_t i = 1; i < k; ++i) {
    maj(c, a(i - 1), b(i), a(i));
  }
  c.add_2q("cx", a(k - 1), z);
  for (std::size_t i = k - 1; i >= 1; --i) {
    uma(c, a(i - 1), b(i), a(i));
  }
  uma(c, c0, b(0), a(0));
  return c;
}

Circuit gen_draper(std::size_t n_total) {
  if (n_total < 2 || n_total % 2 != 0) {
    throw InputError(
        fmt::format("draper adder needs 2k qubits, got {}", n_total));
  }
  const std::size_t k = n_total / 2;
  auto a = [](std::size_t i) { return static_cast<Qubit>(i); };
  auto b = [k](std::size_t i) { return static_cast<Qubit>(k + i); };

  Circuit c(n_total);
  // QFT on b.
  for (std::size_t i = 0; i < k; ++i) {
    c.add_1q("h", b(i));
    for (std::size_t j = i + 1; j < k; ++j) {
      c.add_2q("cp", b(j), b(i));
    }
  }
  // Phase additions from a.
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      c.add_2q("cp", a(j), b(i));
    }
  }
  // Inverse QFT on b.
  for (std::size_t ii = k; ii-- > 0;) {
    for (std::size_t jj = k; jj-- > ii + 1;) {
      c.add_2q("cpdg", b(jj), b(ii));
    }
    c.add_1q("h", b(ii));
  }
  return c;
}

Circuit gen_random(std::size_t n, std::size_t n_two_qubit_gates,
                   std::uint64_t seed) {
  if (n < 2) {
    throw InputError("random circuits need at least 2 qubits");
  }
  Circuit c(n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Qubit> first(0, static_cast<Qubit>(n - 1));
  std::uniform_int_distribution<Qubit> second(0, static_cast<Qubit>(n - 2));
  for (std::size_t g = 0; g < n_two_qubit_gates; ++g) {
    const Qubit a = first(rng);
    Qubit b = second(rng);
    if (b >= a) {
      ++b;
    }
    c.add_2q("cx", a, b);
  }
  return c;
}

std::size_t default_random_gates(std::size_t n) {
  return static_cast<std::size_t>(
      std::llround(991.0 * static_cast<double>(n) / 64.0));
}

std::size_t largest_valid_size(Family f, std::size_t n) {
  switch (f) {
    case Family::ca:
      return n < 4 ? 0 : n - n % 2;
    case Family::da:
    case Family::qv:
      return n < 2 ? 0 : n - n % 2;
    case Family::qaoa:
    case Family::qft:
    case Family::rnd:
      return n < 2 ? 0 : n;
  }
  return 0;
}

Circuit generate(const BenchmarkSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case Family::ca:
      return gen_cuccaro(spec.n_qubits);
    case Family::da:
      return gen_draper(spec.n_qubits);
    case Family::qaoa:
      return gen_qaoa(spec.n_qubits);
    case Family::qft:
      return gen_qft(spec.n_qubits);
    case Family::qv:
      return gen_qv(spec.n_qubits,
                    spec.rounds.value_or(spec.n_qubits), *spec.seed);
    case Family::rnd:
      return gen_random(spec.n_qubits,
                        spec.gates.value_or(
                            default_random_gates(spec.n_qubits)),
                        *spec.seed);
  }
  throw std::logic_error("unreachable");
}

}  // namespace qccd::bench
