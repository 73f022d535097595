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
#include <stdexcept>
#include <string>

namespace qccd {

using Qubit = std::uint32_t;
using TrapId = std::uint32_t;

/// Malformed circuit, device, or command input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical operation whose preconditions do not hold in the current
/// device state.
class IllegalOpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The router found no way to make room in a congested trap.
class DeadlockError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Placement cannot fit the circuit on the device.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A compiled schedule failed independent replay.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qccd
