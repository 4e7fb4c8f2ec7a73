// Copyright 2026 The rqcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rqcsim/qmath.hpp"

namespace rqcsim {

/// A named unitary acting on 1 or 2 qubits. The factory checks U†U = I
/// within 1e-12. For two-qubit gates the first target is the gate matrix's
/// most significant qubit (control for CNOT/CZ/CY).
struct Gate {
  std::string name;
  ComplexMatrix unitary;
  int arity = 1;
};

/// Builds a library gate by name. Single-qubit: X, Y, Z, H, S, SDG,
/// RY (requires the angle parameter). Two-qubit: CNOT, CZ, CY.
/// Optical composites exposed as named products: MIRROR = Y*Z, BS = S*H*S,
/// QWP = S*H. Unknown names throw std::invalid_argument.
Gate standard_gate(std::string_view name,
                   std::optional<double> param = std::nullopt);

/// One gate application bound to register labels.
struct CircuitStep {
  Gate gate;
  std::vector<std::string> targets;
};

/// Ordered gate list over a labeled register, with named stage markers.
/// A marker value k denotes the state after the first k steps; marker
/// positions must be strictly increasing in insertion order.
struct Circuit {
  QubitRegister labels;
  std::vector<CircuitStep> steps;
  std::map<std::string, std::size_t> markers;

  void add(Gate gate, std::vector<std::string> targets);
  void mark(std::string stage);  // marker at the current end of the circuit
};

/// Applies `gate` to the listed target qubits. Targets must be distinct
/// register labels and match the gate arity. Norm is preserved and checked.
StateVector apply_gate(const StateVector& state, const Gate& gate,
                       const std::vector<std::string>& targets);

struct RunResult {
  StateVector final_state;
  std::map<std::string, StateVector> snapshots;
};

/// Deterministically evolves `initial` through the circuit, recording a
/// snapshot at every marker.
RunResult run_with_snapshots(const Circuit& circuit,
                             const StateVector& initial);

struct PostSelection {
  double probability = 0.0;
  StateVector state;  // renormalized; the measured qubit stays in the register
};

/// Projects `qubit` onto `outcome` and renormalizes. Throws
/// std::runtime_error if the outcome probability is below 1e-12.
PostSelection post_select(const StateVector& state, std::string_view qubit,
                          int outcome);

/// Measurement basis per qubit for sampling and tomography.
enum class PauliBasis : char { X = 'X', Y = 'Y', Z = 'Z' };

struct MeasurementSetting {
  std::vector<PauliBasis> bases;

  std::string str() const;
  static MeasurementSetting parse(std::string_view text);
};

/// Samples `shots` computational-basis outcomes after rotating each qubit
/// into the requested basis (H for X; S† then H for Y). The setting must
/// cover the full register. Keys are MSB-first bitstrings; counts sum to
/// `shots`; output is deterministic for a fixed seed.
std::map<std::string, std::uint64_t> sample_counts(
    const StateVector& state, const MeasurementSetting& setting,
    std::uint64_t shots, std::uint64_t seed);

/// Born-rule probabilities of the state's computational basis outcomes.
std::vector<double> outcome_probabilities(const StateVector& state);

}  // namespace rqcsim
