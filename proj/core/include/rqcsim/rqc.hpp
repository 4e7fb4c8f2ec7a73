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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rqcsim/circuit.hpp"
#include "rqcsim/qmath.hpp"

namespace rqcsim {

// The reality-quantum-correlator interferometer on six qubits:
// photon polarizations A and B, photon paths a and b, atom energies e1 and
// e2. Alice's side is (A, a); Bob's side is (B, b, e1, e2).

/// Experiment parameters. theta in [0, pi/2] sets the source entanglement
/// via c = cos(theta/2), s = sin(theta/2). qwp_in selects whether the
/// quarter-wave plate sits in photon A's path. post_select_a / post_select_b
/// override the default detector outcomes (0) used by bob_state.
struct RqcConfig {
  double theta = 0.0;
  bool qwp_in = false;
  int atoms = 2;
  std::optional<int> post_select_a;
  std::optional<int> post_select_b;
};

/// Throws std::domain_error / std::invalid_argument on out-of-range fields.
void validate(const RqcConfig& config);

/// Checkpoints of the evolution. Psi0..Psi5 are the interferometer stages;
/// the branch stages are the states after Alice's block (optional QWP, then
/// her polarizing beam splitter) applied at stage 2 or after the full MZI.
enum class StageId {
  Psi0,
  Psi1,
  Psi2,
  Psi3,
  Psi4,
  Psi5,
  Psi2Branch,
  Psi5Branch,
};

/// When Alice intervenes: right after the half-wave plate (Stage2, the
/// first tomography point) or after the beam splitter (Stage5, the MZI
/// output). Her block commutes with everything on Bob's side, so the final
/// physics is timing-independent.
enum class Scenario { Stage2, Stage5 };

std::string to_string(StageId stage);
std::string to_string(Scenario scenario);

/// The fixed register (A, a, B, b, e1, e2), most significant qubit first.
const QubitRegister& rqc_register();

/// Stages present in the scenario's circuit, in circuit order.
std::vector<StageId> stages_in(Scenario scenario);

/// Builds the experiment circuit. Scenario::Stage5 (default) runs the full
/// interferometer and ends with Alice's block (markers Psi0..Psi5,
/// Psi5Branch). Scenario::Stage2 stops after the half-wave plate and then
/// applies Alice's block (markers Psi0..Psi2, Psi2Branch).
Circuit build_rqc(const RqcConfig& config,
                  Scenario scenario = Scenario::Stage5);

/// All stage snapshots of the scenario's circuit, evolved from |0...0>.
std::map<StageId, StateVector> stage_states(const RqcConfig& config,
                                            Scenario scenario);

/// Engine-evolved snapshot at one stage (picks the circuit that contains it).
StateVector circuit_state(StageId stage, const RqcConfig& config);

/// Closed-form stage state transcribed from the analytic evolution,
/// independent of the circuit engine. Matches circuit_state up to a global
/// phase.
StateVector oracle_state(StageId stage, const RqcConfig& config);

/// State accessible from Bob's location: the scenario's detector
/// post-selection (a at stage 2; a and b at stage 5; outcomes default to 0)
/// applied to the circuit state, with Alice's qubits traced out. Lives on
/// (B, b, e1, e2).
DensityMatrix bob_state(Scenario scenario, const RqcConfig& config);

/// Closed-form irreality for the scenario's target observables: 0 with the
/// QWP out, the binary entropy of cos^2(theta/2) with the QWP in.
double predicted_irreality(Scenario scenario, const RqcConfig& config);

}  // namespace rqcsim
