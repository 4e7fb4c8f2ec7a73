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

#include "rqcsim/rqc.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rqcsim {

namespace {

constexpr Complex kI{0.0, 1.0};

// Accumulates closed-form kets written in register order (A a B b e1 e2).
class KetBuilder {
 public:
  KetBuilder() : amplitudes_(ComplexVector::Zero(64)) {}

  void add(Complex amp, std::string_view bits) {
    std::size_t index = 0;
    for (char c : bits) index = (index << 1) | static_cast<std::size_t>(c - '0');
    amplitudes_[static_cast<Eigen::Index>(index)] += amp;
  }

  StateVector take() {
    return make_state(rqc_register(), std::move(amplitudes_));
  }

 private:
  ComplexVector amplitudes_;
};

void append_alice_block(Circuit& circuit, const RqcConfig& config) {
  if (config.qwp_in) {
    circuit.add(standard_gate("QWP"), {"A"});
  }
  circuit.add(standard_gate("CZ"), {"A", "a"});
  circuit.add(standard_gate("CY"), {"A", "a"});
}

}  // namespace

void validate(const RqcConfig& config) {
  if (!(config.theta >= 0.0 && config.theta <= std::numbers::pi / 2.0)) {
    throw std::domain_error("theta must lie in [0, pi/2]");
  }
  if (config.atoms != 1 && config.atoms != 2) {
    throw std::invalid_argument("atoms must be 1 or 2");
  }
  for (const auto& sel : {config.post_select_a, config.post_select_b}) {
    if (sel && *sel != 0 && *sel != 1) {
      throw std::invalid_argument("post-selection outcomes must be 0 or 1");
    }
  }
}

std::string to_string(StageId stage) {
  switch (stage) {
    case StageId::Psi0: return "Psi0";
    case StageId::Psi1: return "Psi1";
    case StageId::Psi2: return "Psi2";
    case StageId::Psi3: return "Psi3";
    case StageId::Psi4: return "Psi4";
    case StageId::Psi5: return "Psi5";
    case StageId::Psi2Branch: return "Psi2Branch";
    case StageId::Psi5Branch: return "Psi5Branch";
  }
  throw std::invalid_argument("unknown stage");
}

std::string to_string(Scenario scenario) {
  return scenario == Scenario::Stage2 ? "stage2" : "stage5";
}

const QubitRegister& rqc_register() {
  static const QubitRegister labels{"A", "a", "B", "b", "e1", "e2"};
  return labels;
}

std::vector<StageId> stages_in(Scenario scenario) {
  if (scenario == Scenario::Stage2) {
    return {StageId::Psi0, StageId::Psi1, StageId::Psi2, StageId::Psi2Branch};
  }
  return {StageId::Psi0, StageId::Psi1, StageId::Psi2,       StageId::Psi3,
          StageId::Psi4, StageId::Psi5, StageId::Psi5Branch};
}

Circuit build_rqc(const RqcConfig& config, Scenario scenario) {
  validate(config);
  Circuit circuit;
  circuit.labels = rqc_register();

  // Source: partially entangled polarizations, atoms excited.
  circuit.add(standard_gate("RY", config.theta), {"A"});
  circuit.add(standard_gate("CNOT"), {"A", "B"});
  circuit.add(standard_gate("X"), {"B"});
  circuit.add(standard_gate("X"), {"e1"});
  circuit.add(standard_gate("X"), {"e2"});
  circuit.mark(to_string(StageId::Psi0));

  // PBS: polarization controls the path, reflected component gains i.
  circuit.add(standard_gate("CZ"), {"B", "b"});
  circuit.add(standard_gate("CY"), {"B", "b"});
  circuit.mark(to_string(StageId::Psi1));

  // HWP: disentangles the polarization B from the path.
  circuit.add(standard_gate("CNOT"), {"b", "B"});
  circuit.mark(to_string(StageId::Psi2));

  if (scenario == Scenario::Stage2) {
    append_alice_block(circuit, config);
    circuit.mark(to_string(StageId::Psi2Branch));
    return circuit;
  }

  // Photon-atoms interaction; atom 1 couples to the upper path (b = 0).
  circuit.add(standard_gate("X"), {"b"});
  circuit.add(standard_gate("CNOT"), {"b", "e1"});
  circuit.add(standard_gate("X"), {"b"});
  if (config.atoms == 2) {
    circuit.add(standard_gate("CNOT"), {"b", "e2"});
  }
  circuit.mark(to_string(StageId::Psi3));

  circuit.add(standard_gate("MIRROR"), {"b"});
  circuit.mark(to_string(StageId::Psi4));

  circuit.add(standard_gate("BS"), {"b"});
  circuit.mark(to_string(StageId::Psi5));

  append_alice_block(circuit, config);
  circuit.mark(to_string(StageId::Psi5Branch));
  return circuit;
}

std::map<StageId, StateVector> stage_states(const RqcConfig& config,
                                            Scenario scenario) {
  const Circuit circuit = build_rqc(config, scenario);
  const RunResult run =
      run_with_snapshots(circuit, basis_state(rqc_register(), "000000"));
  std::map<StageId, StateVector> out;
  for (StageId stage : stages_in(scenario)) {
    out.emplace(stage, run.snapshots.at(to_string(stage)));
  }
  return out;
}

StateVector circuit_state(StageId stage, const RqcConfig& config) {
  const Scenario scenario =
      stage == StageId::Psi2Branch ? Scenario::Stage2 : Scenario::Stage5;
  return stage_states(config, scenario).at(stage);
}

StateVector oracle_state(StageId stage, const RqcConfig& config) {
  validate(config);
  const double c = std::cos(config.theta / 2.0);
  const double s = std::sin(config.theta / 2.0);
  const double r = 1.0 / std::sqrt(2.0);
  const bool two_atoms = config.atoms == 2;
  KetBuilder ket;

  switch (stage) {
    case StageId::Psi0:
      ket.add(c, "001011");
      ket.add(s, "100011");
      break;
    case StageId::Psi1:
      ket.add(kI * c, "001111");
      ket.add(s, "100011");
      break;
    case StageId::Psi2:
      ket.add(kI * c, "000111");
      ket.add(s, "100011");
      break;
    case StageId::Psi3:
      if (two_atoms) {
        ket.add(kI * c, "000110");
        ket.add(s, "100001");
      } else {
        ket.add(kI * c, "000111");
        ket.add(s, "100001");
      }
      break;
    case StageId::Psi4:
      if (two_atoms) {
        ket.add(-c, "000010");
        ket.add(kI * s, "100101");
      } else {
        ket.add(-c, "000011");
        ket.add(kI * s, "100101");
      }
      break;
    case StageId::Psi5:
      // (c |0>_A |e:10> + paired s branch) with the path in omega_±.
      if (two_atoms) {
        ket.add(c * r, "000010");
        ket.add(kI * c * r, "000110");
        ket.add(s * r, "100001");
        ket.add(-kI * s * r, "100101");
      } else {
        ket.add(c * r, "000011");
        ket.add(kI * c * r, "000111");
        ket.add(s * r, "100001");
        ket.add(-kI * s * r, "100101");
      }
      break;
    case StageId::Psi2Branch:
      if (config.qwp_in) {
        // (|00>_Aa |beta_+>_b + |11>_Aa |beta_->_b)/sqrt(2), beta_± = s|0> ± ic|1>.
        ket.add(s * r, "000011");
        ket.add(kI * c * r, "000111");
        ket.add(s * r, "110011");
        ket.add(-kI * c * r, "110111");
      } else {
        // i (c |001>_Aab + s |110>_Aab)
        ket.add(kI * c, "000111");
        ket.add(kI * s, "110011");
      }
      break;
    case StageId::Psi5Branch:
      if (config.qwp_in) {
        if (two_atoms) {
          // (|000>_Aab |xi_+> - i|001>|xi_-> + |110>|xi_-> - i|111>|xi_+>)/2,
          // xi_± = s|01> ± c|10> on (e1, e2).
          ket.add(0.5 * s, "000001");
          ket.add(0.5 * c, "000010");
          ket.add(-0.5 * kI * s, "000101");
          ket.add(0.5 * kI * c, "000110");
          ket.add(0.5 * s, "110001");
          ket.add(-0.5 * c, "110010");
          ket.add(-0.5 * kI * s, "110101");
          ket.add(-0.5 * kI * c, "110110");
        } else {
          // (|00>_Aa (c w+ |11> + s w- |01>) - |11>_Aa (c w+ |11> - s w- |01>))/sqrt(2)
          ket.add(0.5 * c, "000011");
          ket.add(0.5 * kI * c, "000111");
          ket.add(0.5 * s, "000001");
          ket.add(-0.5 * kI * s, "000101");
          ket.add(-0.5 * c, "110011");
          ket.add(-0.5 * kI * c, "110111");
          ket.add(0.5 * s, "110001");
          ket.add(-0.5 * kI * s, "110101");
        }
      } else {
        if (two_atoms) {
          // (c |0010>_{A a e1 e2} w+ + i s |1101> w-)
          ket.add(c * r, "000010");
          ket.add(kI * c * r, "000110");
          ket.add(kI * s * r, "110001");
          ket.add(s * r, "110101");
        } else {
          ket.add(c * r, "000011");
          ket.add(kI * c * r, "000111");
          ket.add(kI * s * r, "110001");
          ket.add(s * r, "110101");
        }
      }
      break;
  }
  return ket.take();
}

DensityMatrix bob_state(Scenario scenario, const RqcConfig& config) {
  validate(config);
  const StageId branch = scenario == Scenario::Stage2 ? StageId::Psi2Branch
                                                      : StageId::Psi5Branch;
  StateVector state = circuit_state(branch, config);
  state = post_select(state, "a", config.post_select_a.value_or(0)).state;
  if (scenario == Scenario::Stage5) {
    state = post_select(state, "b", config.post_select_b.value_or(0)).state;
  }
  return partial_trace(to_density_matrix(state), {"A", "a"});
}

double predicted_irreality(Scenario scenario, const RqcConfig& config) {
  validate(config);
  (void)scenario;  // both intervention times share the same curve
  if (!config.qwp_in) {
    return 0.0;
  }
  const double c = std::cos(config.theta / 2.0);
  return binary_entropy(c * c);
}

}  // namespace rqcsim
