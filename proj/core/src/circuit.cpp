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

#include "rqcsim/circuit.hpp"

#include <cmath>
#include <stdexcept>

#include "rqcsim/rng.hpp"

namespace rqcsim {

namespace {

constexpr double kUnitaryTol = 1e-12;
constexpr Complex kI{0.0, 1.0};

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix hadamard() {
  ComplexMatrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

ComplexMatrix phase_s() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, kI;
  return m;
}

ComplexMatrix rotation_y(double theta) {
  ComplexMatrix m(2, 2);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  m << c, -s, s, c;
  return m;
}

// Controlled-U with the first (most significant) qubit as control.
ComplexMatrix controlled(const ComplexMatrix& u) {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  m.block(2, 2, 2, 2) = u;
  return m;
}

Gate checked_gate(std::string name, ComplexMatrix unitary) {
  const int arity = unitary.rows() == 2 ? 1 : 2;
  const ComplexMatrix id =
      ComplexMatrix::Identity(unitary.rows(), unitary.cols());
  if ((unitary.adjoint() * unitary - id).cwiseAbs().maxCoeff() > kUnitaryTol) {
    throw std::invalid_argument("gate '" + name + "' is not unitary");
  }
  return Gate{std::move(name), std::move(unitary), arity};
}

}  // namespace

Gate standard_gate(std::string_view name, std::optional<double> param) {
  const std::string key(name);
  if (key == "RY") {
    if (!param) {
      throw std::invalid_argument("RY requires an angle parameter");
    }
    return checked_gate("RY", rotation_y(*param));
  }
  if (param) {
    throw std::invalid_argument("gate '" + key + "' takes no parameter");
  }
  if (key == "X") return checked_gate(key, pauli_x());
  if (key == "Y") return checked_gate(key, pauli_y());
  if (key == "Z") return checked_gate(key, pauli_z());
  if (key == "H") return checked_gate(key, hadamard());
  if (key == "S") return checked_gate(key, phase_s());
  if (key == "SDG") return checked_gate(key, phase_s().adjoint());
  if (key == "CNOT") return checked_gate(key, controlled(pauli_x()));
  if (key == "CZ") return checked_gate(key, controlled(pauli_z()));
  if (key == "CY") return checked_gate(key, controlled(pauli_y()));
  // Optical composites from the gate dictionary.
  if (key == "MIRROR") return checked_gate(key, pauli_y() * pauli_z());
  if (key == "BS") return checked_gate(key, phase_s() * hadamard() * phase_s());
  if (key == "QWP") return checked_gate(key, phase_s() * hadamard());
  throw std::invalid_argument("unknown gate name: " + key);
}

void Circuit::add(Gate gate, std::vector<std::string> targets) {
  if (static_cast<int>(targets.size()) != gate.arity) {
    throw std::invalid_argument("target count does not match gate arity");
  }
  for (const auto& t : targets) {
    if (std::find(labels.begin(), labels.end(), t) == labels.end()) {
      throw std::invalid_argument("target label not in register: " + t);
    }
  }
  if (targets.size() == 2 && targets[0] == targets[1]) {
    throw std::invalid_argument("two-qubit gate targets must be distinct");
  }
  steps.push_back(CircuitStep{std::move(gate), std::move(targets)});
}

void Circuit::mark(std::string stage) {
  const std::size_t position = steps.size();
  if (markers.contains(stage)) {
    throw std::invalid_argument("duplicate stage marker: " + stage);
  }
  for (const auto& [name, pos] : markers) {
    if (pos >= position) {
      throw std::invalid_argument("markers must be strictly increasing");
    }
  }
  markers[std::move(stage)] = position;
}

StateVector apply_gate(const StateVector& state, const Gate& gate,
                       const std::vector<std::string>& targets) {
  if (static_cast<int>(targets.size()) != gate.arity) {
    throw std::invalid_argument("target count does not match gate arity");
  }
  const int n = state.num_qubits();
  StateVector out = state;

  if (gate.arity == 1) {
    const int shift = n - 1 - state.position_of(targets[0]);
    const std::size_t bit = std::size_t{1} << shift;
    const ComplexMatrix& u = gate.unitary;
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
      if (i & bit) continue;
      const auto lo = static_cast<Eigen::Index>(i);
      const auto hi = static_cast<Eigen::Index>(i | bit);
      const Complex a = state.amplitudes[lo];
      const Complex b = state.amplitudes[hi];
      out.amplitudes[lo] = u(0, 0) * a + u(0, 1) * b;
      out.amplitudes[hi] = u(1, 0) * a + u(1, 1) * b;
    }
  } else {
    if (targets[0] == targets[1]) {
      throw std::invalid_argument("two-qubit gate targets must be distinct");
    }
    const int shift0 = n - 1 - state.position_of(targets[0]);
    const int shift1 = n - 1 - state.position_of(targets[1]);
    const std::size_t bit0 = std::size_t{1} << shift0;
    const std::size_t bit1 = std::size_t{1} << shift1;
    const ComplexMatrix& u = gate.unitary;
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
      if ((i & bit0) || (i & bit1)) continue;
      const Eigen::Index idx[4] = {
          static_cast<Eigen::Index>(i),
          static_cast<Eigen::Index>(i | bit1),
          static_cast<Eigen::Index>(i | bit0),
          static_cast<Eigen::Index>(i | bit0 | bit1),
      };
      Complex in[4];
      for (int k = 0; k < 4; ++k) in[k] = state.amplitudes[idx[k]];
      for (int r = 0; r < 4; ++r) {
        Complex acc{0.0, 0.0};
        for (int c = 0; c < 4; ++c) acc += u(r, c) * in[c];
        out.amplitudes[idx[r]] = acc;
      }
    }
  }

  if (std::abs(out.amplitudes.squaredNorm() - 1.0) > tolerances::kNorm) {
    throw std::runtime_error("gate application broke normalization");
  }
  return out;
}

RunResult run_with_snapshots(const Circuit& circuit,
                             const StateVector& initial) {
  if (initial.labels != circuit.labels) {
    throw std::invalid_argument("initial state register does not match");
  }
  RunResult result{initial, {}};
  auto record = [&](std::size_t done) {
    for (const auto& [stage, pos] : circuit.markers) {
      if (pos == done) result.snapshots.emplace(stage, result.final_state);
    }
  };
  record(0);
  for (std::size_t k = 0; k < circuit.steps.size(); ++k) {
    const auto& step = circuit.steps[k];
    result.final_state = apply_gate(result.final_state, step.gate,
                                    step.targets);
    record(k + 1);
  }
  return result;
}

PostSelection post_select(const StateVector& state, std::string_view qubit,
                          int outcome) {
  if (outcome != 0 && outcome != 1) {
    throw std::invalid_argument("outcome must be 0 or 1");
  }
  const int n = state.num_qubits();
  const std::size_t bit = std::size_t{1} << (n - 1 - state.position_of(qubit));

  double probability = 0.0;
  for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
    const bool is_one = (i & bit) != 0;
    if (is_one == (outcome == 1)) {
      probability += std::norm(state.amplitudes[static_cast<Eigen::Index>(i)]);
    }
  }
  if (probability < 1e-12) {
    throw std::runtime_error("post-selected outcome has zero probability");
  }

  StateVector collapsed = state;
  const double scale = 1.0 / std::sqrt(probability);
  for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
    const bool is_one = (i & bit) != 0;
    auto& amp = collapsed.amplitudes[static_cast<Eigen::Index>(i)];
    amp = (is_one == (outcome == 1)) ? amp * scale : Complex{0.0, 0.0};
  }
  return PostSelection{probability, std::move(collapsed)};
}

std::string MeasurementSetting::str() const {
  std::string out;
  out.reserve(bases.size());
  for (PauliBasis b : bases) out.push_back(static_cast<char>(b));
  return out;
}

MeasurementSetting MeasurementSetting::parse(std::string_view text) {
  MeasurementSetting setting;
  setting.bases.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'X': setting.bases.push_back(PauliBasis::X); break;
      case 'Y': setting.bases.push_back(PauliBasis::Y); break;
      case 'Z': setting.bases.push_back(PauliBasis::Z); break;
      default:
        throw std::invalid_argument("setting may contain only X, Y, Z");
    }
  }
  return setting;
}

std::vector<double> outcome_probabilities(const StateVector& state) {
  std::vector<double> probs(static_cast<std::size_t>(state.dim()));
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    probs[static_cast<std::size_t>(i)] = std::norm(state.amplitudes[i]);
  }
  return probs;
}

std::map<std::string, std::uint64_t> sample_counts(
    const StateVector& state, const MeasurementSetting& setting,
    std::uint64_t shots, std::uint64_t seed) {
  const int n = state.num_qubits();
  if (static_cast<int>(setting.bases.size()) != n) {
    throw std::invalid_argument("setting must cover the full register");
  }
  if (shots == 0) {
    throw std::invalid_argument("shots must be at least 1");
  }

  // Rotate each qubit into the measurement basis.
  StateVector rotated = state;
  const Gate h = standard_gate("H");
  const Gate sdg = standard_gate("SDG");
  for (int q = 0; q < n; ++q) {
    switch (setting.bases[static_cast<std::size_t>(q)]) {
      case PauliBasis::X:
        rotated = apply_gate(rotated, h, {state.labels[q]});
        break;
      case PauliBasis::Y:
        rotated = apply_gate(rotated, sdg, {state.labels[q]});
        rotated = apply_gate(rotated, h, {state.labels[q]});
        break;
      case PauliBasis::Z:
        break;
    }
  }

  const std::vector<double> probs = outcome_probabilities(rotated);
  std::vector<double> cumulative(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cumulative[i] = acc;
  }

  Rng rng(seed);
  std::map<std::string, std::uint64_t> counts;
  std::string key(static_cast<std::size_t>(n), '0');
  for (std::uint64_t s = 0; s < shots; ++s) {
    const std::size_t outcome = sample_cumulative(cumulative, rng.uniform());
    for (int q = 0; q < n; ++q) {
      key[static_cast<std::size_t>(q)] =
          ((outcome >> (n - 1 - q)) & 1u) ? '1' : '0';
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace rqcsim
