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

#include "rqcsim/circuit.hpp"
#include "rqcsim/measures.hpp"
#include "rqcsim/qmath.hpp"

namespace rqcsim {

/// Classical readout noise: one column-stochastic confusion matrix per
/// measured qubit, confusion(r, t) = p(record r | true t).
struct ReadoutNoiseModel {
  std::vector<Eigen::Matrix2d> confusion;

  /// Same symmetric flip probability on every qubit.
  static ReadoutNoiseModel uniform(double flip_probability, int num_qubits);
};

void validate(const ReadoutNoiseModel& noise, int num_qubits);

/// Counts for one measurement setting. Outcome keys are MSB-first
/// bitstrings over the measured qubits; values are real so mitigated
/// tables fit the same shape.
struct SettingCounts {
  MeasurementSetting setting;
  std::map<std::string, double> outcomes;

  double total() const;
};

using CountsTable = std::vector<SettingCounts>;

/// All 3^n basis combinations in lexicographic X < Y < Z order.
std::vector<MeasurementSetting> pauli_settings(int num_qubits);

/// Shot-based tomography counts of the listed qubits for every Pauli
/// setting. Unmeasured qubits are marginalized by the Born rule. Noise, if
/// given, flips each recorded bit independently per shot. Deterministic for
/// a fixed seed (per-setting streams derived from it).
CountsTable simulate_counts(const StateVector& state,
                            const std::vector<std::string>& qubits,
                            std::uint64_t shots,
                            const std::optional<ReadoutNoiseModel>& noise,
                            std::uint64_t seed);

/// Applies the inverse of the tensor-product confusion matrix to every
/// setting's count vector. Output may contain small negatives; downstream
/// projection handles them. Throws on singular confusion matrices.
CountsTable mitigate_counts(const CountsTable& counts,
                            const ReadoutNoiseModel& noise);

/// Estimates <P> for all 4^n Pauli strings over {I,X,Y,Z}. Strings with
/// identity factors are marginalized from the first covering setting in
/// enumeration order (I -> X); the all-identity string is exactly 1.
std::map<std::string, double> expectations_from_counts(
    const CountsTable& counts, int num_qubits);

/// rho = 2^-n * sum_P <P> P. Requires every one of the 4^n Pauli strings;
/// Hermitian by construction but generally not positive.
ComplexMatrix linear_inversion(
    const std::map<std::string, double>& expectations);

/// Spectrum repair used by project_to_physical: normalizes to unit sum,
/// zeroes negatives, and spreads the deficit uniformly over the remaining
/// positive eigenvalues, iterating until the whole spectrum is nonnegative.
/// Throws when no positive weight is left.
Eigen::VectorXd waterfill_spectrum(Eigen::VectorXd eigenvalues);

/// Nearest density matrix in the 2-norm: waterfill_spectrum applied to the
/// eigenvalues, eigenvectors untouched.
DensityMatrix project_to_physical(const ComplexMatrix& hermitian,
                                  QubitRegister labels);

struct ReconstructOptions {
  std::uint64_t shots = 8192;
  std::optional<ReadoutNoiseModel> noise;
  bool mitigate = false;
  int repetitions = 1;
  std::uint64_t seed = 0;
  /// Qubits whose irreality is estimated on the reconstructed state.
  std::vector<MeasureTarget> targets;
};

struct MeasureEstimate {
  std::string target;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation over repetitions
  std::vector<double> samples;
};

struct ReconstructionReport {
  std::vector<std::string> qubits;
  int settings_count = 0;
  std::uint64_t shots = 0;
  int repetitions = 0;
  std::uint64_t seed = 0;
  bool mitigated = false;
  std::vector<CountsTable> raw_counts;        // one table per repetition
  std::vector<CountsTable> mitigated_counts;  // empty when not mitigating
  DensityMatrix reconstructed;                // averaged over repetitions
  std::vector<MeasureEstimate> estimates;
};

/// Full pipeline per repetition: counts -> optional mitigation ->
/// expectations -> linear inversion -> physical projection -> measures.
ReconstructionReport reconstruct(const StateVector& state,
                                 const std::vector<std::string>& qubits,
                                 const ReconstructOptions& options);

// Counts tables serialize as
// [{"setting": "XZ", "outcomes": {"00": 512.0, ...}}, ...].
std::string counts_to_json(const CountsTable& counts);
CountsTable counts_from_json(const std::string& text);

}  // namespace rqcsim
