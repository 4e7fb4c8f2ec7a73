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

#include "rqcsim/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rqcsim/rng.hpp"

namespace rqcsim {

namespace {

constexpr Complex kI{0.0, 1.0};

std::string outcome_key(std::size_t outcome, int width) {
  std::string key(static_cast<std::size_t>(width), '0');
  for (int q = 0; q < width; ++q) {
    if ((outcome >> (width - 1 - q)) & 1u) key[static_cast<std::size_t>(q)] = '1';
  }
  return key;
}

std::size_t outcome_index(std::string_view key) {
  std::size_t index = 0;
  for (char c : key) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("outcome keys must be bitstrings");
    }
    index = (index << 1) | static_cast<std::size_t>(c - '0');
  }
  return index;
}

Eigen::Matrix2cd pauli_matrix(char p) {
  Eigen::Matrix2cd m;
  switch (p) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -kI, kI, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("unknown Pauli letter");
  }
  return m;
}

std::vector<int> validated_positions(const StateVector& state,
                                     const std::vector<std::string>& qubits) {
  if (qubits.empty()) {
    throw std::invalid_argument("at least one qubit must be measured");
  }
  std::set<std::string> unique(qubits.begin(), qubits.end());
  if (unique.size() != qubits.size()) {
    throw std::invalid_argument("measured qubits must be distinct");
  }
  std::vector<int> positions;
  positions.reserve(qubits.size());
  for (const auto& q : qubits) positions.push_back(state.position_of(q));
  return positions;
}

// Applies a per-qubit 2x2 real matrix along each axis of a length-2^k vector.
void apply_per_qubit(std::vector<double>& v,
                     const std::vector<Eigen::Matrix2d>& ms) {
  const int k = static_cast<int>(ms.size());
  for (int q = 0; q < k; ++q) {
    const std::size_t bit = std::size_t{1} << (k - 1 - q);
    const Eigen::Matrix2d& m = ms[static_cast<std::size_t>(q)];
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i & bit) continue;
      const double lo = v[i];
      const double hi = v[i | bit];
      v[i] = m(0, 0) * lo + m(0, 1) * hi;
      v[i | bit] = m(1, 0) * lo + m(1, 1) * hi;
    }
  }
}

std::vector<std::string> all_pauli_strings(int n) {
  std::vector<std::string> out{""};
  for (int q = 0; q < n; ++q) {
    std::vector<std::string> next;
    next.reserve(out.size() * 4);
    for (const auto& prefix : out) {
      for (char p : {'I', 'X', 'Y', 'Z'}) next.push_back(prefix + p);
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

ReadoutNoiseModel ReadoutNoiseModel::uniform(double flip_probability,
                                             int num_qubits) {
  if (flip_probability < 0.0 || flip_probability > 1.0) {
    throw std::domain_error("flip probability must lie in [0, 1]");
  }
  Eigen::Matrix2d m;
  m << 1.0 - flip_probability, flip_probability,
       flip_probability, 1.0 - flip_probability;
  ReadoutNoiseModel noise;
  noise.confusion.assign(static_cast<std::size_t>(num_qubits), m);
  return noise;
}

void validate(const ReadoutNoiseModel& noise, int num_qubits) {
  if (static_cast<int>(noise.confusion.size()) != num_qubits) {
    throw std::invalid_argument("noise model covers the wrong qubit count");
  }
  for (const auto& m : noise.confusion) {
    for (int c = 0; c < 2; ++c) {
      if (std::abs(m.col(c).sum() - 1.0) > 1e-12) {
        throw std::invalid_argument("confusion columns must sum to 1");
      }
      for (int r = 0; r < 2; ++r) {
        if (m(r, c) < 0.0 || m(r, c) > 1.0) {
          throw std::invalid_argument("confusion entries must lie in [0, 1]");
        }
      }
    }
  }
}

double SettingCounts::total() const {
  double sum = 0.0;
  for (const auto& [key, value] : outcomes) sum += value;
  return sum;
}

std::vector<MeasurementSetting> pauli_settings(int num_qubits) {
  if (num_qubits < 1 || num_qubits > 6) {
    throw std::invalid_argument("pauli_settings supports 1..6 qubits");
  }
  std::vector<MeasurementSetting> settings;
  settings.reserve(static_cast<std::size_t>(std::pow(3, num_qubits)));
  std::vector<PauliBasis> work(static_cast<std::size_t>(num_qubits),
                               PauliBasis::X);
  const PauliBasis order[3] = {PauliBasis::X, PauliBasis::Y, PauliBasis::Z};
  const std::size_t count =
      static_cast<std::size_t>(std::pow(3, num_qubits));
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rem = idx;
    for (int q = num_qubits - 1; q >= 0; --q) {
      work[static_cast<std::size_t>(q)] = order[rem % 3];
      rem /= 3;
    }
    settings.push_back(MeasurementSetting{work});
  }
  return settings;
}

CountsTable simulate_counts(const StateVector& state,
                            const std::vector<std::string>& qubits,
                            std::uint64_t shots,
                            const std::optional<ReadoutNoiseModel>& noise,
                            std::uint64_t seed) {
  if (shots == 0) {
    throw std::invalid_argument("shots must be at least 1");
  }
  const std::vector<int> positions = validated_positions(state, qubits);
  const int k = static_cast<int>(qubits.size());
  if (noise) validate(*noise, k);

  const int n = state.num_qubits();
  const Gate h = standard_gate("H");
  const Gate sdg = standard_gate("SDG");
  const std::vector<MeasurementSetting> settings = pauli_settings(k);

  CountsTable table;
  table.reserve(settings.size());
  for (std::size_t s = 0; s < settings.size(); ++s) {
    const MeasurementSetting& setting = settings[s];

    StateVector rotated = state;
    for (int q = 0; q < k; ++q) {
      const std::string& label = qubits[static_cast<std::size_t>(q)];
      switch (setting.bases[static_cast<std::size_t>(q)]) {
        case PauliBasis::X:
          rotated = apply_gate(rotated, h, {label});
          break;
        case PauliBasis::Y:
          rotated = apply_gate(rotated, sdg, {label});
          rotated = apply_gate(rotated, h, {label});
          break;
        case PauliBasis::Z:
          break;
      }
    }

    // Marginal Born probabilities over the measured qubits.
    std::vector<double> marginal(std::size_t{1} << k, 0.0);
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
      std::size_t reduced = 0;
      for (int q = 0; q < k; ++q) {
        const std::size_t bit =
            (i >> (n - 1 - positions[static_cast<std::size_t>(q)])) & 1u;
        reduced |= bit << (k - 1 - q);
      }
      marginal[reduced] +=
          std::norm(rotated.amplitudes[static_cast<Eigen::Index>(i)]);
    }
    std::vector<double> cumulative(marginal.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < marginal.size(); ++i) {
      acc += marginal[i];
      cumulative[i] = acc;
    }

    Rng rng(derive_seed(seed, s));
    std::map<std::string, double> outcomes;
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
      std::size_t outcome = sample_cumulative(cumulative, rng.uniform());
      if (noise) {
        for (int q = 0; q < k; ++q) {
          const std::size_t bit = std::size_t{1} << (k - 1 - q);
          const int truth = (outcome & bit) ? 1 : 0;
          const double flip =
              noise->confusion[static_cast<std::size_t>(q)](1 - truth, truth);
          if (rng.uniform() < flip) outcome ^= bit;
        }
      }
      outcomes[outcome_key(outcome, k)] += 1.0;
    }
    table.push_back(SettingCounts{setting, std::move(outcomes)});
  }
  return table;
}

CountsTable mitigate_counts(const CountsTable& counts,
                            const ReadoutNoiseModel& noise) {
  if (counts.empty()) return counts;
  const int k = static_cast<int>(counts.front().setting.bases.size());
  validate(noise, k);

  std::vector<Eigen::Matrix2d> inverses;
  inverses.reserve(noise.confusion.size());
  for (const auto& m : noise.confusion) {
    if (std::abs(m.determinant()) < 1e-12) {
      throw std::runtime_error("confusion matrix is singular");
    }
    inverses.push_back(m.inverse());
  }

  CountsTable mitigated;
  mitigated.reserve(counts.size());
  for (const auto& entry : counts) {
    if (static_cast<int>(entry.setting.bases.size()) != k) {
      throw std::invalid_argument("inconsistent setting widths");
    }
    std::vector<double> v(std::size_t{1} << k, 0.0);
    for (const auto& [key, value] : entry.outcomes) {
      v[outcome_index(key)] = value;
    }
    apply_per_qubit(v, inverses);
    std::map<std::string, double> outcomes;
    for (std::size_t i = 0; i < v.size(); ++i) {
      outcomes[outcome_key(i, k)] = v[i];
    }
    mitigated.push_back(SettingCounts{entry.setting, std::move(outcomes)});
  }
  return mitigated;
}

std::map<std::string, double> expectations_from_counts(
    const CountsTable& counts, int num_qubits) {
  std::map<std::string, const SettingCounts*> by_setting;
  for (const auto& entry : counts) {
    by_setting[entry.setting.str()] = &entry;
  }

  std::map<std::string, double> expectations;
  for (const std::string& pauli : all_pauli_strings(num_qubits)) {
    if (pauli.find_first_not_of('I') == std::string::npos) {
      expectations[pauli] = 1.0;
      continue;
    }
    // First covering setting in X<Y<Z enumeration order: I slots become X.
    std::string cover = pauli;
    for (char& c : cover) {
      if (c == 'I') c = 'X';
    }
    const auto it = by_setting.find(cover);
    if (it == by_setting.end()) {
      throw std::invalid_argument("counts are missing setting " + cover);
    }
    const SettingCounts& entry = *it->second;
    const double total = entry.total();
    if (total <= 0.0) {
      throw std::runtime_error("empty counts for setting " + cover);
    }
    double acc = 0.0;
    for (const auto& [key, value] : entry.outcomes) {
      int parity = 0;
      for (int q = 0; q < num_qubits; ++q) {
        if (pauli[static_cast<std::size_t>(q)] != 'I' &&
            key[static_cast<std::size_t>(q)] == '1') {
          parity ^= 1;
        }
      }
      acc += (parity ? -value : value);
    }
    expectations[pauli] = acc / total;
  }
  return expectations;
}

ComplexMatrix linear_inversion(
    const std::map<std::string, double>& expectations) {
  if (expectations.empty()) {
    throw std::invalid_argument("expectations map is empty");
  }
  const int n = static_cast<int>(expectations.begin()->first.size());
  const std::vector<std::string> all = all_pauli_strings(n);
  if (expectations.size() != all.size()) {
    throw std::invalid_argument("expectations must cover all 4^n Paulis");
  }

  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (const std::string& pauli : all) {
    const auto it = expectations.find(pauli);
    if (it == expectations.end()) {
      throw std::invalid_argument("missing Pauli term " + pauli);
    }
    ComplexMatrix term = ComplexMatrix::Identity(1, 1);
    for (char p : pauli) term = kron(term, pauli_matrix(p));
    rho += it->second * term;
  }
  return rho / static_cast<double>(dim);
}

Eigen::VectorXd waterfill_spectrum(Eigen::VectorXd eigenvalues) {
  const double sum = eigenvalues.sum();
  if (eigenvalues.size() == 0 || eigenvalues.maxCoeff() <= 0.0 ||
      sum <= 1e-12) {
    throw std::runtime_error("spectrum has no positive weight");
  }
  eigenvalues /= sum;

  // Zero the negatives, spread the deficit over the positive eigenvalues,
  // repeat until the spectrum is nonnegative. Each pass retires at least
  // one eigenvalue, so the loop terminates.
  while (eigenvalues.minCoeff() < 0.0) {
    double deficit = 0.0;
    int positives = 0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
      if (eigenvalues[i] < 0.0) {
        deficit += eigenvalues[i];
        eigenvalues[i] = 0.0;
      } else if (eigenvalues[i] > 0.0) {
        ++positives;
      }
    }
    if (positives == 0) {
      throw std::runtime_error("spectrum has no positive weight");
    }
    const double shift = deficit / positives;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
      if (eigenvalues[i] > 0.0) eigenvalues[i] += shift;
    }
  }
  return eigenvalues;
}

DensityMatrix project_to_physical(const ComplexMatrix& hermitian,
                                  QubitRegister labels) {
  if (hermitian.rows() != hermitian.cols() ||
      (hermitian - hermitian.adjoint()).cwiseAbs().maxCoeff() > 1e-8) {
    throw std::invalid_argument("projection input must be Hermitian");
  }
  const ComplexMatrix sym = (hermitian + hermitian.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  const Eigen::VectorXd lambda = waterfill_spectrum(solver.eigenvalues());
  const ComplexMatrix projected = solver.eigenvectors() *
                                  lambda.asDiagonal().toDenseMatrix() *
                                  solver.eigenvectors().adjoint();
  return make_density_matrix(std::move(labels), projected);
}

ReconstructionReport reconstruct(const StateVector& state,
                                 const std::vector<std::string>& qubits,
                                 const ReconstructOptions& options) {
  validated_positions(state, qubits);
  if (options.repetitions < 1) {
    throw std::invalid_argument("repetitions must be at least 1");
  }
  if (options.mitigate && !options.noise) {
    throw std::invalid_argument("mitigation requires a noise model");
  }
  for (const auto& target : options.targets) {
    if (std::find(qubits.begin(), qubits.end(), target.qubit) ==
        qubits.end()) {
      throw std::invalid_argument("measure target must be a measured qubit");
    }
  }

  const int k = static_cast<int>(qubits.size());
  ReconstructionReport report;
  report.qubits = qubits;
  report.settings_count = static_cast<int>(std::pow(3, k));
  report.shots = options.shots;
  report.repetitions = options.repetitions;
  report.seed = options.seed;
  report.mitigated = options.mitigate;

  std::vector<std::vector<double>> samples(options.targets.size());
  ComplexMatrix accumulated =
      ComplexMatrix::Zero(Eigen::Index{1} << k, Eigen::Index{1} << k);

  for (int rep = 0; rep < options.repetitions; ++rep) {
    const std::uint64_t rep_seed =
        derive_seed(options.seed, static_cast<std::uint64_t>(rep));
    CountsTable raw = simulate_counts(state, qubits, options.shots,
                                      options.noise, rep_seed);
    const CountsTable* used = &raw;
    CountsTable mitigated;
    if (options.mitigate) {
      mitigated = mitigate_counts(raw, *options.noise);
      used = &mitigated;
    }

    const ComplexMatrix estimate =
        linear_inversion(expectations_from_counts(*used, k));
    const DensityMatrix rho = project_to_physical(estimate, qubits);
    accumulated += rho.matrix;

    for (std::size_t t = 0; t < options.targets.size(); ++t) {
      samples[t].push_back(irreality(rho, options.targets[t]));
    }

    report.raw_counts.push_back(std::move(raw));
    if (options.mitigate) {
      report.mitigated_counts.push_back(std::move(mitigated));
    }
  }

  report.reconstructed = make_density_matrix(
      qubits, accumulated / static_cast<double>(options.repetitions));

  for (std::size_t t = 0; t < options.targets.size(); ++t) {
    MeasureEstimate est;
    est.target = options.targets[t].qubit;
    est.samples = samples[t];
    double mean = 0.0;
    for (double v : est.samples) mean += v;
    mean /= static_cast<double>(est.samples.size());
    est.mean = mean;
    if (est.samples.size() > 1) {
      double ss = 0.0;
      for (double v : est.samples) ss += (v - mean) * (v - mean);
      est.stddev =
          std::sqrt(ss / static_cast<double>(est.samples.size() - 1));
    }
    report.estimates.push_back(std::move(est));
  }
  return report;
}

std::string counts_to_json(const CountsTable& counts) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& entry : counts) {
    nlohmann::json outcomes = nlohmann::json::object();
    for (const auto& [key, value] : entry.outcomes) outcomes[key] = value;
    out.push_back({{"setting", entry.setting.str()},
                   {"outcomes", std::move(outcomes)}});
  }
  return out.dump(2);
}

CountsTable counts_from_json(const std::string& text) {
  const nlohmann::json parsed = nlohmann::json::parse(text);
  if (!parsed.is_array()) {
    throw std::invalid_argument("counts JSON must be an array");
  }
  CountsTable table;
  table.reserve(parsed.size());
  for (const auto& item : parsed) {
    SettingCounts entry;
    entry.setting =
        MeasurementSetting::parse(item.at("setting").get<std::string>());
    for (const auto& [key, value] : item.at("outcomes").items()) {
      outcome_index(key);  // validates the bitstring
      entry.outcomes[key] = value.get<double>();
    }
    table.push_back(std::move(entry));
  }
  return table;
}

}  // namespace rqcsim
