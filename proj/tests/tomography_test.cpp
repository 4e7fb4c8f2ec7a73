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

#include <cmath>

#include <doctest.h>

#include "rqcsim/rng.hpp"
#include "rqcsim/rqc.hpp"
#include "test_util.hpp"

using namespace rqcsim;
namespace tt = rqcsim::testing;

namespace {

constexpr Complex kI{0.0, 1.0};

Eigen::Matrix2cd pauli(char p) {
  Eigen::Matrix2cd m;
  switch (p) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -kI, kI, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

// Exact expectations <P> = tr(rho P) for every Pauli string over n qubits.
std::map<std::string, double> exact_expectations(const ComplexMatrix& rho,
                                                 int n) {
  std::map<std::string, double> out;
  std::vector<std::string> strings{""};
  for (int q = 0; q < n; ++q) {
    std::vector<std::string> next;
    for (const auto& s : strings) {
      for (char p : {'I', 'X', 'Y', 'Z'}) next.push_back(s + p);
    }
    strings = std::move(next);
  }
  for (const auto& s : strings) {
    ComplexMatrix term = ComplexMatrix::Identity(1, 1);
    for (char p : s) term = kron(term, pauli(p));
    out[s] = (rho * term).trace().real();
  }
  return out;
}

double expectation_from_counts(const SettingCounts& entry,
                               const std::string& pauli_string) {
  double acc = 0.0;
  double total = 0.0;
  for (const auto& [key, value] : entry.outcomes) {
    int parity = 0;
    for (std::size_t q = 0; q < pauli_string.size(); ++q) {
      if (pauli_string[q] != 'I' && key[q] == '1') parity ^= 1;
    }
    acc += parity ? -value : value;
    total += value;
  }
  return acc / total;
}

}  // namespace

TEST_SUITE("tomography") {

TEST_CASE("pauli settings enumerate X<Y<Z lexicographically") {
  const auto one = pauli_settings(1);
  REQUIRE(one.size() == 3);
  CHECK(one[0].str() == "X");
  CHECK(one[1].str() == "Y");
  CHECK(one[2].str() == "Z");

  const auto two = pauli_settings(2);
  REQUIRE(two.size() == 9);
  CHECK(two.front().str() == "XX");
  CHECK(two[1].str() == "XY");
  CHECK(two.back().str() == "ZZ");

  CHECK(pauli_settings(4).size() == 81);
  CHECK_THROWS_AS(pauli_settings(0), std::invalid_argument);
  CHECK_THROWS_AS(pauli_settings(7), std::invalid_argument);
}

TEST_CASE("noiseless counts of a basis state are deterministic") {
  const StateVector zero = basis_state({"p"}, "0");
  const CountsTable table = simulate_counts(zero, {"p"}, 256, std::nullopt, 9);
  REQUIRE(table.size() == 3);
  const SettingCounts& z = table[2];
  REQUIRE(z.setting.str() == "Z");
  CHECK(z.outcomes.at("0") == 256.0);
  CHECK(z.total() == 256.0);
}

TEST_CASE("readout flips appear at the configured rate") {
  const StateVector zero = basis_state({"p"}, "0");
  const auto noise = ReadoutNoiseModel::uniform(0.02, 1);
  const std::uint64_t shots = 100000;
  const CountsTable table = simulate_counts(zero, {"p"}, shots, noise, 21);
  const SettingCounts& z = table[2];
  const double frequency = z.outcomes.count("1") ? z.outcomes.at("1") / shots
                                                 : 0.0;
  const double sigma = std::sqrt(0.02 * 0.98 / static_cast<double>(shots));
  CHECK(std::abs(frequency - 0.02) < 3.0 * sigma);
}

TEST_CASE("sampled ZZ expectation matches the exact value on the branch state") {
  const RqcConfig cfg{tt::kPi / 2, true, 2, {}, {}};
  const StateVector branch = circuit_state(StageId::Psi2Branch, cfg);
  const std::uint64_t shots = 8192;
  const CountsTable table =
      simulate_counts(branch, {"A", "b"}, shots, std::nullopt, 4);

  // Exact value from the reduced state oracle.
  const DensityMatrix reduced =
      partial_trace(to_density_matrix(branch), {"a", "B", "e1", "e2"});
  const double exact =
      (reduced.matrix * kron(pauli('Z'), pauli('Z'))).trace().real();

  const SettingCounts* zz = nullptr;
  for (const auto& entry : table) {
    if (entry.setting.str() == "ZZ") zz = &entry;
  }
  REQUIRE(zz != nullptr);
  const double sampled = expectation_from_counts(*zz, "ZZ");
  const double sigma = 1.0 / std::sqrt(static_cast<double>(shots));
  CHECK(std::abs(sampled - exact) < 3.0 * sigma);
}

TEST_CASE("counts are reproducible per seed") {
  Rng rng(88);
  const StateVector psi = tt::random_pure_state(rng, 2);
  const CountsTable a = simulate_counts(psi, {"q0", "q1"}, 512, std::nullopt, 6);
  const CountsTable b = simulate_counts(psi, {"q0", "q1"}, 512, std::nullopt, 6);
  REQUIRE(a.size() == b.size());
  for (std::size_t s = 0; s < a.size(); ++s) {
    CHECK(a[s].outcomes == b[s].outcomes);
  }
}

TEST_CASE("identity noise leaves mitigation a no-op") {
  const StateVector zero = basis_state({"p"}, "0");
  const CountsTable raw = simulate_counts(zero, {"p"}, 128, std::nullopt, 2);
  const CountsTable mitigated =
      mitigate_counts(raw, ReadoutNoiseModel::uniform(0.0, 1));
  for (std::size_t s = 0; s < raw.size(); ++s) {
    for (const auto& [key, value] : raw[s].outcomes) {
      CHECK(mitigated[s].outcomes.at(key) == doctest::Approx(value));
    }
  }
}

TEST_CASE("mitigation inverts the confusion map on exact frequencies") {
  // Push exact frequencies through the noise channel by hand, mitigate, and
  // demand the original table back.
  const double p = 0.07;
  const auto noise = ReadoutNoiseModel::uniform(p, 2);
  SettingCounts entry{MeasurementSetting::parse("ZZ"), {}};
  const double f[4] = {0.4, 0.3, 0.2, 0.1};
  const char* keys[4] = {"00", "01", "10", "11"};
  // Forward channel: independent per-qubit flips.
  for (int recorded = 0; recorded < 4; ++recorded) {
    double acc = 0.0;
    for (int truth = 0; truth < 4; ++truth) {
      double weight = 1.0;
      for (int q = 0; q < 2; ++q) {
        const int rb = (recorded >> (1 - q)) & 1;
        const int tb = (truth >> (1 - q)) & 1;
        weight *= (rb == tb) ? (1.0 - p) : p;
      }
      acc += weight * f[truth];
    }
    entry.outcomes[keys[recorded]] = acc * 1000.0;
  }
  const CountsTable mitigated = mitigate_counts({entry}, noise);
  for (int o = 0; o < 4; ++o) {
    CHECK(mitigated[0].outcomes.at(keys[o]) ==
          doctest::Approx(f[o] * 1000.0).epsilon(1e-10));
  }
}

TEST_CASE("mitigation shrinks the expectation bias over paired seeds") {
  ComplexVector amps(2);
  amps << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const StateVector plus = make_state({"p"}, std::move(amps));
  const auto noise = ReadoutNoiseModel::uniform(0.05, 1);

  double raw_error = 0.0;
  double mitigated_error = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CountsTable counts = simulate_counts(plus, {"p"}, 4096, noise, seed);
    const CountsTable fixed = mitigate_counts(counts, noise);
    raw_error += std::abs(expectation_from_counts(counts[0], "X") - 1.0);
    mitigated_error += std::abs(expectation_from_counts(fixed[0], "X") - 1.0);
  }
  CHECK(mitigated_error < raw_error);
}

TEST_CASE("a p = 0.5 confusion matrix is singular") {
  const StateVector zero = basis_state({"p"}, "0");
  const CountsTable raw = simulate_counts(zero, {"p"}, 64, std::nullopt, 3);
  CHECK_THROWS_AS(mitigate_counts(raw, ReadoutNoiseModel::uniform(0.5, 1)),
                  std::runtime_error);
}

TEST_CASE("linear inversion rebuilds simple states") {
  SUBCASE("a classical bit") {
    std::map<std::string, double> exps{
        {"I", 1.0}, {"X", 0.0}, {"Y", 0.0}, {"Z", 1.0}};
    const ComplexMatrix rho = linear_inversion(exps);
    CHECK(std::abs(rho(0, 0) - Complex{1, 0}) < 1e-14);
    CHECK(std::abs(rho(1, 1)) < 1e-14);
  }
  SUBCASE("the circular path state") {
    ComplexVector amps(2);
    amps << 1.0 / std::sqrt(2.0), kI / std::sqrt(2.0);
    const DensityMatrix rho = to_density_matrix(make_state({"b"}, amps));
    const ComplexMatrix rebuilt =
        linear_inversion(exact_expectations(rho.matrix, 1));
    CHECK((rebuilt - rho.matrix).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("the entangled atom pair at theta = pi/3") {
    const double c = std::cos(tt::kPi / 6);
    const double s = std::sin(tt::kPi / 6);
    ComplexVector amps = ComplexVector::Zero(4);
    amps[0b01] = s;
    amps[0b10] = c;
    const DensityMatrix rho =
        to_density_matrix(make_state({"e1", "e2"}, std::move(amps)));
    const ComplexMatrix rebuilt =
        linear_inversion(exact_expectations(rho.matrix, 2));
    // Off-diagonal coherence c*s = sqrt(3)/4 between |01> and |10>.
    CHECK(std::abs(rebuilt(1, 2) - Complex{std::sqrt(3.0) / 4.0, 0}) < 1e-12);
    CHECK((rebuilt - rho.matrix).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("linear inversion demands a complete Pauli basis") {
  std::map<std::string, double> exps{{"I", 1.0}, {"Z", 1.0}};
  CHECK_THROWS_AS(linear_inversion(exps), std::invalid_argument);
}

TEST_CASE("spectrum water-filling handles the reference cases") {
  Eigen::VectorXd two(2);
  two << 1.1, -0.1;
  const Eigen::VectorXd fixed_two = waterfill_spectrum(two);
  CHECK(fixed_two[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fixed_two[1] == 0.0);

  Eigen::VectorXd three(3);
  three << 0.7, 0.5, -0.2;
  const Eigen::VectorXd fixed_three = waterfill_spectrum(three);
  CHECK(fixed_three[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(fixed_three[1] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(fixed_three[2] == 0.0);

  Eigen::VectorXd cascade(3);
  cascade << 1.3, 0.05, -0.35;  // the first pass drives 0.05 negative
  const Eigen::VectorXd fixed_cascade = waterfill_spectrum(cascade);
  CHECK(fixed_cascade.minCoeff() >= 0.0);
  CHECK(fixed_cascade.sum() == doctest::Approx(1.0).epsilon(1e-12));

  Eigen::VectorXd hopeless(2);
  hopeless << -0.5, -0.5;
  CHECK_THROWS_AS(waterfill_spectrum(hopeless), std::runtime_error);
}

TEST_CASE("projection is a fixed point on valid density matrices") {
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = tt::random_density_matrix(rng, 2, 1 + trial % 4);
    const DensityMatrix projected = project_to_physical(rho.matrix, rho.labels);
    CHECK((projected.matrix - rho.matrix).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("projection rejects non-Hermitian input") {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.5, 0.0, 0.0;
  CHECK_THROWS_AS(project_to_physical(m, {"p"}), std::invalid_argument);
}

TEST_CASE("exact expectations reconstruct the state to high fidelity") {
  Rng rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 3;
    const DensityMatrix rho = tt::random_density_matrix(rng, n, 1 + trial % 2);
    const DensityMatrix rebuilt = project_to_physical(
        linear_inversion(exact_expectations(rho.matrix, n)), rho.labels);
    CHECK((rebuilt.matrix - rho.matrix).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("reconstruction recovers the particle-like irreality") {
  const RqcConfig cfg{tt::kPi / 3, false, 2, {}, {}};
  const StateVector branch = circuit_state(StageId::Psi2Branch, cfg);
  ReconstructOptions options;
  options.shots = 16384;
  options.repetitions = 3;
  options.seed = 11;
  options.targets = {{"b", {}}};
  const ReconstructionReport report = reconstruct(branch, {"A", "b"}, options);
  REQUIRE(report.estimates.size() == 1);
  CHECK(report.estimates[0].mean < 0.02);
}

TEST_CASE("reconstruction recovers the wave-like irreality") {
  const RqcConfig cfg{tt::kPi / 2, true, 2, {}, {}};
  const StateVector branch = circuit_state(StageId::Psi2Branch, cfg);
  ReconstructOptions options;
  options.shots = 8192;
  options.repetitions = 10;
  options.seed = 13;
  options.targets = {{"b", {}}};
  const ReconstructionReport report = reconstruct(branch, {"A", "b"}, options);
  REQUIRE(report.estimates.size() == 1);
  CHECK(std::abs(report.estimates[0].mean - 1.0) < 0.05);
  CHECK(report.estimates[0].samples.size() == 10);
  CHECK(report.estimates[0].stddev > 0.0);
  CHECK(report.settings_count == 9);
  CHECK(report.raw_counts.size() == 10);
  CHECK(report.mitigated_counts.empty());
}

TEST_CASE("estimate spread shrinks with the shot budget") {
  const RqcConfig cfg{tt::kPi / 2, true, 2, {}, {}};
  const StateVector branch = circuit_state(StageId::Psi2Branch, cfg);
  std::vector<double> spreads;
  for (std::uint64_t shots : {512u, 2048u, 8192u}) {
    ReconstructOptions options;
    options.shots = shots;
    options.repetitions = 10;
    options.seed = 17;
    options.targets = {{"b", {}}};
    spreads.push_back(
        reconstruct(branch, {"A", "b"}, options).estimates[0].stddev);
  }
  CHECK(spreads[0] > spreads[1]);
  CHECK(spreads[1] > spreads[2]);
}

TEST_CASE("reconstruction is deterministic in the seed") {
  const RqcConfig cfg{tt::kPi / 4, true, 2, {}, {}};
  const StateVector branch = circuit_state(StageId::Psi2Branch, cfg);
  ReconstructOptions options;
  options.shots = 1024;
  options.repetitions = 2;
  options.seed = 5;
  options.targets = {{"b", {}}};
  const ReconstructionReport a = reconstruct(branch, {"A", "b"}, options);
  const ReconstructionReport b = reconstruct(branch, {"A", "b"}, options);
  CHECK(a.estimates[0].samples == b.estimates[0].samples);
  CHECK((a.reconstructed.matrix - b.reconstructed.matrix)
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("reconstruction validates its inputs") {
  const StateVector zero = basis_state({"p", "q"}, "00");
  ReconstructOptions options;
  options.targets = {{"zz", {}}};
  CHECK_THROWS_AS(reconstruct(zero, {"p"}, options), std::invalid_argument);
  options.targets = {{"p", {}}};
  options.mitigate = true;  // no noise model attached
  CHECK_THROWS_AS(reconstruct(zero, {"p"}, options), std::invalid_argument);
  options.mitigate = false;
  options.repetitions = 0;
  CHECK_THROWS_AS(reconstruct(zero, {"p"}, options), std::invalid_argument);
}

TEST_CASE("counts tables survive a JSON round trip") {
  Rng rng(91);
  const StateVector psi = tt::random_pure_state(rng, 2);
  const CountsTable table =
      simulate_counts(psi, {"q0", "q1"}, 256, std::nullopt, 19);
  const CountsTable parsed = counts_from_json(counts_to_json(table));
  REQUIRE(parsed.size() == table.size());
  for (std::size_t s = 0; s < table.size(); ++s) {
    CHECK(parsed[s].setting.str() == table[s].setting.str());
    CHECK(parsed[s].outcomes == table[s].outcomes);
  }
}

TEST_CASE("counts JSON uses the documented schema") {
  const std::string text =
      R"([{"setting": "XZ", "outcomes": {"00": 5.0, "11": 3.0}}])";
  const CountsTable table = counts_from_json(text);
  REQUIRE(table.size() == 1);
  CHECK(table[0].setting.str() == "XZ");
  CHECK(table[0].outcomes.at("00") == 5.0);
  CHECK_THROWS_AS(counts_from_json(R"({"not": "an array"})"),
                  std::invalid_argument);
}

}  // TEST_SUITE
