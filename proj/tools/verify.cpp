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

#include "verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "rqcsim/circuit.hpp"
#include "rqcsim/measures.hpp"
#include "rqcsim/qmath.hpp"
#include "rqcsim/rng.hpp"
#include "rqcsim/rqc.hpp"

namespace rqcsim::cli {

namespace {

constexpr int kGridPoints = 33;

std::vector<double> theta_grid() {
  std::vector<double> grid(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) {
    grid[static_cast<std::size_t>(i)] =
        std::numbers::pi / 2.0 * i / (kGridPoints - 1);
  }
  return grid;
}

// Complex Ginibre sample via Box-Muller over the deterministic stream.
ComplexMatrix ginibre(Rng& rng, int rows, int cols) {
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double u1 = std::max(rng.uniform(), 1e-300);
      const double u2 = rng.uniform();
      const double u3 = std::max(rng.uniform(), 1e-300);
      const double u4 = rng.uniform();
      const double re = std::sqrt(-2.0 * std::log(u1)) *
                        std::cos(2.0 * std::numbers::pi * u2);
      const double im = std::sqrt(-2.0 * std::log(u3)) *
                        std::cos(2.0 * std::numbers::pi * u4);
      g(i, j) = Complex{re, im};
    }
  }
  return g;
}

DensityMatrix random_density_matrix(Rng& rng, int num_qubits, int rank) {
  const int dim = 1 << num_qubits;
  const ComplexMatrix g = ginibre(rng, dim, rank);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  QubitRegister labels;
  for (int q = 0; q < num_qubits; ++q) labels.push_back("q" + std::to_string(q));
  return make_density_matrix(std::move(labels), std::move(rho));
}

bool check_gate_unitarity(std::string& detail) {
  for (const char* name :
       {"X", "Y", "Z", "H", "S", "SDG", "CNOT", "CZ", "CY", "MIRROR", "BS",
        "QWP"}) {
    standard_gate(name);  // the factory throws when U†U != I
  }
  standard_gate("RY", 0.7);

  // Composite optical blocks, as products acting on small registers.
  const Gate cz = standard_gate("CZ");
  const Gate cy = standard_gate("CY");
  const ComplexMatrix pbs = cy.unitary * cz.unitary;
  if ((pbs.adjoint() * pbs - ComplexMatrix::Identity(4, 4))
          .cwiseAbs()
          .maxCoeff() > 1e-12) {
    detail = "PBS block is not unitary";
    return false;
  }

  // PAI block on (b, e1, e2): columns from evolving the 8 basis states.
  const QubitRegister labels{"b", "e1", "e2"};
  ComplexMatrix pai(8, 8);
  for (int col = 0; col < 8; ++col) {
    std::string bits = {char('0' + ((col >> 2) & 1)),
                        char('0' + ((col >> 1) & 1)), char('0' + (col & 1))};
    StateVector psi = basis_state(labels, bits);
    psi = apply_gate(psi, standard_gate("X"), {"b"});
    psi = apply_gate(psi, standard_gate("CNOT"), {"b", "e1"});
    psi = apply_gate(psi, standard_gate("X"), {"b"});
    psi = apply_gate(psi, standard_gate("CNOT"), {"b", "e2"});
    pai.col(col) = psi.amplitudes;
  }
  if ((pai.adjoint() * pai - ComplexMatrix::Identity(8, 8))
          .cwiseAbs()
          .maxCoeff() > 1e-12) {
    detail = "PAI block is not unitary";
    return false;
  }
  return true;
}

bool check_stage_fidelities(bool inject_fault, std::string& detail) {
  for (double theta : theta_grid()) {
    for (bool qwp : {false, true}) {
      for (int atoms : {2, 1}) {
        const RqcConfig cfg{theta, qwp, atoms, {}, {}};
        for (Scenario scenario : {Scenario::Stage2, Scenario::Stage5}) {
          Circuit circuit = build_rqc(cfg, scenario);
          if (inject_fault) {
            for (auto& step : circuit.steps) {
              if (step.gate.name == "BS") step.gate = standard_gate("QWP");
            }
          }
          const RunResult run = run_with_snapshots(
              circuit, basis_state(rqc_register(), "000000"));
          for (StageId stage : stages_in(scenario)) {
            const StateVector& snap = run.snapshots.at(to_string(stage));
            const double fid =
                overlap_fidelity(snap, oracle_state(stage, cfg));
            if (fid < 1.0 - 1e-12) {
              std::ostringstream msg;
              msg << to_string(stage) << " theta=" << theta
                  << (qwp ? " in" : " out") << " atoms=" << atoms
                  << " fidelity=" << fid;
              detail = msg.str();
              return false;
            }
          }
        }
      }
    }
  }
  return true;
}

bool check_measure_identities(std::string& detail) {
  Rng rng(0x5eed5eedULL);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 3;
    const int rank = 1 + trial % (1 << n);
    const DensityMatrix rho = random_density_matrix(rng, n, rank);
    const MeasureTarget target{rho.labels[trial % static_cast<std::size_t>(n)],
                               std::nullopt};

    const double irr = irreality_raw(rho, target);
    const double coh = coherence_rel_entropy_raw(rho, target);
    const double dis = discord_of_measurement_raw(rho, target);
    if (irr < -1e-10 || dis < -1e-10) {
      detail = "negative irreality or discord on random state";
      return false;
    }
    if (std::abs(irr - (coh + dis)) > 1e-10) {
      detail = "decomposition identity violated";
      return false;
    }
    const DensityMatrix once = dephase(rho, target);
    const DensityMatrix twice = dephase(once, target);
    if ((once.matrix - twice.matrix).cwiseAbs().maxCoeff() > 1e-12) {
      detail = "dephasing map is not idempotent";
      return false;
    }
    if (von_neumann_entropy(once) < von_neumann_entropy(rho) - 1e-10) {
      detail = "dephasing decreased entropy";
      return false;
    }
  }
  return true;
}

bool check_predicted_irrealities(std::string& detail) {
  for (double theta : theta_grid()) {
    for (bool qwp : {false, true}) {
      const RqcConfig cfg{theta, qwp, 2, {}, {}};
      const double p2 = predicted_irreality(Scenario::Stage2, cfg);
      const double p5 = predicted_irreality(Scenario::Stage5, cfg);
      if (std::abs(p2 - p5) > 1e-15) {
        detail = "intervention timing changed the prediction";
        return false;
      }
      const double i_b =
          irreality(bob_state(Scenario::Stage2, cfg), MeasureTarget{"b", {}});
      const DensityMatrix omega5 = bob_state(Scenario::Stage5, cfg);
      const double i_e1 = irreality(omega5, MeasureTarget{"e1", {}});
      const double i_e2 = irreality(omega5, MeasureTarget{"e2", {}});
      for (double value : {i_b, i_e1, i_e2}) {
        if (std::abs(value - p2) > 1e-10) {
          std::ostringstream msg;
          msg << "measured irreality " << value << " vs predicted " << p2
              << " at theta=" << theta << (qwp ? " (in)" : " (out)");
          detail = msg.str();
          return false;
        }
      }
    }
  }
  return true;
}

bool check_subsystem_reduction(std::string& detail) {
  const double pi = std::numbers::pi;
  for (double theta : {0.0, pi / 6, pi / 4, pi / 3, pi / 2}) {
    for (bool qwp : {false, true}) {
      const RqcConfig cfg{theta, qwp, 2, {}, {}};

      const StateVector psi2 = circuit_state(StageId::Psi2Branch, cfg);
      const DensityMatrix reduced2 =
          partial_trace(to_density_matrix(psi2), {"a", "B", "e1", "e2"});
      const double via_reduced =
          irreality(reduced2, MeasureTarget{"b", {}});
      const double via_selected =
          irreality(bob_state(Scenario::Stage2, cfg), MeasureTarget{"b", {}});
      if (std::abs(via_reduced - via_selected) > 1e-10) {
        detail = "stage-2 reduction mismatch";
        return false;
      }

      const StateVector psi5 = circuit_state(StageId::Psi5Branch, cfg);
      const DensityMatrix reduced5 =
          partial_trace(to_density_matrix(psi5), {"a", "B"});
      const DensityMatrix omega5 = bob_state(Scenario::Stage5, cfg);
      for (const char* atom : {"e1", "e2"}) {
        const double lhs = irreality(reduced5, MeasureTarget{atom, {}});
        const double rhs = irreality(omega5, MeasureTarget{atom, {}});
        if (std::abs(lhs - rhs) > 1e-10) {
          detail = "stage-5 reduction mismatch";
          return false;
        }
      }
    }
  }
  return true;
}

bool check_one_atom_variant(std::string& detail) {
  for (double theta : theta_grid()) {
    if (theta == 0.0) continue;
    const RqcConfig cfg{theta, true, 1, {}, {}};
    const DensityMatrix bob = bob_state(Scenario::Stage5, cfg);
    const double coherence =
        coherence_rel_entropy(bob, MeasureTarget{"e1", {}});
    const double c = std::cos(theta / 2.0);
    if (coherence <= 0.0 ||
        std::abs(coherence - binary_entropy(c * c)) > 1e-9) {
      detail = "one-atom coherence did not match the closed form";
      return false;
    }
  }
  return true;
}

}  // namespace

bool run_verification(std::ostream& out, bool inject_fault) {
  struct Check {
    const char* name;
    std::function<bool(std::string&)> fn;
  };
  const std::vector<Check> checks{
      {"gate library and optical blocks unitary",
       [](std::string& d) { return check_gate_unitarity(d); }},
      {"stage snapshots match closed forms (33 theta, in/out, 1-2 atoms)",
       [&](std::string& d) { return check_stage_fidelities(inject_fault, d); }},
      {"measure identities on 200 random states",
       [](std::string& d) { return check_measure_identities(d); }},
      {"irrealities match predictions for every scenario",
       [](std::string& d) { return check_predicted_irrealities(d); }},
      {"subsystem reduction leaves irrealities unchanged",
       [](std::string& d) { return check_subsystem_reduction(d); }},
      {"one-atom variant shows atomic coherence",
       [](std::string& d) { return check_one_atom_variant(d); }},
  };

  int passed = 0;
  for (const auto& check : checks) {
    std::string detail;
    bool ok = false;
    try {
      ok = check.fn(detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    out << (ok ? "[PASS] " : "[FAIL] ") << check.name;
    if (!ok && !detail.empty()) out << " (" << detail << ")";
    out << '\n';
    if (ok) ++passed;
  }
  out << passed << "/" << checks.size() << " checks passed\n";
  return passed == static_cast<int>(checks.size());
}

}  // namespace rqcsim::cli
