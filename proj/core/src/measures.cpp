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

#include "rqcsim/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rqcsim {

namespace {

// rho -> (M ⊗ 1) rho (M ⊗ 1)† with a single-qubit M at the target label.
ComplexMatrix conjugate_one_qubit(const ComplexMatrix& rho, int n, int pos,
                                  const Eigen::Matrix2cd& m) {
  const std::size_t bit = std::size_t{1} << (n - 1 - pos);
  const std::size_t dim = std::size_t{1} << n;

  auto left_apply = [&](const ComplexMatrix& in, const Eigen::Matrix2cd& u) {
    ComplexMatrix out = in;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & bit) continue;
      const auto lo = static_cast<Eigen::Index>(i);
      const auto hi = static_cast<Eigen::Index>(i | bit);
      out.row(lo) = u(0, 0) * in.row(lo) + u(0, 1) * in.row(hi);
      out.row(hi) = u(1, 0) * in.row(lo) + u(1, 1) * in.row(hi);
    }
    return out;
  };

  const ComplexMatrix left = left_apply(rho, m);
  // Right multiplication by M† = (M applied to the adjoint from the left)†.
  return left_apply(left.adjoint(), m).adjoint();
}

// Zeroes every element whose bra/ket bits differ at the target position.
ComplexMatrix computational_dephase(const ComplexMatrix& rho, int n,
                                    int pos) {
  const std::size_t bit = std::size_t{1} << (n - 1 - pos);
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix out = rho;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if ((i & bit) != (j & bit)) {
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            Complex{0.0, 0.0};
      }
    }
  }
  return out;
}

std::vector<std::string> all_but(const QubitRegister& labels,
                                 const std::string& keep) {
  std::vector<std::string> rest;
  for (const auto& l : labels) {
    if (l != keep) rest.push_back(l);
  }
  return rest;
}

}  // namespace

DensityMatrix dephase(const DensityMatrix& rho, const MeasureTarget& target) {
  const int pos = rho.position_of(target.qubit);
  const int n = rho.num_qubits();
  ComplexMatrix work = rho.matrix;
  if (target.basis) {
    const Eigen::Matrix2cd v = *target.basis;
    if ((v.adjoint() * v - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() >
        1e-10) {
      throw std::invalid_argument("measurement basis must be unitary");
    }
    work = conjugate_one_qubit(work, n, pos, v.adjoint());
    work = computational_dephase(work, n, pos);
    work = conjugate_one_qubit(work, n, pos, v);
  } else {
    work = computational_dephase(work, n, pos);
  }
  return make_density_matrix(rho.labels, std::move(work));
}

double irreality_raw(const DensityMatrix& rho, const MeasureTarget& target) {
  return von_neumann_entropy(dephase(rho, target)) - von_neumann_entropy(rho);
}

double irreality(const DensityMatrix& rho, const MeasureTarget& target) {
  return std::max(0.0, irreality_raw(rho, target));
}

double coherence_rel_entropy_raw(const DensityMatrix& rho,
                                 const MeasureTarget& target) {
  rho.position_of(target.qubit);
  const DensityMatrix reduced =
      rho.num_qubits() == 1 ? rho
                            : partial_trace(rho, all_but(rho.labels,
                                                         target.qubit));
  return von_neumann_entropy(dephase(reduced, target)) -
         von_neumann_entropy(reduced);
}

double coherence_rel_entropy(const DensityMatrix& rho,
                             const MeasureTarget& target) {
  return std::max(0.0, coherence_rel_entropy_raw(rho, target));
}

double discord_of_measurement_raw(const DensityMatrix& rho,
                                  const MeasureTarget& target) {
  if (rho.num_qubits() == 1) {
    return 0.0;  // no partner subsystem, no correlations
  }
  const std::vector<std::string> rest = all_but(rho.labels, target.qubit);
  auto mutual_information = [&](const DensityMatrix& state) {
    const DensityMatrix on_target = partial_trace(state, rest);
    const DensityMatrix on_rest = partial_trace(state, {target.qubit});
    return von_neumann_entropy(on_target) + von_neumann_entropy(on_rest) -
           von_neumann_entropy(state);
  };
  return mutual_information(rho) - mutual_information(dephase(rho, target));
}

double discord_of_measurement(const DensityMatrix& rho,
                              const MeasureTarget& target) {
  return std::max(0.0, discord_of_measurement_raw(rho, target));
}

double entanglement_entropy(const StateVector& psi,
                            const std::vector<std::string>& cut) {
  if (cut.empty() || cut.size() >= psi.labels.size()) {
    throw std::invalid_argument(
        "cut must be a proper nonempty subset of the register");
  }
  return von_neumann_entropy(partial_trace(to_density_matrix(psi), cut));
}

}  // namespace rqcsim
