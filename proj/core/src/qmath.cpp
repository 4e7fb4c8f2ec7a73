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

#include "rqcsim/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace rqcsim {

namespace {

void check_labels(const QubitRegister& labels) {
  if (labels.empty()) {
    throw std::invalid_argument("register must contain at least one qubit");
  }
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) {
    throw std::invalid_argument("register labels must be unique");
  }
}

void check_finite(const ComplexMatrix& m) {
  if (!m.allFinite()) {
    throw std::invalid_argument("matrix has non-finite entries");
  }
}

int find_position(const QubitRegister& labels, std::string_view label) {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw std::invalid_argument("unknown qubit label: " + std::string(label));
  }
  return static_cast<int>(it - labels.begin());
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m,
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  return solver.eigenvalues();
}

}  // namespace

int StateVector::position_of(std::string_view label) const {
  return find_position(labels, label);
}

int DensityMatrix::position_of(std::string_view label) const {
  return find_position(labels, label);
}

StateVector make_state(QubitRegister labels, ComplexVector amplitudes) {
  check_labels(labels);
  const Eigen::Index want = Eigen::Index{1} << labels.size();
  if (amplitudes.size() != want) {
    throw std::invalid_argument("amplitude vector length does not match 2^n");
  }
  if (!amplitudes.allFinite()) {
    throw std::invalid_argument("amplitudes must be finite");
  }
  if (std::abs(amplitudes.squaredNorm() - 1.0) > tolerances::kNorm) {
    throw std::invalid_argument("state vector is not normalized");
  }
  return StateVector{std::move(labels), std::move(amplitudes)};
}

StateVector basis_state(QubitRegister labels, std::string_view bits) {
  check_labels(labels);
  if (bits.size() != labels.size()) {
    throw std::invalid_argument("bitstring length does not match register");
  }
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bitstring must contain only 0/1");
    }
    index = (index << 1) | static_cast<std::size_t>(c - '0');
  }
  ComplexVector amps = ComplexVector::Zero(Eigen::Index{1} << labels.size());
  amps[static_cast<Eigen::Index>(index)] = Complex{1.0, 0.0};
  return StateVector{std::move(labels), std::move(amps)};
}

DensityMatrix make_density_matrix(QubitRegister labels, ComplexMatrix matrix) {
  check_labels(labels);
  check_finite(matrix);
  const Eigen::Index want = Eigen::Index{1} << labels.size();
  if (matrix.rows() != want || matrix.cols() != want) {
    throw std::invalid_argument("density matrix has wrong dimensions");
  }
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() >
      tolerances::kHermitian) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  if (std::abs(matrix.trace().real() - 1.0) > tolerances::kTrace ||
      std::abs(matrix.trace().imag()) > tolerances::kTrace) {
    throw std::invalid_argument("density matrix trace is not 1");
  }
  if (hermitian_eigenvalues(matrix).minCoeff() <
      tolerances::kEigenvalueFloor) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
  return DensityMatrix{std::move(labels), std::move(matrix)};
}

DensityMatrix to_density_matrix(const StateVector& psi) {
  ComplexMatrix m = psi.amplitudes * psi.amplitudes.adjoint();
  return DensityMatrix{psi.labels, std::move(m)};
}

DensityMatrix maximally_mixed(QubitRegister labels) {
  check_labels(labels);
  const Eigen::Index dim = Eigen::Index{1} << labels.size();
  ComplexMatrix m = ComplexMatrix::Identity(dim, dim) /
                    static_cast<double>(dim);
  return DensityMatrix{std::move(labels), std::move(m)};
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::string>& discard) {
  const int n = rho.num_qubits();
  std::vector<int> discard_pos;
  discard_pos.reserve(discard.size());
  for (const auto& label : discard) {
    discard_pos.push_back(find_position(rho.labels, label));
  }
  std::sort(discard_pos.begin(), discard_pos.end());
  if (std::adjacent_find(discard_pos.begin(), discard_pos.end()) !=
      discard_pos.end()) {
    throw std::invalid_argument("duplicate label in discard set");
  }
  if (static_cast<int>(discard_pos.size()) == n) {
    throw std::invalid_argument("cannot discard the whole register");
  }

  QubitRegister kept_labels;
  std::vector<int> kept_pos;
  for (int p = 0; p < n; ++p) {
    if (!std::binary_search(discard_pos.begin(), discard_pos.end(), p)) {
      kept_pos.push_back(p);
      kept_labels.push_back(rho.labels[p]);
    }
  }

  const int k = static_cast<int>(kept_pos.size());
  const int d = n - k;
  const std::size_t kdim = std::size_t{1} << k;
  const std::size_t ddim = std::size_t{1} << d;

  // Expand a reduced index to its full-register bits at the given positions.
  auto scatter = [n](std::size_t bits, const std::vector<int>& positions) {
    std::size_t full = 0;
    const int m = static_cast<int>(positions.size());
    for (int t = 0; t < m; ++t) {
      const std::size_t bit = (bits >> (m - 1 - t)) & 1u;
      full |= bit << (n - 1 - positions[t]);
    }
    return full;
  };

  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(kdim),
                                          static_cast<Eigen::Index>(kdim));
  for (std::size_t i = 0; i < kdim; ++i) {
    const std::size_t ibase = scatter(i, kept_pos);
    for (std::size_t j = 0; j < kdim; ++j) {
      const std::size_t jbase = scatter(j, kept_pos);
      Complex sum{0.0, 0.0};
      for (std::size_t e = 0; e < ddim; ++e) {
        const std::size_t env = scatter(e, discard_pos);
        sum += rho.matrix(static_cast<Eigen::Index>(ibase | env),
                          static_cast<Eigen::Index>(jbase | env));
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sum;
    }
  }
  return DensityMatrix{std::move(kept_labels), std::move(out)};
}

double von_neumann_entropy(const DensityMatrix& rho) {
  check_finite(rho.matrix);
  if ((rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff() >
      tolerances::kHermitian) {
    throw std::invalid_argument("entropy requires a Hermitian matrix");
  }
  const Eigen::VectorXd eigenvalues = hermitian_eigenvalues(rho.matrix);
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double lambda = eigenvalues[i];
    if (lambda > tolerances::kEntropyClip) {
      entropy -= lambda * std::log2(lambda);
    }
  }
  return entropy;
}

double binary_entropy(double p) {
  if (p < -1e-12 || p > 1.0 + 1e-12) {
    throw std::domain_error("binary_entropy requires p in [0, 1]");
  }
  p = std::clamp(p, 0.0, 1.0);
  double entropy = 0.0;
  for (double q : {p, 1.0 - p}) {
    if (q > tolerances::kEntropyClip) {
      entropy -= q * std::log2(q);
    }
  }
  return entropy;
}

double overlap_fidelity(const StateVector& psi, const StateVector& phi) {
  if (psi.labels != phi.labels) {
    throw std::invalid_argument("states live on different registers");
  }
  return std::norm(psi.amplitudes.dot(phi.amplitudes));
}

bool equal_up_to_global_phase(const StateVector& psi, const StateVector& phi,
                              double tol) {
  return overlap_fidelity(psi, phi) >= 1.0 - tol;
}

}  // namespace rqcsim
