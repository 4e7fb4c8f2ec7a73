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

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace rqcsim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Ordered qubit labels. The leftmost label is the most significant bit of
/// the amplitude index: |011011> on register (q0,...,q5) sits at index
/// 0b011011. Ket strings written in register order transcribe verbatim.
using QubitRegister = std::vector<std::string>;

/// Pure state over a labeled register; amplitudes has length 2^n and unit
/// norm within 1e-10.
struct StateVector {
  QubitRegister labels;
  ComplexVector amplitudes;

  int num_qubits() const { return static_cast<int>(labels.size()); }
  Eigen::Index dim() const { return amplitudes.size(); }

  /// Position of `label` in the register. Throws std::invalid_argument if
  /// the label is unknown.
  int position_of(std::string_view label) const;

  /// Bit shift of the qubit at register position `pos` inside an amplitude
  /// index (MSB-first convention).
  int bit_shift(int pos) const { return num_qubits() - 1 - pos; }
};

/// Mixed state over a labeled register: Hermitian, unit trace, PSD within
/// the tolerances enforced by make_density_matrix.
struct DensityMatrix {
  QubitRegister labels;
  ComplexMatrix matrix;

  int num_qubits() const { return static_cast<int>(labels.size()); }
  Eigen::Index dim() const { return matrix.rows(); }
  int position_of(std::string_view label) const;
};

// Validating factories. All throw std::invalid_argument on malformed input.
StateVector make_state(QubitRegister labels, ComplexVector amplitudes);
StateVector basis_state(QubitRegister labels, std::string_view bits);
DensityMatrix make_density_matrix(QubitRegister labels, ComplexMatrix matrix);
DensityMatrix to_density_matrix(const StateVector& psi);
DensityMatrix maximally_mixed(QubitRegister labels);

/// Kronecker product; dimensions multiply.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced state after discarding the listed qubits. The remaining labels
/// keep their original order. Unknown labels throw; discarding the whole
/// register throws.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::string>& discard);

/// Von Neumann entropy in bits, with eigenvalues below 1e-12 clipped to 0.
/// Throws std::invalid_argument if the matrix is not Hermitian within 1e-10.
double von_neumann_entropy(const DensityMatrix& rho);

/// Shannon entropy of (p, 1-p) in bits. Accepts p in [0,1] with 1e-12 slack;
/// anything further out throws std::domain_error.
double binary_entropy(double p);

/// Squared overlap |<psi|phi>|^2. Registers must match exactly.
double overlap_fidelity(const StateVector& psi, const StateVector& phi);

/// True iff the two states coincide up to a global phase:
/// |<psi|phi>|^2 >= 1 - tol.
bool equal_up_to_global_phase(const StateVector& psi, const StateVector& phi,
                              double tol = 1e-12);

namespace tolerances {
inline constexpr double kNorm = 1e-10;
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-10;
inline constexpr double kEntropyClip = 1e-12;
}  // namespace tolerances

}  // namespace rqcsim
