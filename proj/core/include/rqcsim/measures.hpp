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

#include <optional>
#include <string>
#include <vector>

#include "rqcsim/qmath.hpp"

namespace rqcsim {

/// Observable to dephase against: a qubit label plus the observable's
/// eigenbasis. Default is the computational (Z / energy) basis; a custom
/// basis is a 2x2 unitary whose columns are the eigenvectors.
struct MeasureTarget {
  std::string qubit;
  std::optional<Eigen::Matrix2cd> basis;
};

/// Nonselective measurement of the target observable: the dephasing map
/// that kills coherences in the target qubit's eigenbasis and leaves the
/// rest of the register untouched.
DensityMatrix dephase(const DensityMatrix& rho, const MeasureTarget& target);

/// Entropy cost of nonselectively measuring the target,
/// S(dephase(rho)) - S(rho). Zero iff the observable is an element of
/// reality for rho. May return tiny negatives from eigensolver noise.
double irreality_raw(const DensityMatrix& rho, const MeasureTarget& target);

/// irreality_raw clamped to be nonnegative.
double irreality(const DensityMatrix& rho, const MeasureTarget& target);

/// Relative entropy of coherence of the target qubit's reduced state in the
/// target eigenbasis.
double coherence_rel_entropy_raw(const DensityMatrix& rho,
                                 const MeasureTarget& target);
double coherence_rel_entropy(const DensityMatrix& rho,
                             const MeasureTarget& target);

/// Quantum discord of the target measurement, computed as the mutual
/// information lost under the dephasing map between the target qubit and
/// the rest of the register. Equals irreality minus the coherence term.
double discord_of_measurement_raw(const DensityMatrix& rho,
                                  const MeasureTarget& target);
double discord_of_measurement(const DensityMatrix& rho,
                              const MeasureTarget& target);

/// Entanglement entropy of a pure state across the cut: S(Tr_cut |psi><psi|).
/// The cut must be a proper nonempty subset of the register.
double entanglement_entropy(const StateVector& psi,
                            const std::vector<std::string>& cut);

}  // namespace rqcsim
