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

#include <ostream>

namespace rqcsim::cli {

/// Runs the self-check suite (stage snapshots vs closed forms, measure
/// identities, predicted irrealities, subsystem reduction, one-atom
/// variant) and prints one pass/fail line per check. Returns true iff all
/// checks pass. `inject_fault` deliberately corrupts a circuit gate so the
/// suite's sensitivity can be demonstrated.
bool run_verification(std::ostream& out, bool inject_fault);

}  // namespace rqcsim::cli
