// Copyright 2026 The lpchain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "lpchain/sim/scenario.hpp"

namespace lpchain::sim {

// Which protocol roles misbehave in a collusion case.
struct CaseRoles {
  bool prover = false;
  bool la = false;
  bool witness = false;
};

inline constexpr int kCaseCount = 8;

CaseRoles case_roles(int attack_case);

// Attack variants exercised for a case; variant indices wrap around.
int case_variants(int attack_case);
AdversaryBehavior case_behavior(int attack_case, int variant);

// Reasons an attacked instance of the case may be rejected with.
std::vector<Reason> expected_reasons(int attack_case);

// Flags set on a role the case marks honest raise InconsistentBehavior.
// Supervisor attacks need a compromised minority or majority and are only
// meaningful in the three-way case or with custom flags.
Status check_behavior(int attack_case, const AdversaryBehavior& behavior);

// Compact world for collusion-matrix runs: 15 supervisors, one prover.
ScenarioConfig case_scenario(int attack_case, int variant, std::uint64_t seed);

}  // namespace lpchain::sim
