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

#include "lpchain/sim/adversary.hpp"

namespace lpchain::sim {

CaseRoles case_roles(int attack_case) {
  switch (attack_case) {
    case 1: return {false, false, false};
    case 2: return {false, false, true};
    case 3: return {false, true, false};
    case 4: return {false, true, true};
    case 5: return {true, false, false};
    case 6: return {true, false, true};
    case 7: return {true, true, false};
    case 8: return {true, true, true};
    default: return {true, true, true};
  }
}

int case_variants(int attack_case) {
  switch (attack_case) {
    case 3: return 2;
    case 5: return 6;
    case 8: return 3;
    default: return 1;
  }
}

AdversaryBehavior case_behavior(int attack_case, int variant) {
  AdversaryBehavior b;
  int v = variant % case_variants(attack_case);
  switch (attack_case) {
    case 2:
      b.witness.false_time_offset_ms = 60'000;
      break;
    case 3:
      if (v == 0)
        b.la.deny_service = true;
      else
        b.la.implicate_prover = true;
      break;
    case 4:
      b.la.implicate_prover = true;
      b.witness.false_endorsement = true;
      break;
    case 5:
      switch (v) {
        case 0: b.prover.false_presence_m = 500.0; break;
        case 1: b.prover.wormhole_relay_ms = 800; break;
        case 2: b.prover.tamper_proof = true; break;
        case 3: b.prover.fabricate_approval = true; break;
        case 4: b.prover.replay_old_approval = true; break;
        default: b.prover.back_date_ms = 20'000; break;
      }
      break;
    case 6:
      b.prover.false_presence_m = 500.0;
      b.witness.false_endorsement = true;
      break;
    case 7:
      b.prover.false_presence_m = 500.0;
      b.la.relay_to_puppet = true;
      break;
    case 8:
      b.prover.false_presence_m = 500.0;
      b.prover.recruit_accomplices = true;
      b.la.false_assertion = true;
      b.witness.false_endorsement = true;
      b.supervisor.attack = v == 0   ? SupervisorAttack::FabricateApproval
                            : v == 1 ? SupervisorAttack::SubstitutePair
                                     : SupervisorAttack::EchoPair;
      break;
    default:
      break;
  }
  return b;
}

std::vector<Reason> expected_reasons(int attack_case) {
  switch (attack_case) {
    case 2: return {Reason::TemporalRangeViolation, Reason::TimestampInconsistent};
    case 3: return {Reason::StepTimeout, Reason::InvalidNestedSignature, Reason::InvalidSignature};
    case 4: return {Reason::InvalidNestedSignature, Reason::InvalidSignature, Reason::StepTimeout};
    case 5:
      return {Reason::LocalizationFailed,     Reason::ResponseDelayExceeded, Reason::TemporalRangeViolation,
              Reason::StepTimeout,            Reason::InvalidNestedSignature, Reason::NotOnChain,
              Reason::InvalidApproval,        Reason::ApprovalReplayed,       Reason::ApprovalReused,
              Reason::ChronologyViolation,    Reason::DecisionSkewExceeded};
    case 6: return {Reason::LocalizationFailed};
    case 7: return {Reason::ParticipantMismatch, Reason::WrongWitnessSignature, Reason::InvalidNestedSignature};
    case 8:
      return {Reason::MissingDecisionBlock, Reason::BlockNotMajorityAccepted, Reason::LocalizationFailed,
              Reason::InsufficientQuorum};
    default: return {};
  }
}

Status check_behavior(int attack_case, const AdversaryBehavior& behavior) {
  if (attack_case == 0) return ok_status();
  if (attack_case < 1 || attack_case > kCaseCount)
    return fail(Reason::InvalidConfig, "attack_case must be 0..8");
  CaseRoles roles = case_roles(attack_case);
  if (behavior.prover.any() && !roles.prover) return fail(Reason::InconsistentBehavior, "prover is honest");
  if (behavior.la.any() && !roles.la) return fail(Reason::InconsistentBehavior, "location authority is honest");
  if (behavior.witness.any() && !roles.witness) return fail(Reason::InconsistentBehavior, "witness is honest");
  if (behavior.supervisor.any() && attack_case != 8)
    return fail(Reason::InconsistentBehavior, "supervisor collusion needs the three-way case");
  return ok_status();
}

ScenarioConfig case_scenario(int attack_case, int variant, std::uint64_t seed) {
  ScenarioConfig c;
  c.seed = seed;
  c.n_supervisors = 15;
  c.k = 1;
  c.population = PopulationSpec{30, 9, 300.0, 0.0, 0.0};
  c.warmup_ms = 30'000;
  c.attack_case = attack_case;
  c.behavior = case_behavior(attack_case, variant);

  CaseRoles roles = case_roles(attack_case);
  c.prover_generator.honest = !roles.prover;
  if (attack_case != 8) {
    c.population.dishonest_mobile_fraction = roles.witness ? 1.0 : 0.0;
    c.population.dishonest_la_fraction = roles.la ? 1.0 : 0.0;
  } else {
    c.compromised_supervisor_fraction = 0.4;
    if (c.behavior.supervisor.attack == SupervisorAttack::SubstitutePair) c.prover_generator.rrsn = 14;
  }
  if (c.behavior.prover.replay_old_approval) {
    c.prover_generator.requests_each = 2;
    c.prover_generator.request_spacing_ms = 20'000;
  }
  return c;
}

}  // namespace lpchain::sim
