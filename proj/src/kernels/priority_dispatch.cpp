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

#include <atomic>

#include "lpchain/kernels/priority.hpp"

namespace lpchain::kernels {

namespace {

// -1 means auto-detect.
std::atomic<int> forced{-1};

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_supported() {
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported;
}

Isa active_isa() {
  int f = forced.load(std::memory_order_relaxed);
  if (f == static_cast<int>(Isa::Scalar)) return Isa::Scalar;
  return avx2_supported() ? Isa::Avx2 : Isa::Scalar;
}

void force_isa(std::optional<Isa> isa) { forced.store(isa ? static_cast<int>(*isa) : -1); }

void score_candidates(const CandidatePool& pool, const ScoreParams& p, std::span<double> out) {
  if (active_isa() == Isa::Avx2)
    score_candidates_avx2(pool, p, out);
  else
    score_candidates_scalar(pool, p, out);
}

double max_score(std::span<const double> scores) {
  return active_isa() == Isa::Avx2 ? max_score_avx2(scores) : max_score_scalar(scores);
}

}  // namespace lpchain::kernels
