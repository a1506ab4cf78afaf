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

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace lpchain::kernels {

// Score written for candidates outside communication range.
inline constexpr double kIneligible = -1.0;

struct ScoreParams {
  double prover_x = 0.0;
  double prover_y = 0.0;
  double range = 0.0;           // meters, inclusive
  double distance_floor = 1.0;  // clamp for co-located candidates
};

// Structure-of-arrays candidate pool. All spans have equal length.
struct CandidatePool {
  std::span<const double> x;
  std::span<const double> y;
  std::span<const double> requests;
  std::span<const double> uptime_s;

  std::size_t size() const { return x.size(); }
};

// out[i] = requests[i] * uptime_s[i] / max(dist_i, floor), or kIneligible
// when dist_i > range. out.size() must equal pool.size().
void score_candidates_scalar(const CandidatePool& pool, const ScoreParams& p, std::span<double> out);
void score_candidates_avx2(const CandidatePool& pool, const ScoreParams& p, std::span<double> out);

// Largest element, or kIneligible for an empty span.
double max_score_scalar(std::span<const double> scores);
double max_score_avx2(std::span<const double> scores);

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);
bool avx2_supported();
// Highest ISA supported by the host, unless overridden by force_isa.
Isa active_isa();
// Pins the dispatch target; nullopt restores auto-detection. Forcing Avx2 on
// a host without it falls back to Scalar.
void force_isa(std::optional<Isa> isa);

void score_candidates(const CandidatePool& pool, const ScoreParams& p, std::span<double> out);
double max_score(std::span<const double> scores);

}  // namespace lpchain::kernels
