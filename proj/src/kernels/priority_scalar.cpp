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

#include <cmath>

#include "lpchain/kernels/priority.hpp"

namespace lpchain::kernels {

void score_candidates_scalar(const CandidatePool& pool, const ScoreParams& p, std::span<double> out) {
  const std::size_t n = pool.size();
  for (std::size_t i = 0; i < n; ++i) {
    double dx = pool.x[i] - p.prover_x;
    double dy = pool.y[i] - p.prover_y;
    double dist = std::sqrt(dx * dx + dy * dy);
    double denom = dist < p.distance_floor ? p.distance_floor : dist;
    double score = pool.requests[i] * pool.uptime_s[i] / denom;
    out[i] = dist > p.range ? kIneligible : score;
  }
}

double max_score_scalar(std::span<const double> scores) {
  double best = kIneligible;
  for (double s : scores)
    if (s > best) best = s;
  return best;
}

}  // namespace lpchain::kernels
