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

#include <immintrin.h>

#include <cmath>

#include "lpchain/kernels/priority.hpp"

namespace lpchain::kernels {

void score_candidates_avx2(const CandidatePool& pool, const ScoreParams& p, std::span<double> out) {
  const std::size_t n = pool.size();
  const __m256d px = _mm256_set1_pd(p.prover_x);
  const __m256d py = _mm256_set1_pd(p.prover_y);
  const __m256d range = _mm256_set1_pd(p.range);
  const __m256d floor = _mm256_set1_pd(p.distance_floor);
  const __m256d ineligible = _mm256_set1_pd(kIneligible);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(&pool.x[i]), px);
    __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(&pool.y[i]), py);
    __m256d dist = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
    // max_pd returns the second operand when the first is not greater.
    __m256d denom = _mm256_max_pd(floor, dist);
    __m256d num = _mm256_mul_pd(_mm256_loadu_pd(&pool.requests[i]), _mm256_loadu_pd(&pool.uptime_s[i]));
    __m256d score = _mm256_div_pd(num, denom);
    __m256d far = _mm256_cmp_pd(dist, range, _CMP_GT_OQ);
    _mm256_storeu_pd(&out[i], _mm256_blendv_pd(score, ineligible, far));
  }
  for (; i < n; ++i) {
    double dx = pool.x[i] - p.prover_x;
    double dy = pool.y[i] - p.prover_y;
    double dist = std::sqrt(dx * dx + dy * dy);
    double denom = dist < p.distance_floor ? p.distance_floor : dist;
    double score = pool.requests[i] * pool.uptime_s[i] / denom;
    out[i] = dist > p.range ? kIneligible : score;
  }
}

double max_score_avx2(std::span<const double> scores) {
  const std::size_t n = scores.size();
  __m256d best = _mm256_set1_pd(kIneligible);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) best = _mm256_max_pd(best, _mm256_loadu_pd(&scores[i]));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double m = lanes[0];
  for (int l = 1; l < 4; ++l)
    if (lanes[l] > m) m = lanes[l];
  for (; i < n; ++i)
    if (scores[i] > m) m = scores[i];
  return m;
}

}  // namespace lpchain::kernels
