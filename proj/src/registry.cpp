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

#include "lpchain/registry.hpp"

#include <algorithm>
#include <ostream>

#include "json.hpp"
#include "lpchain/kernels/priority.hpp"

namespace lpchain {

std::string_view to_string(WorkerRole r) {
  return r == WorkerRole::Mobile ? "mobile" : "location_authority";
}

void Registry::Pool::push(const WorkerRecord& r) {
  records.push_back(r);
  x.push_back(0);
  y.push_back(0);
  requests.push_back(0);
  uptime_s.push_back(0);
  sync(records.size() - 1);
}

void Registry::Pool::sync(std::size_t i) {
  const auto& r = records[i];
  x[i] = r.loc.x;
  y[i] = r.loc.y;
  requests[i] = static_cast<double>(r.requests_entertained);
  uptime_s[i] = r.uptime_seconds();
}

std::optional<EntityId> Registry::Pool::erase(std::size_t i) {
  std::size_t last = records.size() - 1;
  std::optional<EntityId> moved;
  if (i != last) {
    records[i] = std::move(records[last]);
    x[i] = x[last];
    y[i] = y[last];
    requests[i] = requests[last];
    uptime_s[i] = uptime_s[last];
    moved = records[i].id;
  }
  records.pop_back();
  x.pop_back();
  y.pop_back();
  requests.pop_back();
  uptime_s.pop_back();
  return moved;
}

Status Registry::register_entity(const EntityId& id, WorkerRole role, GeoPoint loc, Timestamp now) {
  if (id.empty()) return fail(Reason::InvalidConfig, "empty worker id");
  if (index_.count(id)) return fail(Reason::DuplicateEntity, id.value);
  Pool& pool = pool_for(role);
  pool.push(WorkerRecord{id, role, loc, now, now, 1});
  index_.emplace(id, std::make_pair(role, pool.size() - 1));
  return ok_status();
}

Status Registry::record_ping(const EntityId& id, GeoPoint loc, Timestamp now) {
  auto it = index_.find(id);
  if (it == index_.end()) return fail(Reason::UnknownEntity, id.value);
  auto [role, i] = it->second;
  Pool& pool = pool_for(role);
  WorkerRecord& r = pool.records[i];
  r.last_ping = std::max(r.last_ping, now);
  r.loc = loc;
  pool.sync(i);
  return ok_status();
}

bool Registry::stale(const WorkerRecord& r, Timestamp now) const {
  return r.role == WorkerRole::Mobile && now - r.last_ping > config_.ping_timeout_ms;
}

std::vector<EntityId> Registry::evict_stale(Timestamp now) {
  std::vector<EntityId> evicted;
  std::size_t i = 0;
  while (i < mobile_.size()) {
    if (!stale(mobile_.records[i], now)) {
      ++i;
      continue;
    }
    EntityId gone = mobile_.records[i].id;
    index_.erase(gone);
    if (auto moved = mobile_.erase(i)) index_[*moved].second = i;
    evicted.push_back(std::move(gone));
  }
  std::sort(evicted.begin(), evicted.end());
  return evicted;
}

Status Registry::record_participation(const EntityId& id) {
  auto it = index_.find(id);
  if (it == index_.end()) return fail(Reason::UnknownEntity, id.value);
  auto [role, i] = it->second;
  Pool& pool = pool_for(role);
  ++pool.records[i].requests_entertained;
  pool.sync(i);
  return ok_status();
}

std::optional<WorkerRecord> Registry::find(const EntityId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return pool_for(it->second.first).records[it->second.second];
}

std::optional<double> Registry::priority_score(const WorkerRecord& record, GeoPoint prover_loc,
                                               Timestamp now) const {
  if (stale(record, now)) return std::nullopt;
  double x = record.loc.x, y = record.loc.y;
  double req = static_cast<double>(record.requests_entertained);
  double up = record.uptime_seconds();
  double out = 0;
  kernels::CandidatePool one{{&x, 1}, {&y, 1}, {&req, 1}, {&up, 1}};
  kernels::ScoreParams p{prover_loc.x, prover_loc.y, config_.range_limit_m, config_.distance_floor_m};
  kernels::score_candidates(one, p, {&out, 1});
  if (out == kernels::kIneligible) return std::nullopt;
  return out;
}

std::optional<std::size_t> Registry::best_in(const Pool& pool, const EntityId& prover, GeoPoint prover_loc,
                                             Timestamp now) const {
  const std::size_t n = pool.size();
  if (n == 0) return std::nullopt;
  scratch_.resize(n);
  kernels::CandidatePool view{pool.x, pool.y, pool.requests, pool.uptime_s};
  kernels::ScoreParams p{prover_loc.x, prover_loc.y, config_.range_limit_m, config_.distance_floor_m};
  kernels::score_candidates(view, p, scratch_);
  for (std::size_t i = 0; i < n; ++i)
    if (pool.records[i].id == prover || stale(pool.records[i], now)) scratch_[i] = kernels::kIneligible;

  double best = kernels::max_score(scratch_);
  if (best < 0) return std::nullopt;
  std::optional<std::size_t> pick;
  for (std::size_t i = 0; i < n; ++i) {
    if (scratch_[i] != best) continue;
    if (!pick || pool.records[i].id < pool.records[*pick].id) pick = i;
  }
  return pick;
}

Result<Selection> Registry::select_participants(const EntityId& prover, GeoPoint prover_loc, Timestamp now) const {
  auto w = best_in(mobile_, prover, prover_loc, now);
  if (!w) return fail(Reason::NoEligibleWitness, "no mobile entity in range");
  EntityId witness = mobile_.records[*w].id;
  auto la = best_in(authority_, prover, prover_loc, now);
  if (!la) return fail(Reason::NoEligibleLA, "no location authority in range");
  return Selection{std::move(witness), authority_.records[*la].id};
}

std::vector<WorkerRecord> Registry::records() const {
  std::vector<WorkerRecord> all(mobile_.records);
  all.insert(all.end(), authority_.records.begin(), authority_.records.end());
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return all;
}

void Registry::dump_jsonl(std::ostream& os) const {
  for (const auto& r : records()) {
    nlohmann::ordered_json j;
    j["id"] = r.id.value;
    j["role"] = to_string(r.role);
    j["x"] = r.loc.x;
    j["y"] = r.loc.y;
    j["first_seen"] = r.first_seen.millis;
    j["last_ping"] = r.last_ping.millis;
    j["requests_entertained"] = r.requests_entertained;
    os << j.dump() << '\n';
  }
}

}  // namespace lpchain
