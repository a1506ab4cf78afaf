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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lpchain/result.hpp"
#include "lpchain/types.hpp"

namespace lpchain {

enum class WorkerRole { Mobile, LocationAuthority };

std::string_view to_string(WorkerRole r);

struct WorkerRecord {
  EntityId id;
  WorkerRole role = WorkerRole::Mobile;
  GeoPoint loc;
  Timestamp first_seen;
  Timestamp last_ping;
  std::int64_t requests_entertained = 1;

  double uptime_seconds() const { return static_cast<double>(last_ping - first_seen) / 1000.0; }
  bool operator==(const WorkerRecord&) const = default;
};

struct RegistryConfig {
  std::int64_t ping_timeout_ms = 60'000;
  double range_limit_m = 100.0;
  double distance_floor_m = 1.0;
};

struct Selection {
  EntityId witness;
  EntityId la;

  bool operator==(const Selection&) const = default;
};

// Available witnesses and location authorities as seen by one supervisor
// node. Mobile entities are evicted once their pings stop; location
// authorities are static and never evicted.
class Registry {
 public:
  explicit Registry(RegistryConfig config = {}) : config_(config) {}

  const RegistryConfig& config() const { return config_; }

  Status register_entity(const EntityId& id, WorkerRole role, GeoPoint loc, Timestamp now);
  Status record_ping(const EntityId& id, GeoPoint loc, Timestamp now);
  std::vector<EntityId> evict_stale(Timestamp now);
  // Bumps requests_entertained after a committed proof named the worker.
  Status record_participation(const EntityId& id);

  std::optional<WorkerRecord> find(const EntityId& id) const;
  bool contains(const EntityId& id) const { return index_.count(id) != 0; }
  std::size_t size() const { return mobile_.size() + authority_.size(); }
  std::size_t mobile_count() const { return mobile_.size(); }
  std::size_t authority_count() const { return authority_.size(); }

  // nullopt when the worker is out of range or, for mobiles, stale at now.
  std::optional<double> priority_score(const WorkerRecord& record, GeoPoint prover_loc, Timestamp now) const;

  // Highest priority mobile (other than the prover) and highest priority LA.
  // Ties go to the lexicographically smallest id.
  Result<Selection> select_participants(const EntityId& prover, GeoPoint prover_loc, Timestamp now) const;

  // Records sorted by id.
  std::vector<WorkerRecord> records() const;
  // One JSON object per line, sorted by id.
  void dump_jsonl(std::ostream& os) const;

 private:
  struct Pool {
    std::vector<WorkerRecord> records;
    std::vector<double> x, y, requests, uptime_s;

    std::size_t size() const { return records.size(); }
    void push(const WorkerRecord& r);
    void sync(std::size_t i);
    // Swap-remove; returns the record that moved into slot i, if any.
    std::optional<EntityId> erase(std::size_t i);
  };

  Pool& pool_for(WorkerRole r) { return r == WorkerRole::Mobile ? mobile_ : authority_; }
  const Pool& pool_for(WorkerRole r) const { return r == WorkerRole::Mobile ? mobile_ : authority_; }

  // Index of the best candidate in pool, or nullopt.
  std::optional<std::size_t> best_in(const Pool& pool, const EntityId& prover, GeoPoint prover_loc,
                                     Timestamp now) const;
  bool stale(const WorkerRecord& r, Timestamp now) const;

  RegistryConfig config_;
  Pool mobile_;
  Pool authority_;
  std::unordered_map<EntityId, std::pair<WorkerRole, std::size_t>, EntityIdHash> index_;
  mutable std::vector<double> scratch_;
};

}  // namespace lpchain
