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

#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>

#include "lpchain/bytes.hpp"

namespace lpchain {

// Crypto-id pseudonym. In a simulated world this is the hex SEC1 public key.
struct EntityId {
  std::string value;

  EntityId() = default;
  explicit EntityId(std::string v) : value(std::move(v)) {}

  bool empty() const { return value.empty(); }
  auto operator<=>(const EntityId&) const = default;
};

struct EntityIdHash {
  std::size_t operator()(const EntityId& id) const noexcept { return std::hash<std::string>{}(id.value); }
};

// Planar meters.
struct GeoPoint {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const GeoPoint&) const = default;
};

inline double distance(const GeoPoint& a, const GeoPoint& b) {
  double dx = a.x - b.x;
  double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

// Milliseconds since scenario epoch.
struct Timestamp {
  std::int64_t millis = 0;

  auto operator<=>(const Timestamp&) const = default;
};

inline std::int64_t operator-(Timestamp a, Timestamp b) { return a.millis - b.millis; }
inline Timestamp operator+(Timestamp a, std::int64_t ms) { return Timestamp{a.millis + ms}; }

struct Signature {
  Bytes bytes;
  EntityId signer;

  bool operator==(const Signature&) const = default;
};

enum class Verdict : std::int64_t { No = 0, Yes = 1 };

}  // namespace lpchain
