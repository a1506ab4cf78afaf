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

#include <optional>
#include <unordered_map>

#include "lpchain/crypto.hpp"
#include "lpchain/result.hpp"
#include "lpchain/types.hpp"

namespace lpchain {

enum class EntityRole { Supervisor, Mobile, LocationAuthority };

std::string_view to_string(EntityRole r);

// Public keys of every entity known to the system. Shared read-only by the
// supervisor nodes and participants of one world.
class KeyDirectory {
 public:
  Status add(const EntityId& id, EntityRole role, PublicKey key);

  const PublicKey* find(const EntityId& id) const;
  std::optional<EntityRole> role_of(const EntityId& id) const;
  std::size_t size() const { return entries_.size(); }

  // False for unknown signers and for bad signatures.
  bool verify(const Signature& sig, ByteView payload) const;
  bool verify_as(const Signature& sig, ByteView payload, EntityRole role) const;

  // Caches verification verdicts keyed by (signer, payload, signature). The
  // simulator turns this on so replicated checks cost one real verification.
  void set_memo(bool enabled);
  std::size_t memo_hits() const { return memo_hits_; }

 private:
  struct Entry {
    EntityRole role;
    PublicKey key;
  };

  std::unordered_map<EntityId, Entry, EntityIdHash> entries_;
  bool memo_enabled_ = false;
  mutable std::unordered_map<Digest, bool, DigestHash> memo_;
  mutable std::size_t memo_hits_ = 0;
};

// Identity and signing key of one entity.
struct Identity {
  EntityId id;
  SecretKey secret;
  PublicKey pub;

  Signature sign(ByteView payload) const { return Signature{secret.sign(payload), id}; }
};

// Builds an identity whose id is the hex SEC1 encoding of its public key.
Result<Identity> make_identity(std::uint64_t seed, int level_bits);

}  // namespace lpchain
