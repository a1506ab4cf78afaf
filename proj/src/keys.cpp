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

#include "lpchain/keys.hpp"

namespace lpchain {

std::string_view to_string(EntityRole r) {
  switch (r) {
    case EntityRole::Supervisor: return "supervisor";
    case EntityRole::Mobile: return "mobile";
    case EntityRole::LocationAuthority: return "location_authority";
  }
  return "?";
}

Status KeyDirectory::add(const EntityId& id, EntityRole role, PublicKey key) {
  if (id.empty()) return fail(Reason::InvalidConfig, "empty entity id");
  auto [it, inserted] = entries_.try_emplace(id, Entry{role, std::move(key)});
  if (!inserted) return fail(Reason::DuplicateEntity, id.value);
  return ok_status();
}

const PublicKey* KeyDirectory::find(const EntityId& id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : &it->second.key;
}

std::optional<EntityRole> KeyDirectory::role_of(const EntityId& id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) return std::nullopt;
  return it->second.role;
}

bool KeyDirectory::verify(const Signature& sig, ByteView payload) const {
  const PublicKey* key = find(sig.signer);
  if (key == nullptr) return false;
  if (!memo_enabled_) return key->verify(payload, sig.bytes);

  Bytes material = to_bytes(sig.signer.value);
  material.push_back(0);
  Digest pd = digest(payload);
  material.insert(material.end(), pd.bytes.begin(), pd.bytes.end());
  material.insert(material.end(), sig.bytes.begin(), sig.bytes.end());
  Digest k = digest(material);
  if (auto it = memo_.find(k); it != memo_.end()) {
    ++memo_hits_;
    return it->second;
  }
  bool ok = key->verify(payload, sig.bytes);
  memo_.emplace(k, ok);
  return ok;
}

bool KeyDirectory::verify_as(const Signature& sig, ByteView payload, EntityRole role) const {
  auto r = role_of(sig.signer);
  return r && *r == role && verify(sig, payload);
}

void KeyDirectory::set_memo(bool enabled) {
  memo_enabled_ = enabled;
  if (!enabled) memo_.clear();
}

Result<Identity> make_identity(std::uint64_t seed, int level_bits) {
  auto kp = keypair_generate(seed, level_bits);
  if (!kp) return kp.failure();
  EntityId id(to_hex(kp->pub.sec1()));
  return Identity{std::move(id), std::move(kp->secret), std::move(kp->pub)};
}

}  // namespace lpchain
