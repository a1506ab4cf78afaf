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

#include "lpchain/canonical.hpp"

#include <bit>
#include <cstring>
#include <limits>

namespace lpchain {

void Writer::put_u32(std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out_.push_back(static_cast<std::uint8_t>(v >> shift));
}

void Writer::put_i64(std::int64_t v) {
  auto u = static_cast<std::uint64_t>(v);
  for (int shift = 56; shift >= 0; shift -= 8) out_.push_back(static_cast<std::uint8_t>(u >> shift));
}

void Writer::put_f64(double v) { put_i64(static_cast<std::int64_t>(std::bit_cast<std::uint64_t>(v))); }

void Writer::put_bytes(ByteView b) {
  if (b.size() > std::numeric_limits<std::uint32_t>::max()) throw std::length_error("field too large");
  put_u32(static_cast<std::uint32_t>(b.size()));
  out_.insert(out_.end(), b.begin(), b.end());
}

void Writer::put_string(std::string_view s) {
  put_bytes(ByteView(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

void Writer::put_raw(ByteView b) { out_.insert(out_.end(), b.begin(), b.end()); }

ByteView Reader::take(std::size_t n) {
  if (data_.size() - pos_ < n) throw DecodeError("truncated input");
  ByteView out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::uint32_t Reader::get_u32() {
  ByteView b = take(4);
  return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) | b[3];
}

std::int64_t Reader::get_i64() {
  ByteView b = take(8);
  std::uint64_t u = 0;
  for (auto byte : b) u = (u << 8) | byte;
  return static_cast<std::int64_t>(u);
}

double Reader::get_f64() { return std::bit_cast<double>(static_cast<std::uint64_t>(get_i64())); }

Bytes Reader::get_bytes() {
  std::uint32_t n = get_u32();
  ByteView b = take(n);
  return Bytes(b.begin(), b.end());
}

std::string Reader::get_string() {
  std::uint32_t n = get_u32();
  ByteView b = take(n);
  return std::string(reinterpret_cast<const char*>(b.data()), b.size());
}

Reader Reader::get_nested() {
  std::uint32_t n = get_u32();
  return Reader(take(n));
}

void Reader::expect_end() const {
  if (!at_end()) throw DecodeError("trailing bytes after record");
}

}  // namespace lpchain
