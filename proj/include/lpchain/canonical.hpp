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

// Canonical byte encoding shared by every protocol record.
//
//   integer      8-byte big-endian two's complement
//   coordinate   IEEE-754 binary64, big-endian
//   string/bytes 4-byte big-endian length, then the raw bytes
//   nested       the record's own encoding, length-prefixed like bytes
//   collection   8-byte element count, then each element nested

#include <cstdint>
#include <stdexcept>
#include <string>

#include "lpchain/bytes.hpp"

namespace lpchain {

class Writer {
 public:
  void put_i64(std::int64_t v);
  void put_f64(double v);
  void put_bytes(ByteView b);
  void put_string(std::string_view s);
  void put_raw(ByteView b);

  template <class Fn>
  void nested(Fn&& fn) {
    Writer inner;
    fn(inner);
    put_bytes(inner.out_);
  }

  const Bytes& bytes() const& { return out_; }
  Bytes take() && { return std::move(out_); }

 private:
  void put_u32(std::uint32_t v);
  Bytes out_;
};

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Reader {
 public:
  explicit Reader(ByteView data) : data_(data) {}

  std::int64_t get_i64();
  double get_f64();
  Bytes get_bytes();
  std::string get_string();
  // Returns a reader over the next length-prefixed field.
  Reader get_nested();

  bool at_end() const { return pos_ == data_.size(); }
  // Throws DecodeError when trailing bytes remain.
  void expect_end() const;

 private:
  std::uint32_t get_u32();
  ByteView take(std::size_t n);

  ByteView data_;
  std::size_t pos_ = 0;
};

}  // namespace lpchain
