// Copyright 2026 The ikem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IKEM_BITS_H_
#define IKEM_BITS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ikem {

// Fixed-length bit string read as an unsigned big-endian integer: coefficient
// 0 is the least significant bit, and "the top m bits" are the most
// significant ones. Bits above size() are always zero.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t bits);

  static BitString from_uint(std::uint64_t value, std::size_t bits);
  // `bytes` must hold exactly ceil(bits/8) bytes, big-endian, with the unused
  // high bits of the first byte zero.
  static BitString from_bytes(std::span<const std::uint8_t> bytes,
                              std::size_t bits);

  std::size_t size() const { return bits_; }
  bool empty() const { return bits_ == 0; }

  bool coeff(std::size_t i) const {
    return (limbs_[i / 64] >> (i % 64)) & 1U;
  }
  void set_coeff(std::size_t i, bool value);

  // Writes `width` low bits of `value` at coefficients [pos, pos+width).
  void write_field(std::size_t pos, std::size_t width, std::uint64_t value);

  // Top `m` bits, as an m-bit string. Requires m <= size().
  BitString msb(std::size_t m) const;
  // Same value in a wider (or equal) container.
  BitString zero_extended(std::size_t bits) const;

  std::uint64_t to_uint64() const;  // requires size() <= 64
  std::vector<std::uint8_t> to_bytes() const;
  std::string to_hex() const;
  bool is_zero() const;

  std::span<const std::uint64_t> limbs() const { return limbs_; }
  std::span<std::uint64_t> mutable_limbs() { return limbs_; }

  BitString& operator^=(const BitString& other);
  friend BitString operator^(BitString a, const BitString& b) {
    a ^= b;
    return a;
  }
  friend bool operator==(const BitString& a, const BitString& b) {
    return a.bits_ == b.bits_ && a.limbs_ == b.limbs_;
  }
  friend bool operator<(const BitString& a, const BitString& b);

 private:
  void clear_padding();

  std::size_t bits_ = 0;
  std::vector<std::uint64_t> limbs_;
};

}  // namespace ikem

#endif  // IKEM_BITS_H_
