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

#include "ikem/bits.h"

#include <algorithm>

#include "ikem/error.h"

namespace ikem {

namespace {

std::size_t limb_count(std::size_t bits) { return (bits + 63) / 64; }

}  // namespace

BitString::BitString(std::size_t bits)
    : bits_(bits), limbs_(limb_count(bits), 0) {}

BitString BitString::from_uint(std::uint64_t value, std::size_t bits) {
  BitString out(bits);
  if (bits == 0) return out;
  out.limbs_[0] = value;
  out.clear_padding();
  require(out.limbs_[0] == value, ErrorCode::kLengthMismatch,
          "value does not fit in " + std::to_string(bits) + " bits");
  return out;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes,
                                std::size_t bits) {
  const std::size_t nbytes = (bits + 7) / 8;
  require(bytes.size() == nbytes, ErrorCode::kLengthMismatch,
          "expected " + std::to_string(nbytes) + " bytes for " +
              std::to_string(bits) + " bits, got " +
              std::to_string(bytes.size()));
  BitString out(bits);
  for (std::size_t i = 0; i < nbytes; ++i) {
    // Byte nbytes-1 is the least significant.
    const std::size_t from_low = nbytes - 1 - i;
    out.limbs_[from_low / 8] |= std::uint64_t{bytes[i]} << (8 * (from_low % 8));
  }
  const auto before = out.limbs_;
  out.clear_padding();
  require(before == out.limbs_, ErrorCode::kMalformedInput,
          "nonzero padding bits above bit " + std::to_string(bits));
  return out;
}

void BitString::set_coeff(std::size_t i, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (value) {
    limbs_[i / 64] |= mask;
  } else {
    limbs_[i / 64] &= ~mask;
  }
}

void BitString::write_field(std::size_t pos, std::size_t width,
                            std::uint64_t value) {
  for (std::size_t k = 0; k < width; ++k) {
    set_coeff(pos + k, (value >> k) & 1U);
  }
}

BitString BitString::msb(std::size_t m) const {
  require(m <= bits_, ErrorCode::kLengthMismatch, "msb wider than string");
  BitString out(m);
  const std::size_t shift = bits_ - m;
  const std::size_t word_shift = shift / 64;
  const std::size_t bit_shift = shift % 64;
  for (std::size_t i = 0; i < out.limbs_.size(); ++i) {
    const std::size_t src = i + word_shift;
    std::uint64_t v = src < limbs_.size() ? limbs_[src] >> bit_shift : 0;
    if (bit_shift != 0 && src + 1 < limbs_.size()) {
      v |= limbs_[src + 1] << (64 - bit_shift);
    }
    out.limbs_[i] = v;
  }
  out.clear_padding();
  return out;
}

BitString BitString::zero_extended(std::size_t bits) const {
  require(bits >= bits_, ErrorCode::kLengthMismatch,
          "zero extension cannot shrink");
  BitString out(bits);
  std::copy(limbs_.begin(), limbs_.end(), out.limbs_.begin());
  return out;
}

std::uint64_t BitString::to_uint64() const {
  require(bits_ <= 64, ErrorCode::kLengthMismatch, "more than 64 bits");
  return limbs_.empty() ? 0 : limbs_[0];
}

std::vector<std::uint8_t> BitString::to_bytes() const {
  const std::size_t nbytes = (bits_ + 7) / 8;
  std::vector<std::uint8_t> out(nbytes);
  for (std::size_t i = 0; i < nbytes; ++i) {
    const std::size_t from_low = nbytes - 1 - i;
    out[i] = static_cast<std::uint8_t>(limbs_[from_low / 8] >>
                                       (8 * (from_low % 8)));
  }
  return out;
}

std::string BitString::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::uint8_t b : to_bytes()) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

bool BitString::is_zero() const {
  return std::all_of(limbs_.begin(), limbs_.end(),
                     [](std::uint64_t v) { return v == 0; });
}

BitString& BitString::operator^=(const BitString& other) {
  require(bits_ == other.bits_, ErrorCode::kLengthMismatch,
          "xor of strings with different lengths");
  for (std::size_t i = 0; i < limbs_.size(); ++i) limbs_[i] ^= other.limbs_[i];
  return *this;
}

bool operator<(const BitString& a, const BitString& b) {
  if (a.bits_ != b.bits_) return a.bits_ < b.bits_;
  return std::lexicographical_compare(a.limbs_.rbegin(), a.limbs_.rend(),
                                      b.limbs_.rbegin(), b.limbs_.rend());
}

void BitString::clear_padding() {
  if (bits_ % 64 != 0 && !limbs_.empty()) {
    limbs_.back() &= (std::uint64_t{1} << (bits_ % 64)) - 1;
  }
}

}  // namespace ikem
