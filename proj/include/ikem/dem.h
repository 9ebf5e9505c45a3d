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

#ifndef IKEM_DEM_H_
#define IKEM_DEM_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ikem/bits.h"

namespace ikem {

// One-time data encapsulation. Messages are bit strings; byte payloads map to
// them big-endian via bytes_to_bits.
enum class DemScheme : std::uint8_t { kOtp = 0x01, kStream = 0x02 };

std::string_view scheme_name(DemScheme scheme);
DemScheme parse_scheme(std::string_view name);  // "otp" or "stream"

struct DemKey {
  BitString bits;
};

struct DemCiphertext {
  DemScheme scheme = DemScheme::kOtp;
  BitString body;  // same length as the message

  friend bool operator==(const DemCiphertext&, const DemCiphertext&) = default;
};

inline constexpr std::size_t kStreamKeyBits = 256;

// body = message XOR the first |message| bits of the key.
DemCiphertext otp_encrypt(const DemKey& key, const BitString& message);
BitString otp_decrypt(const DemKey& key, const DemCiphertext& ciphertext);

// body = message XOR ChaCha20(key, nonce = 0, counter = 0). The key is used
// once, which is what makes the fixed nonce acceptable.
DemCiphertext stream_encrypt(const DemKey& key, const BitString& message);
BitString stream_decrypt(const DemKey& key, const DemCiphertext& ciphertext);

DemCiphertext dem_encrypt(DemScheme scheme, const DemKey& key,
                          const BitString& message);
BitString dem_decrypt(const DemKey& key, const DemCiphertext& ciphertext);

BitString bytes_to_bits(std::span<const std::uint8_t> bytes);

// scheme byte | u32 BE body length in bits | ceil(bits/8) body bytes.
std::vector<std::uint8_t> serialize_dem(const DemCiphertext& ciphertext);
// Parses one block at the front of `bytes`; `consumed` receives its size.
DemCiphertext parse_dem(std::span<const std::uint8_t> bytes,
                        std::size_t* consumed = nullptr);

}  // namespace ikem

#endif  // IKEM_DEM_H_
