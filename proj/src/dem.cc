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

#include "ikem/dem.h"

#include <sodium.h>

#include <string>

#include "ikem/error.h"

namespace ikem {

namespace {

// First `bits` bits of the ChaCha20 keystream, most significant first.
BitString keystream(const DemKey& key, std::size_t bits) {
  require(key.bits.size() == kStreamKeyBits, ErrorCode::kBadKeyLength,
          "stream scheme needs a 256-bit key, got " +
              std::to_string(key.bits.size()));
  const std::vector<std::uint8_t> k = key.bits.to_bytes();
  const std::size_t nbytes = (bits + 7) / 8;
  std::vector<std::uint8_t> ks(nbytes);
  unsigned char nonce[crypto_stream_chacha20_ietf_NONCEBYTES] = {};
  if (nbytes != 0) {
    crypto_stream_chacha20_ietf(ks.data(), ks.size(), nonce, k.data());
  }
  return BitString::from_bytes(ks, 8 * nbytes).msb(bits);
}

}  // namespace

std::string_view scheme_name(DemScheme scheme) {
  return scheme == DemScheme::kOtp ? "otp" : "stream";
}

DemScheme parse_scheme(std::string_view name) {
  if (name == "otp") return DemScheme::kOtp;
  if (name == "stream") return DemScheme::kStream;
  fail(ErrorCode::kInvalidArgument, "unknown DEM scheme '" + std::string(name) + "'");
}

DemCiphertext otp_encrypt(const DemKey& key, const BitString& message) {
  require(!key.bits.empty(), ErrorCode::kKeyTooShort, "empty key");
  require(message.size() <= key.bits.size(), ErrorCode::kKeyTooShort,
          "one-time pad needs " + std::to_string(message.size()) +
              " key bits, key has " + std::to_string(key.bits.size()));
  return {DemScheme::kOtp, message ^ key.bits.msb(message.size())};
}

BitString otp_decrypt(const DemKey& key, const DemCiphertext& c) {
  require(c.scheme == DemScheme::kOtp, ErrorCode::kMalformedInput,
          "not a one-time pad ciphertext");
  require(!key.bits.empty(), ErrorCode::kKeyTooShort, "empty key");
  require(c.body.size() <= key.bits.size(), ErrorCode::kKeyTooShort,
          "ciphertext longer than the key");
  return c.body ^ key.bits.msb(c.body.size());
}

DemCiphertext stream_encrypt(const DemKey& key, const BitString& message) {
  return {DemScheme::kStream, message ^ keystream(key, message.size())};
}

BitString stream_decrypt(const DemKey& key, const DemCiphertext& c) {
  require(c.scheme == DemScheme::kStream, ErrorCode::kMalformedInput,
          "not a stream ciphertext");
  return c.body ^ keystream(key, c.body.size());
}

DemCiphertext dem_encrypt(DemScheme scheme, const DemKey& key,
                          const BitString& message) {
  switch (scheme) {
    case DemScheme::kOtp:
      return otp_encrypt(key, message);
    case DemScheme::kStream:
      return stream_encrypt(key, message);
  }
  fail(ErrorCode::kInvalidArgument, "unknown DEM scheme");
}

BitString dem_decrypt(const DemKey& key, const DemCiphertext& c) {
  switch (c.scheme) {
    case DemScheme::kOtp:
      return otp_decrypt(key, c);
    case DemScheme::kStream:
      return stream_decrypt(key, c);
  }
  fail(ErrorCode::kMalformedInput, "unknown DEM scheme");
}

BitString bytes_to_bits(std::span<const std::uint8_t> bytes) {
  return BitString::from_bytes(bytes, 8 * bytes.size());
}

std::vector<std::uint8_t> serialize_dem(const DemCiphertext& c) {
  require(c.body.size() <= 0xFFFFFFFFu, ErrorCode::kInvalidArgument,
          "message too long for the wire format");
  std::vector<std::uint8_t> out;
  out.push_back(static_cast<std::uint8_t>(c.scheme));
  const auto bits = static_cast<std::uint32_t>(c.body.size());
  for (int i = 3; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  const auto body = c.body.to_bytes();
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

DemCiphertext parse_dem(std::span<const std::uint8_t> bytes,
                        std::size_t* consumed) {
  require(bytes.size() >= 5, ErrorCode::kMalformedInput, "truncated DEM block");
  DemCiphertext c;
  require(bytes[0] == 0x01 || bytes[0] == 0x02, ErrorCode::kMalformedInput,
          "unknown DEM scheme tag");
  c.scheme = static_cast<DemScheme>(bytes[0]);
  std::uint32_t bits = 0;
  for (int i = 1; i <= 4; ++i) bits = (bits << 8) | bytes[i];
  const std::size_t nbytes = (std::size_t{bits} + 7) / 8;
  require(bytes.size() >= 5 + nbytes, ErrorCode::kMalformedInput,
          "truncated DEM body");
  c.body = BitString::from_bytes(bytes.subspan(5, nbytes), bits);
  if (consumed) *consumed = 5 + nbytes;
  return c;
}

}  // namespace ikem
