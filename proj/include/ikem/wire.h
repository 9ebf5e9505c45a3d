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

#ifndef IKEM_WIRE_H_
#define IKEM_WIRE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ikem/harness.h"
#include "ikem/hybrid.h"
#include "ikem/ikem.h"

namespace ikem {

// Binary formats. Integers are big-endian.
//
//   ciphertext  "IKM1" | params digest (8) | t (u16) | g (ceil(t/8)) | s' | s
//   key file    ell (u16) | ceil(ell/8) bytes
//   hybrid      "IHE1" | ciphertext block | DEM block
//
// Seeds use the uhf serialization for their family. Parsing needs the params
// because the seed widths are not on the wire; a digest that differs from the
// params' raises DigestMismatch.

std::vector<std::uint8_t> serialize_ciphertext(const IkemParams& params,
                                               const IkemCiphertext& c);
IkemCiphertext parse_ciphertext(const IkemParams& params,
                                std::span<const std::uint8_t> bytes,
                                std::size_t* consumed = nullptr);

std::vector<std::uint8_t> serialize_key(const IkemKey& key);
IkemKey parse_key(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> serialize_hybrid(const IkemParams& params,
                                           const HybridCiphertext& c);
HybridCiphertext parse_hybrid(const IkemParams& params,
                              std::span<const std::uint8_t> bytes);

// JSON documents.
//
// Source:  {"type": "table", "alphabets": [X, Y, Z], "label": s,
//           "pmf": [{"x": i, "y": j, "z": k, "p": r}, ...]}
//          Unlisted cells are zero. [x, y, z, p] arrays and a dense list of
//          |X||Y||Z| numbers are also accepted.
//          {"type": "satellite", "pa": p, "pb": p, "pe": p}
JointSource parse_source_json(std::string_view text);
std::string source_to_json(const JointSource& source);

std::string params_to_json(const IkemParams& params);
IkemParams parse_params_json(std::string_view text);

// Preprocessing output; any of x, y, z may be absent (empty).
struct SampleFile {
  std::string source_digest;
  SampleTriple triple;
};
std::string sample_to_json(const SampleFile& sample);
SampleFile parse_sample_json(std::string_view text);

std::string report_to_json(const GameReport& report);
GameReport parse_report_json(std::string_view text);

std::vector<std::uint8_t> read_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace ikem

#endif  // IKEM_WIRE_H_
