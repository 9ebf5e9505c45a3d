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

#ifndef IKEM_UHF_H_
#define IKEM_UHF_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ikem/bits.h"
#include "ikem/gf2x.h"
#include "ikem/rng.h"

namespace ikem {

// Strongly universal family h_{a,b}(x) = msb_m(a*x + b) over GF(2^W), where
// W = max(input_bits, output_bits) and x is zero-extended to W bits. When
// m <= w this is the usual truncated affine family over GF(2^w).
struct UhfSpec {
  std::size_t input_bits = 0;
  std::size_t output_bits = 0;

  std::size_t field_bits() const {
    return input_bits > output_bits ? input_bits : output_bits;
  }
  void validate() const;
};

struct UhfSeed {
  BitString a;  // multiplier, field_bits() wide
  BitString b;  // offset, field_bits() wide

  friend bool operator==(const UhfSeed&, const UhfSeed&) = default;
};

UhfSeed sample_seed(const UhfSpec& spec, Rng& rng);

BitString hash(const UhfSpec& spec, const UhfSeed& seed, const BitString& x);

// Word-sized evaluation for field_bits() <= 64; `field` must be the field of
// that width.
inline std::uint64_t hash_word(const BinaryField& field, std::size_t out_bits,
                               std::uint64_t a, std::uint64_t b,
                               std::uint64_t x) {
  return (field.multiply(a, x) ^ b) >> (field.degree() - out_bits);
}

// A family member with its seed bound; evaluates on words when the field is
// at most 64 bits wide.
class UhfEvaluator {
 public:
  UhfEvaluator(const UhfSpec& spec, const UhfSeed& seed);

  BitString operator()(const BitString& x) const;
  // Requires word_sized(); x holds input_bits bits.
  std::uint64_t word(std::uint64_t x) const {
    return hash_word(*field_, spec_.output_bits, a_, b_, x);
  }
  bool word_sized() const { return spec_.field_bits() <= 64; }
  const UhfSpec& spec() const { return spec_; }

 private:
  UhfSpec spec_;
  UhfSeed seed_;
  const BinaryField* field_;
  std::uint64_t a_ = 0;
  std::uint64_t b_ = 0;
};

// Largest field width the exhaustive census accepts.
inline constexpr std::size_t kCensusMaxFieldBits = 10;

// max over x != x' and (u, v) of |Pr_seed[h(x) = u, h(x') = v] - 2^{-2m}|,
// computed exactly over all seeds. Zero for a strongly universal family.
double pairwise_independence_census(const UhfSpec& spec);

// a then b, each ceil(W/8) bytes, big-endian.
std::vector<std::uint8_t> serialize_seed(const UhfSpec& spec,
                                         const UhfSeed& seed);
UhfSeed parse_seed(const UhfSpec& spec, std::span<const std::uint8_t> bytes);
std::size_t seed_bytes(const UhfSpec& spec);

}  // namespace ikem

#endif  // IKEM_UHF_H_
