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

#include "ikem/uhf.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "ikem/error.h"

namespace ikem {

namespace {

BitString random_bits(std::size_t bits, Rng& rng) {
  BitString out(bits);
  auto limbs = out.mutable_limbs();
  for (auto& limb : limbs) limb = rng();
  if (bits % 64 != 0 && !limbs.empty()) {
    limbs.back() &= (std::uint64_t{1} << (bits % 64)) - 1;
  }
  return out;
}

// |count / seeds - 2^{-2m}| without rounding when it is zero.
double deviation(std::uint64_t count, std::uint64_t seeds, std::size_t m) {
  const std::uint64_t scaled = count << (2 * m);
  if (scaled == seeds) return 0.0;
  const double diff = scaled > seeds ? double(scaled - seeds)
                                     : double(seeds - scaled);
  return diff / (double(seeds) * std::ldexp(1.0, static_cast<int>(2 * m)));
}

}  // namespace

void UhfSpec::validate() const {
  require(input_bits >= 1, ErrorCode::kInvalidArgument,
          "UHF input width must be positive");
  require(output_bits >= 1, ErrorCode::kInvalidArgument,
          "UHF output width must be positive");
  require(field_bits() <= kMaxFieldDegree, ErrorCode::kInvalidArgument,
          "UHF field width exceeds " + std::to_string(kMaxFieldDegree));
}

UhfSeed sample_seed(const UhfSpec& spec, Rng& rng) {
  spec.validate();
  UhfSeed seed;
  seed.a = random_bits(spec.field_bits(), rng);
  seed.b = random_bits(spec.field_bits(), rng);
  return seed;
}

UhfEvaluator::UhfEvaluator(const UhfSpec& spec, const UhfSeed& seed)
    : spec_(spec), seed_(seed) {
  spec_.validate();
  const std::size_t w = spec_.field_bits();
  require(seed.a.size() == w && seed.b.size() == w, ErrorCode::kLengthMismatch,
          "seed width does not match the family");
  field_ = &BinaryField::of_degree(w);
  if (word_sized()) {
    a_ = seed.a.to_uint64();
    b_ = seed.b.to_uint64();
  }
}

BitString UhfEvaluator::operator()(const BitString& x) const {
  require(x.size() == spec_.input_bits, ErrorCode::kLengthMismatch,
          "hash input has " + std::to_string(x.size()) + " bits, expected " +
              std::to_string(spec_.input_bits));
  if (word_sized()) {
    return BitString::from_uint(word(x.to_uint64()), spec_.output_bits);
  }
  const std::size_t w = spec_.field_bits();
  BitString y = field_->multiply(seed_.a, x.zero_extended(w));
  y ^= seed_.b;
  return y.msb(spec_.output_bits);
}

BitString hash(const UhfSpec& spec, const UhfSeed& seed, const BitString& x) {
  return UhfEvaluator(spec, seed)(x);
}

double pairwise_independence_census(const UhfSpec& spec) {
  spec.validate();
  const std::size_t w = spec.field_bits();
  const std::size_t m = spec.output_bits;
  require(w <= kCensusMaxFieldBits, ErrorCode::kRegimeTooLarge,
          "census needs field width <= " +
              std::to_string(kCensusMaxFieldBits) + ", got " +
              std::to_string(w));
  const BinaryField& field = BinaryField::of_degree(w);
  const std::uint64_t field_size = std::uint64_t{1} << w;
  const std::uint64_t inputs = std::uint64_t{1} << spec.input_bits;
  const std::uint64_t outputs = std::uint64_t{1} << m;
  const std::uint64_t seeds = field_size * field_size;
  double worst = 0.0;

  if (w <= 6) {
    // Every seed (a, b) through a bound evaluator, then every pair.
    const std::uint64_t pairs = inputs * (inputs - 1) / 2;
    std::vector<std::uint32_t> counts(pairs * outputs * outputs, 0);
    std::vector<std::uint64_t> image(inputs);
    for (std::uint64_t a = 0; a < field_size; ++a) {
      for (std::uint64_t b = 0; b < field_size; ++b) {
        const UhfEvaluator h(spec, UhfSeed{BitString::from_uint(a, w),
                                           BitString::from_uint(b, w)});
        for (std::uint64_t x = 0; x < inputs; ++x) {
          image[x] = h(BitString::from_uint(x, spec.input_bits)).to_uint64();
        }
        std::uint64_t pair = 0;
        for (std::uint64_t x = 0; x < inputs; ++x) {
          for (std::uint64_t xp = x + 1; xp < inputs; ++xp, ++pair) {
            ++counts[(pair * outputs + image[x]) * outputs + image[xp]];
          }
        }
      }
    }
    for (std::uint32_t c : counts) worst = std::max(worst, deviation(c, seeds, m));
    return worst;
  }

  // Larger widths: for fixed a, as b runs over the field a*x + b is uniform
  // and msb(a*x' + b) = msb(a*x + b) ^ msb(a*(x ^ x')), so
  // count(u, v) = 2^{W-m} * #{a : msb(a*x ^ a*x') = u ^ v}.
  std::vector<std::uint32_t> products(field_size * inputs);
  for (std::uint64_t a = 0; a < field_size; ++a) {
    for (std::uint64_t x = 0; x < inputs; ++x) {
      products[a * inputs + x] = static_cast<std::uint32_t>(field.multiply(a, x));
    }
  }
  const std::size_t drop = w - m;
  std::vector<std::uint64_t> by_diff(outputs);
  for (std::uint64_t x = 0; x < inputs; ++x) {
    for (std::uint64_t xp = x + 1; xp < inputs; ++xp) {
      std::fill(by_diff.begin(), by_diff.end(), 0);
      for (std::uint64_t a = 0; a < field_size; ++a) {
        const std::uint32_t* row = &products[a * inputs];
        ++by_diff[(row[x] ^ row[xp]) >> drop];
      }
      for (std::uint64_t c : by_diff) {
        worst = std::max(worst, deviation(c << drop, seeds, m));
      }
    }
  }
  return worst;
}

std::size_t seed_bytes(const UhfSpec& spec) {
  return 2 * ((spec.field_bits() + 7) / 8);
}

std::vector<std::uint8_t> serialize_seed(const UhfSpec& spec,
                                         const UhfSeed& seed) {
  const std::size_t w = spec.field_bits();
  require(seed.a.size() == w && seed.b.size() == w, ErrorCode::kLengthMismatch,
          "seed width does not match the family");
  std::vector<std::uint8_t> out = seed.a.to_bytes();
  const auto b = seed.b.to_bytes();
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

UhfSeed parse_seed(const UhfSpec& spec, std::span<const std::uint8_t> bytes) {
  const std::size_t w = spec.field_bits();
  const std::size_t half = (w + 7) / 8;
  require(bytes.size() == 2 * half, ErrorCode::kLengthMismatch,
          "seed needs " + std::to_string(2 * half) + " bytes");
  return UhfSeed{BitString::from_bytes(bytes.first(half), w),
                 BitString::from_bytes(bytes.subspan(half), w)};
}

}  // namespace ikem
