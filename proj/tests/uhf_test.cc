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

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "ikem/error.h"
#include "ikem/source_model.h"

namespace ikem {
namespace {

UhfSeed word_seed(std::uint64_t a, std::uint64_t b, std::size_t w) {
  return {BitString::from_uint(a, w), BitString::from_uint(b, w)};
}

TEST(Hash, ZeroMultiplierOutputsTopOfOffset) {
  const UhfSpec spec{6, 3};
  for (std::uint64_t b : {0u, 0b101101u, 0b111111u}) {
    for (std::uint64_t x = 0; x < 64; ++x) {
      EXPECT_EQ(hash(spec, word_seed(0, b, 6), BitString::from_uint(x, 6)).to_uint64(), b >> 3);
    }
  }
}

TEST(Hash, HandComputedExample) {
  // x * x^3 = x + 1 in GF(16) with x^4 + x + 1; top two bits of 0011 are 00.
  const UhfSpec spec{4, 2};
  EXPECT_EQ(hash(spec, word_seed(0b0010, 0, 4), BitString::from_uint(0b1000, 4)).to_uint64(), 0u);
  const UhfSpec full{4, 4};
  EXPECT_EQ(hash(full, word_seed(0b0010, 0, 4), BitString::from_uint(0b1000, 4)).to_uint64(),
            0b0011u);
}

TEST(Hash, Deterministic) {
  Rng rng(5);
  const UhfSpec spec{200, 77};
  const UhfSeed seed = sample_seed(spec, rng);
  BitString x(200);
  x.set_coeff(3, true);
  x.set_coeff(150, true);
  EXPECT_EQ(hash(spec, seed, x), hash(spec, seed, x));
  EXPECT_EQ(hash(spec, seed, x).size(), 77u);
}

TEST(Hash, LinearInOffset) {
  Rng rng(6);
  for (const UhfSpec spec : {UhfSpec{8, 3}, UhfSpec{64, 17}, UhfSpec{300, 256}, UhfSpec{5, 11}}) {
    const UhfSeed s1 = sample_seed(spec, rng);
    UhfSeed s2 = s1;
    s2.b = sample_seed(spec, rng).b;
    for (int i = 0; i < 20; ++i) {
      BitString x(spec.input_bits);
      for (std::size_t k = 0; k < x.size(); ++k) x.set_coeff(k, coin(rng));
      EXPECT_EQ(hash(spec, s1, x) ^ hash(spec, s2, x),
                (s1.b ^ s2.b).msb(spec.output_bits));
    }
  }
}

TEST(Hash, RejectsWrongWidths) {
  const UhfSpec spec{8, 4};
  EXPECT_THROW(hash(spec, word_seed(1, 1, 8), BitString(7)), IkemError);
  EXPECT_THROW(hash(spec, word_seed(1, 1, 7), BitString(8)), IkemError);
  EXPECT_THROW((UhfSpec{0, 1}.validate()), IkemError);
  EXPECT_THROW((UhfSpec{4, 0}.validate()), IkemError);
}

TEST(SampleSeed, DeterministicPerRngState) {
  Rng a(9), b(9);
  const UhfSpec spec{33, 5};
  EXPECT_EQ(sample_seed(spec, a), sample_seed(spec, b));
  const UhfSeed first = sample_seed(spec, a);
  EXPECT_FALSE(first == sample_seed(spec, a));
}

TEST(SampleSeed, MultiplierIsUniform) {
  Rng rng(10);
  const UhfSpec spec{8, 4};
  const int draws = 1000000;
  std::vector<int> counts(256, 0);
  for (int i = 0; i < draws; ++i) ++counts[sample_seed(spec, rng).a.to_uint64()];
  const double p = 1.0 / 256;
  const double se = std::sqrt(p * (1 - p) / draws);
  for (int c : counts) EXPECT_LE(std::fabs(double(c) / draws - p), 5 * se);
}

TEST(Census, ExactlyZeroOnAcceptanceGrid) {
  for (auto [w, m] : {std::pair{3, 1}, {4, 2}, {4, 4}, {6, 3}}) {
    EXPECT_EQ(pairwise_independence_census({std::size_t(w), std::size_t(m)}), 0.0)
        << w << "," << m;
  }
}

TEST(Census, ExactlyZeroOnMoreShapes) {
  // Both enumeration paths, and an output wider than the input.
  for (auto [w, m] : {std::pair{1, 1}, {2, 1}, {5, 5}, {3, 5}, {7, 2}, {8, 8}}) {
    EXPECT_EQ(pairwise_independence_census({std::size_t(w), std::size_t(m)}), 0.0)
        << w << "," << m;
  }
}

TEST(Census, RegimeGuard) {
  try {
    pairwise_independence_census({11, 3});
    FAIL();
  } catch (const IkemError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRegimeTooLarge);
  }
}

// SD((S, h_S(X)); (S, U_m)) <= 1/2 sqrt(2^{m - H(X)}), over every seed.
TEST(Extractor, LeftoverHashBoundHoldsExactly) {
  Rng rng(12);
  for (std::size_t w : {3, 4, 6}) {
    for (int trial = 0; trial < 6; ++trial) {
      const std::size_t size = std::size_t{1} << w;
      std::vector<double> px(size);
      double sum = 0;
      for (auto& p : px) sum += (p = uniform01(rng) < 0.3 ? 0.0 : uniform01(rng));
      for (auto& p : px) p /= sum;
      const double h = -std::log2(*std::max_element(px.begin(), px.end()));
      for (std::size_t m = 1; m <= w; ++m) {
        const UhfSpec spec{w, m};
        const std::size_t outs = std::size_t{1} << m;
        double sd = 0.0;
        for (std::uint64_t a = 0; a < size; ++a) {
          for (std::uint64_t b = 0; b < size; ++b) {
            std::vector<double> out(outs, 0.0);
            const UhfEvaluator ev(spec, word_seed(a, b, w));
            for (std::uint64_t x = 0; x < size; ++x) out[ev.word(x)] += px[x];
            for (double o : out) sd += std::fabs(o - 1.0 / double(outs));
          }
        }
        sd = 0.5 * sd / double(size * size);
        EXPECT_LE(sd, 0.5 * std::sqrt(std::exp2(double(m) - h)) + 1e-12)
            << "w=" << w << " m=" << m;
      }
    }
  }
}

TEST(SeedWire, RoundTripAndValidation) {
  Rng rng(13);
  for (const UhfSpec spec : {UhfSpec{3, 1}, UhfSpec{12, 4}, UhfSpec{64, 64}, UhfSpec{70, 256}}) {
    const UhfSeed s = sample_seed(spec, rng);
    const auto bytes = serialize_seed(spec, s);
    EXPECT_EQ(bytes.size(), seed_bytes(spec));
    EXPECT_EQ(parse_seed(spec, bytes), s);
  }
  const UhfSpec spec{12, 4};
  std::vector<std::uint8_t> bad(4, 0);
  bad[0] = 0x10;  // bit 12 set in a 12-bit value
  try {
    parse_seed(spec, bad);
    FAIL();
  } catch (const IkemError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedInput);
  }
  EXPECT_THROW(parse_seed(spec, std::vector<std::uint8_t>(3)), IkemError);
  // Big-endian, a first.
  const auto w = serialize_seed({12, 4}, word_seed(0xABC, 0x123, 12));
  EXPECT_EQ(w, (std::vector<std::uint8_t>{0x0A, 0xBC, 0x01, 0x23}));
}

}  // namespace
}  // namespace ikem
