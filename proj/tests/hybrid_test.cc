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

#include "ikem/hybrid.h"

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.h"

namespace ikem {
namespace {

using testing::code_of;
using testing::shared_uniform;

BitString random_bits(Rng& rng, std::size_t n) {
  BitString b(n);
  for (std::size_t i = 0; i < n; ++i) b.set_coeff(i, rng() >> 63);
  return b;
}

TEST(Hybrid, StreamRoundTrip) {
  const JointSource s = shared_uniform(2);
  const IkemParams p = derive_params(s, 300, 0.25, std::exp2(-8), 0, 256);
  const Decapsulator dec(p, s);
  Rng rng(1);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const SampleTriple t = he_gen(s, 300, i);
    const BitString m = random_bits(rng, 8 * testing::draw(rng, 0, 300));
    const HybridCiphertext c = he_encrypt(p, s, t.x, m, rng, DemScheme::kStream);
    EXPECT_EQ(c.c2.body.size(), m.size());
    const auto out = he_decrypt(dec, t.y, c);
    ASSERT_TRUE(out.has_value());
    EXPECT_EQ(*out, m);
  }
}

TEST(Hybrid, OtpRoundTrip) {
  const JointSource s = shared_uniform(4);
  const IkemParams p = derive_params(s, 60, 0.25, 0.01, 0);
  Rng rng(2);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const SampleTriple t = he_gen(s, 60, i);
    const BitString m = random_bits(rng, testing::draw(rng, 1, p.ell));
    const HybridCiphertext c = he_encrypt(p, s, t.x, m, rng, DemScheme::kOtp);
    const auto out = he_decrypt(p, s, t.y, c);
    ASSERT_TRUE(out.has_value());
    EXPECT_EQ(*out, m);
  }
  const SampleTriple t = he_gen(s, 60, 0);
  EXPECT_EQ(code_of([&] { he_encrypt(p, s, t.x, BitString(p.ell + 1), rng, DemScheme::kOtp); }),
            ErrorCode::kKeyTooShort);
  EXPECT_EQ(code_of([&] { he_encrypt(p, s, t.x, BitString(8), rng, DemScheme::kStream); }),
            ErrorCode::kBadKeyLength);
}

TEST(Hybrid, BottomPropagates) {
  const JointSource s = shared_uniform(2);
  const IkemParams p = derive_params(s, 300, 0.25, std::exp2(-8), 0, 256);
  const SampleTriple t = he_gen(s, 300, 4);
  Rng rng(4);
  HybridCiphertext c = he_encrypt(p, s, t.x, BitString(64), rng, DemScheme::kStream);
  c.c1.g.set_coeff(0, !c.c1.g.coeff(0));
  EXPECT_FALSE(he_decrypt(p, s, t.y, c).has_value());
}

TEST(Hybrid, GenIsSampling) {
  const JointSource s = satellite_source(0.1, 0.1, 0.3);
  const SampleTriple a = he_gen(s, 16, 9), b = sample_n(s, 16, 9);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.y, b.y);
  EXPECT_EQ(a.z, b.z);
}

}  // namespace
}  // namespace ikem
