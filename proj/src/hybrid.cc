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

namespace ikem {

SampleTriple he_gen(const JointSource& source, std::size_t n,
                    std::uint64_t seed) {
  return sample_n(source, n, seed);
}

HybridCiphertext he_encrypt(const IkemParams& params, const JointSource& source,
                            std::span<const Symbol> x, const BitString& message,
                            Rng& rng, DemScheme scheme) {
  EncapResult e = encap(params, source, x, rng);
  DemCiphertext c2 = dem_encrypt(scheme, DemKey{e.key.bits}, message);
  return {std::move(e.ciphertext), std::move(c2)};
}

std::optional<BitString> he_decrypt(const Decapsulator& decapsulator,
                                    std::span<const Symbol> y,
                                    const HybridCiphertext& c) {
  const std::optional<IkemKey> key = decapsulator(y, c.c1);
  if (!key) return std::nullopt;
  return dem_decrypt(DemKey{key->bits}, c.c2);
}

std::optional<BitString> he_decrypt(const IkemParams& params,
                                    const JointSource& source,
                                    std::span<const Symbol> y,
                                    const HybridCiphertext& c) {
  return he_decrypt(Decapsulator(params, source), y, c);
}

}  // namespace ikem
