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

#ifndef IKEM_HYBRID_H_
#define IKEM_HYBRID_H_

#include <cstdint>
#include <optional>
#include <span>

#include "ikem/dem.h"
#include "ikem/ikem.h"

namespace ikem {

struct HybridCiphertext {
  IkemCiphertext c1;
  DemCiphertext c2;

  friend bool operator==(const HybridCiphertext&,
                         const HybridCiphertext&) = default;
};

// Preprocessing: one (x, y, z) triple from the source.
SampleTriple he_gen(const JointSource& source, std::size_t n,
                    std::uint64_t seed);

HybridCiphertext he_encrypt(const IkemParams& params, const JointSource& source,
                            std::span<const Symbol> x, const BitString& message,
                            Rng& rng, DemScheme scheme);

// nullopt exactly when decapsulation fails.
std::optional<BitString> he_decrypt(const Decapsulator& decapsulator,
                                    std::span<const Symbol> y,
                                    const HybridCiphertext& ciphertext);
std::optional<BitString> he_decrypt(const IkemParams& params,
                                    const JointSource& source,
                                    std::span<const Symbol> y,
                                    const HybridCiphertext& ciphertext);

}  // namespace ikem

#endif  // IKEM_HYBRID_H_
