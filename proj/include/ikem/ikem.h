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

#ifndef IKEM_IKEM_H_
#define IKEM_IKEM_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ikem/bits.h"
#include "ikem/rng.h"
#include "ikem/source_model.h"
#include "ikem/uhf.h"

namespace ikem {

using Digest = std::array<std::uint8_t, 8>;

// Operating point of the key encapsulation. Produced by derive_params, which
// enforces the reliability and key-length bounds; make_params builds
// arbitrary (possibly out-of-bound) points for stress testing.
struct IkemParams {
  std::size_t n = 0;            // samples consumed
  std::size_t t = 0;            // tag bits
  std::size_t ell = 0;          // key bits
  double nu = 0.0;              // surprisal threshold of the candidate list
  double eps = 0.0;             // correctness target
  double sigma = 0.0;           // indistinguishability target
  std::size_t q_e = 0;          // encapsulation queries budgeted for
  std::size_t input_bits = 0;   // encoded sample width w
  std::string source_digest;    // hex digest of the bound JointSource
  double h_xy = 0.0;            // H~inf(X^n | Y^n)
  double h_xz = 0.0;            // H~inf(X^n | Z^n)

  UhfSpec tag_family() const { return {input_bits, t}; }
  UhfSpec key_family() const { return {input_bits, ell}; }
  void validate() const;
};

struct IkemKey {
  BitString bits;

  friend bool operator==(const IkemKey&, const IkemKey&) = default;
};

struct IkemCiphertext {
  BitString g;          // t-bit tag h_s(x)
  UhfSeed s_prime;      // seed of the key family
  UhfSeed s;            // seed of the tag family
  Digest params_digest{};

  friend bool operator==(const IkemCiphertext&,
                         const IkemCiphertext&) = default;
};

struct EncapResult {
  IkemCiphertext ciphertext;
  IkemKey key;
};

// max(1, ceil(log2 |alphabet|)).
std::size_t bits_per_symbol(std::size_t alphabet_size);

// Fixed-width big-endian concatenation of the symbols: the first symbol
// occupies the most significant bits.
BitString encode_sample(std::span<const Symbol> x, std::size_t alphabet_size);
// Same encoding as a word; requires x.size() * bits_per_symbol <= 64.
std::uint64_t encode_sample_word(std::span<const Symbol> x,
                                 std::size_t alphabet_size);

std::string source_digest(const JointSource& source);
Digest params_digest(const IkemParams& params);

struct ReliabilityParams {
  double h_xy;  // H~inf(X^n | Y^n)
  double nu;    // 2 h_xy / eps
  std::size_t t;
};

// The tag length that makes decapsulation eps-correct:
// t = max(1, ceil(nu - log2 eps - 1)) with nu = 2 H~inf(X^n|Y^n) / eps.
ReliabilityParams reliability_from_entropy(double h_xy, double eps);
ReliabilityParams derive_reliability(const JointSource& source, std::size_t n,
                                     double eps);

// Real-valued key-length bounds before flooring.
double ot_key_bound(double h_xz, std::size_t t, double sigma);
double cea_key_bound(double h_xz, std::size_t t, double sigma, std::size_t q_e);
// Floor of the applicable bound (one-time when q_e == 0); may be negative.
std::int64_t max_key_bits(double h_xz, std::size_t t, double sigma,
                          std::size_t q_e);

// Full derivation. ell is the floored bound (the one-time bound when
// q_e == 0, the chosen-encapsulation bound otherwise), or `key_bits` when
// given and within the bound. Throws InfeasibleKeyLength when ell < 1.
IkemParams derive_params(const JointSource& source, std::size_t n, double eps,
                         double sigma, std::size_t q_e,
                         std::optional<std::size_t> key_bits = std::nullopt);

// Explicit operating point, no bound checks.
IkemParams make_params(const JointSource& source, std::size_t n, std::size_t t,
                       std::size_t ell, double nu, double eps, double sigma,
                       std::size_t q_e);

// Draws s' then s from `rng`; key = h'_{s'}(x), tag g = h_s(x).
EncapResult encap(const IkemParams& params, std::span<const Symbol> x,
                  std::size_t x_alphabet_size, Rng& rng);
EncapResult encap(const IkemParams& params, const JointSource& source,
                  std::span<const Symbol> x, Rng& rng);

// Depth-first lexicographic walk of {x : sum_i -log2 P(x_i|y_i) <= nu},
// pruning a prefix once its surprisal plus the cheapest completion of the
// suffix exceeds nu.
class TypicalSetEnumerator {
 public:
  TypicalSetEnumerator(const SurprisalTable& table, std::span<const Symbol> y,
                       double nu);

  // Writes the next candidate into `out`; false when exhausted.
  bool next(std::vector<Symbol>& out);

 private:
  const SurprisalTable* table_;
  std::vector<Symbol> y_;
  double nu_;
  std::vector<double> suffix_min_;
  std::vector<Symbol> sym_;
  std::vector<double> partial_;
  std::ptrdiff_t depth_ = 0;
  bool done_ = false;
};

std::vector<std::vector<Symbol>> enumerate_typical(const JointSource& source,
                                                   std::span<const Symbol> y,
                                                   double nu);

// Bob's side, bound to one (params, source) pair.
class Decapsulator {
 public:
  Decapsulator(const IkemParams& params, const JointSource& source);

  // The unique candidate whose tag matches, or nullopt.
  std::optional<std::vector<Symbol>> reconcile(
      std::span<const Symbol> y, const IkemCiphertext& ciphertext) const;
  std::optional<IkemKey> operator()(std::span<const Symbol> y,
                                    const IkemCiphertext& ciphertext) const;

  const IkemParams& params() const { return params_; }

 private:
  void check(std::span<const Symbol> y, const IkemCiphertext& ciphertext) const;

  IkemParams params_;
  Digest digest_;
  std::size_t x_alphabet_;
  SurprisalTable table_;
};

// nullopt is the protocol-level failure symbol.
std::optional<IkemKey> decap(const IkemParams& params,
                             const JointSource& source,
                             std::span<const Symbol> y,
                             const IkemCiphertext& ciphertext);

}  // namespace ikem

#endif  // IKEM_IKEM_H_
