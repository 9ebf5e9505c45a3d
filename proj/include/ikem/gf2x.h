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

#ifndef IKEM_GF2X_H_
#define IKEM_GF2X_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ikem/bits.h"

namespace ikem {

// Largest field degree the library will construct.
inline constexpr std::size_t kMaxFieldDegree = 4096;

// GF(2^degree) = GF(2)[x] / f(x), with f = x^degree + sum_{k in middle} x^k + 1.
//
// Reduction polynomials follow the minimum-weight convention used by the
// standard tables of low-weight irreducible polynomials: the irreducible
// trinomial x^d + x^k + 1 with the smallest k if one exists, otherwise the
// pentanomial x^d + x^k3 + x^k2 + x^k1 + 1 minimizing k3, then k2, then k1.
// This yields, e.g., x^3+x+1, x^4+x+1, x^8+x^4+x^3+x+1 and
// x^64+x^4+x^3+x+1.
class BinaryField {
 public:
  BinaryField(std::size_t degree, std::vector<std::size_t> middle_terms);

  // Cached field with the minimum-weight polynomial for `degree`.
  static const BinaryField& of_degree(std::size_t degree);

  std::size_t degree() const { return degree_; }
  // Exponents strictly between 0 and degree, in decreasing order.
  std::span<const std::size_t> middle_terms() const { return middle_; }
  std::string polynomial_string() const;

  // Operands are degree-bit strings; so is the result.
  BitString multiply(const BitString& a, const BitString& b) const;
  // Fast path for degree <= 64.
  std::uint64_t multiply(std::uint64_t a, std::uint64_t b) const;

 private:
  std::size_t degree_;
  std::vector<std::size_t> middle_;
};

// Rabin's irreducibility test for x^degree + sum x^middle + 1.
bool is_irreducible(std::size_t degree, std::span<const std::size_t> middle);

// Middle exponents of the minimum-weight irreducible polynomial of `degree`.
std::vector<std::size_t> minimal_weight_irreducible(std::size_t degree);

// Carry-less product of two 64-bit words, as (high, low).
struct Clmul128 {
  std::uint64_t hi;
  std::uint64_t lo;
};
Clmul128 clmul64(std::uint64_t a, std::uint64_t b);

}  // namespace ikem

#endif  // IKEM_GF2X_H_
