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

#include "ikem/gf2x.h"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>

#include "ikem/error.h"

namespace ikem {

namespace {

using Limbs = std::vector<std::uint64_t>;

// Spreads the 32 bits of v into the even positions of a 64-bit word.
std::uint64_t spread32(std::uint64_t v) {
  v &= 0xFFFFFFFFULL;
  v = (v | (v << 16)) & 0x0000FFFF0000FFFFULL;
  v = (v | (v << 8)) & 0x00FF00FF00FF00FFULL;
  v = (v | (v << 4)) & 0x0F0F0F0F0F0F0F0FULL;
  v = (v | (v << 2)) & 0x3333333333333333ULL;
  v = (v | (v << 1)) & 0x5555555555555555ULL;
  return v;
}

void xor_bit(Limbs& p, std::size_t i) { p[i / 64] ^= std::uint64_t{1} << (i % 64); }

// Reduces `p` (any length) modulo the sparse polynomial in place; afterwards
// only coefficients below `degree` can be set.
void reduce_sparse(Limbs& p, std::size_t degree,
                   std::span<const std::size_t> middle) {
  for (std::size_t w = p.size(); w-- > 0;) {
    while (true) {
      std::uint64_t word = p[w];
      if (w * 64 + 63 < degree) break;
      if (w * 64 < degree) {
        word &= ~((std::uint64_t{1} << (degree - w * 64)) - 1);
      }
      if (word == 0) break;
      const std::size_t i = w * 64 + 63 - std::countl_zero(word);
      const std::size_t shift = i - degree;
      xor_bit(p, i);
      xor_bit(p, shift);
      for (std::size_t k : middle) xor_bit(p, shift + k);
    }
    if (w * 64 < degree) break;
  }
}

std::size_t poly_degree(const Limbs& p) {
  for (std::size_t w = p.size(); w-- > 0;) {
    if (p[w] != 0) return w * 64 + 63 - std::countl_zero(p[w]);
  }
  return static_cast<std::size_t>(-1);
}

bool poly_is_zero(const Limbs& p) {
  return std::all_of(p.begin(), p.end(), [](auto v) { return v == 0; });
}

void xor_shifted(Limbs& a, const Limbs& b, std::size_t shift) {
  const std::size_t ws = shift / 64, bs = shift % 64;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] == 0) continue;
    if (i + ws < a.size()) a[i + ws] ^= b[i] << bs;
    if (bs != 0 && i + ws + 1 < a.size()) a[i + ws + 1] ^= b[i] >> (64 - bs);
  }
}

bool gcd_is_one(Limbs a, Limbs b) {
  while (!poly_is_zero(b)) {
    std::size_t da = poly_degree(a), db = poly_degree(b);
    if (poly_is_zero(a) || da < db) {
      std::swap(a, b);
      continue;
    }
    xor_shifted(a, b, da - db);
  }
  return poly_degree(a) == 0;
}

Limbs modulus_limbs(std::size_t degree, std::span<const std::size_t> middle) {
  Limbs f(degree / 64 + 1, 0);
  xor_bit(f, degree);
  xor_bit(f, 0);
  for (std::size_t k : middle) xor_bit(f, k);
  return f;
}

Limbs square_mod(const Limbs& p, std::size_t degree,
                 std::span<const std::size_t> middle) {
  Limbs out(2 * p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[2 * i] = spread32(p[i]);
    out[2 * i + 1] = spread32(p[i] >> 32);
  }
  reduce_sparse(out, degree, middle);
  out.resize(p.size());
  return out;
}

std::vector<std::size_t> prime_factors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// gcd(x^(2^i) - x, f) != 1 for some small i means f has a factor of degree
// dividing i; rejects most reducible candidates before the full test.
bool has_small_factor(std::size_t degree, std::span<const std::size_t> middle,
                      std::size_t max_i) {
  const std::size_t nl = degree / 64 + 1;
  const Limbs f = modulus_limbs(degree, middle);
  Limbs power(nl, 0);
  xor_bit(power, 1);
  for (std::size_t i = 1; i <= max_i; ++i) {
    power = square_mod(power, degree, middle);
    Limbs diff = power;
    xor_bit(diff, 1);
    if (!gcd_is_one(f, diff)) return true;
  }
  return false;
}

}  // namespace

Clmul128 clmul64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t hi = 0, lo = 0;
  while (a != 0) {
    const int i = std::countr_zero(a);
    a &= a - 1;
    lo ^= b << i;
    if (i != 0) hi ^= b >> (64 - i);
  }
  return {hi, lo};
}

bool is_irreducible(std::size_t degree, std::span<const std::size_t> middle) {
  require(degree >= 1, ErrorCode::kInvalidArgument, "degree must be positive");
  if (degree == 1) return true;
  const std::size_t nl = degree / 64 + 1;
  const Limbs f = modulus_limbs(degree, middle);
  const auto factors = prime_factors(degree);

  // powers[i] = x^(2^i) mod f for the i we need.
  Limbs power(nl, 0);
  xor_bit(power, 1);
  std::map<std::size_t, Limbs> checkpoints;
  std::vector<std::size_t> wanted;
  for (std::size_t p : factors) wanted.push_back(degree / p);
  for (std::size_t i = 1; i <= degree; ++i) {
    power = square_mod(power, degree, middle);
    if (std::find(wanted.begin(), wanted.end(), i) != wanted.end()) {
      checkpoints[i] = power;
    }
  }
  Limbs x(nl, 0);
  xor_bit(x, 1);
  if (power != x) return false;
  for (const auto& [i, value] : checkpoints) {
    Limbs diff = value;
    xor_bit(diff, 1);
    if (!gcd_is_one(f, diff)) return false;
  }
  return true;
}

std::vector<std::size_t> minimal_weight_irreducible(std::size_t degree) {
  require(degree >= 1 && degree <= kMaxFieldDegree, ErrorCode::kInvalidArgument,
          "field degree " + std::to_string(degree) + " outside [1, " +
              std::to_string(kMaxFieldDegree) + "]");
  if (degree == 1) return {};
  const std::size_t screen = std::min<std::size_t>(16, degree / 2);
  auto acceptable = [&](const std::vector<std::size_t>& middle) {
    return !has_small_factor(degree, middle, screen) &&
           is_irreducible(degree, middle);
  };
  // No irreducible trinomials exist when 8 divides the degree (Swan).
  if (degree % 8 != 0) {
    for (std::size_t k = 1; k <= degree / 2; ++k) {
      std::vector<std::size_t> middle{k};
      if (acceptable(middle)) return middle;
    }
  }
  for (std::size_t k3 = 3; k3 < degree; ++k3) {
    for (std::size_t k2 = 2; k2 < k3; ++k2) {
      for (std::size_t k1 = 1; k1 < k2; ++k1) {
        std::vector<std::size_t> middle{k3, k2, k1};
        if (acceptable(middle)) return middle;
      }
    }
  }
  fail(ErrorCode::kInvalidArgument,
       "no low-weight irreducible polynomial of degree " +
           std::to_string(degree));
}

BinaryField::BinaryField(std::size_t degree, std::vector<std::size_t> middle)
    : degree_(degree), middle_(std::move(middle)) {
  require(degree_ >= 1, ErrorCode::kInvalidArgument, "degree must be positive");
  std::sort(middle_.rbegin(), middle_.rend());
  for (std::size_t k : middle_) {
    require(k > 0 && k < degree_, ErrorCode::kInvalidArgument,
            "middle exponent out of range");
  }
}

const BinaryField& BinaryField::of_degree(std::size_t degree) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<BinaryField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[degree];
  if (!slot) {
    slot = std::make_unique<BinaryField>(degree,
                                         minimal_weight_irreducible(degree));
  }
  return *slot;
}

std::string BinaryField::polynomial_string() const {
  auto term = [](std::size_t k) {
    return k == 1 ? std::string("x") : "x^" + std::to_string(k);
  };
  std::string out = term(degree_);
  for (std::size_t k : middle_) out += " + " + term(k);
  return out + " + 1";
}

BitString BinaryField::multiply(const BitString& a, const BitString& b) const {
  require(a.size() == degree_ && b.size() == degree_, ErrorCode::kLengthMismatch,
          "field operands must have " + std::to_string(degree_) + " bits");
  const auto la = a.limbs();
  const auto lb = b.limbs();
  Limbs prod(la.size() + lb.size() + 1, 0);
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (la[i] == 0) continue;
    for (std::size_t j = 0; j < lb.size(); ++j) {
      const Clmul128 c = clmul64(la[i], lb[j]);
      prod[i + j] ^= c.lo;
      prod[i + j + 1] ^= c.hi;
    }
  }
  reduce_sparse(prod, degree_, middle_);
  BitString out(degree_);
  auto dst = out.mutable_limbs();
  std::copy_n(prod.begin(), dst.size(), dst.begin());
  return out;
}

std::uint64_t BinaryField::multiply(std::uint64_t a, std::uint64_t b) const {
  require(degree_ <= 64, ErrorCode::kInvalidArgument,
          "word multiply needs degree <= 64");
  const Clmul128 c = clmul64(a, b);
  Limbs prod{c.lo, c.hi};
  reduce_sparse(prod, degree_, middle_);
  return prod[0];
}

}  // namespace ikem
