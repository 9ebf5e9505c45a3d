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

#include "ikem/ikem.h"

#include <sodium.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>

#include "ikem/error.h"

namespace ikem {

namespace {

// Absorbs rounding noise so that bounds landing on an integer are not pushed
// one step in the unsafe direction.
constexpr double kRoundingSlack = 1e-9;

class Sha256 {
 public:
  Sha256() { crypto_hash_sha256_init(&state_); }

  void bytes(const void* data, std::size_t len) {
    crypto_hash_sha256_update(&state_, static_cast<const unsigned char*>(data),
                              len);
  }
  void text(std::string_view s) { bytes(s.data(), s.size()); }
  void u64(std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (56 - 8 * i));
    bytes(buf, 8);
  }
  void u32(std::uint32_t v) {
    unsigned char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<unsigned char>(v >> (24 - 8 * i));
    bytes(buf, 4);
  }
  void real(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

  Digest finish() {
    unsigned char full[crypto_hash_sha256_BYTES];
    crypto_hash_sha256_final(&state_, full);
    Digest out;
    std::memcpy(out.data(), full, out.size());
    return out;
  }

 private:
  crypto_hash_sha256_state state_;
};

std::string hex(const Digest& d) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (auto b : d) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 15]);
  }
  return out;
}

void check_targets(double eps, double sigma) {
  require(eps > 0.0 && eps < 1.0, ErrorCode::kInvalidArgument,
          "eps must lie in (0,1)");
  require(sigma > 0.0 && sigma < 1.0, ErrorCode::kInvalidArgument,
          "sigma must lie in (0,1)");
}

double entropy_given(const JointSource& source, Coord given, std::size_t n) {
  const Coord g[] = {given};
  return iid_cond_min_entropy(source, Coord::kX, g, n);
}

// Symbols packed into one word; only for w <= 64.
std::uint64_t encode_word(std::span<const Symbol> x, std::size_t b) {
  std::uint64_t v = 0;
  for (Symbol s : x) v = (v << b) | s;
  return v;
}

}  // namespace

void IkemParams::validate() const {
  require(n >= 1, ErrorCode::kInvalidArgument, "n must be positive");
  require(t >= 1, ErrorCode::kInvalidArgument, "t must be positive");
  require(ell >= 1, ErrorCode::kInvalidArgument, "ell must be positive");
  require(input_bits >= 1, ErrorCode::kInvalidArgument,
          "input width must be positive");
  require(nu >= 0.0, ErrorCode::kInvalidArgument, "nu must be non-negative");
  tag_family().validate();
  key_family().validate();
}

std::size_t bits_per_symbol(std::size_t alphabet_size) {
  require(alphabet_size >= 1, ErrorCode::kEmptySupport, "empty alphabet");
  std::size_t b = 0;
  while ((std::size_t{1} << b) < alphabet_size) ++b;
  return b == 0 ? 1 : b;
}

BitString encode_sample(std::span<const Symbol> x, std::size_t alphabet_size) {
  const std::size_t b = bits_per_symbol(alphabet_size);
  const std::size_t w = x.size() * b;
  BitString out(w);
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] < alphabet_size, ErrorCode::kInvalidArgument,
            "symbol outside alphabet");
    out.write_field(w - (i + 1) * b, b, x[i]);
  }
  return out;
}

std::uint64_t encode_sample_word(std::span<const Symbol> x,
                                 std::size_t alphabet_size) {
  const std::size_t b = bits_per_symbol(alphabet_size);
  require(x.size() * b <= 64, ErrorCode::kInvalidArgument,
          "sample does not fit in a word");
  for (Symbol s : x) {
    require(s < alphabet_size, ErrorCode::kInvalidArgument,
            "symbol outside alphabet");
  }
  return encode_word(x, b);
}

std::string source_digest(const JointSource& source) {
  Sha256 h;
  h.text("ikem.source.v1");
  for (auto s : source.alphabet_sizes()) h.u32(static_cast<std::uint32_t>(s));
  for (double p : source.pmf()) h.real(p);
  return hex(h.finish());
}

Digest params_digest(const IkemParams& params) {
  Sha256 h;
  h.text("ikem.params.v1");
  h.text(params.source_digest);
  h.u64(params.n);
  h.u64(params.t);
  h.u64(params.ell);
  h.u64(params.input_bits);
  h.real(params.nu);
  return h.finish();
}

ReliabilityParams reliability_from_entropy(double h_xy, double eps) {
  require(eps > 0.0 && eps < 1.0, ErrorCode::kInvalidArgument,
          "eps must lie in (0,1)");
  require(h_xy >= 0.0, ErrorCode::kInvalidArgument, "negative entropy");
  const double nu = 2.0 * h_xy / eps;
  const double raw = std::ceil(nu - std::log2(eps) - 1.0 - kRoundingSlack);
  const std::size_t t = raw < 1.0 ? 1 : static_cast<std::size_t>(raw);
  return {h_xy, nu, t};
}

ReliabilityParams derive_reliability(const JointSource& source, std::size_t n,
                                     double eps) {
  require(n >= 1, ErrorCode::kInvalidArgument, "n must be positive");
  return reliability_from_entropy(entropy_given(source, Coord::kY, n), eps);
}

double ot_key_bound(double h_xz, std::size_t t, double sigma) {
  return h_xz - static_cast<double>(t) + 2.0 * std::log2(sigma) + 2.0;
}

double cea_key_bound(double h_xz, std::size_t t, double sigma,
                     std::size_t q_e) {
  require(q_e >= 1, ErrorCode::kInvalidArgument,
          "the chosen-encapsulation bound needs q_e >= 1");
  const double q = static_cast<double>(q_e);
  return (2.0 + 2.0 * std::log2(sigma) + h_xz) / (q + 1.0) -
         static_cast<double>(t) - std::log2(q / sigma);
}

std::int64_t max_key_bits(double h_xz, std::size_t t, double sigma,
                          std::size_t q_e) {
  const double bound =
      q_e == 0 ? ot_key_bound(h_xz, t, sigma) : cea_key_bound(h_xz, t, sigma, q_e);
  return static_cast<std::int64_t>(std::floor(bound + kRoundingSlack));
}

IkemParams derive_params(const JointSource& source, std::size_t n, double eps,
                         double sigma, std::size_t q_e,
                         std::optional<std::size_t> key_bits) {
  check_targets(eps, sigma);
  const ReliabilityParams rel = derive_reliability(source, n, eps);
  const double h_xz = entropy_given(source, Coord::kZ, n);
  const std::int64_t limit = max_key_bits(h_xz, rel.t, sigma, q_e);
  require(limit >= 1, ErrorCode::kInfeasibleKeyLength,
          "no positive key length: bound is " + std::to_string(limit) +
              " bits at n=" + std::to_string(n) + ", t=" + std::to_string(rel.t));
  std::size_t ell = static_cast<std::size_t>(limit);
  if (key_bits) {
    require(*key_bits >= 1 && *key_bits <= ell, ErrorCode::kInfeasibleKeyLength,
            "requested " + std::to_string(*key_bits) +
                "-bit key exceeds the bound of " + std::to_string(ell) + " bits");
    ell = *key_bits;
  }
  IkemParams p = make_params(source, n, rel.t, ell, rel.nu, eps, sigma, q_e);
  return p;
}

IkemParams make_params(const JointSource& source, std::size_t n, std::size_t t,
                       std::size_t ell, double nu, double eps, double sigma,
                       std::size_t q_e) {
  require(n >= 1, ErrorCode::kInvalidArgument, "n must be positive");
  IkemParams p;
  p.n = n;
  p.t = t;
  p.ell = ell;
  p.nu = nu;
  p.eps = eps;
  p.sigma = sigma;
  p.q_e = q_e;
  p.input_bits = n * bits_per_symbol(source.alphabet_size(Coord::kX));
  p.source_digest = source_digest(source);
  p.h_xy = entropy_given(source, Coord::kY, n);
  p.h_xz = entropy_given(source, Coord::kZ, n);
  p.validate();
  return p;
}

EncapResult encap(const IkemParams& params, std::span<const Symbol> x,
                  std::size_t x_alphabet_size, Rng& rng) {
  params.validate();
  require(x.size() == params.n, ErrorCode::kLengthMismatch,
          "x has " + std::to_string(x.size()) + " symbols, params expect " +
              std::to_string(params.n));
  const BitString xe = encode_sample(x, x_alphabet_size);
  require(xe.size() == params.input_bits, ErrorCode::kLengthMismatch,
          "alphabet does not match the params input width");
  EncapResult r;
  r.ciphertext.s_prime = sample_seed(params.key_family(), rng);
  r.ciphertext.s = sample_seed(params.tag_family(), rng);
  r.ciphertext.g = UhfEvaluator(params.tag_family(), r.ciphertext.s)(xe);
  r.ciphertext.params_digest = params_digest(params);
  r.key.bits = UhfEvaluator(params.key_family(), r.ciphertext.s_prime)(xe);
  return r;
}

EncapResult encap(const IkemParams& params, const JointSource& source,
                  std::span<const Symbol> x, Rng& rng) {
  require(source_digest(source) == params.source_digest,
          ErrorCode::kDigestMismatch, "params were derived for another source");
  return encap(params, x, source.alphabet_size(Coord::kX), rng);
}

TypicalSetEnumerator::TypicalSetEnumerator(const SurprisalTable& table,
                                           std::span<const Symbol> y, double nu)
    : table_(&table), y_(y.begin(), y.end()), nu_(nu) {
  require(!y_.empty(), ErrorCode::kInvalidArgument, "empty y vector");
  require(nu >= 0.0, ErrorCode::kInvalidArgument, "nu must be non-negative");
  const std::size_t n = y_.size();
  for (Symbol s : y_) {
    require(s < table.y_size() && table.defined(s),
            ErrorCode::kUndefinedConditional,
            "P(y) = 0 for y = " + std::to_string(s));
  }
  suffix_min_.assign(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    suffix_min_[i] = suffix_min_[i + 1] + table.row_min(y_[i]);
  }
  sym_.assign(n, 0);
  partial_.assign(n + 1, 0.0);
}

bool TypicalSetEnumerator::next(std::vector<Symbol>& out) {
  if (done_) return false;
  const auto n = static_cast<std::ptrdiff_t>(y_.size());
  const std::size_t xs = table_->x_size();
  while (depth_ >= 0) {
    const std::ptrdiff_t d = depth_;
    if (sym_[d] >= xs) {
      if (--depth_ >= 0) ++sym_[depth_];
      continue;
    }
    const double s = table_->at(sym_[d], y_[d]);
    if (!std::isfinite(s)) {
      ++sym_[d];
      continue;
    }
    // Same left-to-right accumulation as surprisal(), so the leaf test agrees
    // with a brute-force filter bit for bit.
    const double p = partial_[d] + s;
    if (d + 1 == n) {
      ++sym_[d];
      if (p <= nu_) {
        out.assign(sym_.begin(), sym_.end());
        --out.back();
        return true;
      }
      continue;
    }
    if (p + suffix_min_[d + 1] > nu_ + kRoundingSlack) {
      ++sym_[d];
      continue;
    }
    partial_[d + 1] = p;
    depth_ = d + 1;
    sym_[depth_] = 0;
  }
  done_ = true;
  return false;
}

std::vector<std::vector<Symbol>> enumerate_typical(const JointSource& source,
                                                   std::span<const Symbol> y,
                                                   double nu) {
  const SurprisalTable table(source);
  TypicalSetEnumerator it(table, y, nu);
  std::vector<std::vector<Symbol>> out;
  std::vector<Symbol> x;
  while (it.next(x)) out.push_back(x);
  return out;
}

Decapsulator::Decapsulator(const IkemParams& params, const JointSource& source)
    : params_(params),
      digest_(params_digest(params)),
      x_alphabet_(source.alphabet_size(Coord::kX)),
      table_(source) {
  params_.validate();
  require(source_digest(source) == params.source_digest,
          ErrorCode::kDigestMismatch, "params were derived for another source");
  require(params.n * bits_per_symbol(x_alphabet_) == params.input_bits,
          ErrorCode::kLengthMismatch, "params input width does not fit source");
}

void Decapsulator::check(std::span<const Symbol> y,
                         const IkemCiphertext& c) const {
  require(y.size() == params_.n, ErrorCode::kLengthMismatch,
          "y has " + std::to_string(y.size()) + " symbols, params expect " +
              std::to_string(params_.n));
  require(c.params_digest == digest_, ErrorCode::kDigestMismatch,
          "ciphertext was produced under different params");
  const std::size_t wt = params_.tag_family().field_bits();
  const std::size_t wk = params_.key_family().field_bits();
  require(c.g.size() == params_.t && c.s.a.size() == wt &&
              c.s.b.size() == wt && c.s_prime.a.size() == wk &&
              c.s_prime.b.size() == wk,
          ErrorCode::kLengthMismatch, "ciphertext widths do not match params");
}

std::optional<std::vector<Symbol>> Decapsulator::reconcile(
    std::span<const Symbol> y, const IkemCiphertext& c) const {
  check(y, c);
  const UhfEvaluator tag(params_.tag_family(), c.s);
  const std::size_t b = bits_per_symbol(x_alphabet_);
  std::optional<std::vector<Symbol>> found;
  TypicalSetEnumerator it(table_, y, params_.nu);
  std::vector<Symbol> x;
  if (tag.word_sized()) {
    const std::uint64_t g = c.g.to_uint64();
    while (it.next(x)) {
      if (tag.word(encode_word(x, b)) != g) continue;
      if (found) return std::nullopt;
      found = x;
    }
  } else {
    while (it.next(x)) {
      if (!(tag(encode_sample(x, x_alphabet_)) == c.g)) continue;
      if (found) return std::nullopt;
      found = x;
    }
  }
  return found;
}

std::optional<IkemKey> Decapsulator::operator()(
    std::span<const Symbol> y, const IkemCiphertext& c) const {
  auto x = reconcile(y, c);
  if (!x) return std::nullopt;
  const UhfEvaluator kdf(params_.key_family(), c.s_prime);
  return IkemKey{kdf(encode_sample(*x, x_alphabet_))};
}

std::optional<IkemKey> decap(const IkemParams& params,
                             const JointSource& source,
                             std::span<const Symbol> y,
                             const IkemCiphertext& ciphertext) {
  return Decapsulator(params, source)(y, ciphertext);
}

}  // namespace ikem
