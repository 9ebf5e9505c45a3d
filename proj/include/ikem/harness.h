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

#ifndef IKEM_HARNESS_H_
#define IKEM_HARNESS_H_

#include <any>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ikem/dem.h"
#include "ikem/hybrid.h"
#include "ikem/ikem.h"

namespace ikem {

// ---------------------------------------------------------------------------
// Reports

struct GameReport {
  std::string game;
  bool exact = false;
  std::uint64_t trials = 0;   // Monte Carlo trials, or enumerated points
  double advantage = 0.0;     // |win rate - 1/2|, failure rate, or exact SD
  double bound = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  double margin = 0.0;        // Monte Carlo slack allowed on top of `bound`

  friend bool operator==(const GameReport&, const GameReport&) = default;
};

// Binomial standard error used for all Monte Carlo margins: 0.5 / sqrt(N).
double sigma_mc(std::uint64_t trials);
// Wilson score interval half-width at z = 1 for `failures` out of `trials`.
double wilson_half_width(std::uint64_t failures, std::uint64_t trials);

// ---------------------------------------------------------------------------
// Exact enumeration on micro instances
//
// Both families are affine, so for fixed multipliers the offsets b, b' only
// XOR constants into g and k. That map is a bijection applied identically to
// the real and the reference distribution, so the statistical distance is the
// average over multipliers of the distance at b = b' = 0. The enumerators
// therefore range over multipliers only; tests cross-check the reduction
// against a full enumeration that includes the offsets.

inline constexpr std::size_t kExactMaxFieldBits = 12;
inline constexpr std::uint64_t kExactBudget = std::uint64_t{1} << 24;

// Dense pair of distributions over (multipliers, z, g_0, k_0, ..., g_q, k_q)
// where pair 0 is the challenge and pairs 1..q are oracle responses. The
// reference replaces the challenge key by a uniform one.
struct ExactDistributions {
  std::vector<double> real;
  std::vector<double> ideal;
  std::size_t multiplier_tuples = 0;
  std::size_t z_values = 0;
  std::size_t outcome_bits = 0;  // (q + 1) * (t + ell)
};

// Statistical distance computed by streaming over multipliers; never
// materializes the distributions.
struct ExactSd {
  double sd = 0.0;
  std::uint64_t points = 0;  // multiplier tuples times support cells
};

ExactDistributions exact_challenge_distribution(const JointSource& source,
                                                const IkemParams& params);
ExactDistributions cea_transcript_distribution(const JointSource& source,
                                               const IkemParams& params,
                                               std::size_t q_e);
ExactSd exact_challenge_sd(const JointSource& source, const IkemParams& params,
                           std::size_t q_e = 0);

// SD of (Z, C*, K_A, K_B) from (Z, C*, U, U); a failed decapsulation is one
// extra value of K_B that the reference never takes.
ExactSd exact_composability_sd(const JointSource& source,
                               const IkemParams& params);

// H~inf(X^n | Z^n, S, h_S(X^n)), exactly.
double leakage_min_entropy(const JointSource& source, const IkemParams& params);

// 1/2 sqrt(2^{bits - h}).
double lhl_bound(double bits, double h);

GameReport ot_bound_check(const JointSource& source, const IkemParams& params);
// Checks against 2 sigma when q_e >= 1, sigma when q_e = 0.
GameReport cea_bound_check(const JointSource& source, const IkemParams& params,
                           std::size_t q_e);
GameReport composability_check(const JointSource& source,
                               const IkemParams& params);

// ---------------------------------------------------------------------------
// Games

struct Transcript {
  std::vector<Symbol> z;
  std::vector<std::pair<IkemCiphertext, IkemKey>> oracle_responses;
  std::pair<IkemCiphertext, IkemKey> challenge;
  int hidden_bit = 0;
};

// What an adversary may look at. `leaked_x` is only set in debug runs for
// adversaries that ask for it.
struct AdversaryContext {
  const JointSource& source;
  const IkemParams& params;
  std::span<const Symbol> z;
  const std::vector<Symbol>* leaked_x = nullptr;
};

// Encapsulation oracle bound to one x, with a hard query budget.
class EncapOracle {
 public:
  EncapOracle(const IkemParams& params, std::span<const Symbol> x,
              std::size_t x_alphabet, std::size_t budget, std::uint64_t seed);

  EncapResult query();
  std::size_t used() const { return responses_.size(); }
  std::size_t budget() const { return budget_; }
  const std::vector<EncapResult>& responses() const { return responses_; }

 private:
  const IkemParams* params_;
  std::vector<Symbol> x_;
  std::size_t x_alphabet_;
  std::size_t budget_;
  Rng rng_;
  std::vector<EncapResult> responses_;
};

// Encryption oracle for the hybrid scheme.
class EncryptOracle {
 public:
  EncryptOracle(const IkemParams& params, const JointSource& source,
                std::span<const Symbol> x, DemScheme scheme,
                std::size_t budget, std::uint64_t seed);

  HybridCiphertext query(const BitString& message);
  std::size_t used() const { return queries_.size(); }
  std::size_t budget() const { return budget_; }
  DemScheme scheme() const { return scheme_; }
  const std::vector<std::pair<BitString, HybridCiphertext>>& queries() const {
    return queries_;
  }

 private:
  const IkemParams* params_;
  const JointSource* source_;
  std::vector<Symbol> x_;
  DemScheme scheme_;
  std::size_t budget_;
  Rng rng_;
  std::vector<std::pair<BitString, HybridCiphertext>> queries_;
};

// Two-phase adversary against the key encapsulation: choose() runs before the
// challenge and returns opaque state; guess() sees the challenge.
class IkemAdversary {
 public:
  virtual ~IkemAdversary() = default;
  virtual std::string name() const = 0;
  virtual bool wants_secret() const { return false; }
  virtual std::any choose(const AdversaryContext& ctx, EncapOracle& oracle,
                          Rng& rng) = 0;
  virtual int guess(const AdversaryContext& ctx, std::any& state,
                    const IkemCiphertext& c, const IkemKey& k,
                    EncapOracle& oracle, Rng& rng) = 0;
};

struct MessagePair {
  BitString m0;
  BitString m1;
};

class HeAdversary {
 public:
  virtual ~HeAdversary() = default;
  virtual std::string name() const = 0;
  virtual std::any choose(const AdversaryContext& ctx, EncryptOracle& oracle,
                          Rng& rng, MessagePair& messages) = 0;
  virtual int guess(const AdversaryContext& ctx, std::any& state,
                    const HybridCiphertext& c, EncryptOracle& oracle,
                    Rng& rng) = 0;
};

std::unique_ptr<IkemAdversary> make_random_guess_adversary();
// Recomputes the key from x (debug reveal) and compares.
std::unique_ptr<IkemAdversary> make_omniscient_adversary();
// Bayes-optimal: posterior over X^n given z, the tag and any oracle answers.
// Spends `queries` oracle calls before the challenge.
std::unique_ptr<IkemAdversary> make_best_guess_adversary(std::size_t queries = 0);

std::unique_ptr<HeAdversary> make_he_random_guess_adversary();
// Messages 0^ell and 1^ell; Bayes-optimal guess from the posterior over x.
// Spends `queries` oracle calls (on 0^ell) before the challenge.
std::unique_ptr<HeAdversary> make_he_best_guess_adversary(std::size_t queries = 0);

GameReport run_ikem_game(const JointSource& source, const IkemParams& params,
                         IkemAdversary& adversary, std::size_t q_e,
                         std::uint64_t trials, std::uint64_t seed,
                         std::vector<Transcript>* transcripts = nullptr);

GameReport run_he_game(const JointSource& source, const IkemParams& params,
                       HeAdversary& adversary, std::size_t q_e,
                       std::uint64_t trials, std::uint64_t seed,
                       DemScheme scheme);

// Empirical Pr[decap != encap key]; pass iff rate <= eps + 3 Wilson widths.
GameReport correctness_mc(const JointSource& source, const IkemParams& params,
                          std::uint64_t trials, std::uint64_t seed);

}  // namespace ikem

#endif  // IKEM_HARNESS_H_
