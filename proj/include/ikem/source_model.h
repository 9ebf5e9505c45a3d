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

#ifndef IKEM_SOURCE_MODEL_H_
#define IKEM_SOURCE_MODEL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ikem {

using Symbol = std::uint32_t;

// Coordinates of the joint source: Alice's X, Bob's Y, Eve's Z.
enum class Coord : int { kX = 0, kY = 1, kZ = 2 };

inline constexpr double kNormalizationTolerance = 1e-12;

// Finite probability vector. Validated on construction.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);
  static Distribution uniform(std::size_t support_size);

  std::size_t support_size() const { return probs_.size(); }
  std::span<const double> probs() const { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

// Joint distribution P_XYZ over finite alphabets, stored densely with
// index (x * |Y| + y) * |Z| + z.
class JointSource {
 public:
  JointSource(std::array<std::size_t, 3> alphabet_sizes,
              std::vector<double> pmf, std::string label);

  const std::array<std::size_t, 3>& alphabet_sizes() const { return sizes_; }
  std::size_t alphabet_size(Coord c) const {
    return sizes_[static_cast<int>(c)];
  }
  std::span<const double> pmf() const { return pmf_; }
  const std::string& label() const { return label_; }

  std::size_t index(Symbol x, Symbol y, Symbol z) const {
    return (static_cast<std::size_t>(x) * sizes_[1] + y) * sizes_[2] + z;
  }
  double p(Symbol x, Symbol y, Symbol z) const { return pmf_[index(x, y, z)]; }

 private:
  std::array<std::size_t, 3> sizes_;
  std::vector<double> pmf_;
  std::string label_;
};

// Private inputs of Alice, Bob and Eve: n symbols each.
struct SampleTriple {
  std::vector<Symbol> x;
  std::vector<Symbol> y;
  std::vector<Symbol> z;

  std::size_t n() const { return x.size(); }
};

JointSource make_table_source(std::array<std::size_t, 3> sizes,
                              std::vector<double> pmf_entries,
                              std::string label = "table");

// Uniform beacon bit B seen through three independent binary symmetric
// channels with crossover probabilities p_a (Alice), p_b (Bob), p_e (Eve).
JointSource satellite_source(double p_a, double p_b, double p_e);

// The n-fold IID product as a single-letter source over alphabets |.|^n.
// Vectors are indexed big-endian: the first symbol is most significant.
JointSource iid_extension(const JointSource& source, std::size_t n);

SampleTriple sample_n(const JointSource& source, std::size_t n,
                      std::uint64_t seed);

// Marginal over the listed coordinates, flattened row-major in list order.
Distribution marginal(const JointSource& source, std::span<const Coord> coords);

double min_entropy(const Distribution& dist);

// -log2 sum_g P(g) max_t P(t | g), unlisted coordinates marginalized out.
double avg_cond_min_entropy(const JointSource& source, Coord target,
                            std::span<const Coord> given);

// n-symbol IID value; additivity is checked against iid_extension in tests.
double iid_cond_min_entropy(const JointSource& source, Coord target,
                            std::span<const Coord> given, std::size_t n);

// Per-symbol -log2 P(x | y). Rows for y with P(y) = 0 are undefined;
// impossible (x, y) pairs hold +infinity.
class SurprisalTable {
 public:
  explicit SurprisalTable(const JointSource& source);

  std::size_t x_size() const { return x_size_; }
  std::size_t y_size() const { return y_size_; }
  bool defined(Symbol y) const { return defined_[y]; }
  double at(Symbol x, Symbol y) const { return table_[y * x_size_ + x]; }
  // Smallest finite surprisal in row y.
  double row_min(Symbol y) const { return row_min_[y]; }

 private:
  std::size_t x_size_;
  std::size_t y_size_;
  std::vector<double> table_;
  std::vector<double> row_min_;
  std::vector<bool> defined_;
};

// sum_i -log2 P(x_i | y_i); +infinity if some term is impossible.
double surprisal(const JointSource& source, std::span<const Symbol> x,
                 std::span<const Symbol> y);
double surprisal(const SurprisalTable& table, std::span<const Symbol> x,
                 std::span<const Symbol> y);

double statistical_distance(const Distribution& p, const Distribution& q);
// Half-L1 distance of two equally sized probability vectors.
double statistical_distance(std::span<const double> p,
                            std::span<const double> q);

}  // namespace ikem

#endif  // IKEM_SOURCE_MODEL_H_
