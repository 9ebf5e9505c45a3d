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

#include "ikem/source_model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ikem/error.h"
#include "ikem/rng.h"

namespace ikem {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_probabilities(std::span<const double> probs) {
  double sum = 0.0;
  for (double p : probs) {
    require(!(p < 0.0) && !std::isnan(p), ErrorCode::kNegativeProbability,
            "probability " + std::to_string(p) + " is negative");
    sum += p;
  }
  require(std::abs(sum - 1.0) <= kNormalizationTolerance,
          ErrorCode::kNotNormalized,
          "probabilities sum to " + std::to_string(sum));
}

int coord_index(Coord c) {
  const int i = static_cast<int>(c);
  require(i >= 0 && i < 3, ErrorCode::kInvalidCoordinate,
          "coordinate " + std::to_string(i) + " is not one of X, Y, Z");
  return i;
}

// Mixed-radix index of the listed coordinates of cell (x, y, z).
std::size_t coords_index(const std::array<std::size_t, 3>& sizes,
                         const std::array<Symbol, 3>& cell,
                         std::span<const int> coords) {
  std::size_t idx = 0;
  for (int c : coords) idx = idx * sizes[c] + cell[c];
  return idx;
}

template <typename F>
void for_each_cell(const JointSource& source, F&& f) {
  const auto& s = source.alphabet_sizes();
  std::size_t i = 0;
  for (Symbol x = 0; x < s[0]; ++x) {
    for (Symbol y = 0; y < s[1]; ++y) {
      for (Symbol z = 0; z < s[2]; ++z, ++i) {
        f(std::array<Symbol, 3>{x, y, z}, source.pmf()[i]);
      }
    }
  }
}

double flip(Symbol out, Symbol in, double p) { return out == in ? 1.0 - p : p; }

}  // namespace

Distribution::Distribution(std::vector<double> probs)
    : probs_(std::move(probs)) {
  require(!probs_.empty(), ErrorCode::kEmptySupport, "empty distribution");
  check_probabilities(probs_);
}

Distribution Distribution::uniform(std::size_t support_size) {
  require(support_size > 0, ErrorCode::kEmptySupport, "empty distribution");
  return Distribution(std::vector<double>(support_size, 1.0 / support_size));
}

JointSource::JointSource(std::array<std::size_t, 3> alphabet_sizes,
                         std::vector<double> pmf, std::string label)
    : sizes_(alphabet_sizes), pmf_(std::move(pmf)), label_(std::move(label)) {
  for (std::size_t s : sizes_) {
    require(s >= 1, ErrorCode::kDimensionMismatch,
            "alphabet sizes must be positive");
  }
  const std::size_t cells = sizes_[0] * sizes_[1] * sizes_[2];
  require(pmf_.size() == cells, ErrorCode::kDimensionMismatch,
          "pmf has " + std::to_string(pmf_.size()) + " entries, expected " +
              std::to_string(cells));
  check_probabilities(pmf_);
}

JointSource make_table_source(std::array<std::size_t, 3> sizes,
                              std::vector<double> pmf_entries,
                              std::string label) {
  return JointSource(sizes, std::move(pmf_entries), std::move(label));
}

JointSource satellite_source(double p_a, double p_b, double p_e) {
  for (double p : {p_a, p_b, p_e}) {
    require(p >= 0.0 && p <= 0.5, ErrorCode::kProbabilityOutOfRange,
            "crossover probability " + std::to_string(p) +
                " outside [0, 0.5]");
  }
  std::vector<double> pmf(8, 0.0);
  for (Symbol x = 0; x < 2; ++x) {
    for (Symbol y = 0; y < 2; ++y) {
      for (Symbol z = 0; z < 2; ++z) {
        double sum = 0.0;
        for (Symbol b = 0; b < 2; ++b) {
          sum += 0.5 * flip(x, b, p_a) * flip(y, b, p_b) * flip(z, b, p_e);
        }
        pmf[(x * 2 + y) * 2 + z] = sum;
      }
    }
  }
  return JointSource({2, 2, 2}, std::move(pmf),
                     "satellite(" + std::to_string(p_a) + "," +
                         std::to_string(p_b) + "," + std::to_string(p_e) +
                         ")");
}

JointSource iid_extension(const JointSource& source, std::size_t n) {
  require(n >= 1, ErrorCode::kInvalidArgument, "n must be positive");
  std::array<std::size_t, 3> sizes{1, 1, 1};
  double cells = 1.0;
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < n; ++i) sizes[c] *= source.alphabet_sizes()[c];
    cells *= static_cast<double>(sizes[c]);
  }
  require(cells <= double(1 << 24), ErrorCode::kRegimeTooLarge,
          "product table too large to materialize");
  std::vector<double> pmf(sizes[0] * sizes[1] * sizes[2], 0.0);
  const auto& base = source.alphabet_sizes();
  for (std::size_t xi = 0; xi < sizes[0]; ++xi) {
    for (std::size_t yi = 0; yi < sizes[1]; ++yi) {
      for (std::size_t zi = 0; zi < sizes[2]; ++zi) {
        double p = 1.0;
        std::size_t xr = xi, yr = yi, zr = zi;
        // Low digit is the last symbol.
        for (std::size_t k = 0; k < n && p != 0.0; ++k) {
          p *= source.p(static_cast<Symbol>(xr % base[0]),
                        static_cast<Symbol>(yr % base[1]),
                        static_cast<Symbol>(zr % base[2]));
          xr /= base[0];
          yr /= base[1];
          zr /= base[2];
        }
        pmf[(xi * sizes[1] + yi) * sizes[2] + zi] = p;
      }
    }
  }
  return JointSource(sizes, std::move(pmf),
                     source.label() + "^" + std::to_string(n));
}

SampleTriple sample_n(const JointSource& source, std::size_t n,
                      std::uint64_t seed) {
  require(n >= 1, ErrorCode::kInvalidArgument, "n must be positive");
  const auto pmf = source.pmf();
  std::vector<double> cdf(pmf.size());
  std::partial_sum(pmf.begin(), pmf.end(), cdf.begin());
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    if (pmf[i] > 0.0) last_positive = i;
  }
  const auto& s = source.alphabet_sizes();
  Rng rng(seed);
  SampleTriple out;
  out.x.reserve(n);
  out.y.reserve(n);
  out.z.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = uniform01(rng);
    std::size_t cell = static_cast<std::size_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    cell = std::min(cell, last_positive);
    out.z.push_back(static_cast<Symbol>(cell % s[2]));
    out.y.push_back(static_cast<Symbol>((cell / s[2]) % s[1]));
    out.x.push_back(static_cast<Symbol>(cell / (s[1] * s[2])));
  }
  return out;
}

Distribution marginal(const JointSource& source, std::span<const Coord> coords) {
  std::vector<int> idx;
  std::size_t size = 1;
  for (Coord c : coords) {
    const int i = coord_index(c);
    require(std::find(idx.begin(), idx.end(), i) == idx.end(),
            ErrorCode::kInvalidCoordinate, "repeated coordinate");
    idx.push_back(i);
    size *= source.alphabet_sizes()[i];
  }
  std::vector<double> probs(size, 0.0);
  for_each_cell(source, [&](const std::array<Symbol, 3>& cell, double p) {
    probs[coords_index(source.alphabet_sizes(), cell, idx)] += p;
  });
  return Distribution(std::move(probs));
}

double min_entropy(const Distribution& dist) {
  const auto probs = dist.probs();
  require(!probs.empty(), ErrorCode::kEmptySupport, "empty distribution");
  const double max = *std::max_element(probs.begin(), probs.end());
  return std::max(0.0, -std::log2(max));
}

double avg_cond_min_entropy(const JointSource& source, Coord target,
                            std::span<const Coord> given) {
  const int t = coord_index(target);
  std::vector<int> g;
  std::size_t given_size = 1;
  for (Coord c : given) {
    const int i = coord_index(c);
    require(i != t, ErrorCode::kInvalidCoordinate,
            "target coordinate also listed as given");
    require(std::find(g.begin(), g.end(), i) == g.end(),
            ErrorCode::kInvalidCoordinate, "repeated coordinate");
    g.push_back(i);
    given_size *= source.alphabet_sizes()[i];
  }
  const std::size_t target_size = source.alphabet_sizes()[t];
  std::vector<double> joint(given_size * target_size, 0.0);
  for_each_cell(source, [&](const std::array<Symbol, 3>& cell, double p) {
    joint[coords_index(source.alphabet_sizes(), cell, g) * target_size +
          cell[t]] += p;
  });
  // sum_g P(g) max_t P(t|g) = sum_g max_t P(t, g)
  double guess = 0.0;
  for (std::size_t i = 0; i < given_size; ++i) {
    const auto row = joint.begin() + static_cast<std::ptrdiff_t>(i * target_size);
    guess += *std::max_element(row, row + static_cast<std::ptrdiff_t>(target_size));
  }
  return std::max(0.0, -std::log2(guess));
}

double iid_cond_min_entropy(const JointSource& source, Coord target,
                            std::span<const Coord> given, std::size_t n) {
  require(n >= 1, ErrorCode::kInvalidArgument, "n must be positive");
  return static_cast<double>(n) * avg_cond_min_entropy(source, target, given);
}

SurprisalTable::SurprisalTable(const JointSource& source)
    : x_size_(source.alphabet_size(Coord::kX)),
      y_size_(source.alphabet_size(Coord::kY)),
      table_(x_size_ * y_size_, kInf),
      row_min_(y_size_, kInf),
      defined_(y_size_, false) {
  std::vector<double> pxy(x_size_ * y_size_, 0.0);
  std::vector<double> py(y_size_, 0.0);
  for_each_cell(source, [&](const std::array<Symbol, 3>& cell, double p) {
    pxy[cell[1] * x_size_ + cell[0]] += p;
    py[cell[1]] += p;
  });
  for (Symbol y = 0; y < y_size_; ++y) {
    defined_[y] = py[y] > 0.0;
    if (!defined_[y]) continue;
    for (Symbol x = 0; x < x_size_; ++x) {
      const double joint = pxy[y * x_size_ + x];
      if (joint > 0.0) {
        const double s = std::max(0.0, -std::log2(joint / py[y]));
        table_[y * x_size_ + x] = s;
        row_min_[y] = std::min(row_min_[y], s);
      }
    }
  }
}

double surprisal(const SurprisalTable& table, std::span<const Symbol> x,
                 std::span<const Symbol> y) {
  require(x.size() == y.size(), ErrorCode::kLengthMismatch,
          "x and y vectors differ in length");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(y[i] < table.y_size() && table.defined(y[i]),
            ErrorCode::kUndefinedConditional,
            "P(y) = 0 for y = " + std::to_string(y[i]));
    require(x[i] < table.x_size(), ErrorCode::kInvalidArgument,
            "x symbol outside alphabet");
    sum += table.at(x[i], y[i]);
  }
  return sum;
}

double surprisal(const JointSource& source, std::span<const Symbol> x,
                 std::span<const Symbol> y) {
  return surprisal(SurprisalTable(source), x, y);
}

double statistical_distance(std::span<const double> p,
                            std::span<const double> q) {
  require(p.size() == q.size(), ErrorCode::kSupportMismatch,
          "supports differ: " + std::to_string(p.size()) + " vs " +
              std::to_string(q.size()));
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return 0.5 * sum;
}

double statistical_distance(const Distribution& p, const Distribution& q) {
  return statistical_distance(p.probs(), q.probs());
}

}  // namespace ikem
