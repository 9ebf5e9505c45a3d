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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "ikem/error.h"
#include "test_support.h"

namespace ikem {
namespace {

using testing::random_source;
using testing::shared_uniform;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const IkemError& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an IkemError";
  return ErrorCode::kInvalidArgument;
}

// Independent channel product: P(x,y,z) = sum_b 1/2 f(x|b) f(y|b) f(z|b).
double channel_cell(int x, int y, int z, double pa, double pb, double pe) {
  double s = 0.0;
  for (int b = 0; b < 2; ++b) {
    s += 0.5 * (x == b ? 1 - pa : pa) * (y == b ? 1 - pb : pb) *
         (z == b ? 1 - pe : pe);
  }
  return s;
}

// -log2 sum_g max_t P(t, g) straight from the dense table.
double cond_min_entropy_oracle(const JointSource& s, int target, int given) {
  const auto& a = s.alphabet_sizes();
  std::vector<double> best(a[given], 0.0);
  std::vector<double> joint(a[target] * a[given], 0.0);
  for (Symbol x = 0; x < a[0]; ++x)
    for (Symbol y = 0; y < a[1]; ++y)
      for (Symbol z = 0; z < a[2]; ++z) {
        const Symbol c[3] = {x, y, z};
        joint[c[target] * a[given] + c[given]] += s.p(x, y, z);
      }
  double sum = 0.0;
  for (std::size_t g = 0; g < a[given]; ++g) {
    double m = 0.0;
    for (std::size_t t = 0; t < a[target]; ++t) m = std::max(m, joint[t * a[given] + g]);
    sum += m;
  }
  return -std::log2(sum);
}

TEST(MakeTableSource, PerfectlyCorrelatedPair) {
  const JointSource s = make_table_source({2, 2, 1}, {0.5, 0, 0, 0.5});
  EXPECT_EQ(s.p(0, 0, 0), 0.5);
  EXPECT_EQ(s.p(1, 1, 0), 0.5);
  EXPECT_EQ(s.p(0, 1, 0), 0.0);
}

TEST(MakeTableSource, RejectsBadTables) {
  EXPECT_EQ(code_of([] { make_table_source({2, 1, 1}, {0.5, 0.4}); }),
            ErrorCode::kNotNormalized);
  EXPECT_EQ(code_of([] { make_table_source({2, 1, 1}, {1.5, -0.5}); }),
            ErrorCode::kNegativeProbability);
  EXPECT_EQ(code_of([] { make_table_source({2, 2, 1}, {0.5, 0.5}); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of([] { make_table_source({0, 2, 1}, {}); }),
            ErrorCode::kDimensionMismatch);
}

TEST(MakeTableSource, MatchesSatelliteByHand) {
  std::vector<double> pmf;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) pmf.push_back(channel_cell(x, y, z, 0.1, 0.1, 0.3));
  const JointSource table = make_table_source({2, 2, 2}, pmf);
  const JointSource sat = satellite_source(0.1, 0.1, 0.3);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_NEAR(table.pmf()[i], sat.pmf()[i], 1e-15) << i;
  }
}

TEST(SatelliteSource, NoiselessChannels) {
  const JointSource s = satellite_source(0, 0, 0);
  EXPECT_EQ(s.p(0, 0, 0), 0.5);
  EXPECT_EQ(s.p(1, 1, 1), 0.5);
}

TEST(SatelliteSource, AgreementProbability) {
  const JointSource s = satellite_source(0.1, 0.1, 0.3);
  const Coord xy[] = {Coord::kX, Coord::kY};
  const Distribution m = marginal(s, xy);
  EXPECT_NEAR(m[0] + m[3], 0.82, 1e-12);
}

TEST(SatelliteSource, FullyNoisyAliceIsIndependent) {
  const JointSource s = satellite_source(0.5, 0.2, 0.3);
  const Coord x[] = {Coord::kX};
  const Coord yz[] = {Coord::kY, Coord::kZ};
  const Distribution px = marginal(s, x);
  const Distribution pyz = marginal(s, yz);
  EXPECT_NEAR(px[0], 0.5, 1e-15);
  for (Symbol xi = 0; xi < 2; ++xi)
    for (Symbol y = 0; y < 2; ++y)
      for (Symbol z = 0; z < 2; ++z)
        EXPECT_NEAR(s.p(xi, y, z), px[xi] * pyz[y * 2 + z], 1e-15);
}

TEST(SatelliteSource, RejectsOutOfRange) {
  EXPECT_EQ(code_of([] { satellite_source(0.6, 0, 0); }),
            ErrorCode::kProbabilityOutOfRange);
  EXPECT_EQ(code_of([] { satellite_source(0, -0.1, 0); }),
            ErrorCode::kProbabilityOutOfRange);
}

TEST(SampleN, CorrelatedSourceGivesEqualVectors) {
  const SampleTriple t = sample_n(shared_uniform(5), 200, 7);
  EXPECT_EQ(t.x, t.y);
  EXPECT_EQ(t.n(), 200u);
}

TEST(SampleN, DeterministicPerSeed) {
  const JointSource s = satellite_source(0.1, 0.1, 0.3);
  const SampleTriple a = sample_n(s, 100, 42);
  const SampleTriple b = sample_n(s, 100, 42);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.y, b.y);
  EXPECT_EQ(a.z, b.z);
  EXPECT_NE(sample_n(s, 100, 43).x, a.x);
}

TEST(SampleN, AgreementRateConverges) {
  const SampleTriple t = sample_n(satellite_source(0.1, 0.1, 0.3), 100000, 1);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < t.n(); ++i) agree += t.x[i] == t.y[i];
  EXPECT_NEAR(double(agree) / double(t.n()), 0.82, 0.01);
}

TEST(SampleN, CellFrequenciesWithinFiveStandardErrors) {
  Rng rng(3);
  const JointSource s = random_source(rng, {3, 2, 3});
  const std::size_t n = 100000;
  const SampleTriple t = sample_n(s, n, 11);
  std::vector<double> counts(s.pmf().size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) counts[s.index(t.x[i], t.y[i], t.z[i])] += 1;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    const double p = s.pmf()[c];
    const double se = std::sqrt(p * (1 - p) / double(n));
    if (p == 0.0) {
      EXPECT_EQ(counts[c], 0.0);
    } else {
      EXPECT_LE(std::fabs(counts[c] / double(n) - p), 5 * se) << c;
    }
  }
}

TEST(SampleN, RejectsZeroLength) {
  EXPECT_EQ(code_of([] { sample_n(shared_uniform(2), 0, 1); }),
            ErrorCode::kInvalidArgument);
}

TEST(MinEntropy, Examples) {
  EXPECT_DOUBLE_EQ(min_entropy(Distribution::uniform(4)), 2.0);
  EXPECT_DOUBLE_EQ(min_entropy(Distribution({0.0, 1.0, 0.0})), 0.0);
  EXPECT_NEAR(min_entropy(Distribution({0.82, 0.18})), 0.2863, 1e-4);
  EXPECT_EQ(code_of([] { Distribution(std::vector<double>{}); }),
            ErrorCode::kEmptySupport);
}

TEST(AvgCondMinEntropy, Examples) {
  const Coord y[] = {Coord::kY};
  const Coord x[] = {Coord::kX};
  // Independent X and Y.
  const JointSource ind = make_table_source({2, 2, 1}, {0.3 * 0.6, 0.3 * 0.4,
                                                       0.7 * 0.6, 0.7 * 0.4});
  EXPECT_NEAR(avg_cond_min_entropy(ind, Coord::kX, y),
              min_entropy(marginal(ind, x)), 1e-12);
  EXPECT_EQ(avg_cond_min_entropy(shared_uniform(4), Coord::kX, y), 0.0);
  EXPECT_NEAR(avg_cond_min_entropy(satellite_source(0.1, 0.1, 0.3), Coord::kX, y),
              -std::log2(0.82), 1e-12);
}

TEST(AvgCondMinEntropy, RejectsBadCoordinates) {
  const JointSource s = shared_uniform(2);
  const Coord xx[] = {Coord::kX};
  const Coord yy[] = {Coord::kY, Coord::kY};
  const Coord bad[] = {static_cast<Coord>(7)};
  EXPECT_EQ(code_of([&] { avg_cond_min_entropy(s, Coord::kX, xx); }),
            ErrorCode::kInvalidCoordinate);
  EXPECT_EQ(code_of([&] { avg_cond_min_entropy(s, Coord::kX, yy); }),
            ErrorCode::kInvalidCoordinate);
  EXPECT_EQ(code_of([&] { avg_cond_min_entropy(s, Coord::kX, bad); }),
            ErrorCode::kInvalidCoordinate);
}

TEST(AvgCondMinEntropy, MatchesDirectOracle) {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const JointSource s = random_source(
        rng, {testing::draw(rng, 1, 4), testing::draw(rng, 1, 4), testing::draw(rng, 1, 4)});
    const Coord y[] = {Coord::kY};
    const Coord z[] = {Coord::kZ};
    EXPECT_NEAR(avg_cond_min_entropy(s, Coord::kX, y), cond_min_entropy_oracle(s, 0, 1), 1e-12);
    EXPECT_NEAR(avg_cond_min_entropy(s, Coord::kX, z), cond_min_entropy_oracle(s, 0, 2), 1e-12);
  }
}

TEST(IidCondMinEntropy, Examples) {
  const JointSource s = satellite_source(0.1, 0.1, 0.3);
  const Coord y[] = {Coord::kY};
  EXPECT_DOUBLE_EQ(iid_cond_min_entropy(s, Coord::kX, y, 1),
                   avg_cond_min_entropy(s, Coord::kX, y));
  EXPECT_NEAR(iid_cond_min_entropy(s, Coord::kX, y, 3), 0.8589, 1e-4);
  EXPECT_NEAR(avg_cond_min_entropy(iid_extension(s, 3), Coord::kX, y), 0.8589, 1e-4);
  EXPECT_EQ(iid_cond_min_entropy(shared_uniform(3), Coord::kX, y, 5), 0.0);
}

TEST(IidCondMinEntropy, AdditiveOnExplicitProducts) {
  Rng rng(9);
  const Coord y[] = {Coord::kY};
  const Coord z[] = {Coord::kZ};
  const Coord yz[] = {Coord::kY, Coord::kZ};
  for (int i = 0; i < 30; ++i) {
    const JointSource s = random_source(
        rng, {testing::draw(rng, 1, 3), testing::draw(rng, 1, 3), testing::draw(rng, 1, 2)});
    for (std::size_t n = 1; n <= 3; ++n) {
      const JointSource p = iid_extension(s, n);
      for (auto given : {std::span<const Coord>(y), std::span<const Coord>(z),
                         std::span<const Coord>(yz)}) {
        EXPECT_NEAR(iid_cond_min_entropy(s, Coord::kX, given, n),
                    avg_cond_min_entropy(p, Coord::kX, given), 1e-9);
      }
    }
  }
}

TEST(ConditioningProperties, NeverExceedsMarginal) {
  Rng rng(21);
  const Coord x[] = {Coord::kX};
  const Coord y[] = {Coord::kY};
  const Coord yz[] = {Coord::kY, Coord::kZ};
  for (int i = 0; i < 100; ++i) {
    const JointSource s = random_source(rng, {3, 3, 3});
    const double hx = min_entropy(marginal(s, x));
    EXPECT_LE(avg_cond_min_entropy(s, Coord::kX, y), hx + 1e-12);
    EXPECT_LE(avg_cond_min_entropy(s, Coord::kX, yz), hx + 1e-12);
  }
}

// Extra side information B = Z with at most 2^b values costs at most b bits.
TEST(ConditioningProperties, ChainRuleForLeakage) {
  Rng rng(22);
  const Coord y[] = {Coord::kY};
  const Coord yz[] = {Coord::kY, Coord::kZ};
  for (int i = 0; i < 120; ++i) {
    const JointSource s = random_source(
        rng, {testing::draw(rng, 1, 3), testing::draw(rng, 1, 3), testing::draw(rng, 1, 3)});
    const double b = std::log2(double(s.alphabet_size(Coord::kZ)));
    EXPECT_GE(avg_cond_min_entropy(s, Coord::kX, yz),
              avg_cond_min_entropy(s, Coord::kX, y) - b - 1e-12);
  }
}

// Pr_b[H(X | B = b) >= H~(X | B) - log(1/delta)] >= 1 - delta.
TEST(ConditioningProperties, AverageToWorstCase) {
  Rng rng(23);
  const Coord z[] = {Coord::kZ};
  for (int i = 0; i < 100; ++i) {
    const JointSource s = random_source(rng, {3, 2, 3});
    const double avg = avg_cond_min_entropy(s, Coord::kX, z);
    for (double delta : {0.5, 0.25}) {
      double good = 0.0;
      for (Symbol b = 0; b < 3; ++b) {
        std::vector<double> px(3, 0.0);
        double pb = 0.0;
        for (Symbol x = 0; x < 3; ++x)
          for (Symbol y = 0; y < 2; ++y) {
            px[x] += s.p(x, y, b);
            pb += s.p(x, y, b);
          }
        if (pb == 0.0) continue;
        const double h = -std::log2(*std::max_element(px.begin(), px.end()) / pb);
        if (h >= avg - std::log2(1.0 / delta) - 1e-12) good += pb;
      }
      EXPECT_GE(good, 1.0 - delta - 1e-12);
    }
  }
}

TEST(Surprisal, Examples) {
  const JointSource det = shared_uniform(3);
  const std::vector<Symbol> v{0, 2, 1};
  EXPECT_EQ(surprisal(det, v, v), 0.0);
  const JointSource half = make_table_source({2, 1, 1}, {0.5, 0.5});
  const std::vector<Symbol> x1{1}, y1{0};
  EXPECT_DOUBLE_EQ(surprisal(half, x1, y1), 1.0);
  const std::vector<Symbol> zz{0, 0};
  EXPECT_NEAR(surprisal(satellite_source(0.1, 0.1, 0.3), zz, zz), 0.5726, 1e-4);
}

TEST(Surprisal, ImpossibleAndUndefined) {
  const JointSource det = make_table_source({2, 3, 1}, {0.5, 0, 0, 0, 0.5, 0});
  const std::vector<Symbol> x{1}, y{0}, y2{2};
  EXPECT_EQ(surprisal(det, x, y), std::numeric_limits<double>::infinity());
  EXPECT_EQ(code_of([&] { surprisal(det, x, y2); }), ErrorCode::kUndefinedConditional);
  const std::vector<Symbol> two{0, 0};
  EXPECT_EQ(code_of([&] { surprisal(det, two, y); }), ErrorCode::kLengthMismatch);
}

TEST(StatisticalDistance, Examples) {
  const Distribution p({0.2, 0.8});
  EXPECT_EQ(statistical_distance(p, p), 0.0);
  EXPECT_EQ(statistical_distance(Distribution({1.0, 0.0}), Distribution({0.0, 1.0})), 1.0);
  EXPECT_DOUBLE_EQ(statistical_distance(Distribution({0.5, 0.5}), Distribution({0.25, 0.75})),
                   0.25);
  EXPECT_EQ(code_of([] {
              statistical_distance(Distribution::uniform(2), Distribution::uniform(3));
            }),
            ErrorCode::kSupportMismatch);
}

TEST(StatisticalDistance, IsAMetric) {
  Rng rng(31);
  auto random_dist = [&] {
    std::vector<double> v(6);
    double s = 0;
    for (auto& x : v) s += (x = uniform01(rng));
    for (auto& x : v) x /= s;
    double t = 0;
    for (double x : v) t += x;
    v[0] += 1.0 - t;
    return Distribution(v);
  };
  for (int i = 0; i < 200; ++i) {
    const Distribution a = random_dist(), b = random_dist(), c = random_dist();
    EXPECT_EQ(statistical_distance(a, b), statistical_distance(b, a));
    EXPECT_LE(statistical_distance(a, c),
              statistical_distance(a, b) + statistical_distance(b, c) + 1e-12);
    EXPECT_GE(statistical_distance(a, b), 0.0);
    EXPECT_LE(statistical_distance(a, b), 1.0);
  }
}

}  // namespace
}  // namespace ikem
