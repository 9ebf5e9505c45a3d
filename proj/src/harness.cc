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

#include "ikem/harness.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <string>

#include "ikem/error.h"
#include "ikem/gf2x.h"

namespace ikem {

namespace {

// ---------------------------------------------------------------------------
// n-fold support of the source

struct XzCell {
  std::uint32_t xi;  // index into MicroSupport::xs
  std::uint32_t z;   // z vector in mixed radix, first symbol most significant
  double p;
};

struct XyzCell {
  std::uint32_t xi;
  std::uint32_t y;
  std::uint32_t z;
  double p;
};

struct Group {
  std::size_t begin;
  std::size_t end;
};

template <class Cell>
std::vector<Group> groups_by_z(const std::vector<Cell>& cells) {
  std::vector<Group> out;
  for (std::size_t i = 0; i < cells.size();) {
    std::size_t j = i;
    while (j < cells.size() && cells[j].z == cells[i].z) ++j;
    out.push_back({i, j});
    i = j;
  }
  return out;
}

std::uint64_t checked_pow(std::size_t base, std::size_t exp) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    require(v <= (std::uint64_t{1} << 40) / std::max<std::size_t>(base, 1),
            ErrorCode::kRegimeTooLarge, "alphabet power too large to enumerate");
    v *= base;
  }
  return v;
}

struct SingleCell {
  Symbol x, y, z;
  double p;
};

// Nonzero cells of P_XYZ, or of P_XZ when `drop_y`.
std::vector<SingleCell> letter_cells(const JointSource& source, bool drop_y) {
  const auto& s = source.alphabet_sizes();
  std::vector<SingleCell> out;
  for (Symbol x = 0; x < s[0]; ++x) {
    for (Symbol z = 0; z < s[2]; ++z) {
      if (drop_y) {
        double p = 0.0;
        for (Symbol y = 0; y < s[1]; ++y) p += source.p(x, y, z);
        if (p > 0.0) out.push_back({x, 0, z, p});
      } else {
        for (Symbol y = 0; y < s[1]; ++y) {
          const double p = source.p(x, y, z);
          if (p > 0.0) out.push_back({x, y, z, p});
        }
      }
    }
  }
  return out;
}

// Support of the n-fold product, with x encoded as a sample word.
struct MicroSupport {
  std::vector<std::uint64_t> xs;  // distinct encoded x words
  std::vector<XyzCell> cells;     // sorted by (z, x, y); y = 0 when dropped
  std::vector<Group> groups;
  std::uint64_t z_values = 0;
  std::uint64_t y_values = 0;
};

MicroSupport build_support(const JointSource& source, std::size_t n,
                           bool drop_y) {
  const auto letters = letter_cells(source, drop_y);
  const auto& s = source.alphabet_sizes();
  const std::size_t b = bits_per_symbol(s[0]);
  require(n * b <= 64, ErrorCode::kRegimeTooLarge, "sample wider than 64 bits");
  MicroSupport out;
  out.z_values = checked_pow(s[2], n);
  out.y_values = drop_y ? 1 : checked_pow(s[1], n);

  struct Partial {
    std::uint64_t x, y, z;
    double p;
  };
  std::vector<Partial> cur{{0, 0, 0, 1.0}};
  for (std::size_t i = 0; i < n; ++i) {
    require(cur.size() * letters.size() <= kExactBudget,
            ErrorCode::kRegimeTooLarge, "support too large to enumerate");
    std::vector<Partial> next;
    next.reserve(cur.size() * letters.size());
    for (const auto& c : cur) {
      for (const auto& l : letters) {
        next.push_back({(c.x << b) | l.x, drop_y ? 0 : c.y * s[1] + l.y,
                        c.z * s[2] + l.z, c.p * l.p});
      }
    }
    cur = std::move(next);
  }
  std::sort(cur.begin(), cur.end(), [](const Partial& a, const Partial& b2) {
    if (a.z != b2.z) return a.z < b2.z;
    if (a.x != b2.x) return a.x < b2.x;
    return a.y < b2.y;
  });
  for (const auto& c : cur) out.xs.push_back(c.x);
  std::sort(out.xs.begin(), out.xs.end());
  out.xs.erase(std::unique(out.xs.begin(), out.xs.end()), out.xs.end());
  out.cells.reserve(cur.size());
  for (const auto& c : cur) {
    const auto xi = std::lower_bound(out.xs.begin(), out.xs.end(), c.x) -
                    out.xs.begin();
    out.cells.push_back({static_cast<std::uint32_t>(xi),
                         static_cast<std::uint32_t>(c.y),
                         static_cast<std::uint32_t>(c.z), c.p});
  }
  out.groups = groups_by_z(out.cells);
  return out;
}

// ---------------------------------------------------------------------------
// Multiplier enumeration

struct Level {
  const BinaryField* field;
  std::size_t out_bits;
  std::size_t mult_bits;
};

struct Regime {
  std::vector<Level> levels;
  std::size_t tuple_bits = 0;
  std::uint64_t tuples = 0;
};

// Levels alternate tag family, key family, once per (challenge, oracle) pair.
Regime make_regime(const IkemParams& params, std::size_t pairs,
                   std::size_t cells) {
  const std::size_t wt = params.tag_family().field_bits();
  const std::size_t wk = params.key_family().field_bits();
  require(wt <= kExactMaxFieldBits && wk <= kExactMaxFieldBits,
          ErrorCode::kRegimeTooLarge,
          "exact enumeration needs field widths <= " +
              std::to_string(kExactMaxFieldBits) + " (have " +
              std::to_string(std::max(wt, wk)) + "); use micro params");
  Regime r;
  for (std::size_t j = 0; j < pairs; ++j) {
    r.levels.push_back({&BinaryField::of_degree(wt), params.t, wt});
    r.levels.push_back({&BinaryField::of_degree(wk), params.ell, wk});
    r.tuple_bits += wt + wk;
  }
  require(r.tuple_bits < 40 &&
              (std::uint64_t{1} << r.tuple_bits) * std::max<std::size_t>(cells, 1) <=
                  kExactBudget,
          ErrorCode::kRegimeTooLarge,
          "exact enumeration would visit 2^" + std::to_string(r.tuple_bits) +
              " multiplier tuples x " + std::to_string(cells) +
              " cells; budget is 2^24. Use micro params");
  r.tuples = std::uint64_t{1} << r.tuple_bits;
  return r;
}

// Calls leaf(tuple_index, tables) for every multiplier tuple, where
// tables[level][xi] = msb(a_level * xs[xi]).
void for_each_tuple(
    const Regime& regime, const std::vector<std::uint64_t>& xs,
    const std::function<void(std::uint64_t,
                             const std::vector<std::vector<std::uint64_t>>&)>&
        leaf) {
  std::vector<std::vector<std::uint64_t>> tables(
      regime.levels.size(), std::vector<std::uint64_t>(xs.size()));
  std::function<void(std::size_t, std::uint64_t)> rec =
      [&](std::size_t level, std::uint64_t index) {
        if (level == regime.levels.size()) {
          leaf(index, tables);
          return;
        }
        const Level& lv = regime.levels[level];
        const std::uint64_t count = std::uint64_t{1} << lv.mult_bits;
        for (std::uint64_t a = 0; a < count; ++a) {
          auto& tab = tables[level];
          for (std::size_t u = 0; u < xs.size(); ++u) {
            tab[u] = hash_word(*lv.field, lv.out_bits, a, 0, xs[u]);
          }
          rec(level + 1, (index << lv.mult_bits) | a);
        }
      };
  rec(0, 0);
}

struct Entry {
  std::uint64_t key;
  double p;
};

void sort_merge(std::vector<Entry>& buf) {
  std::sort(buf.begin(), buf.end(),
            [](const Entry& a, const Entry& b) { return a.key < b.key; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < buf.size(); ++i) {
    if (out > 0 && buf[out - 1].key == buf[i].key) {
      buf[out - 1].p += buf[i].p;
    } else {
      buf[out++] = buf[i];
    }
  }
  buf.resize(out);
}

// Core of the challenge / transcript enumeration. Outcome word layout:
// rest = g_0, then (g_i, k_i) for each oracle pair; outcome = rest << ell | k_0.
ExactSd challenge_core(const JointSource& source, const IkemParams& params,
                       std::size_t q_e, ExactDistributions* dense) {
  params.validate();
  const MicroSupport sup = build_support(source, params.n, /*drop_y=*/true);
  const Regime regime = make_regime(params, q_e + 1, sup.cells.size());
  const std::size_t t = params.t;
  const std::size_t ell = params.ell;
  const std::size_t outcome_bits = (q_e + 1) * (t + ell);
  require(outcome_bits <= 48, ErrorCode::kRegimeTooLarge,
          "transcript outcome too wide");
  const double key_space = std::ldexp(1.0, static_cast<int>(ell));
  const double inv_tuples = 1.0 / static_cast<double>(regime.tuples);

  if (dense != nullptr) {
    const std::uint64_t size =
        regime.tuples * sup.z_values * (std::uint64_t{1} << outcome_bits);
    require(size <= kExactBudget, ErrorCode::kRegimeTooLarge,
            "dense distribution would hold " + std::to_string(size) +
                " points");
    dense->real.assign(size, 0.0);
    dense->ideal.assign(size, 0.0);
    dense->multiplier_tuples = regime.tuples;
    dense->z_values = sup.z_values;
    dense->outcome_bits = outcome_bits;
  }

  double total = 0.0;
  std::vector<Entry> buf;
  for_each_tuple(regime, sup.xs, [&](std::uint64_t tuple, const auto& tab) {
    double leaf = 0.0;
    for (const Group& grp : sup.groups) {
      buf.clear();
      for (std::size_t c = grp.begin; c < grp.end; ++c) {
        const auto& cell = sup.cells[c];
        std::uint64_t rest = tab[0][cell.xi];
        for (std::size_t j = 1; j <= q_e; ++j) {
          rest = (rest << (t + ell)) | (tab[2 * j][cell.xi] << ell) |
                 tab[2 * j + 1][cell.xi];
        }
        buf.push_back({(rest << ell) | tab[1][cell.xi], cell.p});
      }
      sort_merge(buf);
      const std::uint64_t base =
          (tuple * sup.z_values + sup.cells[grp.begin].z) << outcome_bits;
      for (std::size_t i = 0; i < buf.size();) {
        const std::uint64_t rest = buf[i].key >> ell;
        std::size_t j = i;
        double mass = 0.0;
        while (j < buf.size() && (buf[j].key >> ell) == rest) mass += buf[j++].p;
        const double ideal = mass / key_space;
        double part = (key_space - static_cast<double>(j - i)) * ideal;
        for (std::size_t e = i; e < j; ++e) part += std::fabs(buf[e].p - ideal);
        leaf += part;
        if (dense != nullptr) {
          for (std::size_t e = i; e < j; ++e) {
            dense->real[base + buf[e].key] += buf[e].p * inv_tuples;
          }
          const std::uint64_t row = base + (rest << ell);
          for (std::uint64_t k = 0; k < (std::uint64_t{1} << ell); ++k) {
            dense->ideal[row + k] += ideal * inv_tuples;
          }
        }
        i = j;
      }
    }
    total += 0.5 * leaf;
  });
  return {total * inv_tuples, regime.tuples * sup.cells.size()};
}

// Uniform key for the b = 1 branch.
BitString random_bitstring(std::size_t bits, Rng& rng) {
  BitString out(bits);
  for (std::size_t i = 0; i < bits; i += 64) {
    const std::uint64_t v = rng();
    const std::size_t width = std::min<std::size_t>(64, bits - i);
    out.write_field(i, width, width == 64 ? v : v & ((std::uint64_t{1} << width) - 1));
  }
  return out;
}

}  // namespace

double sigma_mc(std::uint64_t trials) {
  require(trials >= 1, ErrorCode::kInvalidArgument, "need at least one trial");
  return 0.5 / std::sqrt(static_cast<double>(trials));
}

double wilson_half_width(std::uint64_t failures, std::uint64_t trials) {
  require(trials >= 1, ErrorCode::kInvalidArgument, "need at least one trial");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(failures) / n;
  const double z = 1.0;
  return z / (1.0 + z * z / n) *
         std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n));
}

ExactDistributions exact_challenge_distribution(const JointSource& source,
                                                const IkemParams& params) {
  ExactDistributions out;
  challenge_core(source, params, 0, &out);
  return out;
}

ExactDistributions cea_transcript_distribution(const JointSource& source,
                                               const IkemParams& params,
                                               std::size_t q_e) {
  ExactDistributions out;
  challenge_core(source, params, q_e, &out);
  return out;
}

ExactSd exact_challenge_sd(const JointSource& source, const IkemParams& params,
                           std::size_t q_e) {
  return challenge_core(source, params, q_e, nullptr);
}

ExactSd exact_composability_sd(const JointSource& source,
                               const IkemParams& params) {
  params.validate();
  const MicroSupport sup = build_support(source, params.n, /*drop_y=*/false);
  const Regime regime = make_regime(params, 1, sup.cells.size());
  const std::size_t t = params.t;
  const std::size_t ell = params.ell;
  const std::size_t xs = source.alphabet_size(Coord::kX);
  const std::size_t ys = source.alphabet_size(Coord::kY);
  const std::uint64_t bottom = std::uint64_t{1} << ell;
  const double key_space = std::ldexp(1.0, static_cast<int>(ell));

  // Typical candidates for every y that occurs, as indices into cand_words.
  const SurprisalTable table(source);
  std::vector<std::uint64_t> ys_present;
  for (const auto& c : sup.cells) ys_present.push_back(c.y);
  std::sort(ys_present.begin(), ys_present.end());
  ys_present.erase(std::unique(ys_present.begin(), ys_present.end()),
                   ys_present.end());
  std::vector<std::vector<std::uint64_t>> candidates(ys_present.size());
  for (std::size_t yi = 0; yi < ys_present.size(); ++yi) {
    std::vector<Symbol> y(params.n);
    std::uint64_t v = ys_present[yi];
    for (std::size_t i = params.n; i-- > 0;) {
      y[i] = static_cast<Symbol>(v % ys);
      v /= ys;
    }
    TypicalSetEnumerator it(table, y, params.nu);
    std::vector<Symbol> x;
    while (it.next(x)) candidates[yi].push_back(encode_sample_word(x, xs));
  }
  std::vector<std::uint32_t> cell_y(sup.cells.size());
  for (std::size_t c = 0; c < sup.cells.size(); ++c) {
    cell_y[c] = static_cast<std::uint32_t>(
        std::lower_bound(ys_present.begin(), ys_present.end(),
                         sup.cells[c].y) -
        ys_present.begin());
  }

  const BinaryField& tag_field = *regime.levels[0].field;
  const BinaryField& key_field = *regime.levels[1].field;
  constexpr std::uint64_t kNone = ~std::uint64_t{0};
  // match[yi][g]: the unique candidate word with tag g, or kNone.
  std::vector<std::vector<std::uint64_t>> match(
      ys_present.size(), std::vector<std::uint64_t>(std::size_t{1} << t));
  std::uint64_t current_a = kNone;

  double total = 0.0;
  std::vector<Entry> buf;
  for_each_tuple(regime, sup.xs, [&](std::uint64_t tuple, const auto& tab) {
    const std::uint64_t a = tuple >> regime.levels[1].mult_bits;
    const std::uint64_t a_key = tuple & ((std::uint64_t{1} << regime.levels[1].mult_bits) - 1);
    if (a != current_a) {
      current_a = a;
      for (std::size_t yi = 0; yi < candidates.size(); ++yi) {
        auto& row = match[yi];
        std::vector<int> hits(row.size(), 0);
        for (std::uint64_t w : candidates[yi]) {
          const std::uint64_t g = hash_word(tag_field, t, a, 0, w);
          if (hits[g]++ == 0) row[g] = w;
        }
        for (std::size_t g = 0; g < row.size(); ++g) {
          if (hits[g] != 1) row[g] = kNone;
        }
      }
    }
    double leaf = 0.0;
    for (const Group& grp : sup.groups) {
      buf.clear();
      for (std::size_t c = grp.begin; c < grp.end; ++c) {
        const auto& cell = sup.cells[c];
        const std::uint64_t g = tab[0][cell.xi];
        const std::uint64_t ka = tab[1][cell.xi];
        const std::uint64_t xhat = match[cell_y[c]][g];
        const std::uint64_t kb =
            xhat == kNone ? bottom : hash_word(key_field, ell, a_key, 0, xhat);
        buf.push_back({(((g << ell) | ka) << (ell + 1)) | kb, cell.p});
      }
      sort_merge(buf);
      for (std::size_t i = 0; i < buf.size();) {
        const std::uint64_t g = buf[i].key >> (2 * ell + 1);
        std::size_t j = i;
        double mass = 0.0;
        while (j < buf.size() && (buf[j].key >> (2 * ell + 1)) == g) {
          mass += buf[j++].p;
        }
        const double ideal = mass / key_space;
        std::size_t diagonal = 0;
        double part = 0.0;
        for (std::size_t e = i; e < j; ++e) {
          const std::uint64_t kb = buf[e].key & ((bottom << 1) - 1);
          const std::uint64_t ka = (buf[e].key >> (ell + 1)) & (bottom - 1);
          if (ka == kb) {
            ++diagonal;
            part += std::fabs(buf[e].p - ideal);
          } else {
            part += buf[e].p;
          }
        }
        part += (key_space - static_cast<double>(diagonal)) * ideal;
        leaf += part;
        i = j;
      }
    }
    total += 0.5 * leaf;
  });
  return {total / static_cast<double>(regime.tuples),
          regime.tuples * sup.cells.size()};
}

double leakage_min_entropy(const JointSource& source,
                           const IkemParams& params) {
  params.validate();
  const MicroSupport sup = build_support(source, params.n, /*drop_y=*/true);
  const std::size_t wt = params.tag_family().field_bits();
  require(wt <= kExactMaxFieldBits &&
              (std::uint64_t{1} << wt) * sup.cells.size() <= kExactBudget,
          ErrorCode::kRegimeTooLarge, "leakage entropy needs micro params");
  const BinaryField& field = BinaryField::of_degree(wt);
  const std::uint64_t count = std::uint64_t{1} << wt;
  std::vector<double> best(std::size_t{1} << params.t);
  double total = 0.0;
  for (std::uint64_t a = 0; a < count; ++a) {
    for (const Group& grp : sup.groups) {
      std::fill(best.begin(), best.end(), 0.0);
      // Cells within a z group are sorted by x, one cell per x.
      for (std::size_t c = grp.begin; c < grp.end; ++c) {
        const auto& cell = sup.cells[c];
        const std::uint64_t g = hash_word(field, params.t, a, 0, sup.xs[cell.xi]);
        best[g] = std::max(best[g], cell.p);
      }
      for (double b : best) total += b;
    }
  }
  return -std::log2(total / static_cast<double>(count));
}

double lhl_bound(double bits, double h) {
  return 0.5 * std::sqrt(std::exp2(bits - h));
}

GameReport ot_bound_check(const JointSource& source, const IkemParams& params) {
  const ExactSd r = exact_challenge_sd(source, params, 0);
  GameReport out;
  out.game = "ot-bound";
  out.exact = true;
  out.trials = r.points;
  out.advantage = r.sd;
  out.bound = params.sigma;
  out.pass = r.sd <= params.sigma;
  return out;
}

GameReport cea_bound_check(const JointSource& source, const IkemParams& params,
                           std::size_t q_e) {
  const ExactSd r = exact_challenge_sd(source, params, q_e);
  GameReport out;
  out.game = "cea-bound";
  out.exact = true;
  out.trials = r.points;
  out.advantage = r.sd;
  out.bound = q_e == 0 ? params.sigma : 2.0 * params.sigma;
  out.pass = r.sd <= out.bound;
  return out;
}

GameReport composability_check(const JointSource& source,
                               const IkemParams& params) {
  const ExactSd r = exact_composability_sd(source, params);
  GameReport out;
  out.game = "composability";
  out.exact = true;
  out.trials = r.points;
  out.advantage = r.sd;
  out.bound = params.eps + params.sigma;
  out.pass = r.sd <= out.bound;
  return out;
}

// ---------------------------------------------------------------------------
// Oracles

EncapOracle::EncapOracle(const IkemParams& params, std::span<const Symbol> x,
                         std::size_t x_alphabet, std::size_t budget,
                         std::uint64_t seed)
    : params_(&params),
      x_(x.begin(), x.end()),
      x_alphabet_(x_alphabet),
      budget_(budget),
      rng_(seed) {}

EncapResult EncapOracle::query() {
  require(responses_.size() < budget_, ErrorCode::kQueryBudgetExceeded,
          "encapsulation oracle budget of " + std::to_string(budget_) +
              " queries exhausted");
  responses_.push_back(encap(*params_, x_, x_alphabet_, rng_));
  return responses_.back();
}

EncryptOracle::EncryptOracle(const IkemParams& params,
                             const JointSource& source,
                             std::span<const Symbol> x, DemScheme scheme,
                             std::size_t budget, std::uint64_t seed)
    : params_(&params),
      source_(&source),
      x_(x.begin(), x.end()),
      scheme_(scheme),
      budget_(budget),
      rng_(seed) {}

HybridCiphertext EncryptOracle::query(const BitString& message) {
  require(queries_.size() < budget_, ErrorCode::kQueryBudgetExceeded,
          "encryption oracle budget of " + std::to_string(budget_) +
              " queries exhausted");
  queries_.emplace_back(message,
                        he_encrypt(*params_, *source_, x_, message, rng_, scheme_));
  return queries_.back().second;
}

// ---------------------------------------------------------------------------
// Adversaries

namespace {

// All x with P(x, z) > 0, with that probability.
struct Posterior {
  std::vector<std::vector<Symbol>> xs;
  std::vector<BitString> encoded;
  std::vector<double> p;
};

Posterior posterior_support(const JointSource& source, std::span<const Symbol> z) {
  const std::size_t xsize = source.alphabet_size(Coord::kX);
  require(checked_pow(xsize, z.size()) <= (std::uint64_t{1} << 20),
          ErrorCode::kRegimeTooLarge,
          "best-guess adversary needs |X|^n <= 2^20");
  std::vector<double> pxz(xsize * source.alphabet_size(Coord::kZ), 0.0);
  const auto& s = source.alphabet_sizes();
  for (Symbol x = 0; x < s[0]; ++x) {
    for (Symbol y = 0; y < s[1]; ++y) {
      for (Symbol zz = 0; zz < s[2]; ++zz) pxz[x * s[2] + zz] += source.p(x, y, zz);
    }
  }
  Posterior out;
  std::vector<Symbol> x(z.size(), 0);
  std::function<void(std::size_t, double)> rec = [&](std::size_t i, double p) {
    if (i == z.size()) {
      out.xs.push_back(x);
      out.encoded.push_back(encode_sample(x, xsize));
      out.p.push_back(p);
      return;
    }
    for (Symbol v = 0; v < xsize; ++v) {
      const double q = pxz[v * s[2] + z[i]];
      if (q <= 0.0) continue;
      x[i] = v;
      rec(i + 1, p * q);
    }
  };
  rec(0, 1.0);
  return out;
}

int decide(double l0, double l1, Rng& rng) {
  if (l0 > l1) return 0;
  if (l1 > l0) return 1;
  return coin(rng) ? 1 : 0;
}

class RandomGuess final : public IkemAdversary {
 public:
  std::string name() const override { return "random-guess"; }
  std::any choose(const AdversaryContext&, EncapOracle&, Rng&) override {
    return {};
  }
  int guess(const AdversaryContext&, std::any&, const IkemCiphertext&,
            const IkemKey&, EncapOracle&, Rng& rng) override {
    return coin(rng) ? 1 : 0;
  }
};

class Omniscient final : public IkemAdversary {
 public:
  std::string name() const override { return "omniscient"; }
  bool wants_secret() const override { return true; }
  std::any choose(const AdversaryContext&, EncapOracle&, Rng&) override {
    return {};
  }
  int guess(const AdversaryContext& ctx, std::any&, const IkemCiphertext& c,
            const IkemKey& k, EncapOracle&, Rng&) override {
    require(ctx.leaked_x != nullptr, ErrorCode::kInvalidArgument,
            "omniscient adversary needs the debug reveal");
    const BitString x =
        encode_sample(*ctx.leaked_x, ctx.source.alphabet_size(Coord::kX));
    return UhfEvaluator(ctx.params.key_family(), c.s_prime)(x) == k.bits ? 0 : 1;
  }
};

class BestGuess final : public IkemAdversary {
 public:
  explicit BestGuess(std::size_t queries) : queries_(queries) {}
  std::string name() const override { return "best-guess"; }
  std::any choose(const AdversaryContext&, EncapOracle& oracle, Rng&) override {
    for (std::size_t i = 0; i < queries_; ++i) oracle.query();
    return {};
  }
  int guess(const AdversaryContext& ctx, std::any&, const IkemCiphertext& c,
            const IkemKey& k, EncapOracle& oracle, Rng& rng) override {
    const Posterior post = posterior_support(ctx.source, ctx.z);
    const UhfEvaluator tag(ctx.params.tag_family(), c.s);
    const UhfEvaluator key(ctx.params.key_family(), c.s_prime);
    std::vector<std::pair<UhfEvaluator, UhfEvaluator>> seen;
    for (const auto& r : oracle.responses()) {
      seen.emplace_back(UhfEvaluator(ctx.params.tag_family(), r.ciphertext.s),
                        UhfEvaluator(ctx.params.key_family(), r.ciphertext.s_prime));
    }
    double consistent = 0.0;
    double real = 0.0;
    for (std::size_t i = 0; i < post.p.size(); ++i) {
      const BitString& x = post.encoded[i];
      if (!(tag(x) == c.g)) continue;
      bool ok = true;
      for (std::size_t j = 0; ok && j < seen.size(); ++j) {
        const auto& r = oracle.responses()[j];
        ok = seen[j].first(x) == r.ciphertext.g && seen[j].second(x) == r.key.bits;
      }
      if (!ok) continue;
      consistent += post.p[i];
      if (key(x) == k.bits) real += post.p[i];
    }
    const double uniform =
        consistent * std::exp2(-static_cast<double>(ctx.params.ell));
    return decide(real, uniform, rng);
  }

 private:
  std::size_t queries_;
};

class HeRandomGuess final : public HeAdversary {
 public:
  std::string name() const override { return "random-guess"; }
  std::any choose(const AdversaryContext& ctx, EncryptOracle&, Rng&,
                  MessagePair& m) override {
    m.m0 = BitString(ctx.params.ell);
    m.m1 = BitString(ctx.params.ell);
    return {};
  }
  int guess(const AdversaryContext&, std::any&, const HybridCiphertext&,
            EncryptOracle&, Rng& rng) override {
    return coin(rng) ? 1 : 0;
  }
};

class HeBestGuess final : public HeAdversary {
 public:
  explicit HeBestGuess(std::size_t queries) : queries_(queries) {}
  std::string name() const override { return "best-guess"; }
  std::any choose(const AdversaryContext& ctx, EncryptOracle& oracle, Rng&,
                  MessagePair& m) override {
    const std::size_t len = ctx.params.ell;
    m.m0 = BitString(len);
    m.m1 = BitString(len);
    for (std::size_t i = 0; i < len; ++i) m.m1.set_coeff(i, true);
    for (std::size_t i = 0; i < queries_; ++i) oracle.query(m.m0);
    return m;
  }
  int guess(const AdversaryContext& ctx, std::any& state,
            const HybridCiphertext& c, EncryptOracle& oracle,
            Rng& rng) override {
    const auto& m = std::any_cast<MessagePair&>(state);
    const Posterior post = posterior_support(ctx.source, ctx.z);
    const UhfEvaluator tag(ctx.params.tag_family(), c.c1.s);
    const UhfEvaluator key(ctx.params.key_family(), c.c1.s_prime);
    double l0 = 0.0;
    double l1 = 0.0;
    for (std::size_t i = 0; i < post.p.size(); ++i) {
      const BitString& x = post.encoded[i];
      if (!(tag(x) == c.c1.g)) continue;
      bool ok = true;
      for (const auto& [msg, ct] : oracle.queries()) {
        if (!ok) break;
        const UhfEvaluator qt(ctx.params.tag_family(), ct.c1.s);
        const UhfEvaluator qk(ctx.params.key_family(), ct.c1.s_prime);
        ok = qt(x) == ct.c1.g &&
             dem_decrypt(DemKey{qk(x)}, ct.c2) == msg;
      }
      if (!ok) continue;
      const BitString plain = dem_decrypt(DemKey{key(x)}, c.c2);
      if (plain == m.m0) l0 += post.p[i];
      if (plain == m.m1) l1 += post.p[i];
    }
    return decide(l0, l1, rng);
  }

 private:
  std::size_t queries_;
};

}  // namespace

std::unique_ptr<IkemAdversary> make_random_guess_adversary() {
  return std::make_unique<RandomGuess>();
}
std::unique_ptr<IkemAdversary> make_omniscient_adversary() {
  return std::make_unique<Omniscient>();
}
std::unique_ptr<IkemAdversary> make_best_guess_adversary(std::size_t queries) {
  return std::make_unique<BestGuess>(queries);
}
std::unique_ptr<HeAdversary> make_he_random_guess_adversary() {
  return std::make_unique<HeRandomGuess>();
}
std::unique_ptr<HeAdversary> make_he_best_guess_adversary(std::size_t queries) {
  return std::make_unique<HeBestGuess>(queries);
}

// ---------------------------------------------------------------------------
// Games

GameReport run_ikem_game(const JointSource& source, const IkemParams& params,
                         IkemAdversary& adversary, std::size_t q_e,
                         std::uint64_t trials, std::uint64_t seed,
                         std::vector<Transcript>* transcripts) {
  params.validate();
  require(trials >= 1, ErrorCode::kInvalidArgument, "need at least one trial");
  const std::size_t xs = source.alphabet_size(Coord::kX);
  std::uint64_t wins = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, i));
    const SampleTriple st = sample_n(source, params.n, rng());
    EncapOracle oracle(params, st.x, xs, q_e, rng());
    Rng adv_rng(rng());
    const AdversaryContext ctx{source, params, st.z,
                               adversary.wants_secret() ? &st.x : nullptr};
    std::any state = adversary.choose(ctx, oracle, adv_rng);
    EncapResult challenge = encap(params, st.x, xs, rng);
    const int b = coin(rng) ? 1 : 0;
    IkemKey shown = b == 0 ? challenge.key
                           : IkemKey{random_bitstring(params.ell, rng)};
    const int g = adversary.guess(ctx, state, challenge.ciphertext, shown,
                                  oracle, adv_rng);
    if (g == b) ++wins;
    if (transcripts != nullptr) {
      Transcript tr;
      tr.z = st.z;
      for (const auto& r : oracle.responses()) {
        tr.oracle_responses.emplace_back(r.ciphertext, r.key);
      }
      tr.challenge = {challenge.ciphertext, shown};
      tr.hidden_bit = b;
      transcripts->push_back(std::move(tr));
    }
  }
  GameReport out;
  out.game = std::string(q_e == 0 ? "ikem-ot" : "ikem-cea") + "/" + adversary.name();
  out.trials = trials;
  out.seed = seed;
  out.advantage =
      std::fabs(static_cast<double>(wins) / static_cast<double>(trials) - 0.5);
  out.bound = q_e == 0 ? params.sigma : 2.0 * params.sigma;
  out.margin = 3.0 * sigma_mc(trials);
  out.pass = out.advantage <= out.bound + out.margin;
  return out;
}

GameReport run_he_game(const JointSource& source, const IkemParams& params,
                       HeAdversary& adversary, std::size_t q_e,
                       std::uint64_t trials, std::uint64_t seed,
                       DemScheme scheme) {
  params.validate();
  require(trials >= 1, ErrorCode::kInvalidArgument, "need at least one trial");
  std::uint64_t wins = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, i));
    const SampleTriple st = sample_n(source, params.n, rng());
    EncryptOracle oracle(params, source, st.x, scheme, q_e, rng());
    Rng adv_rng(rng());
    const AdversaryContext ctx{source, params, st.z, nullptr};
    MessagePair m;
    std::any state = adversary.choose(ctx, oracle, adv_rng, m);
    require(m.m0.size() == m.m1.size(), ErrorCode::kLengthMismatch,
            "challenge messages must have equal length");
    const int b = coin(rng) ? 1 : 0;
    const HybridCiphertext c =
        he_encrypt(params, source, st.x, b == 0 ? m.m0 : m.m1, rng, scheme);
    if (adversary.guess(ctx, state, c, oracle, adv_rng) == b) ++wins;
  }
  GameReport out;
  out.game = std::string(q_e == 0 ? "he-ot" : "he-cpa") + "/" +
             std::string(scheme_name(scheme)) + "/" + adversary.name();
  out.trials = trials;
  out.seed = seed;
  out.advantage =
      std::fabs(static_cast<double>(wins) / static_cast<double>(trials) - 0.5);
  // The DEM term is zero for the pad; the stream cipher's term is
  // computational and not measurable here, so it is also taken as zero.
  out.bound = q_e == 0 ? params.sigma : 2.0 * params.sigma;
  out.margin = 3.0 * sigma_mc(trials);
  out.pass = out.advantage <= out.bound + out.margin;
  return out;
}

GameReport correctness_mc(const JointSource& source, const IkemParams& params,
                          std::uint64_t trials, std::uint64_t seed) {
  require(trials >= 1000, ErrorCode::kInvalidArgument,
          "correctness estimate needs at least 1000 trials");
  const Decapsulator dec(params, source);
  const std::size_t xs = source.alphabet_size(Coord::kX);
  std::uint64_t failures = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, i));
    const SampleTriple st = sample_n(source, params.n, rng());
    const EncapResult e = encap(params, st.x, xs, rng);
    const auto k = dec(st.y, e.ciphertext);
    if (!k || !(*k == e.key)) ++failures;
  }
  GameReport out;
  out.game = "correctness";
  out.trials = trials;
  out.seed = seed;
  out.advantage = static_cast<double>(failures) / static_cast<double>(trials);
  out.bound = params.eps;
  out.margin = 3.0 * wilson_half_width(failures, trials);
  out.pass = out.advantage <= out.bound + out.margin;
  return out;
}

}  // namespace ikem
