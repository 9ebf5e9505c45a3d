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

// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "ikem/error.h"
#include "ikem/harness.h"
#include "ikem/ikem.h"
#include "ikem/source_model.h"
#include "ikem/uhf.h"

namespace {

using namespace ikem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::size_t draw(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

JointSource random_source(Rng& rng, std::array<std::size_t, 3> sizes) {
  std::vector<double> pmf(sizes[0] * sizes[1] * sizes[2]);
  double sum = 0;
  for (auto& p : pmf) sum += p = uniform01(rng) < 0.3 ? 0.0 : uniform01(rng) + 0.05;
  if (sum == 0) pmf[0] = sum = 1;
  for (auto& p : pmf) p /= sum;
  double total = 0;
  for (double p : pmf) total += p;
  pmf[0] = std::max(0.0, pmf[0] + 1.0 - total);
  return make_table_source(sizes, pmf, "random");
}

// Uniform bit X; Bob sees it through a BSC(a), Eve through a BSC(b).
JointSource binary_channels(double a, double b) {
  std::vector<double> pmf(8);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z)
        pmf[(x * 2 + y) * 2 + z] = 0.5 * (x == y ? 1 - a : a) * (x == z ? 1 - b : b);
  return make_table_source({2, 2, 2}, pmf, "binary-channels");
}

struct Instance {
  JointSource source;
  IkemParams params;
};

// Micro instances whose parameters come from the key-length derivation.
std::vector<Instance> derived_instances(std::size_t want, std::size_t q_e, double sigma_lo,
                                        double sigma_hi, double b_lo, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Instance> out;
  for (int attempt = 0; attempt < 5000 && out.size() < want; ++attempt) {
    const JointSource s = binary_channels(0.01 * uniform01(rng), b_lo + (0.5 - b_lo) * uniform01(rng));
    const std::size_t n = draw(rng, 2, q_e == 0 ? 4 : 3);
    const double sigma = sigma_lo + (sigma_hi - sigma_lo) * uniform01(rng);
    try {
      out.push_back({s, derive_params(s, n, 0.5, sigma, q_e)});
    } catch (const IkemError& e) {
      if (e.code() != ErrorCode::kInfeasibleKeyLength) throw;
    }
  }
  return out;
}

Outcome c1_census() {
  const std::pair<std::size_t, std::size_t> grid[] = {{3, 1}, {4, 2}, {4, 4}, {6, 3}};
  double worst_time = 0, worst_dev = 0;
  for (auto [w, m] : grid) {
    const auto t0 = Clock::now();
    worst_dev = std::max(worst_dev, pairwise_independence_census(UhfSpec{w, m}));
    worst_time = std::max(worst_time, seconds_since(t0));
  }
  return {worst_dev == 0.0 && worst_time < 10.0,
          fmt("max deviation %g, slowest %.2f s", worst_dev, worst_time)};
}

Outcome c2_extractor() {
  Rng rng(2002);
  int violations = 0, count = 0;
  double worst = 0;
  const Coord z[] = {Coord::kZ};
  while (count < 60) {
    const std::size_t kx = draw(rng, 2, 4), kz = draw(rng, 1, 3);
    const JointSource s = random_source(rng, {kx, 1, kz});
    const std::size_t n = draw(rng, 1, 2);
    const std::size_t t = draw(rng, 1, 3), ell = draw(rng, 1, 3);
    const IkemParams p = make_params(s, n, t, ell, 1.0, 0.25, 0.25, 0);
    const double h = iid_cond_min_entropy(s, Coord::kX, z, n);
    const double bound = 0.5 * std::sqrt(std::exp2(double(t + ell) - h));
    const double sd = exact_challenge_sd(s, p).sd;
    worst = std::max(worst, sd / bound);
    violations += sd > bound + 1e-12;
    ++count;
  }
  return {violations == 0, fmt("%.0f instances, %.0f violations, max SD/bound %.3f", count,
                               violations, worst)};
}

Outcome c3_reliability() {
  const auto t0 = Clock::now();
  const JointSource s = satellite_source(0.05, 0.05, 0.3);
  // The full derivation gives no positive key length for this source, so the
  // run uses the derived reliability parameters with a one-bit key.
  const ReliabilityParams r = derive_reliability(s, 8, 0.25);
  const IkemParams p = make_params(s, 8, r.t, 1, r.nu, 0.25, 0.5, 0);
  const GameReport g = correctness_mc(s, p, 10000, 3003);
  const double secs = seconds_since(t0);
  return {g.pass && secs < 60.0,
          fmt("failure rate %.4f vs eps 0.25 (+%.4f), %.1f s", g.advantage, g.margin, secs)};
}

Outcome c4_typical() {
  Rng rng(4004);
  int mismatches = 0, count = 0;
  while (count < 25) {
    const std::size_t kx = draw(rng, 2, 4), ky = draw(rng, 1, 3);
    const JointSource s = random_source(rng, {kx, ky, 1});
    std::size_t n = 1;
    while (std::pow(double(kx), double(n + 1)) <= 4096) ++n;
    const SampleTriple tri = sample_n(s, n, rng());
    for (double nu : {0.0, 0.5 * n, 1.0 * n, 2.5 * n}) {
      std::vector<std::vector<Symbol>> brute;
      std::vector<Symbol> x(n, 0);
      while (true) {
        if (surprisal(s, x, tri.y) <= nu) brute.push_back(x);
        std::size_t i = n;
        while (i > 0 && ++x[i - 1] == kx) x[--i] = 0;
        if (i == 0) break;
      }
      mismatches += enumerate_typical(s, tri.y, nu) != brute;
    }
    ++count;
  }
  return {mismatches == 0, fmt("%.0f sources, %.0f mismatching sets", count, mismatches)};
}

Outcome c5_ot() {
  const auto inst = derived_instances(24, 0, 0.2, 0.5, 0.4, 5005);
  int failures = 0;
  double worst = 0;
  for (const auto& [s, p] : inst) {
    const GameReport r = ot_bound_check(s, p);
    failures += !r.pass;
    worst = std::max(worst, r.advantage / r.bound);
  }
  const JointSource leaky = make_table_source({2, 2, 2}, {0.5, 0, 0, 0, 0, 0, 0, 0.5}, "leaky");
  const bool detector = !ot_bound_check(leaky, make_params(leaky, 3, 1, 1, 0.0, 0.25, 0.1, 0)).pass;
  return {inst.size() >= 20 && failures == 0 && detector,
          fmt("%.0f derived instances, %.0f failures, max SD/sigma %.3f", inst.size(), failures,
              worst) +
              (detector ? "; leaky detector fails as expected" : "; detector did not fire")};
}

Outcome c6_cea() {
  const auto inst = derived_instances(8, 1, 0.85, 0.97, 0.5, 6006);
  int violations = 0, identical = 0;
  double min_bound = 1e9;
  for (const auto& [s, p] : inst) {
    const GameReport r = cea_bound_check(s, p, 1);
    violations += !r.pass;
    min_bound = std::min(min_bound, r.bound);
    const auto a = exact_challenge_distribution(s, p);
    const auto b = cea_transcript_distribution(s, p, 0);
    identical += a.real == b.real && a.ideal == b.ideal;
  }
  const bool ok = inst.size() >= 5 && violations == 0 && identical == int(inst.size());
  std::string detail = fmt("%.0f instances, %.0f violations, q_e=0 identical on %.0f", inst.size(),
                           violations, identical);
  if (min_bound >= 1.0) detail += "; honest micro params force 2 sigma >= 1, so the bound is vacuous";
  return {ok, detail};
}

Outcome c7_he_game() {
  const auto inst = derived_instances(6, 0, 0.2, 0.5, 0.4, 7007);
  int failures = 0;
  double worst = 0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    auto adv = make_he_best_guess_adversary();
    const GameReport r =
        run_he_game(inst[i].source, inst[i].params, *adv, 0, 10000, 7100 + i, DemScheme::kOtp);
    failures += !r.pass;
    worst = std::max(worst, r.advantage - r.bound);
  }
  return {inst.size() >= 5 && failures == 0,
          fmt("%.0f instances, %.0f failures, max advantage - sigma %.4f", inst.size(), failures,
              worst)};
}

Outcome c8_composability() {
  auto inst = derived_instances(20, 0, 0.2, 0.5, 0.4, 8008);
  int failures = 0;
  double worst = 0;
  for (const auto& [s, p] : inst) {
    const GameReport r = composability_check(s, p);
    failures += !r.pass;
    worst = std::max(worst, r.advantage / r.bound);
  }
  return {inst.size() >= 10 && failures == 0,
          fmt("%.0f instances, %.0f failures, max SD/(eps+sigma) %.3f", inst.size(), failures, worst)};
}

Outcome c9_arithmetic() {
  const std::size_t t = reliability_from_entropy(2.0, 0.5).t;
  const std::int64_t ot = max_key_bits(40, 8, std::exp2(-4), 0);
  const std::int64_t cea = max_key_bits(40, 8, std::exp2(-4), 1);
  return {t == 8 && ot == 26 && cea == 5,
          fmt("t=%.0f ell_OT=%.0f ell_CEA=%.0f", double(t), double(ot), double(cea))};
}

Outcome c10_cli() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ikem_acceptance_cli";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "src.json") << R"({"type":"table","alphabets":[2,2,1],"pmf":[0.5,0,0,0.5]})";
  std::string payload(1024, '\0');
  Rng rng(1010);
  for (auto& c : payload) c = char(rng());
  std::ofstream(dir / "m.bin", std::ios::binary) << payload;
  auto run = [&](const std::string& args) {
    const std::string cmd =
        "cd '" + dir.string() + "' && '" IKEM_CLI_PATH "' " + args + " >out.txt 2>err.txt";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  };
  auto slurp = [&](const char* name) {
    std::ifstream in(dir / name, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::string common = "--source src.json --params p.json";
  const int rc_plan =
      run("plan --source src.json --n 288 --eps 0.25 --sigma 0.00390625 --ell 256 --out p.json");
  const int rc_gen = run("gen " + common + " --out s");
  const int rc_enc =
      run("encrypt " + common + " --sample s.alice.json --in m.bin --out c.bin --scheme stream");
  const int rc_dec = run("decrypt " + common + " --sample s.bob.json --in c.bin --out back.bin");
  const bool same = slurp("back.bin") == payload;
  std::string c = slurp("c.bin");
  if (c.size() > 18) c[18] = char(c[18] ^ 1);  // low bit of the tag
  std::ofstream(dir / "t.bin", std::ios::binary) << c;
  const int rc_tamper = run("decrypt " + common + " --sample s.bob.json --in t.bin --out x.bin");
  fs::remove_all(dir);
  const bool ok = rc_plan == 0 && rc_gen == 0 && rc_enc == 0 && rc_dec == 0 && same && rc_tamper == 3;
  std::ostringstream d;
  d << "exit codes plan/gen/encrypt/decrypt " << rc_plan << "/" << rc_gen << "/" << rc_enc << "/"
    << rc_dec << ", 1 KiB " << (same ? "identical" : "differs") << ", tamper exit " << rc_tamper;
  return {ok, d.str()};
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"uhf census exact", c1_census},
      {"extractor bound on micro sources", c2_extractor},
      {"reliability on satellite source", c3_reliability},
      {"typical set equals brute force", c4_typical},
      {"one-time security bound", c5_ot},
      {"chosen-encapsulation bound", c6_cea},
      {"hybrid game advantage", c7_he_game},
      {"composability distance", c8_composability},
      {"parameter arithmetic", c9_arithmetic},
      {"end-to-end cli", c10_cli},
  };
  int failed = 0;
  int idx = 0;
  for (const auto& [name, fn] : criteria) {
    ++idx;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", idx, name, o.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
