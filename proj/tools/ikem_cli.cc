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

// ikem: plan parameters, run the key lifecycle, encrypt files and verify
// bounds from the command line.
//
// Exit codes: 0 success or pass, 1 usage or format error, 2 infeasible
// parameters, 3 decapsulation failure (prints BOTTOM), 4 regime too large.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "ikem/dem.h"
#include "ikem/error.h"
#include "ikem/harness.h"
#include "ikem/hybrid.h"
#include "ikem/ikem.h"
#include "ikem/source_model.h"
#include "ikem/wire.h"

namespace {

using namespace ikem;

// Default seed ("IKEM" in ASCII). Every subcommand is replayable unless
// --random-seed is given.
constexpr std::uint64_t kDefaultSeed = 0x494B454D;

enum Exit { kOk = 0, kUsage = 1, kInfeasible = 2, kBottom = 3, kRegime = 4 };

struct Options {
  std::string source, params, sample, in, out, key, mode = "correctness";
  std::string scheme = "stream";
  std::size_t n = 0, q_e = 0, trials = 10000;
  double eps = 0.25, sigma = 1.0 / 256;
  std::optional<std::size_t> t, ell;
  std::optional<double> nu;
  std::uint64_t seed = kDefaultSeed;
  bool random_seed = false;
};

std::uint64_t effective_seed(const Options& o) {
  if (!o.random_seed) return o.seed;
  std::random_device rd;
  const std::uint64_t s = (std::uint64_t{rd()} << 32) ^ rd();
  std::cerr << "seed: " << s << "\n";
  return s;
}

JointSource load_source(const Options& o) {
  return parse_source_json(read_text_file(o.source));
}

IkemParams load_params(const Options& o, const JointSource& source) {
  IkemParams p = parse_params_json(read_text_file(o.params));
  require(p.source_digest == source_digest(source), ErrorCode::kDigestMismatch,
          "params were derived for a different source");
  return p;
}

std::vector<Symbol> load_side(const Options& o, const JointSource& source,
                              char side) {
  const SampleFile f = parse_sample_json(read_text_file(o.sample));
  require(f.source_digest == source_digest(source), ErrorCode::kDigestMismatch,
          "sample was drawn from a different source");
  const auto& v = side == 'x' ? f.triple.x : f.triple.y;
  require(!v.empty(), ErrorCode::kMalformedInput,
          std::string("sample file has no ") + side + " component");
  return v;
}

// Counts uses of one preprocessing triple in a sidecar file next to it and
// warns once the challenge plus q_e queries are spent.
void count_use(const Options& o, const IkemParams& p) {
  const std::string path = o.sample + ".uses";
  std::size_t uses = 0;
  if (std::filesystem::exists(path)) {
    try {
      uses = std::stoull(read_text_file(path));
    } catch (const std::exception&) {
      uses = 0;
    }
  }
  ++uses;
  write_text_file(path, std::to_string(uses) + "\n");
  if (uses > p.q_e + 1) {
    std::cerr << "warning: this sample has now been used " << uses
              << " times; the parameters only cover " << p.q_e + 1 << "\n";
  }
}

void print_plan(const IkemParams& p) {
  std::printf("n      %zu\n", p.n);
  std::printf("t      %zu\n", p.t);
  std::printf("ell    %zu\n", p.ell);
  std::printf("nu     %.6f\n", p.nu);
  std::printf("H(X|Y) %.6f\n", p.h_xy);
  std::printf("H(X|Z) %.6f\n", p.h_xz);
  std::printf("eps    %g\n", p.eps);
  std::printf("sigma  %g\n", p.sigma);
  std::printf("q_e    %zu\n", p.q_e);
}

int cmd_plan(const Options& o) {
  const JointSource s = load_source(o);
  IkemParams p;
  if (o.t) {
    require(o.ell.has_value(), ErrorCode::kInvalidArgument, "--t needs --ell");
    const double nu = o.nu ? *o.nu : derive_reliability(s, o.n, o.eps).nu;
    p = make_params(s, o.n, *o.t, *o.ell, nu, o.eps, o.sigma, o.q_e);
  } else {
    p = derive_params(s, o.n, o.eps, o.sigma, o.q_e, o.ell);
  }
  print_plan(p);
  if (!o.out.empty()) write_text_file(o.out, params_to_json(p));
  return kOk;
}

int cmd_gen(const Options& o) {
  const JointSource s = load_source(o);
  const IkemParams p = load_params(o, s);
  const SampleTriple t = he_gen(s, p.n, effective_seed(o));
  const std::string digest = source_digest(s);
  const std::string prefix = o.out.empty() ? "sample" : o.out;
  write_text_file(prefix + ".alice.json", sample_to_json({digest, {t.x, {}, {}}}));
  write_text_file(prefix + ".bob.json", sample_to_json({digest, {{}, t.y, {}}}));
  write_text_file(prefix + ".eve.json", sample_to_json({digest, {{}, {}, t.z}}));
  std::filesystem::remove(prefix + ".alice.json.uses");
  return kOk;
}

int cmd_encap(const Options& o) {
  const JointSource s = load_source(o);
  const IkemParams p = load_params(o, s);
  const auto x = load_side(o, s, 'x');
  count_use(o, p);
  Rng rng(effective_seed(o));
  const EncapResult r = encap(p, s, x, rng);
  write_file(o.out, serialize_ciphertext(p, r.ciphertext));
  write_file(o.key, serialize_key(r.key));
  return kOk;
}

int cmd_decap(const Options& o) {
  const JointSource s = load_source(o);
  const IkemParams p = load_params(o, s);
  const auto y = load_side(o, s, 'y');
  const IkemCiphertext c = parse_ciphertext(p, read_file(o.in));
  const auto k = decap(p, s, y, c);
  if (!k) {
    std::cout << "BOTTOM\n";
    return kBottom;
  }
  write_file(o.out, serialize_key(*k));
  return kOk;
}

int cmd_encrypt(const Options& o) {
  const JointSource s = load_source(o);
  const IkemParams p = load_params(o, s);
  const auto x = load_side(o, s, 'x');
  count_use(o, p);
  const auto plain = read_file(o.in);
  Rng rng(effective_seed(o));
  const HybridCiphertext c =
      he_encrypt(p, s, x, bytes_to_bits(plain), rng, parse_scheme(o.scheme));
  write_file(o.out, serialize_hybrid(p, c));
  return kOk;
}

int cmd_decrypt(const Options& o) {
  const JointSource s = load_source(o);
  const IkemParams p = load_params(o, s);
  const auto y = load_side(o, s, 'y');
  const HybridCiphertext c = parse_hybrid(p, read_file(o.in));
  require(c.c2.body.size() % 8 == 0, ErrorCode::kMalformedInput,
          "payload is not a whole number of bytes");
  const auto m = he_decrypt(p, s, y, c);
  if (!m) {
    std::cout << "BOTTOM\n";
    return kBottom;
  }
  write_file(o.out, m->to_bytes());
  return kOk;
}

int cmd_verify(const Options& o) {
  const JointSource s = load_source(o);
  const IkemParams p = load_params(o, s);
  const std::uint64_t seed = effective_seed(o);
  GameReport r;
  if (o.mode == "correctness") {
    r = correctness_mc(s, p, o.trials, seed);
  } else if (o.mode == "ot-bound") {
    r = ot_bound_check(s, p);
  } else if (o.mode == "cea-bound") {
    r = cea_bound_check(s, p, p.q_e);
  } else if (o.mode == "composability") {
    r = composability_check(s, p);
  } else if (o.mode == "he-game") {
    auto adv = make_he_best_guess_adversary(p.q_e);
    r = run_he_game(s, p, *adv, p.q_e, o.trials, seed, parse_scheme(o.scheme));
  } else {
    fail(ErrorCode::kInvalidArgument, "unknown mode '" + o.mode + "'");
  }
  const std::string json = report_to_json(r);
  std::cout << json << "\n";
  if (!o.out.empty()) write_text_file(o.out, json);
  return r.pass ? kOk : kUsage;
}

int exit_for(const IkemError& e) {
  switch (e.code()) {
    case ErrorCode::kInfeasibleKeyLength:
      return kInfeasible;
    case ErrorCode::kRegimeTooLarge:
      std::cerr << "hint: exact checks need micro parameters (field width <= "
                << kExactMaxFieldBits << " bits); try a smaller n\n";
      return kRegime;
    default:
      return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information-theoretic key encapsulation toolkit"};
  app.require_subcommand(1);
  Options o;

  auto seeded = [&](CLI::App* c) {
    c->add_option("--seed", o.seed, "RNG seed (default 0x494B454D)");
    c->add_flag("--random-seed", o.random_seed, "Seed from the OS and print it");
  };
  auto needs = [&](CLI::App* c, bool params) {
    c->add_option("--source", o.source, "Source JSON")->required()->check(CLI::ExistingFile);
    if (params)
      c->add_option("--params", o.params, "Params JSON")->required()->check(CLI::ExistingFile);
  };

  auto* plan = app.add_subcommand("plan", "Derive parameters for a source");
  needs(plan, false);
  plan->add_option("--n", o.n, "Block length")->required();
  plan->add_option("--eps", o.eps, "Reliability target");
  plan->add_option("--sigma", o.sigma, "Security target");
  plan->add_option("--qe", o.q_e, "Encapsulation query budget");
  plan->add_option("--ell", o.ell, "Requested key length in bits");
  plan->add_option("--t", o.t, "Tag length; skips the derivation");
  plan->add_option("--nu", o.nu, "Typicality threshold for --t");
  plan->add_option("--out", o.out, "Params JSON to write");

  auto* gen = app.add_subcommand("gen", "Draw one preprocessing sample");
  needs(gen, true);
  seeded(gen);
  gen->add_option("--out", o.out, "Output prefix (default: sample)");

  auto* enc = app.add_subcommand("encap", "Encapsulate a key from Alice's sample");
  needs(enc, true);
  seeded(enc);
  enc->add_option("--sample", o.sample, "Alice sample JSON")->required()->check(CLI::ExistingFile);
  enc->add_option("--out", o.out, "Ciphertext file")->required();
  enc->add_option("--key", o.key, "Key file")->required();

  auto* dec = app.add_subcommand("decap", "Recover the key from Bob's sample");
  needs(dec, true);
  dec->add_option("--sample", o.sample, "Bob sample JSON")->required()->check(CLI::ExistingFile);
  dec->add_option("--in", o.in, "Ciphertext file")->required()->check(CLI::ExistingFile);
  dec->add_option("--out", o.out, "Key file")->required();

  auto* encr = app.add_subcommand("encrypt", "Hybrid-encrypt a file");
  needs(encr, true);
  seeded(encr);
  encr->add_option("--sample", o.sample, "Alice sample JSON")->required()->check(CLI::ExistingFile);
  encr->add_option("--in", o.in, "Plaintext file")->required()->check(CLI::ExistingFile);
  encr->add_option("--out", o.out, "Ciphertext file")->required();
  encr->add_option("--scheme", o.scheme, "otp or stream")
      ->check(CLI::IsMember({"otp", "stream"}));

  auto* decr = app.add_subcommand("decrypt", "Decrypt a hybrid ciphertext");
  needs(decr, true);
  decr->add_option("--sample", o.sample, "Bob sample JSON")->required()->check(CLI::ExistingFile);
  decr->add_option("--in", o.in, "Ciphertext file")->required()->check(CLI::ExistingFile);
  decr->add_option("--out", o.out, "Plaintext file")->required();

  auto* ver = app.add_subcommand("verify", "Check a bound or run a game");
  needs(ver, true);
  seeded(ver);
  ver->add_option("--mode", o.mode, "correctness | ot-bound | cea-bound | he-game | composability")
      ->check(CLI::IsMember({"correctness", "ot-bound", "cea-bound", "he-game", "composability"}));
  ver->add_option("--trials", o.trials, "Monte Carlo trials");
  ver->add_option("--scheme", o.scheme, "DEM for he-game")
      ->check(CLI::IsMember({"otp", "stream"}));
  ver->add_option("--out", o.out, "Report JSON to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*plan) return cmd_plan(o);
    if (*gen) return cmd_gen(o);
    if (*enc) return cmd_encap(o);
    if (*dec) return cmd_decap(o);
    if (*encr) return cmd_encrypt(o);
    if (*decr) return cmd_decrypt(o);
    if (*ver) return cmd_verify(o);
  } catch (const IkemError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
