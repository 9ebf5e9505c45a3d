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

#include "ikem/wire.h"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include "ikem/error.h"
#include "json.hpp"

namespace ikem {

namespace {

using nlohmann::json;

constexpr std::string_view kCiphertextMagic = "IKM1";
constexpr std::string_view kHybridMagic = "IHE1";

void put_u16(std::vector<std::uint8_t>& out, std::size_t v) {
  require(v <= 0xFFFF, ErrorCode::kInvalidArgument,
          "value " + std::to_string(v) + " does not fit in 16 bits");
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void append(std::vector<std::uint8_t>& out, std::span<const std::uint8_t> b) {
  out.insert(out.end(), b.begin(), b.end());
}

// Bounds-checked cursor over an input buffer.
class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::span<const std::uint8_t> take(std::size_t n, const char* what) {
    require(pos_ + n <= bytes_.size(), ErrorCode::kMalformedInput,
            std::string("truncated input while reading ") + what);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::size_t u16(const char* what) {
    auto b = take(2, what);
    return (std::size_t{b[0]} << 8) | b[1];
  }
  void magic(std::string_view m) {
    auto b = take(m.size(), "magic");
    require(std::equal(m.begin(), m.end(), b.begin()), ErrorCode::kMalformedInput,
            "bad magic, expected " + std::string(m));
  }
  std::size_t pos() const { return pos_; }
  std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }
  void skip(std::size_t n) { take(n, "block"); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kMalformedInput, std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
T field(const json& j, const char* key) {
  require(j.is_object() && j.contains(key), ErrorCode::kMalformedInput,
          std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorCode::kMalformedInput,
         std::string("bad field '") + key + "': " + e.what());
  }
}

std::string digest_hex(const Digest& d) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (auto b : d) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 15]);
  }
  return out;
}

std::vector<Symbol> symbols(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  return field<std::vector<Symbol>>(j, key);
}

}  // namespace

std::vector<std::uint8_t> serialize_ciphertext(const IkemParams& params,
                                               const IkemCiphertext& c) {
  require(c.g.size() == params.t, ErrorCode::kLengthMismatch,
          "tag width does not match params");
  std::vector<std::uint8_t> out(kCiphertextMagic.begin(), kCiphertextMagic.end());
  append(out, c.params_digest);
  put_u16(out, params.t);
  append(out, c.g.to_bytes());
  append(out, serialize_seed(params.key_family(), c.s_prime));
  append(out, serialize_seed(params.tag_family(), c.s));
  return out;
}

IkemCiphertext parse_ciphertext(const IkemParams& params,
                                std::span<const std::uint8_t> bytes,
                                std::size_t* consumed) {
  Reader r(bytes);
  r.magic(kCiphertextMagic);
  IkemCiphertext c;
  auto d = r.take(c.params_digest.size(), "digest");
  std::copy(d.begin(), d.end(), c.params_digest.begin());
  require(c.params_digest == params_digest(params), ErrorCode::kDigestMismatch,
          "ciphertext digest " + digest_hex(c.params_digest) +
              " does not match params " + digest_hex(params_digest(params)));
  const std::size_t t = r.u16("tag width");
  require(t == params.t, ErrorCode::kMalformedInput,
          "tag width on the wire differs from params");
  c.g = BitString::from_bytes(r.take((t + 7) / 8, "tag"), t);
  c.s_prime = parse_seed(params.key_family(),
                         r.take(seed_bytes(params.key_family()), "key seed"));
  c.s = parse_seed(params.tag_family(),
                   r.take(seed_bytes(params.tag_family()), "tag seed"));
  if (consumed != nullptr) {
    *consumed = r.pos();
  } else {
    require(r.rest().empty(), ErrorCode::kMalformedInput,
            "trailing bytes after ciphertext");
  }
  return c;
}

std::vector<std::uint8_t> serialize_key(const IkemKey& key) {
  std::vector<std::uint8_t> out;
  put_u16(out, key.bits.size());
  append(out, key.bits.to_bytes());
  return out;
}

IkemKey parse_key(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  const std::size_t ell = r.u16("key length");
  require(ell >= 1, ErrorCode::kMalformedInput, "zero-length key");
  IkemKey k{BitString::from_bytes(r.take((ell + 7) / 8, "key"), ell)};
  require(r.rest().empty(), ErrorCode::kMalformedInput,
          "trailing bytes after key");
  return k;
}

std::vector<std::uint8_t> serialize_hybrid(const IkemParams& params,
                                           const HybridCiphertext& c) {
  std::vector<std::uint8_t> out(kHybridMagic.begin(), kHybridMagic.end());
  append(out, serialize_ciphertext(params, c.c1));
  append(out, serialize_dem(c.c2));
  return out;
}

HybridCiphertext parse_hybrid(const IkemParams& params,
                              std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  r.magic(kHybridMagic);
  HybridCiphertext c;
  std::size_t used = 0;
  c.c1 = parse_ciphertext(params, r.rest(), &used);
  r.skip(used);
  c.c2 = parse_dem(r.rest(), &used);
  r.skip(used);
  require(r.rest().empty(), ErrorCode::kMalformedInput,
          "trailing bytes after hybrid ciphertext");
  return c;
}

JointSource parse_source_json(std::string_view text) {
  const json j = parse_json(text);
  const auto type = field<std::string>(j, "type");
  if (type == "satellite") {
    return satellite_source(field<double>(j, "pa"), field<double>(j, "pb"),
                            field<double>(j, "pe"));
  }
  require(type == "table", ErrorCode::kMalformedInput,
          "unknown source type '" + type + "'");
  const auto sizes = field<std::array<std::size_t, 3>>(j, "alphabets");
  const std::string label = j.contains("label") ? field<std::string>(j, "label")
                                                : std::string("table");
  const json& pmf = j.contains("pmf") ? j.at("pmf") : json();
  require(pmf.is_array(), ErrorCode::kMalformedInput, "pmf must be an array");
  std::size_t cells = 1;
  for (auto s : sizes) {
    require(s >= 1 && s <= (1u << 24), ErrorCode::kDimensionMismatch,
            "alphabet sizes must lie in [1, 2^24]");
    cells *= s;
    require(cells <= (1u << 24), ErrorCode::kDimensionMismatch,
            "joint table too large");
  }
  std::vector<double> dense(cells, 0.0);
  if (!pmf.empty() && pmf.front().is_number()) {
    require(pmf.size() == cells, ErrorCode::kDimensionMismatch,
            "dense pmf has " + std::to_string(pmf.size()) + " entries, expected " +
                std::to_string(cells));
    for (std::size_t i = 0; i < cells; ++i) {
      require(pmf[i].is_number(), ErrorCode::kMalformedInput,
              "dense pmf entries must be numbers");
      dense[i] = pmf[i].get<double>();
    }
  } else {
    for (const auto& e : pmf) {
      std::size_t x = 0, y = 0, z = 0;
      double p = 0.0;
      if (e.is_object()) {
        x = field<std::size_t>(e, "x");
        y = field<std::size_t>(e, "y");
        z = field<std::size_t>(e, "z");
        p = field<double>(e, "p");
      } else {
        require(e.is_array() && e.size() == 4 && e[0].is_number_unsigned() &&
                    e[1].is_number_unsigned() && e[2].is_number_unsigned() &&
                    e[3].is_number(),
                ErrorCode::kMalformedInput,
                "pmf entries are {x, y, z, p} objects or [x, y, z, p]");
        x = e[0].get<std::size_t>();
        y = e[1].get<std::size_t>();
        z = e[2].get<std::size_t>();
        p = e[3].get<double>();
      }
      require(x < sizes[0] && y < sizes[1] && z < sizes[2],
              ErrorCode::kDimensionMismatch, "pmf entry outside the alphabets");
      dense[(x * sizes[1] + y) * sizes[2] + z] += p;
    }
  }
  return make_table_source(sizes, std::move(dense), label);
}

std::string source_to_json(const JointSource& source) {
  const auto& s = source.alphabet_sizes();
  json pmf = json::array();
  for (Symbol x = 0; x < s[0]; ++x) {
    for (Symbol y = 0; y < s[1]; ++y) {
      for (Symbol z = 0; z < s[2]; ++z) {
        const double p = source.p(x, y, z);
        if (p != 0.0) pmf.push_back({{"x", x}, {"y", y}, {"z", z}, {"p", p}});
      }
    }
  }
  json j = {{"type", "table"},
            {"alphabets", {s[0], s[1], s[2]}},
            {"label", source.label()},
            {"pmf", pmf}};
  return j.dump(2) + "\n";
}

std::string params_to_json(const IkemParams& p) {
  json j = {{"n", p.n},
            {"t", p.t},
            {"ell", p.ell},
            {"nu", p.nu},
            {"eps", p.eps},
            {"sigma", p.sigma},
            {"q_e", p.q_e},
            {"input_bits", p.input_bits},
            {"source_digest", p.source_digest},
            {"h_xy", p.h_xy},
            {"h_xz", p.h_xz},
            {"digest", digest_hex(params_digest(p))}};
  return j.dump(2) + "\n";
}

IkemParams parse_params_json(std::string_view text) {
  const json j = parse_json(text);
  IkemParams p;
  p.n = field<std::size_t>(j, "n");
  p.t = field<std::size_t>(j, "t");
  p.ell = field<std::size_t>(j, "ell");
  p.nu = field<double>(j, "nu");
  p.eps = field<double>(j, "eps");
  p.sigma = field<double>(j, "sigma");
  p.q_e = field<std::size_t>(j, "q_e");
  p.input_bits = field<std::size_t>(j, "input_bits");
  p.source_digest = field<std::string>(j, "source_digest");
  p.h_xy = field<double>(j, "h_xy");
  p.h_xz = field<double>(j, "h_xz");
  try {
    p.validate();
  } catch (const IkemError& e) {
    fail(ErrorCode::kMalformedInput, std::string("params: ") + e.what());
  }
  if (j.contains("digest")) {
    require(field<std::string>(j, "digest") == digest_hex(params_digest(p)),
            ErrorCode::kDigestMismatch,
            "params digest does not match the params fields");
  }
  return p;
}

std::string sample_to_json(const SampleFile& sample) {
  const auto& t = sample.triple;
  const std::size_t n = std::max({t.x.size(), t.y.size(), t.z.size()});
  json j = {{"source_digest", sample.source_digest}, {"n", n}};
  if (!sample.triple.x.empty()) j["x"] = sample.triple.x;
  if (!sample.triple.y.empty()) j["y"] = sample.triple.y;
  if (!sample.triple.z.empty()) j["z"] = sample.triple.z;
  return j.dump() + "\n";
}

SampleFile parse_sample_json(std::string_view text) {
  const json j = parse_json(text);
  SampleFile s;
  s.source_digest = field<std::string>(j, "source_digest");
  s.triple.x = symbols(j, "x");
  s.triple.y = symbols(j, "y");
  s.triple.z = symbols(j, "z");
  const auto n = field<std::size_t>(j, "n");
  for (const auto* v : {&s.triple.x, &s.triple.y, &s.triple.z}) {
    require(v->empty() || v->size() == n, ErrorCode::kLengthMismatch,
            "sample vector length differs from n");
  }
  return s;
}

std::string report_to_json(const GameReport& r) {
  json j = {{"game", r.game},       {"exact", r.exact}, {"trials", r.trials},
            {"advantage", r.advantage}, {"bound", r.bound}, {"pass", r.pass},
            {"seed", r.seed}};
  return j.dump() + "\n";
}

GameReport parse_report_json(std::string_view text) {
  const json j = parse_json(text);
  GameReport r;
  r.game = field<std::string>(j, "game");
  r.exact = field<bool>(j, "exact");
  r.trials = field<std::uint64_t>(j, "trials");
  r.advantage = field<double>(j, "advantage");
  r.bound = field<double>(j, "bound");
  r.pass = field<bool>(j, "pass");
  r.seed = field<std::uint64_t>(j, "seed");
  return r;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::kMalformedInput, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_text_file(const std::string& path) {
  const auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorCode::kMalformedInput, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  require(out.good(), ErrorCode::kMalformedInput, "write failed for " + path);
}

void write_text_file(const std::string& path, std::string_view text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                             text.size()));
}

}  // namespace ikem
