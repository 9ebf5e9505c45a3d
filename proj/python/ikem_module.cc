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

// Python bindings for the main operations. Bit strings cross the boundary as
// (bytes, bit_length) through the BitString class; serialized artifacts
// cross as bytes in the library's wire formats.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "ikem/dem.h"
#include "ikem/error.h"
#include "ikem/harness.h"
#include "ikem/hybrid.h"
#include "ikem/ikem.h"
#include "ikem/source_model.h"
#include "ikem/uhf.h"
#include "ikem/wire.h"

namespace py = pybind11;
using namespace ikem;

namespace {

Coord coord(const std::string& name) {
  if (name == "X" || name == "x") return Coord::kX;
  if (name == "Y" || name == "y") return Coord::kY;
  if (name == "Z" || name == "z") return Coord::kZ;
  fail(ErrorCode::kInvalidCoordinate, "coordinate must be X, Y or Z");
}

py::bytes to_py(const std::vector<std::uint8_t>& v) {
  return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

std::vector<std::uint8_t> from_py(const py::bytes& b) {
  const std::string s = b;
  return {s.begin(), s.end()};
}

}  // namespace

PYBIND11_MODULE(_ikem, m) {
  m.doc() = "Information-theoretic key encapsulation";

  // Messages start with the error code name, e.g. "DigestMismatch: ...".
  py::register_exception<IkemError>(m, "IkemError", PyExc_RuntimeError);

  py::class_<BitString>(m, "BitString")
      .def(py::init([](const py::bytes& data, std::size_t bits) {
             return BitString::from_bytes(from_py(data), bits);
           }),
           py::arg("data"), py::arg("bits"))
      .def_static("from_int", &BitString::from_uint, py::arg("value"), py::arg("bits"))
      .def("__len__", &BitString::size)
      .def("to_bytes", [](const BitString& b) { return to_py(b.to_bytes()); })
      .def("hex", &BitString::to_hex)
      .def("__eq__", [](const BitString& a, const BitString& b) { return a == b; })
      .def("__repr__", [](const BitString& b) {
        return "BitString(bits=" + std::to_string(b.size()) + ", hex=" + b.to_hex() + ")";
      });

  py::class_<JointSource>(m, "JointSource")
      .def_property_readonly("alphabet_sizes", &JointSource::alphabet_sizes)
      .def_property_readonly("label", &JointSource::label)
      .def_property_readonly("pmf", [](const JointSource& s) {
        return std::vector<double>(s.pmf().begin(), s.pmf().end());
      })
      .def("p", &JointSource::p)
      .def("digest", [](const JointSource& s) { return source_digest(s); })
      .def("to_json", [](const JointSource& s) { return source_to_json(s); })
      .def_static("from_json", [](const std::string& t) { return parse_source_json(t); });

  m.def("table_source", &make_table_source, py::arg("sizes"), py::arg("pmf"),
        py::arg("label") = "table");
  m.def("satellite_source", &satellite_source, py::arg("pa"), py::arg("pb"), py::arg("pe"));
  m.def(
      "cond_min_entropy",
      [](const JointSource& s, const std::string& target, const std::vector<std::string>& given,
         std::size_t n) {
        std::vector<Coord> g;
        for (const auto& c : given) g.push_back(coord(c));
        return iid_cond_min_entropy(s, coord(target), g, n);
      },
      py::arg("source"), py::arg("target"), py::arg("given"), py::arg("n") = 1);

  py::class_<SampleTriple>(m, "SampleTriple")
      .def_readonly("x", &SampleTriple::x)
      .def_readonly("y", &SampleTriple::y)
      .def_readonly("z", &SampleTriple::z);
  m.def("sample", &sample_n, py::arg("source"), py::arg("n"), py::arg("seed"));

  py::class_<IkemParams>(m, "IkemParams")
      .def_readonly("n", &IkemParams::n)
      .def_readonly("t", &IkemParams::t)
      .def_readonly("ell", &IkemParams::ell)
      .def_readonly("nu", &IkemParams::nu)
      .def_readonly("eps", &IkemParams::eps)
      .def_readonly("sigma", &IkemParams::sigma)
      .def_readonly("q_e", &IkemParams::q_e)
      .def_readonly("h_xy", &IkemParams::h_xy)
      .def_readonly("h_xz", &IkemParams::h_xz)
      .def_readonly("source_digest", &IkemParams::source_digest)
      .def("to_json", [](const IkemParams& p) { return params_to_json(p); })
      .def_static("from_json", [](const std::string& t) { return parse_params_json(t); });

  m.def("derive_params", &derive_params, py::arg("source"), py::arg("n"), py::arg("eps"),
        py::arg("sigma"), py::arg("q_e") = 0, py::arg("key_bits") = std::nullopt);
  m.def("make_params", &make_params, py::arg("source"), py::arg("n"), py::arg("t"),
        py::arg("ell"), py::arg("nu"), py::arg("eps"), py::arg("sigma"), py::arg("q_e") = 0);
  m.def("max_key_bits", &max_key_bits, py::arg("h_xz"), py::arg("t"), py::arg("sigma"),
        py::arg("q_e") = 0);

  py::class_<IkemCiphertext>(m, "IkemCiphertext")
      .def_readonly("tag", &IkemCiphertext::g)
      .def("to_bytes",
           [](const IkemCiphertext& c, const IkemParams& p) {
             return to_py(serialize_ciphertext(p, c));
           })
      .def_static("from_bytes", [](const IkemParams& p, const py::bytes& b) {
        return parse_ciphertext(p, from_py(b));
      });

  m.def(
      "encap",
      [](const IkemParams& p, const JointSource& s, const std::vector<Symbol>& x,
         std::uint64_t seed) {
        Rng rng(seed);
        EncapResult r = encap(p, s, x, rng);
        return py::make_tuple(r.ciphertext, r.key.bits);
      },
      py::arg("params"), py::arg("source"), py::arg("x"), py::arg("seed"));
  m.def(
      "decap",
      [](const IkemParams& p, const JointSource& s, const std::vector<Symbol>& y,
         const IkemCiphertext& c) -> std::optional<BitString> {
        auto k = decap(p, s, y, c);
        if (!k) return std::nullopt;
        return k->bits;
      },
      py::arg("params"), py::arg("source"), py::arg("y"), py::arg("ciphertext"));
  m.def(
      "typical_set",
      [](const JointSource& s, const std::vector<Symbol>& y, double nu) {
        return enumerate_typical(s, y, nu);
      },
      py::arg("source"), py::arg("y"), py::arg("nu"));

  m.def(
      "encrypt",
      [](const IkemParams& p, const JointSource& s, const std::vector<Symbol>& x,
         const py::bytes& message, std::uint64_t seed, const std::string& scheme) {
        Rng rng(seed);
        const auto c =
            he_encrypt(p, s, x, bytes_to_bits(from_py(message)), rng, parse_scheme(scheme));
        return to_py(serialize_hybrid(p, c));
      },
      py::arg("params"), py::arg("source"), py::arg("x"), py::arg("message"), py::arg("seed"),
      py::arg("scheme") = "stream");
  m.def(
      "decrypt",
      [](const IkemParams& p, const JointSource& s, const std::vector<Symbol>& y,
         const py::bytes& data) -> std::optional<py::bytes> {
        const auto m = he_decrypt(p, s, y, parse_hybrid(p, from_py(data)));
        if (!m) return std::nullopt;
        return to_py(m->to_bytes());
      },
      py::arg("params"), py::arg("source"), py::arg("y"), py::arg("data"));

  py::class_<GameReport>(m, "GameReport")
      .def_readonly("game", &GameReport::game)
      .def_readonly("exact", &GameReport::exact)
      .def_readonly("trials", &GameReport::trials)
      .def_readonly("advantage", &GameReport::advantage)
      .def_readonly("bound", &GameReport::bound)
      .def_readonly("passed", &GameReport::pass)
      .def_readonly("seed", &GameReport::seed)
      .def_readonly("margin", &GameReport::margin)
      .def("to_json", [](const GameReport& r) { return report_to_json(r); });

  m.def("census",
        [](std::size_t w, std::size_t m) { return pairwise_independence_census(UhfSpec{w, m}); },
        py::arg("input_bits"), py::arg("output_bits"));
  m.def(
      "exact_challenge_sd",
      [](const JointSource& s, const IkemParams& p, std::size_t q_e) {
        return exact_challenge_sd(s, p, q_e).sd;
      },
      py::arg("source"), py::arg("params"), py::arg("q_e") = 0);
  m.def("ot_bound_check", &ot_bound_check, py::arg("source"), py::arg("params"));
  m.def("cea_bound_check", &cea_bound_check, py::arg("source"), py::arg("params"),
        py::arg("q_e"));
  m.def("composability_check", &composability_check, py::arg("source"), py::arg("params"));
  m.def("correctness_mc", &correctness_mc, py::arg("source"), py::arg("params"),
        py::arg("trials"), py::arg("seed"));
}
