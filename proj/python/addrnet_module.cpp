// Copyright 2026 The addrnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "addrnet/dsl.hpp"
#include "addrnet/facts.hpp"
#include "addrnet/query.hpp"
#include "addrnet/scenario.hpp"
#include "addrnet/trace.hpp"

namespace py = pybind11;

namespace {

using namespace addrnet;

[[noreturn]] void raise(const Error& e) {
  throw py::value_error(to_string(e));
}

template <typename T>
T unwrap(Result<T> r) {
  if (!r) raise(r.error());
  return r.take();
}

// A compiled platform: the net plus its configuration spaces.
struct Platform {
  DecodingNet net;
  ConfigSpaces conf;
};

Platform compile_platform(const std::string& text) {
  auto [net, conf] = unwrap(dsl::compile_text(text));
  return Platform{std::move(net), std::move(conf)};
}

Platform builtin_platform(const std::string& kind, std::uint64_t dram_size,
                          std::uint64_t private_size,
                          std::uint64_t granularity) {
  auto k = dsl::topology_from_name(kind);
  if (!k) throw py::value_error("unknown topology '" + kind + "'");
  dsl::PlatformAst ast = unwrap(
      dsl::builtin_topology(*k, {dram_size, private_size, granularity}));
  auto [net, conf] = unwrap(dsl::compile(ast));
  return Platform{std::move(net), std::move(conf)};
}

py::object check_trace(const Platform& p, const std::string& trace_text,
                       bool enforce_guards) {
  Trace trace = unwrap(parse_trace(trace_text));
  Verdict v = run_trace(p.net, p.conf, trace, {enforce_guards});
  py::dict out;
  out["valid"] = v.valid;
  if (!v.valid) {
    out["line"] = v.rejected_line;
    out["code"] = std::string{errc_name(v.error.code)};
    out["message"] = v.error.message;
  }
  out["verdict"] = format_verdict(v);
  return out;
}

}  // namespace

PYBIND11_MODULE(addrnet, m) {
  m.doc() =
      "Decoding-net address-space modeling, reference-monitor trace "
      "checking and configuration planning";

  py::class_<Platform>(m, "Platform")
      .def_static("compile", &compile_platform, py::arg("text"),
                  "Compile a platform description")
      .def_static("builtin", &builtin_platform, py::arg("kind"),
                  py::arg("dram_size") = 0x10000,
                  py::arg("private_size") = 0x4000,
                  py::arg("granularity") = 0x1000,
                  "One of: uniform, swapped, private, private-swapped")
      .def_property_readonly(
          "nodes", [](const Platform& p) { return p.net.node_ids(); })
      .def("well_formed",
           [](const Platform& p) {
             std::vector<std::string> out;
             for (const auto& v : well_formed(p.net)) {
               out.push_back(to_string(v));
             }
             return out;
           })
      .def("resolve",
           [](const Platform& p, const std::string& node, std::uint64_t addr) {
             Name canonical = unwrap(resolve(p.net, Name{node, addr}));
             return py::make_tuple(canonical.node, canonical.addr);
           },
           py::arg("node"), py::arg("addr"),
           "Canonical (node, addr) of a local address")
      .def("resolve_range",
           [](const Platform& p, const std::string& node, std::uint64_t addr,
              std::uint64_t size, std::optional<std::string> dst) {
             auto ranges = unwrap(
                 resolve_range_filtered(p.net, Name{node, addr}, size, dst));
             std::vector<py::tuple> out;
             for (const auto& r : ranges) {
               out.push_back(py::make_tuple(r.base.node, r.base.addr, r.size));
             }
             return out;
           },
           py::arg("node"), py::arg("addr"), py::arg("size"),
           py::arg("dst") = std::nullopt,
           "Canonical decomposition as (node, base, size) tuples")
      .def("plan",
           [](const Platform& p, const std::string& src,
              const std::string& dst) {
             FlatGraph g = FlatGraph::flatten(p.net, p.conf);
             ConfigPlan plan = unwrap(config_nodes(g, p.net, p.conf, src, dst));
             std::vector<std::string> out;
             for (const auto& s : plan.steps) out.push_back(s.aspace);
             return out;
           },
           py::arg("src"), py::arg("dst"),
           "Spaces to configure so dst becomes reachable from src")
      .def("allocation_range",
           [](const Platform& p, const std::string& src,
              std::optional<std::string> dst_filter, std::uint64_t min_size) {
             FlatGraph g = FlatGraph::flatten(p.net, p.conf);
             AllocationQuery q;
             q.dst_filter = std::move(dst_filter);
             q.min_size = min_size;
             auto [node, range] = unwrap(allocation_range(g, p.net, src, q));
             return py::make_tuple(node, range.base, range.size);
           },
           py::arg("src"), py::arg("dst_filter") = std::nullopt,
           py::arg("min_size") = 1)
      .def("facts",
           [](const Platform& p) { return emit_facts(p.net, p.conf); })
      .def("translation_table",
           [](const Platform& p, const std::string& node) {
             dsl::TranslationTable t =
                 unwrap(dsl::emit_translation_table(p.net, node));
             std::vector<py::tuple> out;
             for (const auto& e : t.entries) {
               out.push_back(py::make_tuple(e.local.base, e.local.size,
                                            e.canonical.node,
                                            e.canonical.addr));
             }
             return out;
           },
           py::arg("node"),
           "(local_base, size, canonical_node, canonical_base) tuples")
      .def("simulator_config", [](const Platform& p) {
        return dsl::emit_simulator_config(p.net, p.conf);
      })
      .def("check_trace", &check_trace, py::arg("trace"),
           py::arg("enforce_guards") = true,
           "Run a trace; returns a dict with valid/verdict/line/code");

  m.def("parse_facts", [](const std::string& text) {
    auto [net, conf] = unwrap(parse_facts(text));
    return Platform{std::move(net), std::move(conf)};
  });
  m.def(
      "run_scenario",
      [](const std::string& text, bool enforce_guards) {
        Scenario sc = unwrap(parse_scenario(text));
        ScenarioOutcome o = run_scenario(sc, {enforce_guards});
        py::dict out;
        out["name"] = sc.name;
        out["class"] = std::string{bug_class_name(sc.bug_class)};
        out["pass"] = o.pass;
        out["guard_applied"] = o.guard_applied;
        out["detail"] = o.detail;
        return out;
      },
      py::arg("text"), py::arg("enforce_guards") = true,
      "Run one vulnerability scenario");
  m.def("pretty_print", [](const std::string& text) {
    return dsl::pretty_print(unwrap(dsl::parse(text)));
  });

  m.attr("__version__") = "0.1.0";
}
