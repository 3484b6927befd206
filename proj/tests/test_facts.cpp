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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "addrnet/dsl.hpp"
#include "addrnet/facts.hpp"
#include "support.hpp"

using namespace addrnet;
using addrnet::testing::fixture_path;
using addrnet::testing::random_net;
using addrnet::testing::read_file;

TEST_CASE("empty net emits an empty facts file") {
  CHECK(emit_facts(DecodingNet{}) == "");
}

TEST_CASE("one accept emits one accept line") {
  Node n;
  n.id = "dram";
  n.accept.push_back({0, 0x1000});
  DecodingNet net = DecodingNet::build({n}).take();
  CHECK(emit_facts(net) == "accept(dram, 0x0, 0x1000).\n");
}

TEST_CASE("uniform fixture matches the frozen facts file") {
  auto compiled = dsl::compile_text(read_file(fixture_path("uniform.dsl")));
  REQUIRE(compiled.ok());
  CHECK(emit_facts(compiled.value().first, compiled.value().second) ==
        read_file(fixture_path("golden/uniform.facts")));
}

TEST_CASE("facts round-trip on random nets") {
  for (std::uint32_t seed = 100; seed < 140; ++seed) {
    DecodingNet net = random_net(seed);
    ConfigSpaces conf;
    conf["cfg_space"] = {0x1000, {net.node_ids().front()}};
    // the configurable space must exist as a node
    std::vector<Node> nodes;
    for (const auto& [_, n] : net.nodes()) nodes.push_back(n);
    Node cfg;
    cfg.id = "cfg_space";
    nodes.push_back(cfg);
    DecodingNet with_cfg = DecodingNet::build(std::move(nodes)).take();

    std::string text = emit_facts(with_cfg, conf);
    auto parsed = parse_facts(text);
    REQUIRE(parsed.ok());
    CHECK(parsed.value().first == with_cfg);
    CHECK(parsed.value().second == conf);
    CHECK(emit_facts(parsed.value().first, parsed.value().second) == text);
  }
}

TEST_CASE("parse: comments and blank lines are skipped") {
  auto r = parse_facts("% a comment\n\naccept(d, 0x0, 0x10).\n");
  REQUIRE(r.ok());
  CHECK(r.value().first.has("d"));
}

TEST_CASE("parse: malformed fact reports the line") {
  auto r = parse_facts("accept(d, 0x0).\n");
  REQUIRE(!r.ok());
  CHECK(r.error().code == Errc::syntax_error);
  CHECK(r.error().message.find("line 1") != std::string::npos);
}

TEST_CASE("parse: unknown functor") {
  auto r = parse_facts("frobnicate(d).\n");
  REQUIRE(!r.ok());
  CHECK(r.error().code == Errc::syntax_error);
}

TEST_CASE("parse: semantic errors surface build codes") {
  auto r = parse_facts("translate(a, 0x0, 0x10, missing, 0x0).\n");
  REQUIRE(!r.ok());
  CHECK(r.error().code == Errc::dangling_reference);
}
