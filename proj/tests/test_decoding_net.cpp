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

#include "addrnet/decoding_net.hpp"
#include "support.hpp"

using namespace addrnet;
using addrnet::testing::oracle_walk;
using addrnet::testing::random_net;
using addrnet::testing::WalkOutcome;

namespace {

Node accept_node(const NodeId& id, std::uint64_t base, std::uint64_t size) {
  Node n;
  n.id = id;
  n.accept.push_back({base, size});
  return n;
}

Node map_node(const NodeId& id, AddressRange src, const NodeId& dst,
              Address dst_base) {
  Node n;
  n.id = id;
  n.segments.push_back({src, dst, dst_base});
  return n;
}

}  // namespace

TEST_CASE("build: empty list gives an empty net") {
  Result<DecodingNet> net = DecodingNet::build({});
  REQUIRE(net.ok());
  CHECK(net.value().empty());
}

TEST_CASE("build: dangling translate target") {
  Node a = accept_node("a", 0, 0x1000);
  Node b = map_node("b", {0, 0x1000}, "x", 0);
  Result<DecodingNet> net = DecodingNet::build({a, b});
  REQUIRE(!net.ok());
  CHECK(net.error().code == Errc::dangling_reference);
  CHECK(net.error().message.find("'x'") != std::string::npos);
}

TEST_CASE("build: duplicate node ids") {
  Result<DecodingNet> net =
      DecodingNet::build({accept_node("a", 0, 1), accept_node("a", 4, 1)});
  REQUIRE(!net.ok());
  CHECK(net.error().code == Errc::duplicate_node);
}

TEST_CASE("build: overlapping accept and map ranges") {
  Node n = accept_node("a", 0, 0x1000);
  n.segments.push_back({{0x800, 0x1000}, "a", 0});
  Result<DecodingNet> net = DecodingNet::build({n});
  REQUIRE(!net.ok());
  CHECK(net.error().code == Errc::overlapping_ranges);
}

TEST_CASE("build: translated range overflowing the target space") {
  Node a = accept_node("a", 0, 0x1000);
  Node b = map_node("b", {0, 0x1000}, "a", ~std::uint64_t{0} - 0x10);
  Result<DecodingNet> net = DecodingNet::build({a, b});
  REQUIRE(!net.ok());
  CHECK(net.error().code == Errc::address_overflow);
}

TEST_CASE("translate_step: accept is terminal") {
  DecodingNet net = DecodingNet::build({accept_node("d", 0, 0x1000)}).take();
  Result<StepResult> r = translate_step(net, {"d", 0x10});
  REQUIRE(r.ok());
  CHECK(r.value().kind == StepResult::Kind::accepted);
  CHECK(r.value().name == Name{"d", 0x10});
}

TEST_CASE("translate_step: offset arithmetic through a window") {
  DecodingNet net = DecodingNet::build({accept_node("d", 0, 0x1000),
                                        map_node("c", {0x1000, 0x1000}, "d", 0)})
                        .take();
  Result<StepResult> r = translate_step(net, {"c", 0x1800});
  REQUIRE(r.ok());
  CHECK(r.value().kind == StepResult::Kind::forwarded);
  CHECK(r.value().name == Name{"d", 0x800});
  // agrees with the single-step walker
  CHECK(oracle_walk(net, {"c", 0x1800}) ==
        WalkOutcome{WalkOutcome::Kind::accepted, Name{"d", 0x800}});
}

TEST_CASE("translate_step: no match and no overlay is undecodable") {
  DecodingNet net = DecodingNet::build({accept_node("d", 0, 0x1000)}).take();
  Result<StepResult> r = translate_step(net, {"d", 0x4000});
  REQUIRE(r.ok());
  CHECK(r.value().kind == StepResult::Kind::undecodable);
}

TEST_CASE("translate_step: unknown node") {
  DecodingNet net = DecodingNet::build({}).take();
  Result<StepResult> r = translate_step(net, {"nope", 0});
  REQUIRE(!r.ok());
  CHECK(r.error().code == Errc::unknown_node);
}

TEST_CASE("resolve: already canonical name resolves to itself") {
  DecodingNet net = DecodingNet::build({accept_node("d", 0, 0x1000)}).take();
  Result<Name> r = resolve(net, {"d", 0x123});
  REQUIRE(r.ok());
  CHECK(r.value() == Name{"d", 0x123});
}

TEST_CASE("resolve: three-hop chain accumulates offsets") {
  DecodingNet net =
      DecodingNet::build({accept_node("dram", 0, 0x10000),
                          map_node("bus", {0x1000, 0x1000}, "dram", 0x3000),
                          map_node("cpu", {0, 0x1000}, "bus", 0x1000)})
          .take();
  WalkOutcome expected = oracle_walk(net, {"cpu", 0x10});
  REQUIRE(expected.kind == WalkOutcome::Kind::accepted);
  CHECK(expected.name == Name{"dram", 0x3010});
  Result<Name> r = resolve(net, {"cpu", 0x10});
  REQUIRE(r.ok());
  CHECK(r.value() == Name{"dram", 0x3010});
}

TEST_CASE("resolve: overlay forwards unmatched addresses unchanged") {
  Node cpu = map_node("cpu", {0, 0x1000}, "dram", 0);
  cpu.overlay = "bus";
  DecodingNet net = DecodingNet::build({accept_node("dram", 0, 0x10000),
                                        accept_node("bus", 0x4000, 0x1000),
                                        cpu})
                        .take();
  Result<Name> r = resolve(net, {"cpu", 0x4800});
  REQUIRE(r.ok());
  CHECK(r.value() == Name{"bus", 0x4800});
}

TEST_CASE("resolve: loop detection") {
  Node a;
  a.id = "a";
  a.overlay = "b";
  Node b;
  b.id = "b";
  b.overlay = "a";
  DecodingNet net = DecodingNet::build({a, b}).take();
  Result<Name> r = resolve(net, {"a", 0});
  REQUIRE(!r.ok());
  CHECK(r.error().code == Errc::loop_detected);
}

TEST_CASE("resolve: dead end reports the path") {
  DecodingNet net =
      DecodingNet::build({map_node("a", {0, 0x1000}, "b", 0x2000),
                          accept_node("b", 0, 0x1000)})
          .take();
  Result<Name> r = resolve(net, {"a", 0x10});
  REQUIRE(!r.ok());
  CHECK(r.error().code == Errc::undecodable);
  CHECK(r.error().where == Name{"b", 0x2010});
}

TEST_CASE("resolve_range: single window stays one range") {
  DecodingNet net = DecodingNet::build({accept_node("d", 0, 0x10000),
                                        map_node("c", {0, 0x1000}, "d", 0x100)})
                        .take();
  auto r = resolve_range(net, {"c", 0x10}, 0x20);
  REQUIRE(r.ok());
  REQUIRE(r.value().size() == 1);
  CHECK(r.value()[0] == ResolvedRange{{"d", 0x110}, 0x20});
}

TEST_CASE("resolve_range: straddling two windows to different nodes") {
  DecodingNet net =
      DecodingNet::build({accept_node("d1", 0, 0x1000), accept_node("d2", 0, 0x1000),
                          [] {
                            Node c;
                            c.id = "c";
                            c.segments.push_back({{0, 0x100}, "d1", 0});
                            c.segments.push_back({{0x100, 0x100}, "d2", 0x80});
                            return c;
                          }()})
          .take();
  auto r = resolve_range(net, {"c", 0x80}, 0x100);
  REQUIRE(r.ok());
  REQUIRE(r.value().size() == 2);
  CHECK(r.value()[0] == ResolvedRange{{"d1", 0x80}, 0x80});
  CHECK(r.value()[1] == ResolvedRange{{"d2", 0x80}, 0x80});
}

TEST_CASE("resolve_range: adjacent windows onto one node merge") {
  Node c;
  c.id = "c";
  c.segments.push_back({{0, 0x100}, "d", 0x100});
  c.segments.push_back({{0x100, 0x100}, "d", 0x200});
  DecodingNet net =
      DecodingNet::build({accept_node("d", 0, 0x1000), c}).take();
  auto r = resolve_range(net, {"c", 0}, 0x200);
  REQUIRE(r.ok());
  REQUIRE(r.value().size() == 1);
  CHECK(r.value()[0] == ResolvedRange{{"d", 0x100}, 0x200});
}

TEST_CASE("resolve_range: aliased windows produce repeated ranges") {
  Node c;
  c.id = "c";
  c.segments.push_back({{0, 0x100}, "d", 0});
  c.segments.push_back({{0x100, 0x100}, "d", 0});
  DecodingNet net =
      DecodingNet::build({accept_node("d", 0, 0x1000), c}).take();
  auto r = resolve_range(net, {"c", 0}, 0x200);
  REQUIRE(r.ok());
  REQUIRE(r.value().size() == 2);
  CHECK(r.value()[0] == r.value()[1]);
}

TEST_CASE("resolve_range: reports the first failing input address") {
  Node c;
  c.id = "c";
  c.segments.push_back({{0, 0x100}, "d", 0});
  DecodingNet net =
      DecodingNet::build({accept_node("d", 0, 0x1000), c}).take();
  auto r = resolve_range(net, {"c", 0x80}, 0x100);
  REQUIRE(!r.ok());
  CHECK(r.error().code == Errc::undecodable);
  CHECK(r.error().message.find("0x100") != std::string::npos);
}

TEST_CASE("resolve_range: rejects zero size and overflow") {
  DecodingNet net = DecodingNet::build({accept_node("d", 0, 0x1000)}).take();
  CHECK(resolve_range(net, {"d", 0}, 0).error().code == Errc::bad_params);
  CHECK(resolve_range(net, {"d", ~std::uint64_t{0} - 2}, 0x10).error().code ==
        Errc::address_overflow);
}

TEST_CASE("well_formed: valid net yields an empty report") {
  DecodingNet net = DecodingNet::build({accept_node("d", 0, 0x1000),
                                        map_node("c", {0, 0x1000}, "d", 0)})
                        .take();
  CHECK(well_formed(net).empty());
}

TEST_CASE("well_formed: overlapping accepts yield one violation") {
  Node n;
  n.id = "a";
  n.accept.push_back({0, 0x1000});
  n.accept.push_back({0x800, 0x1000});
  DecodingNet net = DecodingNet::from_nodes_unchecked({n});
  std::vector<Violation> report = well_formed(net);
  REQUIRE(report.size() == 1);
  CHECK(report[0].code == Errc::overlapping_ranges);
  CHECK(report[0].node == "a");
}

TEST_CASE("well_formed: self-overlay is a loop violation") {
  Node n;
  n.id = "a";
  n.overlay = "a";
  DecodingNet net = DecodingNet::from_nodes_unchecked({n});
  std::vector<Violation> report = well_formed(net);
  REQUIRE(report.size() == 1);
  CHECK(report[0].code == Errc::loop_detected);
}

TEST_CASE("resolve agrees with the single-step walker on random nets") {
  // every address of the 2^16 window on a dozen nets; wider net
  // coverage runs in the acceptance suite
  for (std::uint32_t seed = 0; seed < 12; ++seed) {
    DecodingNet net = random_net(seed);
    const NodeId start = "n0";
    for (Address a = 0; a < 0x10000; ++a) {
      WalkOutcome expected = oracle_walk(net, {start, a});
      Result<Name> got = resolve(net, {start, a});
      if (expected.kind == WalkOutcome::Kind::accepted) {
        REQUIRE(got.ok());
        REQUIRE(got.value() == expected.name);
      } else {
        REQUIRE(!got.ok());
        REQUIRE(got.error().code == (expected.kind == WalkOutcome::Kind::loop
                                         ? Errc::loop_detected
                                         : Errc::undecodable));
      }
    }
  }
}

TEST_CASE("resolve terminates within |nodes| steps") {
  // A maximal overlay chain: resolution visits every node once.
  std::vector<Node> nodes;
  for (int i = 0; i < 64; ++i) {
    Node n;
    n.id = "n" + std::to_string(i);
    if (i < 63) n.overlay = "n" + std::to_string(i + 1);
    else n.accept.push_back({0, 0x1000});
    nodes.push_back(n);
  }
  DecodingNet net = DecodingNet::build(std::move(nodes)).take();
  Result<Name> r = resolve(net, {"n0", 0x10});
  REQUIRE(r.ok());
  CHECK(r.value() == Name{"n63", 0x10});
}
