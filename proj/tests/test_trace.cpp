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
#include "addrnet/trace.hpp"
#include "support.hpp"

using namespace addrnet;
using addrnet::testing::fixture_path;
using addrnet::testing::read_file;

namespace {

std::pair<DecodingNet, ConfigSpaces> mapping_platform() {
  auto r = dsl::compile_text(read_file(fixture_path("mapping_platform.dsl")));
  REQUIRE(r.ok());
  return r.take();
}

}  // namespace

TEST_CASE("parse: full grammar round-trips through the interpreter") {
  auto trace = parse_trace(
      "# comment\n"
      "init subject a\n"
      "init ram r0 dram 0x0 0x1000\n"
      "init acm a r0 grant,grant:access\n"
      "retype a r0 Frame 0x0 0x1000 f\n"
      "derive a t 0x1000 s\n"
      "map a s 0x0 0x1000 f 0x0 m\n"
      "unmap a m\n"
      "copy a b f access\n"
      "revoke a f\n");
  REQUIRE(trace.ok());
  CHECK(trace.value().ops.size() == 9);
  CHECK(trace.value().ops[0].line == 2);
  CHECK(trace.value().ops[2].rights ==
        AuthoritySet{plain(Right::grant), meta(Right::access)});
}

TEST_CASE("parse: errors carry the line number") {
  auto r = parse_trace("init subject a\nfrobnicate a\n");
  REQUIRE(!r.ok());
  CHECK(r.error().code == Errc::syntax_error);
  CHECK(r.error().message.find("line 2") != std::string::npos);
}

TEST_CASE("parse: init after operations is rejected") {
  auto r = parse_trace(
      "init subject a\n"
      "revoke a x\n"
      "init subject b\n");
  REQUIRE(!r.ok());
  CHECK(r.error().code == Errc::syntax_error);
}

TEST_CASE("parse: wrong arity is rejected") {
  auto r = parse_trace("init ram r0 0x0 0x1000\n");
  REQUIRE(!r.ok());
  CHECK(r.error().code == Errc::syntax_error);
}

TEST_CASE("run: the basic mapping trace validates") {
  auto [net, conf] = mapping_platform();
  auto trace = parse_trace(read_file(fixture_path("mapping_trace.txt")));
  REQUIRE(trace.ok());
  Verdict v = run_trace(net, conf, trace.value());
  CHECK(format_verdict(v) == "VALID");
  CHECK(check_static_security(v.state).empty());
}

TEST_CASE("run: removing the retypes breaks the map step") {
  auto [net, conf] = mapping_platform();
  Trace trace = parse_trace(read_file(fixture_path("mapping_trace.txt"))).take();
  Trace without_retypes;
  for (const auto& op : trace.ops) {
    if (op.kind != TraceOp::Kind::retype) without_retypes.ops.push_back(op);
  }
  Verdict v = run_trace(net, conf, without_retypes);
  REQUIRE(!v.valid);
  CHECK(v.error.code == Errc::unknown_object);
  CHECK(without_retypes.ops[static_cast<std::size_t>(v.rejected_index)].kind ==
        TraceOp::Kind::derive);
}

TEST_CASE("run: every prefix of a valid trace is valid") {
  auto [net, conf] = mapping_platform();
  Trace trace = parse_trace(read_file(fixture_path("mapping_trace.txt"))).take();
  for (std::size_t k = 0; k <= trace.ops.size(); ++k) {
    Trace prefix;
    prefix.ops.assign(trace.ops.begin(), trace.ops.begin() + k);
    Verdict v = run_trace(net, conf, prefix);
    CHECK(v.valid);
  }
}

TEST_CASE("run: rejection keeps prior effects in the reported state") {
  auto [net, conf] = mapping_platform();
  Trace trace = parse_trace(
                    "init subject a\n"
                    "init ram r0 dram 0x0 0x1000\n"
                    "init acm a r0 grant\n"
                    "retype a r0 Frame 0x0 0x1000 f\n"
                    "revoke a nosuch\n")
                    .take();
  Verdict v = run_trace(net, conf, trace);
  REQUIRE(!v.valid);
  CHECK(v.rejected_line == 5);
  CHECK(v.error.code == Errc::unknown_object);
  CHECK(v.state.objects.count("f") == 1);  // effects up to the failure
}

TEST_CASE("format_verdict encodes line and code") {
  auto [net, conf] = mapping_platform();
  Trace trace = parse_trace("init subject a\ninit subject a\n").take();
  Verdict v = run_trace(net, conf, trace);
  CHECK(format_verdict(v) == "REJECTED 2 DuplicateDefinition");
}
