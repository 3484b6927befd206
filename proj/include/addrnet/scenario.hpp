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

#pragma once

#include <string>
#include <string_view>

#include "addrnet/trace.hpp"

namespace addrnet {

// A vulnerability scenario: a platform plus a trace that a sound
// monitor must reject. File format: a `key: value` header, the platform
// description and the trace, separated by `---` lines.
//
//   name: <identifier>
//   class: policy-enforcement | partitioning | name-resolution
//   expect: REJECTED <ErrorCode> | SYNTAX
//   expect-line: <n>        (optional)
//   ---
//   <platform dsl>
//   ---
//   <trace>
struct Scenario {
  enum class BugClass { policy_enforcement, partitioning, name_resolution };
  enum class ExpectKind { rejected, syntax };

  std::string name;
  BugClass bug_class = BugClass::policy_enforcement;
  ExpectKind expect_kind = ExpectKind::rejected;
  Errc expect_code = Errc::insufficient_rights;
  int expect_line = -1;  // -1: any line
  std::string platform_text;
  std::string trace_text;
};

std::string_view bug_class_name(Scenario::BugClass c);

Result<Scenario> parse_scenario(std::string_view text);

struct ScenarioOutcome {
  bool pass = false;         // the monitor rejected as expected
  bool guard_applied = false;  // rejection matched code (and line, if given)
  std::string detail;        // verdict or failure description
};

// Runs the scenario under the given monitor options. With guards
// enforced, pass means the expected rejection happened. With guards
// disabled the caller typically asserts !guard_applied (the rejection
// disappears or moves, demonstrating the guard caused it).
ScenarioOutcome run_scenario(const Scenario& sc,
                             const MonitorOptions& opts = {});

}  // namespace addrnet
