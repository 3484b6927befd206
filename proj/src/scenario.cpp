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

#include "addrnet/scenario.hpp"

#include <sstream>
#include <vector>

#include "addrnet/dsl.hpp"

namespace addrnet {

std::string_view bug_class_name(Scenario::BugClass c) {
  switch (c) {
    case Scenario::BugClass::policy_enforcement:
      return "policy-enforcement";
    case Scenario::BugClass::partitioning:
      return "partitioning";
    case Scenario::BugClass::name_resolution:
      return "name-resolution";
  }
  return "policy-enforcement";
}

namespace {

std::optional<Scenario::BugClass> bug_class_from_name(std::string_view name) {
  if (name == "policy-enforcement") return Scenario::BugClass::policy_enforcement;
  if (name == "partitioning") return Scenario::BugClass::partitioning;
  if (name == "name-resolution") return Scenario::BugClass::name_resolution;
  return std::nullopt;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Result<Scenario> parse_scenario(std::string_view text) {
  std::vector<std::string> sections{""};
  std::istringstream in{std::string{text}};
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line) == "---") {
      sections.emplace_back();
    } else {
      sections.back() += line + "\n";
    }
  }
  if (sections.size() != 3) {
    return make_error(Errc::syntax_error,
                      "scenario needs header, platform and trace sections "
                      "separated by '---'");
  }

  Scenario sc;
  bool have_name = false, have_class = false, have_expect = false;
  std::istringstream header{sections[0]};
  int line_no = 0;
  while (std::getline(header, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '%' || t[0] == '#') continue;
    std::size_t colon = t.find(':');
    if (colon == std::string::npos) {
      return make_error(Errc::syntax_error,
                        "scenario header line " + std::to_string(line_no) +
                            ": expected 'key: value'");
    }
    std::string key = trim(t.substr(0, colon));
    std::string value = trim(t.substr(colon + 1));
    if (key == "name") {
      sc.name = value;
      have_name = true;
    } else if (key == "class") {
      auto c = bug_class_from_name(value);
      if (!c) {
        return make_error(Errc::syntax_error,
                          "unknown scenario class '" + value + "'");
      }
      sc.bug_class = *c;
      have_class = true;
    } else if (key == "expect") {
      if (value == "SYNTAX") {
        sc.expect_kind = Scenario::ExpectKind::syntax;
      } else if (value.rfind("REJECTED ", 0) == 0) {
        sc.expect_kind = Scenario::ExpectKind::rejected;
        auto code = errc_from_name(trim(value.substr(9)));
        if (!code) {
          return make_error(Errc::syntax_error,
                            "unknown error code in '" + value + "'");
        }
        sc.expect_code = *code;
      } else {
        return make_error(Errc::syntax_error,
                          "expect must be 'REJECTED <code>' or 'SYNTAX'");
      }
      have_expect = true;
    } else if (key == "expect-line") {
      sc.expect_line = std::atoi(value.c_str());
    } else {
      return make_error(Errc::syntax_error,
                        "unknown scenario header key '" + key + "'");
    }
  }
  if (!have_name || !have_class || !have_expect) {
    return make_error(Errc::syntax_error,
                      "scenario header needs name, class and expect");
  }
  sc.platform_text = sections[1];
  sc.trace_text = sections[2];
  return sc;
}

ScenarioOutcome run_scenario(const Scenario& sc, const MonitorOptions& opts) {
  ScenarioOutcome out;
  Result<std::pair<DecodingNet, ConfigSpaces>> platform =
      dsl::compile_text(sc.platform_text);
  if (!platform) {
    out.detail = "platform does not compile: " + to_string(platform.error());
    return out;
  }
  Result<Trace> trace = parse_trace(sc.trace_text);
  if (!trace) {
    bool expected = sc.expect_kind == Scenario::ExpectKind::syntax;
    out.pass = expected;
    out.guard_applied = false;  // parse errors are not guard rejections
    out.detail = "trace parse: " + to_string(trace.error());
    return out;
  }
  if (sc.expect_kind == Scenario::ExpectKind::syntax) {
    out.detail = "expected a parse failure but the trace parsed";
    return out;
  }

  Verdict v = run_trace(platform.value().first, platform.value().second,
                        trace.value(), opts);
  out.detail = format_verdict(v);
  if (v.valid) return out;
  bool code_match = v.error.code == sc.expect_code;
  bool line_match = sc.expect_line < 0 || v.rejected_line == sc.expect_line;
  out.guard_applied = code_match && line_match;
  out.pass = out.guard_applied;
  if (!out.pass) {
    out.detail += " (expected REJECTED " +
                  std::string{errc_name(sc.expect_code)} +
                  (sc.expect_line >= 0
                       ? " at line " + std::to_string(sc.expect_line)
                       : "") +
                  ")";
  }
  return out;
}

}  // namespace addrnet
