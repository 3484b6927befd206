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

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "addrnet/dsl.hpp"
#include "addrnet/facts.hpp"
#include "addrnet/query.hpp"
#include "addrnet/scenario.hpp"
#include "addrnet/trace.hpp"

namespace {

using namespace addrnet;

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitUsage = 2;

struct Output {
  std::string path;  // empty: stdout

  int write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return kExitOk;
    }
    std::ofstream out{path, std::ios::binary};
    if (!out) {
      std::cerr << "error: cannot write '" << path << "'\n";
      return kExitUsage;
    }
    out << text;
    return kExitOk;
  }
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in{path, std::ios::binary};
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<std::uint64_t> parse_u64(const std::string& s) {
  std::uint64_t value = 0;
  int base = 10;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (s.size() > 2 && s[0] == '0' && s[1] == 'x') {
    base = 16;
    begin += 2;
  }
  auto [ptr, ec] = std::from_chars(begin, end, value, base);
  if (ec != std::errc{} || ptr != end || begin == end) return std::nullopt;
  return value;
}

struct PlatformArgs {
  std::string topology;
  std::string dram_size = "0x10000";
  std::string private_size = "0x4000";
  std::string granularity = "0x1000";

  void attach(CLI::App* cmd) {
    cmd->add_option("--topology", topology,
                    "built-in topology instead of a platform file")
        ->check(CLI::IsMember(
            {"uniform", "swapped", "private", "private-swapped"}));
    cmd->add_option("--dram-size", dram_size, "built-in topology DRAM bytes");
    cmd->add_option("--private-size", private_size,
                    "built-in topology per-core private bytes");
    cmd->add_option("--granularity", granularity,
                    "built-in topology mapping granularity");
  }

  // Consumes the platform file argument from args unless --topology is
  // set. Reports usage errors on stderr.
  std::optional<std::pair<DecodingNet, ConfigSpaces>> load(
      std::vector<std::string>& args) const {
    if (!topology.empty()) {
      auto dram = parse_u64(dram_size);
      auto priv = parse_u64(private_size);
      auto gran = parse_u64(granularity);
      if (!dram || !priv || !gran) {
        std::cerr << "error: bad size/granularity value\n";
        return std::nullopt;
      }
      Result<dsl::PlatformAst> ast = dsl::builtin_topology(
          *dsl::topology_from_name(topology), {*dram, *priv, *gran});
      if (!ast) {
        std::cerr << "error: " << to_string(ast.error()) << "\n";
        return std::nullopt;
      }
      Result<std::pair<DecodingNet, ConfigSpaces>> net =
          dsl::compile(ast.value());
      if (!net) {
        std::cerr << "error: " << to_string(net.error()) << "\n";
        return std::nullopt;
      }
      return net.take();
    }
    if (args.empty()) {
      std::cerr << "error: need a platform file or --topology\n";
      return std::nullopt;
    }
    std::string path = args.front();
    args.erase(args.begin());
    std::optional<std::string> text = read_file(path);
    if (!text) {
      std::cerr << "error: cannot read '" << path << "'\n";
      return std::nullopt;
    }
    // .facts files are the emitted interchange form; everything else is
    // treated as a platform description
    Result<std::pair<DecodingNet, ConfigSpaces>> net =
        path.size() > 6 && path.substr(path.size() - 6) == ".facts"
            ? parse_facts(*text)
            : dsl::compile_text(*text);
    if (!net) {
      std::cerr << path << ": " << to_string(net.error()) << "\n";
      return std::nullopt;
    }
    return net.take();
  }
};

int usage(const std::string& what) {
  std::cerr << "error: " << what << "\n";
  return kExitUsage;
}

int cmd_check(const PlatformArgs& platform, std::vector<std::string> args,
              bool no_guards, const Output& out) {
  auto net = platform.load(args);
  if (!net) return kExitUsage;
  if (args.size() != 1) return usage("check expects a trace file");
  std::optional<std::string> text = read_file(args[0]);
  if (!text) return usage("cannot read '" + args[0] + "'");
  Result<Trace> trace = parse_trace(*text);
  if (!trace) {
    std::cerr << args[0] << ": " << to_string(trace.error()) << "\n";
    return kExitUsage;
  }
  Verdict v =
      run_trace(net->first, net->second, trace.value(), {!no_guards});
  int rc = out.write(format_verdict(v) + "\n");
  if (rc != kExitOk) return rc;
  return v.valid ? kExitOk : kExitRejected;
}

int cmd_resolve(const PlatformArgs& platform, std::vector<std::string> args,
                const std::string& dst_filter, const std::string& format,
                const Output& out) {
  auto net = platform.load(args);
  if (!net) return kExitUsage;
  if (args.size() != 3) return usage("resolve expects <node> <addr> <size>");
  auto addr = parse_u64(args[1]);
  auto size = parse_u64(args[2]);
  if (!addr || !size) return usage("bad address or size");
  std::optional<NodeId> filter;
  if (!dst_filter.empty()) filter = dst_filter;
  Result<std::vector<ResolvedRange>> ranges =
      resolve_range_filtered(net->first, Name{args[0], *addr}, *size, filter);
  if (!ranges) {
    std::cerr << "error: " << to_string(ranges.error()) << "\n";
    return kExitRejected;
  }
  if (format == "json") {
    nlohmann::json doc = nlohmann::json::array();
    std::uint64_t offset = 0;
    for (const auto& r : ranges.value()) {
      doc.push_back({{"node", r.base.node},
                     {"base", r.base.addr},
                     {"size", r.size},
                     {"input_offset", offset}});
      offset += r.size;
    }
    return out.write(doc.dump(2) + "\n");
  }
  std::string text;
  std::uint64_t offset = 0;
  for (const auto& r : ranges.value()) {
    text += "xlate(" + args[0] + ", " + hex(*addr + offset) + ", " +
            hex(r.size) + ", " + r.base.node + ", " + hex(r.base.addr) +
            ").\n";
    offset += r.size;
  }
  return out.write(text);
}

int cmd_query(const PlatformArgs& platform, std::vector<std::string> args,
              const std::string& format, const Output& out) {
  auto net = platform.load(args);
  if (!net) return kExitUsage;
  if (args.size() != 2) return usage("query expects <src> <dst>");
  FlatGraph g = FlatGraph::flatten(net->first, net->second);
  Result<ConfigPlan> plan =
      config_nodes(g, net->first, net->second, args[0], args[1]);
  if (!plan) {
    std::cerr << "error: " << to_string(plan.error()) << "\n";
    return kExitRejected;
  }
  if (format == "json") {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : plan.value().steps) {
      steps.push_back({{"aspace", s.aspace},
                       {"dst_base", s.dst.base},
                       {"dst_size", s.dst.size},
                       {"target_node", s.target.node},
                       {"target_addr", s.target.addr}});
    }
    nlohmann::json doc{{"src", args[0]}, {"dst", args[1]}, {"steps", steps}};
    return out.write(doc.dump(2) + "\n");
  }
  return out.write(plan_facts(args[0], args[1], plan.value()));
}

int cmd_gen(const PlatformArgs& platform, std::vector<std::string> args,
            bool facts, bool tables, bool simconfig, const Output& out) {
  auto net = platform.load(args);
  if (!net) return kExitUsage;
  if (!args.empty()) return usage("unexpected argument '" + args[0] + "'");
  if (facts + tables + simconfig != 1) {
    return usage("pick exactly one of --facts, --tables, --simconfig");
  }
  if (facts) {
    return out.write(emit_facts(net->first, net->second));
  }
  if (tables) {
    std::string text;
    for (const auto& id : net->first.node_ids()) {
      Result<dsl::TranslationTable> table =
          dsl::emit_translation_table(net->first, id);
      if (!table) {
        std::cerr << "error: " << to_string(table.error()) << "\n";
        return kExitRejected;
      }
      text += dsl::translation_table_facts(table.value());
    }
    return out.write(text);
  }
  return out.write(dsl::emit_simulator_config(net->first, net->second));
}

int cmd_corpus(const std::string& dir, bool no_guards, const Output& out) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  std::error_code ec;
  fs::directory_iterator it{dir, ec};
  if (ec) return usage("cannot read directory '" + dir + "'");
  for (const auto& entry : it) {
    if (entry.path().extension() == ".scenario") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::string text;
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& path : files) {
    std::optional<std::string> content = read_file(path.string());
    if (!content) return usage("cannot read '" + path.string() + "'");
    Result<Scenario> sc = parse_scenario(*content);
    if (!sc) {
      std::cerr << path.string() << ": " << to_string(sc.error()) << "\n";
      return kExitUsage;
    }
    const Scenario& scenario = sc.value();
    if (!no_guards) {
      ScenarioOutcome o = run_scenario(scenario);
      if (o.pass) {
        ++passed;
        text += "PASS " + scenario.name + "\n";
      } else {
        ++failed;
        text += "FAIL " + scenario.name + ": " + o.detail + "\n";
      }
      continue;
    }
    // Guard-stripped run: the expected rejection must disappear (or
    // move), showing the guard caused it. Parse-level scenarios have no
    // guard to strip.
    if (scenario.expect_kind == Scenario::ExpectKind::syntax) {
      ++skipped;
      text += "SKIP " + scenario.name + " (parse-level)\n";
      continue;
    }
    ScenarioOutcome o = run_scenario(scenario, MonitorOptions{false});
    if (!o.guard_applied) {
      ++passed;
      text += "FLIP " + scenario.name + " (" + o.detail + ")\n";
    } else {
      ++failed;
      text += "FAIL " + scenario.name + ": still rejects without guards (" +
              o.detail + ")\n";
    }
  }
  text += (no_guards ? "corpus-flip: " : "corpus: ") + std::to_string(passed) +
          "/" + std::to_string(passed + failed) + " passed";
  if (skipped) text += ", " + std::to_string(skipped) + " skipped";
  text += "\n";
  int rc = out.write(text);
  if (rc != kExitOk) return rc;
  return failed == 0 ? kExitOk : kExitRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "addrnet: decoding-net platform modeling, reference-monitor trace "
      "checking, and configuration planning"};
  app.require_subcommand(1);

  Output out;
  std::string format = "facts";
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out.path,
                    "write output to a file instead of stdout");
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"facts", "json"}));
  };
  auto add_args = [](CLI::App* cmd, std::vector<std::string>& sink,
                     const std::string& desc) {
    cmd->add_option("args", sink, desc)->expected(0, 8);
  };

  auto* check = app.add_subcommand(
      "check", "validate an operation trace against a platform");
  add_common(check);
  PlatformArgs check_platform;
  check_platform.attach(check);
  std::vector<std::string> check_args;
  add_args(check, check_args, "[platform.dsl] trace.txt");
  bool check_no_guards = false;
  check->add_flag("--unsafe-no-guards", check_no_guards,
                  "test-only: skip monitor guards");

  auto* resolve = app.add_subcommand(
      "resolve", "resolve a local range to canonical ranges");
  add_common(resolve);
  PlatformArgs resolve_platform;
  resolve_platform.attach(resolve);
  std::vector<std::string> resolve_args;
  add_args(resolve, resolve_args, "[platform.dsl] node addr size");
  std::string resolve_filter;
  resolve->add_option("--dst", resolve_filter,
                      "only report ranges accepted at this node");

  auto* query = app.add_subcommand(
      "query", "plan which spaces to configure so dst is reachable from src");
  add_common(query);
  PlatformArgs query_platform;
  query_platform.attach(query);
  std::vector<std::string> query_args;
  add_args(query, query_args, "[platform.dsl] src dst");

  auto* gen = app.add_subcommand("gen", "generate artifacts from a platform");
  add_common(gen);
  PlatformArgs gen_platform;
  gen_platform.attach(gen);
  std::vector<std::string> gen_args;
  add_args(gen, gen_args, "[platform.dsl]");
  bool gen_facts = false, gen_tables = false, gen_simconfig = false;
  gen->add_flag("--facts", gen_facts, "emit the facts file");
  gen->add_flag("--tables", gen_tables, "emit translation tables");
  gen->add_flag("--simconfig", gen_simconfig, "emit the simulator config");

  auto* corpus = app.add_subcommand(
      "corpus", "run a directory of vulnerability scenarios");
  add_common(corpus);
  std::string corpus_dir;
  corpus->add_option("dir", corpus_dir, "directory of .scenario files")
      ->required();
  bool corpus_no_guards = false;
  corpus->add_flag("--unsafe-no-guards", corpus_no_guards,
                   "test-only: verify rejections vanish without guards");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (check->parsed()) {
    return cmd_check(check_platform, check_args, check_no_guards, out);
  }
  if (resolve->parsed()) {
    return cmd_resolve(resolve_platform, resolve_args, resolve_filter, format,
                       out);
  }
  if (query->parsed()) {
    return cmd_query(query_platform, query_args, format, out);
  }
  if (gen->parsed()) {
    return cmd_gen(gen_platform, gen_args, gen_facts, gen_tables,
                   gen_simconfig, out);
  }
  if (corpus->parsed()) {
    return cmd_corpus(corpus_dir, corpus_no_guards, out);
  }
  return kExitUsage;
}
