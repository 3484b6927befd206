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

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "addrnet/decoding_net.hpp"

namespace addrnet::dsl {

// Platform description language, line oriented, '#' comments:
//
//   module <name>(<param>, ...) { <decl>* }
//   node <id> { accept [A..B) ; map [A..B) -> <id> @ <base> ; overlay <id> }
//   configurable <id> { granularity <hex> ; targets <id>, ... }
//   instance <id> = <module>(<arg>, ...)
//
// Hex literals are 0x-prefixed; ranges are half-open. Statements may be
// separated by ';' or newlines. Top-level declarations form the
// platform; modules are expanded at instantiation with 'inst.' name
// prefixing. Names must be declared before use.

struct SourceLoc {
  int line = 1;
  int col = 1;

  auto operator<=>(const SourceLoc&) const = default;
};

// A number literal or an identifier (node reference or module
// parameter, resolved at instantiation).
struct Arg {
  enum class Kind { number, ident };
  Kind kind = Kind::number;
  std::uint64_t number = 0;
  std::string ident;
  SourceLoc loc;

  static Arg num(std::uint64_t v) { return {Kind::number, v, "", {}}; }
  static Arg id(std::string s) { return {Kind::ident, 0, std::move(s), {}}; }

  bool operator==(const Arg& o) const {
    return kind == o.kind && number == o.number && ident == o.ident;
  }
};

struct MapStmt {
  Arg lo, hi;  // half-open [lo..hi)
  Arg dst;
  Arg dst_base;

  bool operator==(const MapStmt&) const = default;
};

struct NodeDecl {
  std::string name;
  std::vector<std::pair<Arg, Arg>> accepts;  // [lo..hi)
  std::vector<MapStmt> maps;
  std::optional<Arg> overlay;
  SourceLoc loc;

  bool operator==(const NodeDecl& o) const {
    return name == o.name && accepts == o.accepts && maps == o.maps &&
           overlay == o.overlay;
  }
};

struct ConfigurableDecl {
  std::string name;
  Arg granularity;
  std::vector<Arg> targets;
  SourceLoc loc;

  bool operator==(const ConfigurableDecl& o) const {
    return name == o.name && granularity == o.granularity &&
           targets == o.targets;
  }
};

struct InstanceDecl {
  std::string name;
  std::string module;
  std::vector<Arg> args;
  SourceLoc loc;

  bool operator==(const InstanceDecl& o) const {
    return name == o.name && module == o.module && args == o.args;
  }
};

using Decl = std::variant<NodeDecl, ConfigurableDecl, InstanceDecl>;

struct ModuleDecl {
  std::string name;  // empty for the top-level body
  std::vector<std::string> params;
  std::vector<Decl> body;

  bool operator==(const ModuleDecl&) const = default;
};

struct PlatformAst {
  std::vector<ModuleDecl> modules;
  ModuleDecl top;

  bool operator==(const PlatformAst&) const = default;
};

Result<PlatformAst> parse(std::string_view text);

// Canonical source form; parse(pretty_print(ast)) == ast.
std::string pretty_print(const PlatformAst& ast);

// Expands instances, lowers declarations to a validated net plus the
// configuration spaces of the configurable nodes.
Result<std::pair<DecodingNet, ConfigSpaces>> compile(const PlatformAst& ast);
Result<std::pair<DecodingNet, ConfigSpaces>> compile_text(
    std::string_view text);

// Total lookup structure for one node: every decodable local address
// with its canonical counterpart, plus the undecodable holes.
struct TranslationEntry {
  AddressRange local;
  Name canonical;

  auto operator<=>(const TranslationEntry&) const = default;
};

struct TranslationTable {
  NodeId node;
  std::vector<TranslationEntry> entries;  // sorted, disjoint
  std::vector<AddressRange> gaps;         // undecodable holes

  bool operator==(const TranslationTable&) const = default;
};

Result<TranslationTable> emit_translation_table(const DecodingNet& net,
                                                const NodeId& node);

// Sorted `xlate(<node>, <local-base>, <size>, <canonical-node>,
// <canonical-base>).` lines.
std::string translation_table_facts(const TranslationTable& table);

// Key-value simulator configuration: one section per initiator core
// with its local memory map derived from the translation table.
std::string emit_simulator_config(const DecodingNet& net,
                                  const ConfigSpaces& conf = {});

// Two-core reference topologies over a shared DRAM.
enum class TopologyKind { uniform, swapped, private_, private_swapped };

std::optional<TopologyKind> topology_from_name(std::string_view name);
std::string_view topology_name(TopologyKind k);

struct TopologyParams {
  std::uint64_t dram_size = 0x10000;
  std::uint64_t private_size = 0x4000;
  std::uint64_t granularity = 0x1000;
};

Result<PlatformAst> builtin_topology(TopologyKind kind,
                                     const TopologyParams& params = {});

}  // namespace addrnet::dsl
