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

#include <map>
#include <optional>
#include <vector>

#include "addrnet/result.hpp"
#include "addrnet/types.hpp"

namespace addrnet {

// Offset-linear translation window: an address a in src maps to
// Name(dst_node, dst_base + (a - src.base)).
struct TranslateSegment {
  AddressRange src;
  NodeId dst_node;
  Address dst_base = 0;

  auto operator<=>(const TranslateSegment&) const = default;
};

// One address space. Accept ranges are terminal (canonical) addresses;
// segments forward sub-ranges into other spaces; the overlay, if any,
// forwards every address matched by neither, unchanged, to another node.
// Accept ranges and segment sources must be pairwise disjoint.
struct Node {
  NodeId id;
  std::vector<AddressRange> accept;
  std::vector<TranslateSegment> segments;
  std::optional<NodeId> overlay;

  auto operator<=>(const Node&) const = default;
};

// Immutable snapshot of the translation hardware: a directed graph of
// address-space nodes. Build once, query concurrently.
class DecodingNet {
 public:
  DecodingNet() = default;

  // Validates all node and net invariants; accept ranges and segments
  // come out sorted by base address.
  static Result<DecodingNet> build(std::vector<Node> nodes);

  // No validation; duplicate ids keep the first occurrence. For
  // assembling nets whose defects well_formed() is meant to report.
  static DecodingNet from_nodes_unchecked(std::vector<Node> nodes);

  const Node* find(const NodeId& id) const;
  bool has(const NodeId& id) const { return find(id) != nullptr; }
  const std::map<NodeId, Node>& nodes() const { return nodes_; }
  std::vector<NodeId> node_ids() const;
  bool empty() const { return nodes_.empty(); }

  bool operator==(const DecodingNet&) const = default;

 private:
  std::map<NodeId, Node> nodes_;
};

// Outcome of decoding one address at one node.
struct StepResult {
  enum class Kind { accepted, forwarded, undecodable };
  Kind kind = Kind::undecodable;
  Name name;  // canonical name when accepted, next hop when forwarded
};

// One decode step. Accept wins over translate (disjoint by
// construction); the overlay applies only when neither matches.
Result<StepResult> translate_step(const DecodingNet& net, const Name& name);

// Follows translate_step until an accept, visiting each node at most
// once. Errors: Undecodable (dead end) and Loop (node revisited), both
// carrying the visited path in the message.
Result<Name> resolve(const DecodingNet& net, const Name& name);

// A contiguous canonical range: size bytes accepted at base.
struct ResolvedRange {
  Name base;
  std::uint64_t size = 0;

  auto operator<=>(const ResolvedRange&) const = default;
};

// Canonical decomposition of [name.addr, name.addr + size) into maximal
// contiguous canonical ranges, ordered by input address. The returned
// sizes sum to size. On failure the error reports the first input
// address that does not resolve.
Result<std::vector<ResolvedRange>> resolve_range(const DecodingNet& net,
                                                 const Name& name,
                                                 std::uint64_t size);

struct Violation {
  Errc code;
  NodeId node;
  std::string detail;

  auto operator<=>(const Violation&) const = default;
};

std::string to_string(const Violation& v);

// Structural validity report; empty iff every node and net invariant
// holds. Overlay cycles are reported as loop violations.
std::vector<Violation> well_formed(const DecodingNet& net);

}  // namespace addrnet
