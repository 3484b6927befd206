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
#include <set>
#include <vector>

#include "addrnet/decoding_net.hpp"

namespace addrnet {

// Flattened routing view of a net: only initiators (no incoming edges),
// configurable spaces and memory nodes (non-empty accept) are vertices;
// fixed pure routers are condensed away. An edge marked needs_config
// exists through the whitelist of a configurable space and requires
// configuring that space; unmarked edges follow installed translations.
struct FlatEdge {
  NodeId to;
  bool needs_config = false;

  auto operator<=>(const FlatEdge&) const = default;
};

class FlatGraph {
 public:
  static FlatGraph flatten(const DecodingNet& net, const ConfigSpaces& conf);

  // Recomputes what the mutated space contributes; equals a fresh
  // flatten of the new net. Falls back to a full rebuild when the
  // vertex set itself changed.
  FlatGraph invalidated(const DecodingNet& net, const ConfigSpaces& conf,
                        const NodeId& changed) const;

  bool has_vertex(const NodeId& id) const { return adjacency_.count(id) > 0; }
  std::vector<NodeId> vertices() const;
  const std::vector<FlatEdge>& edges(const NodeId& id) const;
  bool is_memory(const NodeId& id) const { return memory_.count(id) > 0; }
  bool is_configurable(const NodeId& id) const { return config_.count(id) > 0; }
  bool is_initiator(const NodeId& id) const { return initiator_.count(id) > 0; }

  bool operator==(const FlatGraph&) const = default;

 private:
  std::map<NodeId, std::vector<FlatEdge>> adjacency_;
  std::set<NodeId> memory_;
  std::set<NodeId> config_;
  std::set<NodeId> initiator_;
};

// One space to configure: install a translation of dst onto target.
struct PlanStep {
  AddressSpaceId aspace;
  AddressRange dst;
  Name target;

  auto operator<=>(const PlanStep&) const = default;
};

// Configurable spaces on a minimum-configuration path from source to
// destination, in path order. Empty when already reachable.
struct ConfigPlan {
  std::vector<PlanStep> steps;

  auto operator<=>(const ConfigPlan&) const = default;
};

// Shortest-path planning: minimizes the number of spaces to configure
// (config edges weigh 1, fixed edges 0); ties break on the
// lexicographically smallest vertex path.
Result<ConfigPlan> config_nodes(const FlatGraph& g, const DecodingNet& net,
                                const ConfigSpaces& conf, const NodeId& src,
                                const NodeId& dst);

struct AllocationQuery {
  std::optional<NodeId> dst_filter;
  std::uint64_t min_size = 1;
  // Canonical ranges already in use, excluded from the result.
  std::map<NodeId, std::vector<AddressRange>> reserved;
};

// Deterministically picks an accepting node reachable from src (through
// fixed or configurable edges) with a free canonical range:
// lexicographically smallest node, lowest free base.
Result<std::pair<NodeId, AddressRange>> allocation_range(
    const FlatGraph& g, const DecodingNet& net, const NodeId& src,
    const AllocationQuery& query = {});

// resolve_range with an optional destination filter: only decomposition
// chunks accepted at dst_filter are returned (order preserved).
Result<std::vector<ResolvedRange>> resolve_range_filtered(
    const DecodingNet& net, const Name& name, std::uint64_t size,
    const std::optional<NodeId>& dst_filter);

// Facts-style output for golden tests.
std::string plan_facts(const NodeId& src, const NodeId& dst,
                       const ConfigPlan& plan);
std::string alloc_facts(const NodeId& node, const AddressRange& range);

}  // namespace addrnet
