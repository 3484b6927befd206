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

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "addrnet/decoding_net.hpp"

namespace addrnet::testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in{path, std::ios::binary};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fixture_path(const std::string& name) {
  return std::string{ADDRNET_FIXTURE_DIR} + "/" + name;
}

// ------------------------------------------------------------- oracle

// Independent per-address walker: iterates translate_step with an
// explicit visited set. The reference against which resolve and
// resolve_range are checked.
struct WalkOutcome {
  enum class Kind { accepted, undecodable, loop };
  Kind kind = Kind::undecodable;
  Name name;

  bool operator==(const WalkOutcome&) const = default;
};

inline WalkOutcome oracle_walk(const DecodingNet& net, Name n) {
  std::set<NodeId> visited;
  while (true) {
    if (!visited.insert(n.node).second) {
      return {WalkOutcome::Kind::loop, n};
    }
    Result<StepResult> step = translate_step(net, n);
    if (!step) return {WalkOutcome::Kind::undecodable, n};
    switch (step.value().kind) {
      case StepResult::Kind::accepted:
        return {WalkOutcome::Kind::accepted, step.value().name};
      case StepResult::Kind::forwarded:
        n = step.value().name;
        break;
      case StepResult::Kind::undecodable:
        return {WalkOutcome::Kind::undecodable, n};
    }
  }
}

// ----------------------------------------------------- random nets

// Deterministic generator of valid nets: per node, disjoint accept
// ranges and translate windows inside a 2^16 window, optional overlay.
// Dangling references are impossible; decode loops are possible and
// intended.
inline DecodingNet random_net(std::uint32_t seed, int max_nodes = 20,
                              int max_regions = 8) {
  std::mt19937 rng{seed};
  auto rnd = [&rng](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>{lo, hi}(rng);
  };
  const std::uint64_t window = 0x10000;
  int node_count = static_cast<int>(rnd(1, static_cast<std::uint64_t>(max_nodes)));
  std::vector<NodeId> ids;
  for (int i = 0; i < node_count; ++i) ids.push_back("n" + std::to_string(i));

  std::vector<Node> nodes;
  for (int i = 0; i < node_count; ++i) {
    Node node;
    node.id = ids[static_cast<std::size_t>(i)];
    std::uint64_t pos = rnd(0, 0x1000);
    int regions = static_cast<int>(rnd(0, static_cast<std::uint64_t>(max_regions)));
    for (int r = 0; r < regions && pos + 0x200 < window; ++r) {
      std::uint64_t len = rnd(1, 0x180) * 0x10;
      if (pos + len > window) break;
      if (rnd(0, 2) == 0) {
        node.accept.push_back({pos, len});
      } else {
        const NodeId& dst = ids[rnd(0, ids.size() - 1)];
        std::uint64_t dst_base = rnd(0, (window - len) / 0x10) * 0x10;
        node.segments.push_back({{pos, len}, dst, dst_base});
      }
      pos += len + rnd(0, 0x400);
    }
    if (rnd(0, 9) < 3) {
      node.overlay = ids[rnd(0, ids.size() - 1)];
    }
    nodes.push_back(std::move(node));
  }
  Result<DecodingNet> net = DecodingNet::build(std::move(nodes));
  // The generator keeps every build invariant by construction.
  return net.take();
}

}  // namespace addrnet::testing
