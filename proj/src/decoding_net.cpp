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

#include "addrnet/decoding_net.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace addrnet {

namespace {

std::string path_string(const std::vector<NodeId>& path) {
  std::string out;
  for (const auto& n : path) {
    if (!out.empty()) out += " -> ";
    out += n;
  }
  return out;
}

// Collects per-node violations shared by build() and well_formed().
void check_node(const Node& node, const DecodingNet* net,
                std::vector<Violation>& out) {
  if (!valid_identifier(node.id)) {
    out.push_back({Errc::invalid_identifier, node.id,
                   "node id '" + node.id + "' is not a valid identifier"});
  }

  struct Region {
    AddressRange range;
    bool is_accept;
  };
  std::vector<Region> regions;

  for (const auto& r : node.accept) {
    if (!range_valid(r)) {
      out.push_back({Errc::invalid_range, node.id,
                     "accept " + to_string(r) + " is empty or overflows"});
      continue;
    }
    regions.push_back({r, true});
  }
  for (const auto& s : node.segments) {
    if (!range_valid(s.src)) {
      out.push_back({Errc::invalid_range, node.id,
                     "map " + to_string(s.src) + " is empty or overflows"});
      continue;
    }
    if (s.dst_base > ~std::uint64_t{0} - s.src.size) {
      out.push_back({Errc::address_overflow, node.id,
                     "map " + to_string(s.src) + " -> " + s.dst_node + " @ " +
                         hex(s.dst_base) + " overflows the target space"});
      continue;
    }
    if (net && !net->has(s.dst_node)) {
      out.push_back({Errc::dangling_reference, node.id,
                     "map target '" + s.dst_node + "' is not a node"});
    }
    regions.push_back({s.src, false});
  }
  if (node.overlay && net && !net->has(*node.overlay)) {
    out.push_back({Errc::dangling_reference, node.id,
                   "overlay target '" + *node.overlay + "' is not a node"});
  }

  std::sort(regions.begin(), regions.end(),
            [](const Region& a, const Region& b) {
              return a.range.base < b.range.base;
            });
  for (std::size_t i = 1; i < regions.size(); ++i) {
    if (regions[i - 1].range.overlaps(regions[i].range)) {
      out.push_back({Errc::overlapping_ranges, node.id,
                     (regions[i - 1].is_accept ? "accept " : "map ") +
                         to_string(regions[i - 1].range) + " overlaps " +
                         (regions[i].is_accept ? "accept " : "map ") +
                         to_string(regions[i].range)});
    }
  }
}

void check_overlay_cycles(const DecodingNet& net, std::vector<Violation>& out) {
  std::set<NodeId> done;
  for (const auto& [id, node] : net.nodes()) {
    if (done.count(id)) continue;
    std::vector<NodeId> chain;
    std::set<NodeId> on_chain;
    const Node* cur = &node;
    while (true) {
      chain.push_back(cur->id);
      on_chain.insert(cur->id);
      if (!cur->overlay) break;
      const Node* next = net.find(*cur->overlay);
      if (!next) break;  // dangling, reported elsewhere
      if (on_chain.count(next->id)) {
        out.push_back({Errc::loop_detected, next->id,
                       "overlay cycle: " + path_string(chain) + " -> " +
                           next->id});
        break;
      }
      if (done.count(next->id)) break;  // already checked from there
      cur = next;
    }
    for (const auto& n : chain) done.insert(n);
  }
}

}  // namespace

Result<DecodingNet> DecodingNet::build(std::vector<Node> nodes) {
  std::set<NodeId> seen;
  for (const auto& n : nodes) {
    if (!seen.insert(n.id).second) {
      return make_error(Errc::duplicate_node,
                        "node '" + n.id + "' defined twice");
    }
  }
  DecodingNet net = from_nodes_unchecked(std::move(nodes));
  std::vector<Violation> violations = well_formed(net);
  // Overlay cycles are legal at build time; resolve reports them lazily.
  std::erase_if(violations,
                [](const Violation& v) { return v.code == Errc::loop_detected; });
  if (!violations.empty()) {
    const Violation& v = violations.front();
    return make_error(v.code, "node '" + v.node + "': " + v.detail);
  }
  return net;
}

DecodingNet DecodingNet::from_nodes_unchecked(std::vector<Node> nodes) {
  DecodingNet net;
  for (auto& n : nodes) {
    std::sort(n.accept.begin(), n.accept.end());
    std::sort(n.segments.begin(), n.segments.end(),
              [](const TranslateSegment& a, const TranslateSegment& b) {
                return a.src.base < b.src.base;
              });
    net.nodes_.emplace(n.id, std::move(n));
  }
  return net;
}

const Node* DecodingNet::find(const NodeId& id) const {
  auto it = nodes_.find(id);
  return it == nodes_.end() ? nullptr : &it->second;
}

std::vector<NodeId> DecodingNet::node_ids() const {
  std::vector<NodeId> ids;
  ids.reserve(nodes_.size());
  for (const auto& [id, _] : nodes_) ids.push_back(id);
  return ids;
}

Result<StepResult> translate_step(const DecodingNet& net, const Name& name) {
  const Node* node = net.find(name.node);
  if (!node) {
    return make_error(Errc::unknown_node, "no node '" + name.node + "'", name);
  }
  for (const auto& r : node->accept) {
    if (r.contains(name.addr)) {
      return StepResult{StepResult::Kind::accepted, name};
    }
  }
  for (const auto& s : node->segments) {
    if (s.src.contains(name.addr)) {
      return StepResult{StepResult::Kind::forwarded,
                        Name{s.dst_node, s.dst_base + (name.addr - s.src.base)}};
    }
  }
  if (node->overlay) {
    return StepResult{StepResult::Kind::forwarded,
                      Name{*node->overlay, name.addr}};
  }
  return StepResult{StepResult::Kind::undecodable, name};
}

Result<Name> resolve(const DecodingNet& net, const Name& name) {
  std::vector<NodeId> path;
  std::unordered_set<std::string> visited;
  Name cur = name;
  while (true) {
    if (!visited.insert(cur.node).second) {
      return make_error(Errc::loop_detected,
                        "decode loop: " + path_string(path) + " -> " + cur.node,
                        cur);
    }
    path.push_back(cur.node);
    Result<StepResult> step = translate_step(net, cur);
    if (!step) return step.error();
    switch (step.value().kind) {
      case StepResult::Kind::accepted:
        return step.value().name;
      case StepResult::Kind::forwarded:
        cur = step.value().name;
        break;
      case StepResult::Kind::undecodable:
        return make_error(Errc::undecodable,
                          "no decode for " + to_string(cur) + " (path " +
                              path_string(path) + ")",
                          cur);
    }
  }
}

namespace {

// Resolves the longest prefix of [name.addr, name.addr + max_len) that
// decodes contiguously; returns its canonical base and length.
Result<std::pair<Name, std::uint64_t>> resolve_chunk(const DecodingNet& net,
                                                     const Name& name,
                                                     std::uint64_t max_len) {
  std::vector<NodeId> path;
  std::unordered_set<std::string> visited;
  Name cur = name;
  std::uint64_t len = max_len;
  while (true) {
    if (!visited.insert(cur.node).second) {
      return make_error(Errc::loop_detected,
                        "decode loop: " + path_string(path) + " -> " + cur.node,
                        cur);
    }
    path.push_back(cur.node);
    const Node* node = net.find(cur.node);
    if (!node) {
      return make_error(Errc::unknown_node, "no node '" + cur.node + "'", cur);
    }
    bool stepped = false;
    for (const auto& r : node->accept) {
      if (r.contains(cur.addr)) {
        return std::pair{cur, std::min(len, r.end() - cur.addr)};
      }
    }
    for (const auto& s : node->segments) {
      if (s.src.contains(cur.addr)) {
        len = std::min(len, s.src.end() - cur.addr);
        cur = Name{s.dst_node, s.dst_base + (cur.addr - s.src.base)};
        stepped = true;
        break;
      }
    }
    if (stepped) continue;
    if (node->overlay) {
      // Bound the chunk by the next accept/map boundary above the
      // address; past it the overlay no longer applies uniformly.
      Address bound = ~std::uint64_t{0};
      bool bounded = false;
      for (const auto& r : node->accept) {
        if (r.base > cur.addr && r.base < bound) bound = r.base, bounded = true;
      }
      for (const auto& s : node->segments) {
        if (s.src.base > cur.addr && s.src.base < bound) {
          bound = s.src.base, bounded = true;
        }
      }
      if (bounded) len = std::min(len, bound - cur.addr);
      cur = Name{*node->overlay, cur.addr};
      continue;
    }
    return make_error(Errc::undecodable,
                      "no decode for " + to_string(cur) + " (path " +
                          path_string(path) + ")",
                      cur);
  }
}

}  // namespace

Result<std::vector<ResolvedRange>> resolve_range(const DecodingNet& net,
                                                 const Name& name,
                                                 std::uint64_t size) {
  if (size == 0) {
    return make_error(Errc::bad_params, "resolve_range requires size > 0");
  }
  if (!range_valid({name.addr, size})) {
    return make_error(Errc::address_overflow,
                      "range " + to_string(name) + " + " + hex(size) +
                          " overflows");
  }
  std::vector<ResolvedRange> out;
  std::uint64_t done = 0;
  while (done < size) {
    Name cur{name.node, name.addr + done};
    Result<std::pair<Name, std::uint64_t>> chunk =
        resolve_chunk(net, cur, size - done);
    if (!chunk) {
      Error e = chunk.error();
      e.message += "; first failing input address " +
                   to_string(Name{name.node, name.addr + done});
      return e;
    }
    const auto& [base, len] = chunk.value();
    if (!out.empty() && out.back().base.node == base.node &&
        out.back().base.addr + out.back().size == base.addr) {
      out.back().size += len;
    } else {
      out.push_back({base, len});
    }
    done += len;
  }
  return out;
}

std::string to_string(const Violation& v) {
  return std::string{errc_name(v.code)} + " at '" + v.node + "': " + v.detail;
}

std::vector<Violation> well_formed(const DecodingNet& net) {
  std::vector<Violation> out;
  for (const auto& [id, node] : net.nodes()) {
    check_node(node, &net, out);
  }
  check_overlay_cycles(net, out);
  return out;
}

}  // namespace addrnet
