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

#include "addrnet/query.hpp"

#include <algorithm>
#include <deque>

namespace addrnet {

namespace {

// Direct successors of a node: translation targets, the overlay, and
// for configurable spaces their whitelist (marked as needing
// configuration).
std::vector<FlatEdge> direct_next(const DecodingNet& net,
                                  const ConfigSpaces& conf, const NodeId& id) {
  std::vector<FlatEdge> out;
  if (const Node* node = net.find(id)) {
    for (const auto& seg : node->segments) out.push_back({seg.dst_node, false});
    if (node->overlay) out.push_back({*node->overlay, false});
  }
  auto it = conf.find(id);
  if (it != conf.end()) {
    if (it->second.targets.empty()) {
      // Unconstrained space: may be configured to reach any accepting
      // node.
      for (const auto& [nid, node] : net.nodes()) {
        if (!node.accept.empty() && nid != id) out.push_back({nid, true});
      }
    } else {
      for (const auto& t : it->second.targets) out.push_back({t, true});
    }
  }
  return out;
}

struct Classification {
  std::set<NodeId> memory;
  std::set<NodeId> config;
  std::set<NodeId> initiator;

  bool is_vertex(const NodeId& id) const {
    return memory.count(id) || config.count(id) || initiator.count(id);
  }
};

Classification classify(const DecodingNet& net, const ConfigSpaces& conf) {
  Classification c;
  std::set<NodeId> has_incoming;
  for (const auto& [id, node] : net.nodes()) {
    if (!node.accept.empty()) c.memory.insert(id);
    for (const auto& seg : node.segments) has_incoming.insert(seg.dst_node);
    if (node.overlay) has_incoming.insert(*node.overlay);
  }
  for (const auto& [id, desc] : conf) {
    c.config.insert(id);
    for (const auto& t : desc.targets) has_incoming.insert(t);
  }
  for (const auto& [id, node] : net.nodes()) {
    if (!has_incoming.count(id)) c.initiator.insert(id);
  }
  return c;
}

// Edges of one vertex: flood through condensed (non-vertex) nodes,
// stopping at vertices. A path through a whitelist hop inherits
// needs_config.
std::vector<FlatEdge> vertex_edges(const DecodingNet& net,
                                   const ConfigSpaces& conf,
                                   const Classification& cls,
                                   const NodeId& from) {
  std::set<std::pair<NodeId, bool>> seen;
  std::set<FlatEdge> edges;
  std::deque<std::pair<NodeId, bool>> work;
  for (const auto& e : direct_next(net, conf, from)) {
    work.push_back({e.to, e.needs_config});
  }
  while (!work.empty()) {
    auto [cur, flagged] = work.front();
    work.pop_front();
    if (!seen.insert({cur, flagged}).second) continue;
    if (cls.is_vertex(cur)) {
      if (cur != from) edges.insert({cur, flagged});
      continue;
    }
    for (const auto& e : direct_next(net, conf, cur)) {
      work.push_back({e.to, flagged || e.needs_config});
    }
  }
  // Keep only the cheapest flavor of each edge.
  std::vector<FlatEdge> out;
  for (const auto& e : edges) {
    if (e.needs_config && edges.count({e.to, false})) continue;
    out.push_back(e);
  }
  return out;
}

}  // namespace

FlatGraph FlatGraph::flatten(const DecodingNet& net, const ConfigSpaces& conf) {
  FlatGraph g;
  Classification cls = classify(net, conf);
  g.memory_ = cls.memory;
  g.config_ = cls.config;
  g.initiator_ = cls.initiator;
  std::set<NodeId> verts;
  verts.insert(cls.memory.begin(), cls.memory.end());
  verts.insert(cls.config.begin(), cls.config.end());
  verts.insert(cls.initiator.begin(), cls.initiator.end());
  for (const auto& v : verts) {
    g.adjacency_[v] = vertex_edges(net, conf, cls, v);
  }
  return g;
}

FlatGraph FlatGraph::invalidated(const DecodingNet& net,
                                 const ConfigSpaces& conf,
                                 const NodeId& changed) const {
  Classification cls = classify(net, conf);
  std::set<NodeId> verts;
  verts.insert(cls.memory.begin(), cls.memory.end());
  verts.insert(cls.config.begin(), cls.config.end());
  verts.insert(cls.initiator.begin(), cls.initiator.end());
  std::set<NodeId> old_verts;
  for (const auto& [v, _] : adjacency_) old_verts.insert(v);
  if (verts != old_verts) return flatten(net, conf);  // topology changed

  FlatGraph g = *this;
  g.memory_ = cls.memory;
  g.config_ = cls.config;
  g.initiator_ = cls.initiator;
  if (g.adjacency_.count(changed)) {
    g.adjacency_[changed] = vertex_edges(net, conf, cls, changed);
  }
  return g;
}

std::vector<NodeId> FlatGraph::vertices() const {
  std::vector<NodeId> out;
  out.reserve(adjacency_.size());
  for (const auto& [v, _] : adjacency_) out.push_back(v);
  return out;
}

const std::vector<FlatEdge>& FlatGraph::edges(const NodeId& id) const {
  static const std::vector<FlatEdge> kEmpty;
  auto it = adjacency_.find(id);
  return it == adjacency_.end() ? kEmpty : it->second;
}

namespace {

// First granularity-aligned granule not occupied by installed
// translations of the space.
AddressRange free_granule(const DecodingNet& net, const ConfigSpaces& conf,
                          const NodeId& asid) {
  std::uint64_t gran = 0x1000;
  auto it = conf.find(asid);
  if (it != conf.end() && it->second.granularity != 0) {
    gran = it->second.granularity;
  }
  std::vector<AddressRange> used;
  if (const Node* node = net.find(asid)) {
    for (const auto& seg : node->segments) used.push_back(seg.src);
  }
  std::sort(used.begin(), used.end());
  Address base = 0;
  for (const auto& r : used) {
    if (r.base >= base + gran) break;
    Address next = ((r.end() + gran - 1) / gran) * gran;
    base = std::max(base, next);
  }
  return {base, gran};
}

}  // namespace

Result<ConfigPlan> config_nodes(const FlatGraph& g, const DecodingNet& net,
                                const ConfigSpaces& conf, const NodeId& src,
                                const NodeId& dst) {
  if (!g.has_vertex(src)) {
    return make_error(Errc::unknown_node, "'" + src + "' is not a vertex");
  }
  if (!g.has_vertex(dst)) {
    return make_error(Errc::unknown_node, "'" + dst + "' is not a vertex");
  }

  // Dijkstra over (configuration count, lexicographic vertex path).
  struct Best {
    std::size_t cost = ~std::size_t{0};
    std::vector<NodeId> path;
  };
  std::map<NodeId, Best> best;
  best[src] = {0, {src}};
  std::set<NodeId> done;
  while (true) {
    const NodeId* pick = nullptr;
    const Best* pick_best = nullptr;
    for (const auto& [v, b] : best) {
      if (done.count(v)) continue;
      if (!pick_best || b.cost < pick_best->cost ||
          (b.cost == pick_best->cost && b.path < pick_best->path)) {
        pick = &v;
        pick_best = &b;
      }
    }
    if (!pick) break;
    NodeId u = *pick;
    done.insert(u);
    if (u == dst) break;
    for (const auto& e : g.edges(u)) {
      std::size_t cost = best[u].cost + (e.needs_config ? 1 : 0);
      std::vector<NodeId> path = best[u].path;
      path.push_back(e.to);
      auto it = best.find(e.to);
      if (it == best.end() || cost < it->second.cost ||
          (cost == it->second.cost && path < it->second.path)) {
        best[e.to] = {cost, std::move(path)};
      }
    }
  }

  auto it = best.find(dst);
  if (it == best.end()) {
    return make_error(Errc::unreachable,
                      "'" + dst + "' is not reachable from '" + src + "'");
  }

  // The plan lists the configurable spaces whose config edge the path
  // uses, with a concrete segment suggestion each.
  Name target{dst, 0};
  if (const Node* dnode = net.find(dst); dnode && !dnode->accept.empty()) {
    target.addr = dnode->accept.front().base;
  }
  ConfigPlan plan;
  const std::vector<NodeId>& path = it->second.path;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    bool via_config = true;
    for (const auto& e : g.edges(path[i])) {
      if (e.to == path[i + 1] && !e.needs_config) {
        via_config = false;
        break;
      }
    }
    if (via_config) {
      plan.steps.push_back({path[i], free_granule(net, conf, path[i]), target});
    }
  }
  return plan;
}

Result<std::pair<NodeId, AddressRange>> allocation_range(
    const FlatGraph& g, const DecodingNet& net, const NodeId& src,
    const AllocationQuery& query) {
  if (!g.has_vertex(src)) {
    return make_error(Errc::unknown_node, "'" + src + "' is not a vertex");
  }
  // Reachability over both fixed and configurable edges.
  std::set<NodeId> reach{src};
  std::deque<NodeId> work{src};
  while (!work.empty()) {
    NodeId cur = work.front();
    work.pop_front();
    for (const auto& e : g.edges(cur)) {
      if (reach.insert(e.to).second) work.push_back(e.to);
    }
  }
  for (const auto& candidate : g.vertices()) {  // lexicographic order
    if (!g.is_memory(candidate) || !reach.count(candidate)) continue;
    if (query.dst_filter && *query.dst_filter != candidate) continue;
    const Node* node = net.find(candidate);
    if (!node) continue;
    std::vector<AddressRange> reserved;
    auto rit = query.reserved.find(candidate);
    if (rit != query.reserved.end()) reserved = rit->second;
    std::sort(reserved.begin(), reserved.end());
    for (const auto& acc : node->accept) {
      Address base = acc.base;
      for (const auto& r : reserved) {
        if (r.end() <= base) continue;
        if (r.base >= acc.end()) break;
        if (r.base > base && r.base - base >= query.min_size) break;
        base = std::max(base, r.end());
      }
      if (base < acc.end() && acc.end() - base >= query.min_size) {
        return std::pair{candidate, AddressRange{base, acc.end() - base}};
      }
    }
  }
  return make_error(Errc::no_allocatable_memory,
                    "no allocatable range reachable from '" + src + "'");
}

Result<std::vector<ResolvedRange>> resolve_range_filtered(
    const DecodingNet& net, const Name& name, std::uint64_t size,
    const std::optional<NodeId>& dst_filter) {
  Result<std::vector<ResolvedRange>> ranges = resolve_range(net, name, size);
  if (!ranges || !dst_filter) return ranges;
  std::vector<ResolvedRange> out;
  for (const auto& r : ranges.value()) {
    if (r.base.node == *dst_filter) out.push_back(r);
  }
  return out;
}

std::string plan_facts(const NodeId& src, const NodeId& dst,
                       const ConfigPlan& plan) {
  std::string out = "plan(" + src + ", " + dst + ", [";
  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    if (i) out += ", ";
    out += plan.steps[i].aspace;
  }
  out += "]).\n";
  return out;
}

std::string alloc_facts(const NodeId& node, const AddressRange& range) {
  return "alloc(" + node + ", " + hex(range.base) + ", " + hex(range.size) +
         ").\n";
}

}  // namespace addrnet
