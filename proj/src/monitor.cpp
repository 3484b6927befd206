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

#include "addrnet/monitor.hpp"

#include <algorithm>
#include <deque>

namespace addrnet {

std::string_view object_type_name(ObjectType t) {
  switch (t) {
    case ObjectType::ram:
      return "RAM";
    case ObjectType::frame:
      return "Frame";
    case ObjectType::tstructure:
      return "TStructure";
  }
  return "RAM";
}

std::optional<ObjectType> object_type_from_name(std::string_view name) {
  if (name == "RAM") return ObjectType::ram;
  if (name == "Frame") return ObjectType::frame;
  if (name == "TStructure") return ObjectType::tstructure;
  return std::nullopt;
}

// ---------------------------------------------------------------- Mdb

void Mdb::add_root(const MdbKey& key) { parent_.emplace(key, std::nullopt); }

void Mdb::add_child(const MdbKey& parent, const MdbKey& child) {
  parent_.emplace(child, parent);
  children_[parent].insert(child);
}

void Mdb::erase(const MdbKey& key) {
  auto it = parent_.find(key);
  if (it == parent_.end()) return;
  if (it->second) {
    auto cit = children_.find(*it->second);
    if (cit != children_.end()) {
      cit->second.erase(key);
      if (cit->second.empty()) children_.erase(cit);
    }
  }
  children_.erase(key);
  parent_.erase(it);
}

bool Mdb::contains(const MdbKey& key) const { return parent_.count(key) > 0; }

std::optional<MdbKey> Mdb::parent(const MdbKey& key) const {
  auto it = parent_.find(key);
  return it == parent_.end() ? std::nullopt : it->second;
}

const std::set<MdbKey>& Mdb::children(const MdbKey& key) const {
  static const std::set<MdbKey> kEmpty;
  auto it = children_.find(key);
  return it == children_.end() ? kEmpty : it->second;
}

std::vector<MdbKey> Mdb::descendants(const MdbKey& key) const {
  std::vector<MdbKey> order;
  std::deque<MdbKey> work{key};
  while (!work.empty()) {
    MdbKey cur = work.front();
    work.pop_front();
    if (!(cur == key)) order.push_back(cur);
    for (const auto& ch : children(cur)) work.push_back(ch);
  }
  std::reverse(order.begin(), order.end());  // deepest first
  return order;
}

std::vector<MdbKey> Mdb::roots() const {
  std::vector<MdbKey> out;
  for (const auto& [key, parent] : parent_) {
    if (!parent) out.push_back(key);
  }
  return out;
}

// ------------------------------------------------------------ helpers

namespace {

bool id_taken(const MonitorState& st, const std::string& id) {
  return st.objects.count(id) || st.aspaces.count(id) ||
         st.mdb.contains(mapping_key(id));
}

const MemoryObject* find_object(const MonitorState& st, const ObjectId& oid) {
  auto it = st.objects.find(oid);
  return it == st.objects.end() ? nullptr : &it->second;
}

const AddressSpace* find_space(const MonitorState& st,
                               const AddressSpaceId& asid) {
  auto it = st.aspaces.find(asid);
  return it == st.aspaces.end() ? nullptr : &it->second;
}

std::optional<AddressSpaceId> space_of_mapping(const MonitorState& st,
                                               const MappingId& mid) {
  for (const auto& [asid, space] : st.aspaces) {
    if (space.mappings.count(mid)) return asid;
  }
  return std::nullopt;
}

bool is_translation_object(const MonitorState& st, const ObjectId& o) {
  const MemoryObject* obj = find_object(st, o);
  return obj && obj->type == ObjectType::tstructure;
}

// True iff the node's accept ranges fully cover the range.
bool accepts_range(const Node& node, const AddressRange& range) {
  Address cur = range.base;
  for (const auto& r : node.accept) {  // sorted by base
    if (cur >= range.end()) break;
    if (r.end() <= cur) continue;
    if (r.base > cur) return false;
    cur = r.end();
  }
  return cur >= range.end();
}

Result<void> check_subject(const MonitorState& st, const SubjectId& s) {
  if (!st.subjects.count(s)) {
    return make_error(Errc::unknown_subject, "no subject '" + s + "'");
  }
  return {};
}

bool aligned(std::uint64_t v, std::uint64_t granularity) {
  return granularity != 0 && v % granularity == 0;
}

// Nodes reachable from the seed set through fixed translations and
// configurable-space whitelists. nullopt means "every node" (an
// unconstrained space is reachable).
std::optional<std::set<NodeId>> whitelist_closure(
    const MonitorState& st, const std::vector<NodeId>& seeds) {
  std::set<NodeId> seen;
  std::deque<NodeId> work(seeds.begin(), seeds.end());
  while (!work.empty()) {
    NodeId cur = work.front();
    work.pop_front();
    if (!seen.insert(cur).second) continue;
    const AddressSpace* space = find_space(st, cur);
    if (space && !space->is_static) {
      if (space->targets.empty()) return std::nullopt;  // unconstrained
      for (const auto& t : space->targets) work.push_back(t);
      continue;
    }
    if (const Node* node = st.platform.find(cur)) {
      for (const auto& seg : node->segments) work.push_back(seg.dst_node);
      if (node->overlay) work.push_back(*node->overlay);
    }
  }
  return seen;
}

Result<void> check_whitelist(const MonitorState& st, const AddressSpace& space,
                             const NodeId& target) {
  if (space.targets.empty()) return {};
  auto closure = whitelist_closure(st, space.targets);
  if (!closure || closure->count(target)) return {};
  return make_error(Errc::config_space_violation,
                    "space '" + space.asid + "' cannot route into '" + target +
                        "' (configuration space excludes it)");
}

}  // namespace

bool holds_owner_grant(const MonitorState& st, const SubjectId& s,
                       const MdbKey& entity) {
  std::optional<MdbKey> cur = entity;
  while (cur) {
    if (cur->kind == MdbKey::Kind::object &&
        st.acm.check(s, cur->id, Right::grant)) {
      return true;
    }
    cur = st.mdb.parent(*cur);
  }
  return false;
}

// --------------------------------------------------------- init state

Result<MonitorState> init_state(const DecodingNet& platform,
                                const ConfigSpaces& conf,
                                const std::vector<SubjectId>& subjects,
                                const std::vector<RamRoot>& roots,
                                const std::vector<AcmInit>& acm,
                                const MonitorOptions& opts) {
  std::vector<Violation> violations = well_formed(platform);
  if (!violations.empty()) {
    const Violation& v = violations.front();
    return make_error(v.code, "platform: node '" + v.node + "': " + v.detail);
  }
  MonitorState st;
  st.platform = platform;
  for (const auto& [id, node] : platform.nodes()) {
    AddressSpace space;
    space.asid = id;
    auto it = conf.find(id);
    if (it != conf.end()) {
      if (it->second.granularity == 0) {
        return make_error(Errc::bad_params,
                          "space '" + id + "' has zero granularity");
      }
      space.granularity = it->second.granularity;
      space.targets = it->second.targets;
      space.is_static = false;
    } else {
      space.is_static = true;
    }
    st.aspaces.emplace(id, std::move(space));
  }
  for (const auto& [id, desc] : conf) {
    if (!platform.has(id)) {
      return make_error(Errc::dangling_reference,
                        "configurable space '" + id + "' is not a node");
    }
  }
  MonitorState cur = std::move(st);
  for (const auto& s : subjects) {
    Result<MonitorState> next = add_subject(cur, s);
    if (!next) return next.error();
    cur = next.take();
  }
  for (const auto& root : roots) {
    Result<MonitorState> next = add_ram_root(cur, root, opts);
    if (!next) return next.error();
    cur = next.take();
  }
  for (const auto& entry : acm) {
    Result<MonitorState> next =
        set_acm_entry(cur, entry.subject, entry.object, entry.rights, opts);
    if (!next) return next.error();
    cur = next.take();
  }
  return cur;
}

Result<MonitorState> add_subject(const MonitorState& st, const SubjectId& s) {
  if (!valid_identifier(s)) {
    return make_error(Errc::invalid_identifier, "bad subject id '" + s + "'");
  }
  if (st.subjects.count(s)) {
    return make_error(Errc::duplicate_definition,
                      "subject '" + s + "' already exists");
  }
  MonitorState next = st;
  next.subjects.insert(s);
  return next;
}

Result<MonitorState> add_ram_root(const MonitorState& st, const RamRoot& root,
                                  const MonitorOptions& opts) {
  if (!valid_identifier(root.oid)) {
    return make_error(Errc::invalid_identifier, "bad object id '" + root.oid + "'");
  }
  if (id_taken(st, root.oid)) {
    return make_error(Errc::duplicate_definition,
                      "id '" + root.oid + "' already in use");
  }
  if (opts.enforce_guards) {
    if (!range_valid({root.base.addr, root.size})) {
      return make_error(Errc::invalid_range,
                        "region " + to_string(root.base) + " + " +
                            hex(root.size) + " is empty or overflows");
    }
    const Node* node = st.platform.find(root.base.node);
    if (!node) {
      return make_error(Errc::unknown_node,
                        "no node '" + root.base.node + "'", root.base);
    }
    if (!accepts_range(*node, {root.base.addr, root.size})) {
      return make_error(Errc::non_canonical_base,
                        "region " + to_string(root.base) + " + " +
                            hex(root.size) +
                            " is not accepted by its node (base must be "
                            "canonical and must not span address spaces)",
                        root.base);
    }
    for (const auto& [oid, obj] : st.objects) {
      if (obj.base.node == root.base.node &&
          obj.range().overlaps({root.base.addr, root.size})) {
        return make_error(Errc::overlapping_roots,
                          "region overlaps root '" + oid + "'");
      }
    }
  }
  MonitorState next = st;
  next.objects[root.oid] =
      MemoryObject{root.oid, ObjectType::ram, root.base, root.size};
  next.mdb.add_root(object_key(root.oid));
  return next;
}

Result<MonitorState> set_acm_entry(const MonitorState& st, const SubjectId& s,
                                   const ObjectId& o, AuthoritySet rights,
                                   const MonitorOptions& opts) {
  MonitorState next = st;
  AcmScope scope;
  scope.subject_exists = [&st](const SubjectId& id) {
    return st.subjects.count(id) > 0;
  };
  scope.object_exists = [&st](const ObjectId& id) {
    return st.objects.count(id) > 0 || st.aspaces.count(id) > 0;
  };
  if (opts.enforce_guards) {
    scope.is_translation_object = [&st](const ObjectId& id) {
      return is_translation_object(st, id);
    };
  } else {
    scope.is_translation_object = [](const ObjectId&) { return false; };
  }
  if (Result<void> r = next.acm.set(s, o, std::move(rights), scope); !r) {
    return r.error();
  }
  return next;
}

// ----------------------------------------------------------- retype

Result<MonitorState> retype(const MonitorState& st, const SubjectId& s,
                            const ObjectId& parent, ObjectType new_type,
                            std::uint64_t offset, std::uint64_t size,
                            const ObjectId& child, const MonitorOptions& opts) {
  if (Result<void> r = check_subject(st, s); !r) return r.error();
  const MemoryObject* p = find_object(st, parent);
  if (!p) return make_error(Errc::unknown_object, "no object '" + parent + "'");
  if (!valid_identifier(child)) {
    return make_error(Errc::invalid_identifier, "bad object id '" + child + "'");
  }
  if (id_taken(st, child)) {
    return make_error(Errc::duplicate_definition,
                      "id '" + child + "' already in use");
  }
  if (opts.enforce_guards) {
    if (!holds_owner_grant(st, s, object_key(parent))) {
      return make_error(Errc::insufficient_rights,
                        "'" + s + "' holds no grant over '" + parent + "'");
    }
    if (p->type != ObjectType::ram) {
      return make_error(Errc::illegal_retype,
                        std::string{object_type_name(p->type)} +
                            " objects cannot be retyped");
    }
    if (size == 0 || offset > p->size || size > p->size - offset) {
      return make_error(Errc::range_conflict,
                        "child range [" + hex(offset) + ".." +
                            hex(offset + size) + ") outside parent '" +
                            parent + "'");
    }
    AddressRange child_range{p->base.addr + offset, size};
    for (const auto& sibling_key : st.mdb.children(object_key(parent))) {
      if (sibling_key.kind != MdbKey::Kind::object) continue;
      const MemoryObject* sib = find_object(st, sibling_key.id);
      if (sib && sib->range().overlaps(child_range)) {
        return make_error(Errc::range_conflict,
                          "child range overlaps sibling '" + sib->oid + "'");
      }
    }
  }
  MonitorState next = st;
  next.objects[child] = MemoryObject{
      child, new_type, Name{p->base.node, p->base.addr + offset}, size};
  next.mdb.add_child(object_key(parent), object_key(child));
  if (new_type == ObjectType::frame) {
    next.acm.add(s, child, plain(Right::grant));
  }
  return next;
}

// ----------------------------------------------------------- derive

Result<MonitorState> derive_address_space(const MonitorState& st,
                                          const SubjectId& s,
                                          const ObjectId& tstruct,
                                          std::uint64_t granularity,
                                          const AddressSpaceId& asid,
                                          const MonitorOptions& opts) {
  if (Result<void> r = check_subject(st, s); !r) return r.error();
  const MemoryObject* t = find_object(st, tstruct);
  if (!t) {
    return make_error(Errc::unknown_object, "no object '" + tstruct + "'");
  }
  if (!valid_identifier(asid)) {
    return make_error(Errc::invalid_identifier, "bad space id '" + asid + "'");
  }
  if (id_taken(st, asid)) {
    return make_error(Errc::duplicate_definition,
                      "id '" + asid + "' already in use");
  }
  if (opts.enforce_guards) {
    if (t->type != ObjectType::tstructure) {
      return make_error(Errc::wrong_type,
                        "'" + tstruct + "' is not a translation structure");
    }
    for (const auto& [id, space] : st.aspaces) {
      if (space.backing == tstruct) {
        return make_error(Errc::already_derived,
                          "'" + tstruct + "' already defines space '" + id +
                              "'");
      }
    }
    if (!holds_owner_grant(st, s, object_key(tstruct))) {
      return make_error(Errc::insufficient_rights,
                        "'" + s + "' holds no grant over '" + tstruct + "'");
    }
    if (granularity == 0) {
      return make_error(Errc::bad_params, "zero granularity");
    }
  }
  MonitorState next = st;
  AddressSpace space;
  space.asid = asid;
  space.backing = tstruct;
  space.granularity = granularity == 0 ? 0x1000 : granularity;
  space.is_static = false;
  next.aspaces.emplace(asid, std::move(space));
  next.mdb.add_child(object_key(tstruct), space_key(asid));
  next.acm.add(s, asid, plain(Right::map));
  return next;
}

// -------------------------------------------------------------- map

Result<MonitorState> map(const MonitorState& st, const SubjectId& s,
                         const AddressSpaceId& asid, const AddressRange& dst,
                         const ObjectId& obj, std::uint64_t obj_offset,
                         const MappingId& mid, const MonitorOptions& opts) {
  if (Result<void> r = check_subject(st, s); !r) return r.error();
  const AddressSpace* space = find_space(st, asid);
  if (!space) return make_error(Errc::unknown_space, "no space '" + asid + "'");
  const MemoryObject* o = find_object(st, obj);
  if (!o) return make_error(Errc::unknown_object, "no object '" + obj + "'");
  if (!valid_identifier(mid)) {
    return make_error(Errc::invalid_identifier, "bad mapping id '" + mid + "'");
  }
  if (id_taken(st, mid)) {
    return make_error(Errc::duplicate_definition,
                      "id '" + mid + "' already in use");
  }
  bool had_map = st.acm.check(s, asid, Right::map);
  bool had_grant = st.acm.check(s, obj, Right::grant);
  if (opts.enforce_guards) {
    if (space->is_static) {
      return make_error(Errc::static_space,
                        "space '" + asid + "' has a fixed configuration");
    }
    if (!had_map) {
      return make_error(Errc::insufficient_rights,
                        "'" + s + "' holds no map right on space '" + asid +
                            "'");
    }
    if (o->type != ObjectType::frame) {
      return make_error(Errc::partitioning_violation,
                        std::string{object_type_name(o->type)} +
                            " objects are not mappable");
    }
    if (!had_grant) {
      return make_error(Errc::insufficient_rights,
                        "'" + s + "' holds no grant right on '" + obj + "'");
    }
    if (!range_valid(dst)) {
      return make_error(Errc::invalid_range,
                        "destination " + to_string(dst) +
                            " is empty or overflows");
    }
    if (!aligned(dst.base, space->granularity) ||
        !aligned(dst.size, space->granularity)) {
      return make_error(Errc::misaligned,
                        "destination " + to_string(dst) +
                            " violates granularity " +
                            hex(space->granularity));
    }
    if (obj_offset > o->size || dst.size > o->size - obj_offset) {
      return make_error(Errc::insufficient_rights,
                        "mapping exceeds granted object '" + obj + "' (" +
                            hex(dst.size) + " at offset " + hex(obj_offset) +
                            " > size " + hex(o->size) + ")");
    }
    for (const auto& [other_mid, rec] : space->mappings) {
      if (rec.src.overlaps(dst)) {
        return make_error(Errc::overlap,
                          "destination overlaps mapping '" + other_mid + "'");
      }
    }
    if (Result<void> r = check_whitelist(st, *space, o->base.node); !r) {
      return r.error();
    }
  }
  MonitorState next = st;
  MappingRecord rec{mid, asid, dst, obj, obj_offset, {s, had_map, had_grant}};
  next.aspaces[asid].mappings.emplace(mid, std::move(rec));
  next.mdb.add_child(object_key(obj), mapping_key(mid));
  return next;
}

// ------------------------------------------------------------ unmap

Result<MonitorState> unmap(const MonitorState& st, const SubjectId& s,
                           const MappingId& mid, const MonitorOptions& opts) {
  if (Result<void> r = check_subject(st, s); !r) return r.error();
  std::optional<AddressSpaceId> asid = space_of_mapping(st, mid);
  if (!asid) {
    return make_error(Errc::unknown_mapping, "no mapping '" + mid + "'");
  }
  if (opts.enforce_guards && !st.acm.check(s, *asid, Right::map)) {
    return make_error(Errc::insufficient_rights,
                      "'" + s + "' holds no map right on space '" + *asid +
                          "'");
  }
  MonitorState next = st;
  next.aspaces[*asid].mappings.erase(mid);
  next.mdb.erase(mapping_key(mid));
  return next;
}

// ------------------------------------------------------------- copy

Result<MonitorState> copy(const MonitorState& st, const SubjectId& s_from,
                          const SubjectId& s_to, const ObjectId& o,
                          const Authority& a, const MonitorOptions& opts) {
  if (Result<void> r = check_subject(st, s_from); !r) return r.error();
  if (Result<void> r = check_subject(st, s_to); !r) return r.error();
  if (!st.objects.count(o) && !st.aspaces.count(o)) {
    return make_error(Errc::unknown_object, "no object '" + o + "'");
  }
  if (opts.enforce_guards) {
    if (a.right == Right::access && is_translation_object(st, o)) {
      return make_error(Errc::partitioning_violation,
                        "access to translation object '" + o + "'");
    }
    bool authorized;
    if (a.meta) {
      // Sharing a meta authority requires holding it (nesting depth 1).
      authorized = st.acm.holds(s_from, o, a);
    } else {
      authorized = st.acm.check_meta(s_from, o, a.right) ||
                   (a.right == Right::access &&
                    st.acm.check(s_from, o, Right::grant));
    }
    if (!authorized) {
      return make_error(Errc::insufficient_rights,
                        "'" + s_from + "' cannot grant '" +
                            authority_name(a) + "' on '" + o + "'");
    }
  }
  MonitorState next = st;
  next.acm.add(s_to, o, a);
  return next;
}

// ----------------------------------------------------------- revoke

Result<MonitorState> revoke(const MonitorState& st, const SubjectId& s,
                            const ObjectId& o, const MonitorOptions& opts) {
  if (Result<void> r = check_subject(st, s); !r) return r.error();
  if (!st.objects.count(o)) {
    return make_error(Errc::unknown_object, "no object '" + o + "'");
  }
  if (opts.enforce_guards && !holds_owner_grant(st, s, object_key(o))) {
    return make_error(Errc::insufficient_rights,
                      "'" + s + "' holds no grant over '" + o + "'");
  }

  MonitorState next = st;
  std::vector<MdbKey> subtree = next.mdb.descendants(object_key(o));

  // Mappings installed in a deleted space live in the MDB under their
  // target objects, which may survive; collect them as well.
  std::vector<MappingId> dead_mappings;
  std::vector<AddressSpaceId> dead_spaces;
  std::vector<ObjectId> dead_objects;
  for (const auto& key : subtree) {
    switch (key.kind) {
      case MdbKey::Kind::mapping:
        dead_mappings.push_back(key.id);
        break;
      case MdbKey::Kind::space:
        dead_spaces.push_back(key.id);
        break;
      case MdbKey::Kind::object:
        dead_objects.push_back(key.id);
        break;
    }
  }
  for (const auto& asid : dead_spaces) {
    for (const auto& [mid, _] : next.aspaces.at(asid).mappings) {
      dead_mappings.push_back(mid);
    }
  }
  std::sort(dead_mappings.begin(), dead_mappings.end());
  dead_mappings.erase(
      std::unique(dead_mappings.begin(), dead_mappings.end()),
      dead_mappings.end());

  for (const auto& mid : dead_mappings) {
    if (auto asid = space_of_mapping(next, mid)) {
      next.aspaces[*asid].mappings.erase(mid);
    }
    next.mdb.erase(mapping_key(mid));
  }
  for (const auto& asid : dead_spaces) {
    next.aspaces.erase(asid);
    next.mdb.erase(space_key(asid));
    next.acm.erase_object(asid);
  }
  for (const auto& oid : dead_objects) {
    next.objects.erase(oid);
    next.mdb.erase(object_key(oid));
    next.acm.erase_object(oid);
  }
  next.acm.erase_object(o);
  return next;
}

// ------------------------------------------------------- modify map

Result<MonitorState> modify_map(const MonitorState& st, const SubjectId& s,
                                const AddressSpaceId& asid,
                                const std::vector<MapReplacement>& replacements,
                                const MonitorOptions& opts) {
  if (Result<void> r = check_subject(st, s); !r) return r.error();
  const AddressSpace* space = find_space(st, asid);
  if (!space) return make_error(Errc::unknown_space, "no space '" + asid + "'");
  if (opts.enforce_guards) {
    if (space->is_static) {
      return make_error(Errc::static_space,
                        "space '" + asid + "' has a fixed configuration");
    }
    if (!st.acm.check(s, asid, Right::map)) {
      return make_error(Errc::insufficient_rights,
                        "'" + s + "' holds no map right on space '" + asid +
                            "'");
    }
  }
  MonitorState work = st;
  for (const auto& rep : replacements) {
    std::vector<MappingId> displaced;
    for (const auto& [mid, rec] : work.aspaces.at(asid).mappings) {
      if (rec.src.overlaps(rep.dst)) displaced.push_back(mid);
    }
    for (const auto& mid : displaced) {
      Result<MonitorState> r = unmap(work, s, mid, opts);
      if (!r) return r.error();
      work = r.take();
    }
  }
  for (const auto& rep : replacements) {
    Result<MonitorState> r =
        map(work, s, asid, rep.dst, rep.obj, rep.obj_offset, rep.mid, opts);
    if (!r) return r.error();
    work = r.take();
  }
  return work;
}

// --------------------------------------------------------- checking

namespace {

void check_space_config(const MonitorState& st, const AddressSpace& space,
                        std::vector<Violation>& out) {
  if (space.is_static) {
    if (!space.mappings.empty()) {
      out.push_back({Errc::static_space, space.asid,
                     "static space carries mappings"});
    }
    return;
  }
  std::vector<const MappingRecord*> recs;
  for (const auto& [mid, rec] : space.mappings) recs.push_back(&rec);
  for (const MappingRecord* rec : recs) {
    if (!range_valid(rec->src)) {
      out.push_back({Errc::invalid_range, space.asid,
                     "mapping '" + rec->mid + "' range " +
                         to_string(rec->src) + " is empty or overflows"});
      continue;
    }
    if (!aligned(rec->src.base, space.granularity) ||
        !aligned(rec->src.size, space.granularity)) {
      out.push_back({Errc::misaligned, space.asid,
                     "mapping '" + rec->mid + "' " + to_string(rec->src) +
                         " violates granularity " + hex(space.granularity)});
    }
    const MemoryObject* obj = find_object(st, rec->target);
    if (!obj) {
      out.push_back({Errc::dangling_reference, space.asid,
                     "mapping '" + rec->mid + "' targets missing object '" +
                         rec->target + "'"});
      continue;
    }
    if (obj->type != ObjectType::frame) {
      out.push_back({Errc::partitioning_violation, space.asid,
                     "mapping '" + rec->mid + "' targets " +
                         std::string{object_type_name(obj->type)} + " '" +
                         obj->oid + "'"});
    }
    if (rec->target_offset > obj->size ||
        rec->src.size > obj->size - rec->target_offset) {
      out.push_back({Errc::insufficient_rights, space.asid,
                     "mapping '" + rec->mid + "' exceeds object '" +
                         obj->oid + "'"});
    }
    if (!rec->justification.had_map_right ||
        !rec->justification.had_grant_right) {
      out.push_back({Errc::insufficient_rights, space.asid,
                     "mapping '" + rec->mid +
                         "' is not justified by any recorded rights of '" +
                         rec->justification.creator + "'"});
    }
    // The mapped canonical range must not touch a translation
    // structure.
    AddressRange target_range{obj->base.addr + rec->target_offset,
                              rec->src.size};
    for (const auto& [oid, other] : st.objects) {
      if (other.type != ObjectType::tstructure) continue;
      if (other.base.node == obj->base.node &&
          other.range().overlaps(target_range)) {
        out.push_back({Errc::partitioning_violation, space.asid,
                       "mapping '" + rec->mid +
                           "' routes into translation structure '" + oid +
                           "'"});
      }
    }
    if (Result<void> r = check_whitelist(st, space, obj->base.node); !r) {
      out.push_back({Errc::config_space_violation, space.asid,
                     "mapping '" + rec->mid + "': " + r.error().message});
    }
  }
  for (std::size_t i = 0; i < recs.size(); ++i) {
    for (std::size_t j = i + 1; j < recs.size(); ++j) {
      if (recs[i]->src.overlaps(recs[j]->src)) {
        out.push_back({Errc::overlap, space.asid,
                       "mappings '" + recs[i]->mid + "' and '" +
                           recs[j]->mid + "' overlap"});
      }
    }
  }
}

void check_objects(const MonitorState& st, std::vector<Violation>& out) {
  for (const auto& [oid, obj] : st.objects) {
    const Node* node = st.platform.find(obj.base.node);
    if (!node) {
      out.push_back({Errc::non_canonical_base, oid,
                     "object base node '" + obj.base.node + "' missing"});
      continue;
    }
    if (!range_valid(obj.range()) || !accepts_range(*node, obj.range())) {
      out.push_back({Errc::non_canonical_base, oid,
                     "object region " + to_string(obj.base) + " + " +
                         hex(obj.size) + " is not canonical"});
    }
    if (!st.mdb.contains(object_key(oid))) {
      out.push_back({Errc::dangling_reference, oid,
                     "object missing from the derivation database"});
    }
  }
}

void check_acm(const MonitorState& st, std::vector<Violation>& out) {
  for (const auto& [key, rights] : st.acm.entries()) {
    const auto& [subject, object] = key;
    if (!st.subjects.count(subject)) {
      out.push_back({Errc::dangling_reference, object,
                     "matrix names unknown subject '" + subject + "'"});
    }
    if (!st.objects.count(object) && !st.aspaces.count(object)) {
      out.push_back({Errc::dangling_reference, object,
                     "matrix names unknown object '" + object + "'"});
    }
    if (is_translation_object(st, object)) {
      for (const auto& a : rights) {
        if (a.right == Right::access) {
          out.push_back({Errc::partitioning_violation, object,
                         "'" + subject + "' holds '" + authority_name(a) +
                             "' on translation structure"});
        }
      }
    }
  }
}

void check_mdb_shape(const MonitorState& st, std::vector<Violation>& out) {
  for (const auto& [oid, obj] : st.objects) {
    std::vector<const MemoryObject*> object_children;
    for (const auto& child : st.mdb.children(object_key(oid))) {
      if (child.kind != MdbKey::Kind::object) continue;
      const MemoryObject* c = find_object(st, child.id);
      if (!c) {
        out.push_back({Errc::dangling_reference, oid,
                       "derivation child '" + child.id + "' missing"});
        continue;
      }
      if (c->base.node != obj.base.node || !obj.range().contains(c->range())) {
        out.push_back({Errc::range_conflict, oid,
                       "child '" + c->oid + "' escapes its parent range"});
      }
      object_children.push_back(c);
    }
    for (std::size_t i = 0; i < object_children.size(); ++i) {
      for (std::size_t j = i + 1; j < object_children.size(); ++j) {
        if (object_children[i]->range().overlaps(object_children[j]->range())) {
          out.push_back({Errc::range_conflict, oid,
                         "children '" + object_children[i]->oid + "' and '" +
                             object_children[j]->oid + "' overlap"});
        }
      }
    }
  }
  for (const auto& [asid, space] : st.aspaces) {
    if (space.backing && !st.objects.count(*space.backing)) {
      out.push_back({Errc::dangling_reference, asid,
                     "space backing '" + *space.backing + "' missing"});
    }
    for (const auto& [mid, rec] : space.mappings) {
      if (!st.mdb.contains(mapping_key(mid))) {
        out.push_back({Errc::dangling_reference, asid,
                       "mapping '" + mid + "' missing from the derivation "
                       "database"});
      }
      if (rec.aspace != asid) {
        out.push_back({Errc::dangling_reference, asid,
                       "mapping '" + mid + "' names space '" + rec.aspace +
                           "'"});
      }
    }
  }
}

}  // namespace

std::vector<Violation> check_static_security(const MonitorState& st) {
  std::vector<Violation> out;
  for (const auto& [asid, space] : st.aspaces) {
    check_space_config(st, space, out);
  }
  check_objects(st, out);
  check_acm(st, out);
  check_mdb_shape(st, out);
  for (Violation& v : well_formed(project(st))) {
    v.detail = "projection: " + v.detail;
    out.push_back(std::move(v));
  }
  return out;
}

DecodingNet project(const MonitorState& st) {
  std::vector<Node> nodes;
  for (const auto& [id, node] : st.platform.nodes()) {
    nodes.push_back(node);
  }
  for (const auto& [asid, space] : st.aspaces) {
    if (space.is_static) continue;
    Node node;
    node.id = asid;
    for (const auto& [mid, rec] : space.mappings) {
      const MemoryObject* obj = find_object(st, rec.target);
      if (!obj) continue;  // reported by check_static_security
      node.segments.push_back({rec.src, obj->base.node,
                               obj->base.addr + rec.target_offset});
    }
    // Pre-declared configurable spaces exist as empty platform nodes;
    // their dynamic configuration replaces that placeholder.
    std::erase_if(nodes, [&asid](const Node& n) { return n.id == asid; });
    nodes.push_back(std::move(node));
  }
  return DecodingNet::from_nodes_unchecked(std::move(nodes));
}

ConfigSpaces dynamic_config_spaces(const MonitorState& st) {
  ConfigSpaces conf;
  for (const auto& [asid, space] : st.aspaces) {
    if (space.is_static) continue;
    conf[asid] = ConfigSpaceDesc{space.granularity, space.targets};
  }
  return conf;
}

}  // namespace addrnet
