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
#include <set>
#include <string>
#include <vector>

#include "addrnet/authority.hpp"
#include "addrnet/decoding_net.hpp"

namespace addrnet {

// RAM is untyped memory and the only retypable kind. Frames are the
// only mappable (grantable) kind. Translation structures define address
// spaces and may never become accessible to any subject.
enum class ObjectType { ram, frame, tstructure };

std::string_view object_type_name(ObjectType t);
std::optional<ObjectType> object_type_from_name(std::string_view name);

// A typed memory region. base is canonical (its node accepts it) and
// the whole range lies within that single node.
struct MemoryObject {
  ObjectId oid;
  ObjectType type = ObjectType::ram;
  Name base;
  std::uint64_t size = 0;

  AddressRange range() const { return {base.addr, size}; }
  bool operator==(const MemoryObject&) const = default;
};

// Rights the creating subject held when a mapping was installed,
// recorded so static checking can re-justify the mapping without
// replaying the trace.
struct MappingJustification {
  SubjectId creator;
  bool had_map_right = false;
  bool had_grant_right = false;

  bool operator==(const MappingJustification&) const = default;
};

// One installed translation: src (local addresses of the owning space)
// forwards into the target object at target_offset.
struct MappingRecord {
  MappingId mid;
  AddressSpaceId aspace;
  AddressRange src;
  ObjectId target;
  std::uint64_t target_offset = 0;
  MappingJustification justification;

  bool operator==(const MappingRecord&) const = default;
};

// An address space: fixed platform node (is_static, frozen empty
// mapping set) or configurable space (declared in the platform or
// derived from a translation structure at runtime).
struct AddressSpace {
  AddressSpaceId asid;
  std::optional<ObjectId> backing;  // TStructure it was derived from
  std::uint64_t granularity = 0x1000;
  std::vector<NodeId> targets;  // whitelist; empty = unconstrained
  bool is_static = false;
  std::map<MappingId, MappingRecord> mappings;

  bool operator==(const AddressSpace&) const = default;
};

// Key into the derivation forest.
struct MdbKey {
  enum class Kind { object, space, mapping };
  Kind kind = Kind::object;
  std::string id;

  auto operator<=>(const MdbKey&) const = default;
};

inline MdbKey object_key(const ObjectId& id) {
  return {MdbKey::Kind::object, id};
}
inline MdbKey space_key(const AddressSpaceId& id) {
  return {MdbKey::Kind::space, id};
}
inline MdbKey mapping_key(const MappingId& id) {
  return {MdbKey::Kind::mapping, id};
}

// Derivation forest over objects, spaces and mappings. Roots are the
// initial RAM objects. Revocation walks subtrees here.
class Mdb {
 public:
  void add_root(const MdbKey& key);
  void add_child(const MdbKey& parent, const MdbKey& child);
  void erase(const MdbKey& key);  // must be childless

  bool contains(const MdbKey& key) const;
  std::optional<MdbKey> parent(const MdbKey& key) const;
  const std::set<MdbKey>& children(const MdbKey& key) const;
  // Proper descendants, deepest first (safe deletion order).
  std::vector<MdbKey> descendants(const MdbKey& key) const;
  std::vector<MdbKey> roots() const;
  std::size_t size() const { return parent_.size(); }

  bool operator==(const Mdb&) const = default;

 private:
  std::map<MdbKey, std::optional<MdbKey>> parent_;
  std::map<MdbKey, std::set<MdbKey>> children_;
};

// Full reference-monitor state. Value type: operations take a state and
// return the successor, leaving the input untouched; a rejected
// operation yields an error and no new state.
struct MonitorState {
  DecodingNet platform;
  std::set<SubjectId> subjects;
  std::map<ObjectId, MemoryObject> objects;
  std::map<AddressSpaceId, AddressSpace> aspaces;
  AccessControlMatrix acm;
  Mdb mdb;

  bool operator==(const MonitorState&) const = default;
};

struct MonitorOptions {
  // Test-only: when false, policy guards (rights, partitioning, type,
  // alignment, bounds, overlap, canonicality, whitelist, static-space)
  // are skipped; structural lookups still fail.
  bool enforce_guards = true;
};

struct RamRoot {
  ObjectId oid;
  Name base;
  std::uint64_t size = 0;
};

struct AcmInit {
  SubjectId subject;
  ObjectId object;
  AuthoritySet rights;
};

// Builds the initial state: every platform node becomes a static space,
// conf entries become empty dynamic spaces, RAM roots populate the MDB.
Result<MonitorState> init_state(const DecodingNet& platform,
                                const ConfigSpaces& conf,
                                const std::vector<SubjectId>& subjects,
                                const std::vector<RamRoot>& roots,
                                const std::vector<AcmInit>& acm,
                                const MonitorOptions& opts = {});

// Incremental variants used by the trace interpreter.
Result<MonitorState> add_subject(const MonitorState& st, const SubjectId& s);
Result<MonitorState> add_ram_root(const MonitorState& st, const RamRoot& root,
                                  const MonitorOptions& opts = {});
Result<MonitorState> set_acm_entry(const MonitorState& st, const SubjectId& s,
                                   const ObjectId& o, AuthoritySet rights,
                                   const MonitorOptions& opts = {});

// Derives a child object of an allowed subtype from a RAM parent.
// Frame children grant the subject Grant; RAM and TStructure children
// carry no direct rights (authority flows from MDB ancestors).
Result<MonitorState> retype(const MonitorState& st, const SubjectId& s,
                            const ObjectId& parent, ObjectType new_type,
                            std::uint64_t offset, std::uint64_t size,
                            const ObjectId& child,
                            const MonitorOptions& opts = {});

// Creates the address space defined by a translation structure; the
// subject gains Map on it.
Result<MonitorState> derive_address_space(const MonitorState& st,
                                          const SubjectId& s,
                                          const ObjectId& tstruct,
                                          std::uint64_t granularity,
                                          const AddressSpaceId& asid,
                                          const MonitorOptions& opts = {});

// Installs a mapping: needs Map on the space and Grant on the object;
// only Frames are mappable.
Result<MonitorState> map(const MonitorState& st, const SubjectId& s,
                         const AddressSpaceId& asid, const AddressRange& dst,
                         const ObjectId& obj, std::uint64_t obj_offset,
                         const MappingId& mid, const MonitorOptions& opts = {});

Result<MonitorState> unmap(const MonitorState& st, const SubjectId& s,
                           const MappingId& mid,
                           const MonitorOptions& opts = {});

// Copies an authority from one subject to another. Requires the meta
// authority grant:<r> on the object; Access may also be granted by a
// holder of plain Grant. Access on translation structures is never
// copyable.
Result<MonitorState> copy(const MonitorState& st, const SubjectId& s_from,
                          const SubjectId& s_to, const ObjectId& o,
                          const Authority& a, const MonitorOptions& opts = {});

// Deletes all MDB descendants of o (mappings, derived spaces and their
// mapping records) and strips every ACM entry naming o or a deleted
// entity. o itself stays in the MDB.
Result<MonitorState> revoke(const MonitorState& st, const SubjectId& s,
                            const ObjectId& o, const MonitorOptions& opts = {});

struct MapReplacement {
  AddressRange dst;
  ObjectId obj;
  std::uint64_t obj_offset = 0;
  MappingId mid;
};

// Transactional unmap/map composition: existing mappings overlapping
// any replacement dst are removed, then the replacements are installed,
// under the usual guards. All-or-nothing.
Result<MonitorState> modify_map(const MonitorState& st, const SubjectId& s,
                                const AddressSpaceId& asid,
                                const std::vector<MapReplacement>& replacements,
                                const MonitorOptions& opts = {});

// Static security report: configuration validity of every space
// (alignment, size, disjointness, whitelist), partitioning (no access
// on translation structures, no mapping into their ranges), mapping
// justification, MDB shape, and well-formedness of the projection.
// Empty after any sequence of accepted operations.
std::vector<Violation> check_static_security(const MonitorState& st);

// The static decoding net induced by the state: platform nodes plus one
// node per dynamic space whose segments are its mappings.
DecodingNet project(const MonitorState& st);

// Whitelists and granularities of the dynamic spaces, as consumed by
// the query engine.
ConfigSpaces dynamic_config_spaces(const MonitorState& st);

// True if s holds Grant on the entity or on any MDB object-ancestor
// ("owner" authority, used by retype/derive/revoke).
bool holds_owner_grant(const MonitorState& st, const SubjectId& s,
                       const MdbKey& entity);

}  // namespace addrnet
