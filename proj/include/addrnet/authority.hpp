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

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "addrnet/result.hpp"

namespace addrnet {

using SubjectId = std::string;
// Objects in the matrix are memory objects or address spaces.
using ObjectId = std::string;

enum class Right { grant, map, access };

// A right, or the depth-1 meta-authority to grant that right onward.
struct Authority {
  Right right = Right::access;
  bool meta = false;

  auto operator<=>(const Authority&) const = default;
};

inline Authority plain(Right r) { return {r, false}; }
inline Authority meta(Right r) { return {r, true}; }

// "grant", "map", "access", "grant:access", ...
std::string authority_name(const Authority& a);
std::optional<Authority> authority_from_name(std::string_view name);
std::string_view right_name(Right r);

using AuthoritySet = std::set<Authority>;

// Hooks the matrix uses to validate mutations against the enclosing
// state: existence of subjects/objects and which objects are
// translation structures (which may never become accessible).
struct AcmScope {
  std::function<bool(const SubjectId&)> subject_exists;
  std::function<bool(const ObjectId&)> object_exists;
  std::function<bool(const ObjectId&)> is_translation_object;

  static AcmScope permissive();
};

// Subject x Object -> rights. Missing entries mean no rights
// (default deny). Rows read as capability lists, columns as ACLs.
class AccessControlMatrix {
 public:
  using Entries = std::map<std::pair<SubjectId, ObjectId>, AuthoritySet>;

  // Replaces the (s, o) entry; an empty set removes it. Rejects plain
  // or meta access on translation objects.
  Result<void> set(const SubjectId& s, const ObjectId& o, AuthoritySet rights,
                   const AcmScope& scope);

  bool check(const SubjectId& s, const ObjectId& o, Right r) const;
  bool check_meta(const SubjectId& s, const ObjectId& o, Right r) const;
  bool holds(const SubjectId& s, const ObjectId& o, const Authority& a) const;
  AuthoritySet rights_of(const SubjectId& s, const ObjectId& o) const;

  // Capability-list view of one subject, sorted by object.
  std::vector<std::pair<ObjectId, AuthoritySet>> row(const SubjectId& s) const;
  // ACL view of one object, sorted by subject.
  std::vector<std::pair<SubjectId, AuthoritySet>> column(
      const ObjectId& o) const;

  // Unchecked mutators for the reference monitor, which validates
  // against its own state before touching the matrix.
  void add(const SubjectId& s, const ObjectId& o, const Authority& a);
  void erase_entry(const SubjectId& s, const ObjectId& o);
  void erase_object(const ObjectId& o);

  const Entries& entries() const { return entries_; }
  bool references_object(const ObjectId& o) const;

  // Sorted `acm(<subject>, <object>, [<rights>]).` lines.
  std::string dump() const;

  bool operator==(const AccessControlMatrix&) const = default;

 private:
  Entries entries_;
};

}  // namespace addrnet
