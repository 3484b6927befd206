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

#include "addrnet/authority.hpp"

#include <algorithm>

namespace addrnet {

std::string_view right_name(Right r) {
  switch (r) {
    case Right::grant:
      return "grant";
    case Right::map:
      return "map";
    case Right::access:
      return "access";
  }
  return "access";
}

std::string authority_name(const Authority& a) {
  std::string n{right_name(a.right)};
  return a.meta ? "grant:" + n : n;
}

std::optional<Authority> authority_from_name(std::string_view name) {
  bool is_meta = false;
  if (name.starts_with("grant:")) {
    is_meta = true;
    name.remove_prefix(6);
  }
  if (name == "grant") return Authority{Right::grant, is_meta};
  if (name == "map") return Authority{Right::map, is_meta};
  if (name == "access") return Authority{Right::access, is_meta};
  return std::nullopt;
}

AcmScope AcmScope::permissive() {
  return AcmScope{[](const SubjectId&) { return true; },
                  [](const ObjectId&) { return true; },
                  [](const ObjectId&) { return false; }};
}

Result<void> AccessControlMatrix::set(const SubjectId& s, const ObjectId& o,
                                      AuthoritySet rights,
                                      const AcmScope& scope) {
  if (scope.subject_exists && !scope.subject_exists(s)) {
    return make_error(Errc::unknown_subject, "no subject '" + s + "'");
  }
  if (scope.object_exists && !scope.object_exists(o)) {
    return make_error(Errc::unknown_object, "no object '" + o + "'");
  }
  if (scope.is_translation_object && scope.is_translation_object(o)) {
    for (const auto& a : rights) {
      if (a.right == Right::access) {
        return make_error(
            Errc::partitioning_violation,
            "'" + authority_name(a) + "' on translation object '" + o + "'");
      }
    }
  }
  if (rights.empty()) {
    entries_.erase({s, o});
  } else {
    entries_[{s, o}] = std::move(rights);
  }
  return {};
}

bool AccessControlMatrix::check(const SubjectId& s, const ObjectId& o,
                                Right r) const {
  return holds(s, o, plain(r));
}

bool AccessControlMatrix::check_meta(const SubjectId& s, const ObjectId& o,
                                     Right r) const {
  return holds(s, o, meta(r));
}

bool AccessControlMatrix::holds(const SubjectId& s, const ObjectId& o,
                                const Authority& a) const {
  auto it = entries_.find({s, o});
  return it != entries_.end() && it->second.count(a) > 0;
}

AuthoritySet AccessControlMatrix::rights_of(const SubjectId& s,
                                            const ObjectId& o) const {
  auto it = entries_.find({s, o});
  return it == entries_.end() ? AuthoritySet{} : it->second;
}

std::vector<std::pair<ObjectId, AuthoritySet>> AccessControlMatrix::row(
    const SubjectId& s) const {
  std::vector<std::pair<ObjectId, AuthoritySet>> out;
  for (const auto& [key, rights] : entries_) {
    if (key.first == s) out.emplace_back(key.second, rights);
  }
  return out;
}

std::vector<std::pair<SubjectId, AuthoritySet>> AccessControlMatrix::column(
    const ObjectId& o) const {
  std::vector<std::pair<SubjectId, AuthoritySet>> out;
  for (const auto& [key, rights] : entries_) {
    if (key.second == o) out.emplace_back(key.first, rights);
  }
  return out;
}

void AccessControlMatrix::add(const SubjectId& s, const ObjectId& o,
                              const Authority& a) {
  entries_[{s, o}].insert(a);
}

void AccessControlMatrix::erase_entry(const SubjectId& s, const ObjectId& o) {
  entries_.erase({s, o});
}

void AccessControlMatrix::erase_object(const ObjectId& o) {
  std::erase_if(entries_,
                [&o](const auto& kv) { return kv.first.second == o; });
}

bool AccessControlMatrix::references_object(const ObjectId& o) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&o](const auto& kv) { return kv.first.second == o; });
}

std::string AccessControlMatrix::dump() const {
  std::string out;
  for (const auto& [key, rights] : entries_) {
    std::vector<std::string> names;
    names.reserve(rights.size());
    for (const auto& a : rights) names.push_back(authority_name(a));
    std::sort(names.begin(), names.end());
    out += "acm(" + key.first + ", " + key.second + ", [";
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) out += ",";
      out += names[i];
    }
    out += "]).\n";
  }
  return out;
}

}  // namespace addrnet
