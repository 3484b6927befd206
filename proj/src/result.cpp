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

#include "addrnet/result.hpp"

#include <array>
#include <utility>

namespace addrnet {

namespace {

constexpr std::array<std::pair<Errc, std::string_view>, 32> kNames{{
    {Errc::duplicate_node, "DuplicateNode"},
    {Errc::dangling_reference, "DanglingReference"},
    {Errc::overlapping_ranges, "OverlappingRanges"},
    {Errc::invalid_range, "InvalidRange"},
    {Errc::address_overflow, "AddressOverflow"},
    {Errc::invalid_identifier, "InvalidIdentifier"},
    {Errc::unknown_node, "UnknownNode"},
    {Errc::undecodable, "Undecodable"},
    {Errc::loop_detected, "Loop"},
    {Errc::unknown_subject, "UnknownSubject"},
    {Errc::unknown_object, "UnknownObject"},
    {Errc::unknown_space, "UnknownSpace"},
    {Errc::unknown_mapping, "UnknownMapping"},
    {Errc::insufficient_rights, "InsufficientRights"},
    {Errc::partitioning_violation, "PartitioningViolation"},
    {Errc::illegal_retype, "IllegalRetype"},
    {Errc::range_conflict, "RangeConflict"},
    {Errc::already_derived, "AlreadyDerived"},
    {Errc::wrong_type, "WrongType"},
    {Errc::misaligned, "Misaligned"},
    {Errc::overlap, "Overlap"},
    {Errc::static_space, "StaticSpace"},
    {Errc::config_space_violation, "ConfigSpaceViolation"},
    {Errc::non_canonical_base, "NonCanonicalBase"},
    {Errc::overlapping_roots, "OverlappingRoots"},
    {Errc::duplicate_definition, "DuplicateDefinition"},
    {Errc::no_allocatable_memory, "NoAllocatableMemory"},
    {Errc::unreachable, "Unreachable"},
    {Errc::syntax_error, "SyntaxError"},
    {Errc::unbound_name, "UnboundName"},
    {Errc::bad_params, "BadParams"},
    {Errc::unresolvable_region, "UnresolvableRegion"},
}};

static_assert(kNames.back().second == "UnresolvableRegion");

}  // namespace

std::string_view errc_name(Errc c) {
  for (const auto& [code, name] : kNames) {
    if (code == c) return name;
  }
  return "IoError";
}

std::optional<Errc> errc_from_name(std::string_view name) {
  for (const auto& [code, n] : kNames) {
    if (n == name) return code;
  }
  if (name == "IoError") return Errc::io_error;
  return std::nullopt;
}

std::string to_string(const Error& e) {
  std::string out{errc_name(e.code)};
  if (!e.message.empty()) {
    out += ": ";
    out += e.message;
  }
  if (e.where) {
    out += " (at ";
    out += to_string(*e.where);
    out += ")";
  }
  return out;
}

}  // namespace addrnet
