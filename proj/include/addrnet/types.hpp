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

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace addrnet {

// Local byte address within one address space. 64-bit, no wraparound.
using Address = std::uint64_t;

// Identifier of an address-space node, unique within one net.
using NodeId = std::string;

// Address spaces share the node namespace: a dynamic space projects to
// a net node of the same id.
using AddressSpaceId = NodeId;
using MappingId = std::string;

// Global name: a local address qualified by the address space it is
// relative to. A name whose node accepts the address is canonical.
struct Name {
  NodeId node;
  Address addr = 0;

  auto operator<=>(const Name&) const = default;
};

// Half-open byte range [base, base + size).
struct AddressRange {
  Address base = 0;
  std::uint64_t size = 0;

  Address end() const { return base + size; }
  bool contains(Address a) const { return a >= base && a - base < size; }
  bool contains(const AddressRange& o) const {
    return o.base >= base && o.end() <= end();
  }
  bool overlaps(const AddressRange& o) const {
    return base < o.end() && o.base < end();
  }

  auto operator<=>(const AddressRange&) const = default;
};

// True iff size > 0 and base + size does not wrap around 64 bits.
inline bool range_valid(const AddressRange& r) {
  return r.size > 0 && r.size <= ~std::uint64_t{0} - r.base;
}

// Hardware constraints of a configurable address space: the mapping
// granularity plus the whitelist of nodes it may route into. An empty
// whitelist means unconstrained (e.g. a translation structure derived
// at runtime).
struct ConfigSpaceDesc {
  std::uint64_t granularity = 0x1000;
  std::vector<NodeId> targets;

  auto operator<=>(const ConfigSpaceDesc&) const = default;
};

using ConfigSpaces = std::map<NodeId, ConfigSpaceDesc>;

std::string hex(std::uint64_t v);            // "0x1a2b"
std::string to_string(const Name& n);        // "dram:0x10"
std::string to_string(const AddressRange&);  // "[0x0..0x1000)"

// Identifiers accepted in nets, facts files and traces:
// [A-Za-z_][A-Za-z0-9_.]* ('.' appears in instance-qualified names).
bool valid_identifier(std::string_view s);

}  // namespace addrnet
