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

#include <string>
#include <string_view>
#include <utility>

#include "addrnet/decoding_net.hpp"

namespace addrnet {

// Line-oriented facts text, the interchange format between the platform
// compiler, the query engine and the CLI:
//
//   accept(<node>, <base>, <size>).
//   translate(<node>, <base>, <size>, <dst_node>, <dst_base>).
//   overlay(<node>, <dst_node>).
//   configurable(<node>, <granularity>, [<target>, ...]).
//
// Numbers are 0x-prefixed hex. '%' starts a comment. Output is sorted
// by node id and base address, so identical nets emit identical bytes.
std::string emit_facts(const DecodingNet& net, const ConfigSpaces& conf = {});

Result<std::pair<DecodingNet, ConfigSpaces>> parse_facts(std::string_view text);

}  // namespace addrnet
