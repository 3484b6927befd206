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
#include <vector>

#include "addrnet/monitor.hpp"

namespace addrnet {

// One line of a trace file. The `init` header lines (subjects, RAM
// roots, initial matrix entries) construct the initial state and must
// precede the operations:
//
//   init subject <name>
//   init ram <oid> <node> <base-hex> <size-hex>
//   init acm <subject> <object> <right>[,<right>...]
//   retype <subject> <parent-oid> <RAM|Frame|TStructure> <offset> <size> <oid>
//   derive <subject> <tstruct-oid> <granularity> <asid>
//   map <subject> <asid> <dst-base> <size> <oid> <obj-offset> <mid>
//   unmap <subject> <mid>
//   copy <from-subject> <to-subject> <oid> <grant|map|access|grant:<r>>
//   revoke <subject> <oid>
//
// Numbers are 0x-prefixed hex; '#' starts a comment.
struct TraceOp {
  enum class Kind {
    init_subject,
    init_ram,
    init_acm,
    retype,
    derive,
    map,
    unmap,
    copy,
    revoke,
  };

  Kind kind = Kind::init_subject;
  int line = 0;
  SubjectId subject;
  SubjectId subject_to;  // copy
  ObjectId object;       // parent / tstruct / mapped object / target
  ObjectId child;        // retype result
  ObjectType new_type = ObjectType::ram;
  std::uint64_t offset = 0;  // retype offset, map object offset
  std::uint64_t size = 0;
  std::uint64_t base = 0;  // map destination base, init ram base
  NodeId node;             // init ram
  AddressSpaceId aspace;
  std::uint64_t granularity = 0;
  MappingId mid;
  AuthoritySet rights;  // init acm
  Authority authority;  // copy

  bool operator==(const TraceOp&) const = default;
};

struct Trace {
  std::vector<TraceOp> ops;
};

Result<Trace> parse_trace(std::string_view text);

// Valid, or rejected at the first op whose guard fails; prior effects
// stay visible in `state`.
struct Verdict {
  bool valid = true;
  MonitorState state;      // final state, or state before the rejected op
  int rejected_index = -1;
  int rejected_line = -1;
  Error error{Errc::io_error, "", std::nullopt};
};

// Folds the trace through the monitor starting from an empty state over
// the given platform.
Verdict run_trace(const DecodingNet& platform, const ConfigSpaces& conf,
                  const Trace& trace, const MonitorOptions& opts = {});
Verdict run_trace(const MonitorState& initial, const Trace& trace,
                  const MonitorOptions& opts = {});

// Applies one parsed operation to a state.
Result<MonitorState> apply_op(const MonitorState& st, const TraceOp& op,
                              const MonitorOptions& opts = {});

// "VALID" or "REJECTED <line> <ErrorCode>".
std::string format_verdict(const Verdict& v);

}  // namespace addrnet
