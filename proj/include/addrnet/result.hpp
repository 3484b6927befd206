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

#include <cassert>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "addrnet/types.hpp"

namespace addrnet {

// Stable error codes. errc_name() yields the wire spelling used in
// verdict lines, corpus expectations and CLI output.
enum class Errc {
  // net construction and lookup
  duplicate_node,
  dangling_reference,
  overlapping_ranges,
  invalid_range,
  address_overflow,
  invalid_identifier,
  unknown_node,
  // resolution
  undecodable,
  loop_detected,
  // monitor
  unknown_subject,
  unknown_object,
  unknown_space,
  unknown_mapping,
  insufficient_rights,
  partitioning_violation,
  illegal_retype,
  range_conflict,
  already_derived,
  wrong_type,
  misaligned,
  overlap,
  static_space,
  config_space_violation,
  non_canonical_base,
  overlapping_roots,
  duplicate_definition,
  // queries
  no_allocatable_memory,
  unreachable,
  // dsl, traces, files
  syntax_error,
  unbound_name,
  bad_params,
  unresolvable_region,
  io_error,
};

std::string_view errc_name(Errc c);
std::optional<Errc> errc_from_name(std::string_view name);

struct Error {
  Errc code;
  std::string message;
  std::optional<Name> where;
};

std::string to_string(const Error& e);  // "InsufficientRights: <message>"

inline Error make_error(Errc code, std::string message) {
  return Error{code, std::move(message), std::nullopt};
}

inline Error make_error(Errc code, std::string message, Name where) {
  return Error{code, std::move(message), std::move(where)};
}

// Value-or-error return type used throughout the library. Rejections of
// monitor operations are ordinary data, not exceptions.
template <typename T>
class [[nodiscard]] Result {
 public:
  Result(T value) : v_(std::move(value)) {}
  Result(Error error) : v_(std::move(error)) {}

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    assert(ok());
    return std::get<T>(v_);
  }
  T& value() & {
    assert(ok());
    return std::get<T>(v_);
  }
  T&& take() {
    assert(ok());
    return std::move(std::get<T>(v_));
  }

  const Error& error() const {
    assert(!ok());
    return std::get<Error>(v_);
  }

 private:
  std::variant<T, Error> v_;
};

template <>
class [[nodiscard]] Result<void> {
 public:
  Result() = default;
  Result(Error error) : err_(std::move(error)) {}

  bool ok() const { return !err_.has_value(); }
  explicit operator bool() const { return ok(); }

  const Error& error() const {
    assert(!ok());
    return *err_;
  }

 private:
  std::optional<Error> err_;
};

inline Result<void> ok_result() { return Result<void>{}; }

}  // namespace addrnet
