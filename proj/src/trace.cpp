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

#include "addrnet/trace.hpp"

#include <charconv>
#include <sstream>

namespace addrnet {

namespace {

Error syntax(int line, const std::string& what) {
  return make_error(Errc::syntax_error,
                    "trace line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() &&
           std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    if (i >= line.size() || line[i] == '#') break;
    std::size_t start = i;
    while (i < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

Result<std::uint64_t> parse_hex(const std::string& tok, int line) {
  if (tok.size() < 3 || tok[0] != '0' || tok[1] != 'x') {
    return syntax(line, "expected 0x-prefixed number, got '" + tok + "'");
  }
  std::uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(tok.data() + 2, tok.data() + tok.size(), value, 16);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    return syntax(line, "bad hex number '" + tok + "'");
  }
  return value;
}

Result<std::string> parse_ident(const std::string& tok, int line) {
  if (!valid_identifier(tok)) {
    return syntax(line, "'" + tok + "' is not a valid identifier");
  }
  return tok;
}

Result<AuthoritySet> parse_rights(const std::string& tok, int line) {
  AuthoritySet rights;
  std::stringstream ss{tok};
  std::string part;
  while (std::getline(ss, part, ',')) {
    // meta rights are written grant:<r>; the ':' is not a separator
    auto a = authority_from_name(part);
    if (!a) return syntax(line, "unknown right '" + part + "'");
    rights.insert(*a);
  }
  if (rights.empty()) return syntax(line, "empty rights list");
  return rights;
}

}  // namespace

Result<Trace> parse_trace(std::string_view text) {
  Trace trace;
  bool ops_started = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    std::vector<std::string> tok = tokenize(line);
    if (tok.empty()) continue;

    TraceOp op;
    op.line = line_no;

    auto need = [&](std::size_t n) -> Result<void> {
      if (tok.size() != n) {
        return syntax(line_no, "'" + tok[0] + "' expects " +
                                   std::to_string(n - 1) + " arguments");
      }
      return {};
    };

    if (tok[0] == "init") {
      if (ops_started) {
        return syntax(line_no, "init lines must precede operations");
      }
      if (tok.size() < 2) return syntax(line_no, "bare 'init'");
      if (tok[1] == "subject") {
        if (auto r = need(3); !r) return r.error();
        op.kind = TraceOp::Kind::init_subject;
        auto s = parse_ident(tok[2], line_no);
        if (!s) return s.error();
        op.subject = s.take();
      } else if (tok[1] == "ram") {
        if (auto r = need(6); !r) return r.error();
        op.kind = TraceOp::Kind::init_ram;
        auto oid = parse_ident(tok[2], line_no);
        if (!oid) return oid.error();
        auto node = parse_ident(tok[3], line_no);
        if (!node) return node.error();
        auto base = parse_hex(tok[4], line_no);
        if (!base) return base.error();
        auto size = parse_hex(tok[5], line_no);
        if (!size) return size.error();
        op.object = oid.take();
        op.node = node.take();
        op.base = base.value();
        op.size = size.value();
      } else if (tok[1] == "acm") {
        if (auto r = need(5); !r) return r.error();
        op.kind = TraceOp::Kind::init_acm;
        auto s = parse_ident(tok[2], line_no);
        if (!s) return s.error();
        auto o = parse_ident(tok[3], line_no);
        if (!o) return o.error();
        auto rights = parse_rights(tok[4], line_no);
        if (!rights) return rights.error();
        op.subject = s.take();
        op.object = o.take();
        op.rights = rights.take();
      } else {
        return syntax(line_no, "unknown init form '" + tok[1] + "'");
      }
    } else if (tok[0] == "retype") {
      if (auto r = need(7); !r) return r.error();
      op.kind = TraceOp::Kind::retype;
      auto s = parse_ident(tok[1], line_no);
      if (!s) return s.error();
      auto parent = parse_ident(tok[2], line_no);
      if (!parent) return parent.error();
      auto type = object_type_from_name(tok[3]);
      if (!type) return syntax(line_no, "unknown object type '" + tok[3] + "'");
      auto offset = parse_hex(tok[4], line_no);
      if (!offset) return offset.error();
      auto size = parse_hex(tok[5], line_no);
      if (!size) return size.error();
      auto child = parse_ident(tok[6], line_no);
      if (!child) return child.error();
      op.subject = s.take();
      op.object = parent.take();
      op.new_type = *type;
      op.offset = offset.value();
      op.size = size.value();
      op.child = child.take();
    } else if (tok[0] == "derive") {
      if (auto r = need(5); !r) return r.error();
      op.kind = TraceOp::Kind::derive;
      auto s = parse_ident(tok[1], line_no);
      if (!s) return s.error();
      auto t = parse_ident(tok[2], line_no);
      if (!t) return t.error();
      auto gran = parse_hex(tok[3], line_no);
      if (!gran) return gran.error();
      auto asid = parse_ident(tok[4], line_no);
      if (!asid) return asid.error();
      op.subject = s.take();
      op.object = t.take();
      op.granularity = gran.value();
      op.aspace = asid.take();
    } else if (tok[0] == "map") {
      if (auto r = need(8); !r) return r.error();
      op.kind = TraceOp::Kind::map;
      auto s = parse_ident(tok[1], line_no);
      if (!s) return s.error();
      auto asid = parse_ident(tok[2], line_no);
      if (!asid) return asid.error();
      auto base = parse_hex(tok[3], line_no);
      if (!base) return base.error();
      auto size = parse_hex(tok[4], line_no);
      if (!size) return size.error();
      auto oid = parse_ident(tok[5], line_no);
      if (!oid) return oid.error();
      auto off = parse_hex(tok[6], line_no);
      if (!off) return off.error();
      auto mid = parse_ident(tok[7], line_no);
      if (!mid) return mid.error();
      op.subject = s.take();
      op.aspace = asid.take();
      op.base = base.value();
      op.size = size.value();
      op.object = oid.take();
      op.offset = off.value();
      op.mid = mid.take();
    } else if (tok[0] == "unmap") {
      if (auto r = need(3); !r) return r.error();
      op.kind = TraceOp::Kind::unmap;
      auto s = parse_ident(tok[1], line_no);
      if (!s) return s.error();
      auto mid = parse_ident(tok[2], line_no);
      if (!mid) return mid.error();
      op.subject = s.take();
      op.mid = mid.take();
    } else if (tok[0] == "copy") {
      if (auto r = need(5); !r) return r.error();
      op.kind = TraceOp::Kind::copy;
      auto from = parse_ident(tok[1], line_no);
      if (!from) return from.error();
      auto to = parse_ident(tok[2], line_no);
      if (!to) return to.error();
      auto oid = parse_ident(tok[3], line_no);
      if (!oid) return oid.error();
      auto a = authority_from_name(tok[4]);
      if (!a) return syntax(line_no, "unknown right '" + tok[4] + "'");
      op.subject = from.take();
      op.subject_to = to.take();
      op.object = oid.take();
      op.authority = *a;
    } else if (tok[0] == "revoke") {
      if (auto r = need(3); !r) return r.error();
      op.kind = TraceOp::Kind::revoke;
      auto s = parse_ident(tok[1], line_no);
      if (!s) return s.error();
      auto oid = parse_ident(tok[2], line_no);
      if (!oid) return oid.error();
      op.subject = s.take();
      op.object = oid.take();
    } else {
      return syntax(line_no, "unknown operation '" + tok[0] + "'");
    }

    if (op.kind != TraceOp::Kind::init_subject &&
        op.kind != TraceOp::Kind::init_ram &&
        op.kind != TraceOp::Kind::init_acm) {
      ops_started = true;
    }
    trace.ops.push_back(std::move(op));
  }
  return trace;
}

Result<MonitorState> apply_op(const MonitorState& st, const TraceOp& op,
                              const MonitorOptions& opts) {
  switch (op.kind) {
    case TraceOp::Kind::init_subject:
      return add_subject(st, op.subject);
    case TraceOp::Kind::init_ram:
      return add_ram_root(st, {op.object, Name{op.node, op.base}, op.size},
                          opts);
    case TraceOp::Kind::init_acm:
      return set_acm_entry(st, op.subject, op.object, op.rights, opts);
    case TraceOp::Kind::retype:
      return retype(st, op.subject, op.object, op.new_type, op.offset, op.size,
                    op.child, opts);
    case TraceOp::Kind::derive:
      return derive_address_space(st, op.subject, op.object, op.granularity,
                                  op.aspace, opts);
    case TraceOp::Kind::map:
      return map(st, op.subject, op.aspace, {op.base, op.size}, op.object,
                 op.offset, op.mid, opts);
    case TraceOp::Kind::unmap:
      return unmap(st, op.subject, op.mid, opts);
    case TraceOp::Kind::copy:
      return copy(st, op.subject, op.subject_to, op.object, op.authority, opts);
    case TraceOp::Kind::revoke:
      return revoke(st, op.subject, op.object, opts);
  }
  return make_error(Errc::syntax_error, "unreachable op kind");
}

Verdict run_trace(const MonitorState& initial, const Trace& trace,
                  const MonitorOptions& opts) {
  Verdict v;
  v.state = initial;
  for (std::size_t i = 0; i < trace.ops.size(); ++i) {
    Result<MonitorState> next = apply_op(v.state, trace.ops[i], opts);
    if (!next) {
      v.valid = false;
      v.rejected_index = static_cast<int>(i);
      v.rejected_line = trace.ops[i].line;
      v.error = next.error();
      return v;
    }
    v.state = next.take();
  }
  return v;
}

Verdict run_trace(const DecodingNet& platform, const ConfigSpaces& conf,
                  const Trace& trace, const MonitorOptions& opts) {
  Result<MonitorState> st = init_state(platform, conf, {}, {}, {}, opts);
  if (!st) {
    Verdict v;
    v.valid = false;
    v.rejected_index = 0;
    v.rejected_line = trace.ops.empty() ? 0 : trace.ops.front().line;
    v.error = st.error();
    return v;
  }
  return run_trace(st.value(), trace, opts);
}

std::string format_verdict(const Verdict& v) {
  if (v.valid) return "VALID";
  return "REJECTED " + std::to_string(v.rejected_line) + " " +
         std::string{errc_name(v.error.code)};
}

}  // namespace addrnet
