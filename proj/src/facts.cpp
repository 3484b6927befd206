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

#include "addrnet/facts.hpp"

#include <charconv>
#include <map>
#include <vector>

namespace addrnet {

std::string emit_facts(const DecodingNet& net, const ConfigSpaces& conf) {
  std::string out;
  for (const auto& [id, node] : net.nodes()) {
    // nodes with no facts of their own (empty placeholders that are not
    // configurable spaces) still need a line, or re-import loses them
    if (node.accept.empty() && node.segments.empty() && !node.overlay &&
        !conf.count(id)) {
      out += "node(" + id + ").\n";
    }
    for (const auto& r : node.accept) {
      out += "accept(" + id + ", " + hex(r.base) + ", " + hex(r.size) + ").\n";
    }
    for (const auto& s : node.segments) {
      out += "translate(" + id + ", " + hex(s.src.base) + ", " +
             hex(s.src.size) + ", " + s.dst_node + ", " + hex(s.dst_base) +
             ").\n";
    }
    if (node.overlay) {
      out += "overlay(" + id + ", " + *node.overlay + ").\n";
    }
  }
  for (const auto& [id, desc] : conf) {
    out += "configurable(" + id + ", " + hex(desc.granularity) + ", [";
    for (std::size_t i = 0; i < desc.targets.size(); ++i) {
      if (i) out += ", ";
      out += desc.targets[i];
    }
    out += "]).\n";
  }
  return out;
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  void advance() {
    if (text[pos] == '\n') ++line;
    ++pos;
  }
  void skip_ws() {
    while (!eof()) {
      if (peek() == '%') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else {
        break;
      }
    }
  }
};

Error syntax(const Cursor& c, const std::string& what) {
  return make_error(Errc::syntax_error,
                    "facts line " + std::to_string(c.line) + ": " + what);
}

Result<std::string> read_ident(Cursor& c) {
  c.skip_ws();
  std::size_t start = c.pos;
  while (!c.eof()) {
    char ch = c.peek();
    if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.') {
      c.advance();
    } else {
      break;
    }
  }
  std::string ident{c.text.substr(start, c.pos - start)};
  if (!valid_identifier(ident)) return syntax(c, "expected identifier");
  return ident;
}

Result<std::uint64_t> read_hex(Cursor& c) {
  c.skip_ws();
  if (c.pos + 2 > c.text.size() || c.text.substr(c.pos, 2) != "0x") {
    return syntax(c, "expected 0x-prefixed number");
  }
  c.pos += 2;
  std::uint64_t value = 0;
  const char* begin = c.text.data() + c.pos;
  const char* end = c.text.data() + c.text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value, 16);
  if (ec != std::errc{} || ptr == begin) return syntax(c, "bad hex number");
  c.pos += static_cast<std::size_t>(ptr - begin);
  return value;
}

Result<void> expect(Cursor& c, char ch) {
  c.skip_ws();
  if (c.eof() || c.peek() != ch) {
    return syntax(c, std::string{"expected '"} + ch + "'");
  }
  c.advance();
  return {};
}

}  // namespace

Result<std::pair<DecodingNet, ConfigSpaces>> parse_facts(std::string_view text) {
  Cursor c{text};
  std::map<NodeId, Node> nodes;
  ConfigSpaces conf;
  auto node_of = [&nodes](const NodeId& id) -> Node& {
    auto [it, inserted] = nodes.try_emplace(id);
    if (inserted) it->second.id = id;
    return it->second;
  };

  while (true) {
    c.skip_ws();
    if (c.eof()) break;
    Result<std::string> head = read_ident(c);
    if (!head) return head.error();
    if (auto r = expect(c, '('); !r) return r.error();

    if (head.value() == "node") {
      auto id = read_ident(c);
      if (!id) return id.error();
      node_of(id.value());
    } else if (head.value() == "accept") {
      auto id = read_ident(c);
      if (!id) return id.error();
      if (auto r = expect(c, ','); !r) return r.error();
      auto base = read_hex(c);
      if (!base) return base.error();
      if (auto r = expect(c, ','); !r) return r.error();
      auto size = read_hex(c);
      if (!size) return size.error();
      node_of(id.value()).accept.push_back({base.value(), size.value()});
    } else if (head.value() == "translate") {
      auto id = read_ident(c);
      if (!id) return id.error();
      if (auto r = expect(c, ','); !r) return r.error();
      auto base = read_hex(c);
      if (!base) return base.error();
      if (auto r = expect(c, ','); !r) return r.error();
      auto size = read_hex(c);
      if (!size) return size.error();
      if (auto r = expect(c, ','); !r) return r.error();
      auto dst = read_ident(c);
      if (!dst) return dst.error();
      if (auto r = expect(c, ','); !r) return r.error();
      auto dst_base = read_hex(c);
      if (!dst_base) return dst_base.error();
      node_of(id.value())
          .segments.push_back(
              {{base.value(), size.value()}, dst.value(), dst_base.value()});
    } else if (head.value() == "overlay") {
      auto id = read_ident(c);
      if (!id) return id.error();
      if (auto r = expect(c, ','); !r) return r.error();
      auto dst = read_ident(c);
      if (!dst) return dst.error();
      Node& n = node_of(id.value());
      if (n.overlay) return syntax(c, "node '" + n.id + "' has two overlays");
      n.overlay = dst.value();
    } else if (head.value() == "configurable") {
      auto id = read_ident(c);
      if (!id) return id.error();
      if (auto r = expect(c, ','); !r) return r.error();
      auto gran = read_hex(c);
      if (!gran) return gran.error();
      if (auto r = expect(c, ','); !r) return r.error();
      if (auto r = expect(c, '['); !r) return r.error();
      ConfigSpaceDesc desc;
      desc.granularity = gran.value();
      c.skip_ws();
      if (!c.eof() && c.peek() != ']') {
        while (true) {
          auto t = read_ident(c);
          if (!t) return t.error();
          desc.targets.push_back(t.value());
          c.skip_ws();
          if (!c.eof() && c.peek() == ',') {
            c.advance();
            continue;
          }
          break;
        }
      }
      if (auto r = expect(c, ']'); !r) return r.error();
      if (conf.count(id.value())) {
        return syntax(c, "configurable '" + id.value() + "' declared twice");
      }
      conf[id.value()] = std::move(desc);
      node_of(id.value());  // configurable spaces exist as (empty) nodes
    } else {
      return syntax(c, "unknown fact '" + head.value() + "'");
    }

    if (auto r = expect(c, ')'); !r) return r.error();
    if (auto r = expect(c, '.'); !r) return r.error();
  }

  std::vector<Node> list;
  list.reserve(nodes.size());
  for (auto& [_, n] : nodes) list.push_back(std::move(n));
  Result<DecodingNet> net = DecodingNet::build(std::move(list));
  if (!net) return net.error();
  return std::pair{net.take(), std::move(conf)};
}

}  // namespace addrnet
