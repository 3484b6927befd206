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

#include "addrnet/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

namespace addrnet::dsl {

// ---------------------------------------------------------- tokenizer

namespace {

struct Token {
  enum class Kind {
    ident,
    number,
    lbrace,
    rbrace,
    lparen,
    rparen,
    lbracket,
    rparen_range,  // ')' closing a half-open range
    comma,
    semicolon,
    equals,
    dots,    // ..
    arrow,   // ->
    at,
    eof,
  };
  Kind kind = Kind::eof;
  std::string text;
  std::uint64_t number = 0;
  SourceLoc loc;
};

std::string token_desc(const Token& t) {
  switch (t.kind) {
    case Token::Kind::ident:
      return "'" + t.text + "'";
    case Token::Kind::number:
      return "number";
    case Token::Kind::eof:
      return "end of input";
    default:
      return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Result<std::vector<Token>> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      SourceLoc loc{line_, col_};
      if (eof()) {
        out.push_back({Token::Kind::eof, "", 0, loc});
        return out;
      }
      char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string ident;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                          peek() == '_' || peek() == '.')) {
          // '..' belongs to range syntax, not identifiers
          if (peek() == '.' && pos_ + 1 < text_.size() &&
              text_[pos_ + 1] == '.') {
            break;
          }
          ident += take();
        }
        out.push_back({Token::Kind::ident, std::move(ident), 0, loc});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        if (c != '0' || pos_ + 1 >= text_.size() || text_[pos_ + 1] != 'x') {
          return err(loc, "numbers must be 0x-prefixed hex");
        }
        take();
        take();
        std::uint64_t value = 0;
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(begin, end, value, 16);
        if (ec != std::errc{} || ptr == begin) return err(loc, "bad hex number");
        while (text_.data() + pos_ != ptr) take();
        out.push_back({Token::Kind::number, "", value, loc});
      } else if (c == '.' && pos_ + 1 < text_.size() &&
                 text_[pos_ + 1] == '.') {
        take();
        take();
        out.push_back({Token::Kind::dots, "..", 0, loc});
      } else if (c == '-' && pos_ + 1 < text_.size() &&
                 text_[pos_ + 1] == '>') {
        take();
        take();
        out.push_back({Token::Kind::arrow, "->", 0, loc});
      } else {
        Token::Kind kind;
        switch (c) {
          case '{': kind = Token::Kind::lbrace; break;
          case '}': kind = Token::Kind::rbrace; break;
          case '(': kind = Token::Kind::lparen; break;
          case ')': kind = Token::Kind::rparen; break;
          case '[': kind = Token::Kind::lbracket; break;
          case ',': kind = Token::Kind::comma; break;
          case ';': kind = Token::Kind::semicolon; break;
          case '=': kind = Token::Kind::equals; break;
          case '@': kind = Token::Kind::at; break;
          default:
            return err(loc, std::string{"unexpected character '"} + c + "'");
        }
        out.push_back({kind, std::string{c}, 0, loc});
        take();
      }
    }
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char take() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_ws() {
    while (!eof()) {
      if (peek() == '#') {
        while (!eof() && peek() != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(peek()))) {
        take();
      } else {
        break;
      }
    }
  }
  Error err(SourceLoc loc, const std::string& what) {
    return make_error(Errc::syntax_error,
                      "line " + std::to_string(loc.line) + ":" +
                          std::to_string(loc.col) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ------------------------------------------------------------ parser

// What a name refers to, for declare-before-use checking.
struct ScopeEntry {
  enum class Kind { node, configurable, instance, param };
  Kind kind = Kind::node;
  const ModuleDecl* module = nullptr;  // for instances
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Result<PlatformAst> run() {
    PlatformAst ast;
    while (cur().kind != Token::Kind::eof) {
      if (at_keyword("module")) {
        Result<ModuleDecl> m = parse_module();
        if (!m) return m.error();
        for (const auto& existing : ast.modules) {
          if (existing.name == m.value().name) {
            return err(cur().loc,
                       Errc::duplicate_definition,
                       "module '" + m.value().name + "' declared twice");
          }
        }
        ast.modules.push_back(m.take());
        modules_[ast.modules.back().name] = &ast.modules.back();
      } else {
        Result<Decl> d = parse_decl(top_scope_);
        if (!d) return d.error();
        ast.top.body.push_back(d.take());
      }
    }
    return ast;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool at_keyword(std::string_view kw) const {
    return cur().kind == Token::Kind::ident && cur().text == kw;
  }

  Error err(SourceLoc loc, Errc code, const std::string& what) {
    return make_error(code, "line " + std::to_string(loc.line) + ":" +
                                std::to_string(loc.col) + ": " + what);
  }
  Error expected(const std::string& what) {
    return err(cur().loc, Errc::syntax_error,
               "expected " + what + ", got " + token_desc(cur()));
  }

  Result<Token> expect(Token::Kind kind, const std::string& what) {
    if (cur().kind != kind) return expected(what);
    return next();
  }

  Result<std::string> expect_ident(const std::string& what) {
    if (cur().kind != Token::Kind::ident) return expected(what);
    return next().text;
  }

  void skip_separators() {
    while (cur().kind == Token::Kind::semicolon) next();
  }

  // An argument: number literal, or a name known in the given scope.
  Result<Arg> parse_arg(const std::map<std::string, ScopeEntry>& scope) {
    SourceLoc loc = cur().loc;
    if (cur().kind == Token::Kind::number) {
      Arg a = Arg::num(next().number);
      a.loc = loc;
      return a;
    }
    if (cur().kind == Token::Kind::ident) {
      std::string name = next().text;
      if (Result<void> r = check_bound(scope, name, loc); !r) return r.error();
      Arg a = Arg::id(std::move(name));
      a.loc = loc;
      return a;
    }
    return expected("a number or name");
  }

  Result<void> check_bound(const std::map<std::string, ScopeEntry>& scope,
                           const std::string& name, SourceLoc loc) {
    if (scope.count(name)) return {};
    // Qualified reference into an instance: inst.inner[...]
    std::size_t dot = name.find('.');
    if (dot != std::string::npos) {
      auto it = scope.find(name.substr(0, dot));
      if (it != scope.end() && it->second.kind == ScopeEntry::Kind::instance &&
          it->second.module) {
        return check_module_exports(*it->second.module, name.substr(dot + 1),
                                    loc);
      }
    }
    return err(loc, Errc::unbound_name, "'" + name + "' is not declared here");
  }

  Result<void> check_module_exports(const ModuleDecl& m,
                                    const std::string& inner, SourceLoc loc) {
    std::string head = inner;
    std::string rest;
    std::size_t dot = inner.find('.');
    if (dot != std::string::npos) {
      head = inner.substr(0, dot);
      rest = inner.substr(dot + 1);
    }
    for (const auto& d : m.body) {
      if (const auto* n = std::get_if<NodeDecl>(&d); n && n->name == head) {
        if (rest.empty()) return {};
      } else if (const auto* cfg = std::get_if<ConfigurableDecl>(&d);
                 cfg && cfg->name == head) {
        if (rest.empty()) return {};
      } else if (const auto* inst = std::get_if<InstanceDecl>(&d);
                 inst && inst->name == head && !rest.empty()) {
        auto mit = modules_.find(inst->module);
        if (mit != modules_.end()) {
          return check_module_exports(*mit->second, rest, loc);
        }
      }
    }
    return err(loc, Errc::unbound_name,
               "'" + inner + "' is not declared in module '" + m.name + "'");
  }

  Result<void> declare(std::map<std::string, ScopeEntry>& scope,
                       const std::string& name, ScopeEntry entry,
                       SourceLoc loc) {
    if (!scope.emplace(name, entry).second) {
      return err(loc, Errc::duplicate_definition,
                 "'" + name + "' declared twice");
    }
    return {};
  }

  Result<Decl> parse_decl(std::map<std::string, ScopeEntry>& scope) {
    if (at_keyword("node")) return parse_node(scope);
    if (at_keyword("configurable")) return parse_configurable(scope);
    if (at_keyword("instance")) return parse_instance(scope);
    return expected("'node', 'configurable' or 'instance'");
  }

  Result<Decl> parse_node(std::map<std::string, ScopeEntry>& scope) {
    SourceLoc loc = cur().loc;
    next();  // node
    NodeDecl decl;
    decl.loc = loc;
    Result<std::string> name = expect_ident("node name");
    if (!name) return name.error();
    decl.name = name.take();
    // A node may map or overlay onto itself.
    if (Result<void> r =
            declare(scope, decl.name, {ScopeEntry::Kind::node, nullptr}, loc);
        !r) {
      return r.error();
    }
    if (auto r = expect(Token::Kind::lbrace, "'{'"); !r) return r.error();
    while (true) {
      skip_separators();
      if (cur().kind == Token::Kind::rbrace) {
        next();
        break;
      }
      if (at_keyword("accept")) {
        next();
        Result<std::pair<Arg, Arg>> range = parse_range(scope);
        if (!range) return range.error();
        decl.accepts.push_back(range.take());
      } else if (at_keyword("map")) {
        next();
        Result<std::pair<Arg, Arg>> range = parse_range(scope);
        if (!range) return range.error();
        if (auto r = expect(Token::Kind::arrow, "'->'"); !r) return r.error();
        Result<Arg> dst = parse_arg(scope);
        if (!dst) return dst.error();
        if (auto r = expect(Token::Kind::at, "'@'"); !r) return r.error();
        Result<Arg> base = parse_arg(scope);
        if (!base) return base.error();
        decl.maps.push_back(
            {range.value().first, range.value().second, dst.take(),
             base.take()});
      } else if (at_keyword("overlay")) {
        next();
        if (decl.overlay) {
          return err(cur().loc, Errc::duplicate_definition,
                     "node '" + decl.name + "' has two overlays");
        }
        Result<Arg> dst = parse_arg(scope);
        if (!dst) return dst.error();
        decl.overlay = dst.take();
      } else {
        return expected("'accept', 'map', 'overlay' or '}'");
      }
    }
    return Decl{std::move(decl)};
  }

  Result<std::pair<Arg, Arg>> parse_range(
      const std::map<std::string, ScopeEntry>& scope) {
    if (auto r = expect(Token::Kind::lbracket, "'['"); !r) return r.error();
    Result<Arg> lo = parse_arg(scope);
    if (!lo) return lo.error();
    if (auto r = expect(Token::Kind::dots, "'..'"); !r) return r.error();
    Result<Arg> hi = parse_arg(scope);
    if (!hi) return hi.error();
    if (auto r = expect(Token::Kind::rparen, "')'"); !r) return r.error();
    return std::pair{lo.take(), hi.take()};
  }

  Result<Decl> parse_configurable(std::map<std::string, ScopeEntry>& scope) {
    SourceLoc loc = cur().loc;
    next();  // configurable
    ConfigurableDecl decl;
    decl.loc = loc;
    Result<std::string> name = expect_ident("space name");
    if (!name) return name.error();
    decl.name = name.take();
    if (Result<void> r = declare(scope, decl.name,
                                 {ScopeEntry::Kind::configurable, nullptr}, loc);
        !r) {
      return r.error();
    }
    if (auto r = expect(Token::Kind::lbrace, "'{'"); !r) return r.error();
    bool have_gran = false;
    while (true) {
      skip_separators();
      if (cur().kind == Token::Kind::rbrace) {
        next();
        break;
      }
      if (at_keyword("granularity")) {
        next();
        Result<Arg> g = parse_arg(scope);
        if (!g) return g.error();
        decl.granularity = g.take();
        have_gran = true;
      } else if (at_keyword("targets")) {
        next();
        while (true) {
          Result<Arg> t = parse_arg(scope);
          if (!t) return t.error();
          decl.targets.push_back(t.take());
          if (cur().kind == Token::Kind::comma) {
            next();
            continue;
          }
          break;
        }
      } else {
        return expected("'granularity', 'targets' or '}'");
      }
    }
    if (!have_gran) {
      return err(loc, Errc::syntax_error,
                 "configurable '" + decl.name + "' needs a granularity");
    }
    if (decl.targets.empty()) {
      return err(loc, Errc::syntax_error,
                 "configurable '" + decl.name + "' needs a targets list");
    }
    return Decl{std::move(decl)};
  }

  Result<Decl> parse_instance(std::map<std::string, ScopeEntry>& scope) {
    SourceLoc loc = cur().loc;
    next();  // instance
    InstanceDecl decl;
    decl.loc = loc;
    Result<std::string> name = expect_ident("instance name");
    if (!name) return name.error();
    decl.name = name.take();
    if (auto r = expect(Token::Kind::equals, "'='"); !r) return r.error();
    Result<std::string> module = expect_ident("module name");
    if (!module) return module.error();
    decl.module = module.take();
    auto mit = modules_.find(decl.module);
    if (mit == modules_.end()) {
      return err(loc, Errc::unbound_name,
                 "module '" + decl.module + "' is not declared here");
    }
    if (auto r = expect(Token::Kind::lparen, "'('"); !r) return r.error();
    if (cur().kind != Token::Kind::rparen) {
      while (true) {
        Result<Arg> a = parse_arg(scope);
        if (!a) return a.error();
        decl.args.push_back(a.take());
        if (cur().kind == Token::Kind::comma) {
          next();
          continue;
        }
        break;
      }
    }
    if (auto r = expect(Token::Kind::rparen, "')'"); !r) return r.error();
    if (decl.args.size() != mit->second->params.size()) {
      return err(loc, Errc::bad_params,
                 "module '" + decl.module + "' takes " +
                     std::to_string(mit->second->params.size()) +
                     " arguments, got " + std::to_string(decl.args.size()));
    }
    if (Result<void> r = declare(
            scope, decl.name, {ScopeEntry::Kind::instance, mit->second}, loc);
        !r) {
      return r.error();
    }
    return Decl{std::move(decl)};
  }

  Result<ModuleDecl> parse_module() {
    SourceLoc loc = cur().loc;
    next();  // module
    ModuleDecl decl;
    Result<std::string> name = expect_ident("module name");
    if (!name) return name.error();
    decl.name = name.take();
    std::map<std::string, ScopeEntry> scope;
    if (cur().kind == Token::Kind::lparen) {
      next();
      if (cur().kind != Token::Kind::rparen) {
        while (true) {
          Result<std::string> p = expect_ident("parameter name");
          if (!p) return p.error();
          if (Result<void> r = declare(scope, p.value(),
                                       {ScopeEntry::Kind::param, nullptr},
                                       cur().loc);
              !r) {
            return r.error();
          }
          decl.params.push_back(p.take());
          if (cur().kind == Token::Kind::comma) {
            next();
            continue;
          }
          break;
        }
      }
      if (auto r = expect(Token::Kind::rparen, "')'"); !r) return r.error();
    }
    if (auto r = expect(Token::Kind::lbrace, "'{'"); !r) return r.error();
    while (true) {
      skip_separators();
      if (cur().kind == Token::Kind::rbrace) {
        next();
        break;
      }
      Result<Decl> d = parse_decl(scope);
      if (!d) return d.error();
      decl.body.push_back(d.take());
    }
    (void)loc;
    return decl;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, const ModuleDecl*> modules_;
  std::map<std::string, ScopeEntry> top_scope_;
};

}  // namespace

Result<PlatformAst> parse(std::string_view text) {
  Lexer lexer{text};
  Result<std::vector<Token>> tokens = lexer.run();
  if (!tokens) return tokens.error();
  Parser parser{tokens.take()};
  return parser.run();
}

// ------------------------------------------------------ pretty print

namespace {

std::string arg_text(const Arg& a) {
  return a.kind == Arg::Kind::number ? hex(a.number) : a.ident;
}

void print_decl(const Decl& d, const std::string& indent, std::string& out) {
  if (const auto* n = std::get_if<NodeDecl>(&d)) {
    out += indent + "node " + n->name + " {\n";
    for (const auto& [lo, hi] : n->accepts) {
      out += indent + "  accept [" + arg_text(lo) + ".." + arg_text(hi) + ")\n";
    }
    for (const auto& m : n->maps) {
      out += indent + "  map [" + arg_text(m.lo) + ".." + arg_text(m.hi) +
             ") -> " + arg_text(m.dst) + " @ " + arg_text(m.dst_base) + "\n";
    }
    if (n->overlay) {
      out += indent + "  overlay " + arg_text(*n->overlay) + "\n";
    }
    out += indent + "}\n";
  } else if (const auto* c = std::get_if<ConfigurableDecl>(&d)) {
    out += indent + "configurable " + c->name + " {\n";
    out += indent + "  granularity " + arg_text(c->granularity) + "\n";
    out += indent + "  targets ";
    for (std::size_t i = 0; i < c->targets.size(); ++i) {
      if (i) out += ", ";
      out += arg_text(c->targets[i]);
    }
    out += "\n" + indent + "}\n";
  } else if (const auto* inst = std::get_if<InstanceDecl>(&d)) {
    out += indent + "instance " + inst->name + " = " + inst->module + "(";
    for (std::size_t i = 0; i < inst->args.size(); ++i) {
      if (i) out += ", ";
      out += arg_text(inst->args[i]);
    }
    out += ")\n";
  }
}

}  // namespace

std::string pretty_print(const PlatformAst& ast) {
  std::string out;
  for (const auto& m : ast.modules) {
    out += "module " + m.name;
    if (!m.params.empty()) {
      out += "(";
      for (std::size_t i = 0; i < m.params.size(); ++i) {
        if (i) out += ", ";
        out += m.params[i];
      }
      out += ")";
    }
    out += " {\n";
    for (const auto& d : m.body) print_decl(d, "  ", out);
    out += "}\n";
  }
  for (const auto& d : ast.top.body) print_decl(d, "", out);
  return out;
}

// ----------------------------------------------------------- compile

namespace {

struct CompileCtx {
  std::map<std::string, const ModuleDecl*> modules;
  std::vector<Node> nodes;
  ConfigSpaces conf;
  std::map<NodeId, SourceLoc> locs;
  std::vector<std::string> expansion_stack;
};

Error loc_error(Errc code, SourceLoc loc, const std::string& what) {
  return make_error(code, "line " + std::to_string(loc.line) + ":" +
                              std::to_string(loc.col) + ": " + what);
}

// Resolves an argument inside one module expansion: parameters
// substitute their binding; other identifiers get the instance prefix.
Arg resolve_arg(const Arg& a, const std::map<std::string, Arg>& bindings,
                const std::string& prefix) {
  if (a.kind == Arg::Kind::number) return a;
  auto it = bindings.find(a.ident);
  if (it != bindings.end()) {
    Arg bound = it->second;
    bound.loc = a.loc;
    return bound;
  }
  Arg out = a;
  out.ident = prefix + a.ident;
  return out;
}

Result<std::uint64_t> want_number(const Arg& a) {
  if (a.kind != Arg::Kind::number) {
    return loc_error(Errc::bad_params, a.loc,
                     "expected a number, got name '" + a.ident + "'");
  }
  return a.number;
}

Result<NodeId> want_node(const Arg& a) {
  if (a.kind != Arg::Kind::ident) {
    return loc_error(Errc::bad_params, a.loc,
                     "expected a node name, got " + hex(a.number));
  }
  return a.ident;
}

Result<AddressRange> want_range(const Arg& lo_arg, const Arg& hi_arg) {
  Result<std::uint64_t> lo = want_number(lo_arg);
  if (!lo) return lo.error();
  Result<std::uint64_t> hi = want_number(hi_arg);
  if (!hi) return hi.error();
  if (hi.value() <= lo.value()) {
    return loc_error(Errc::invalid_range, lo_arg.loc,
                     "empty range [" + hex(lo.value()) + ".." +
                         hex(hi.value()) + ")");
  }
  return AddressRange{lo.value(), hi.value() - lo.value()};
}

Result<void> expand_body(const ModuleDecl& m, const std::string& prefix,
                         const std::map<std::string, Arg>& bindings,
                         CompileCtx& ctx) {
  for (const auto& d : m.body) {
    if (const auto* n = std::get_if<NodeDecl>(&d)) {
      Node node;
      node.id = prefix + n->name;
      for (const auto& [lo, hi] : n->accepts) {
        Result<AddressRange> r = want_range(resolve_arg(lo, bindings, prefix),
                                            resolve_arg(hi, bindings, prefix));
        if (!r) return r.error();
        node.accept.push_back(r.value());
      }
      for (const auto& mp : n->maps) {
        Result<AddressRange> r = want_range(
            resolve_arg(mp.lo, bindings, prefix),
            resolve_arg(mp.hi, bindings, prefix));
        if (!r) return r.error();
        Result<NodeId> dst = want_node(resolve_arg(mp.dst, bindings, prefix));
        if (!dst) return dst.error();
        Result<std::uint64_t> base =
            want_number(resolve_arg(mp.dst_base, bindings, prefix));
        if (!base) return base.error();
        node.segments.push_back({r.value(), dst.take(), base.value()});
      }
      if (n->overlay) {
        Result<NodeId> dst =
            want_node(resolve_arg(*n->overlay, bindings, prefix));
        if (!dst) return dst.error();
        node.overlay = dst.take();
      }
      ctx.locs.emplace(node.id, n->loc);
      ctx.nodes.push_back(std::move(node));
    } else if (const auto* c = std::get_if<ConfigurableDecl>(&d)) {
      NodeId id = prefix + c->name;
      Result<std::uint64_t> gran =
          want_number(resolve_arg(c->granularity, bindings, prefix));
      if (!gran) return gran.error();
      if (gran.value() == 0) {
        return loc_error(Errc::bad_params, c->loc, "zero granularity");
      }
      ConfigSpaceDesc desc;
      desc.granularity = gran.value();
      for (const auto& t : c->targets) {
        Result<NodeId> target = want_node(resolve_arg(t, bindings, prefix));
        if (!target) return target.error();
        desc.targets.push_back(target.take());
      }
      ctx.conf.emplace(id, std::move(desc));
      Node node;  // configurable spaces start out as empty nodes
      node.id = id;
      ctx.locs.emplace(id, c->loc);
      ctx.nodes.push_back(std::move(node));
    } else if (const auto* inst = std::get_if<InstanceDecl>(&d)) {
      auto mit = ctx.modules.find(inst->module);
      if (mit == ctx.modules.end()) {
        return loc_error(Errc::unbound_name, inst->loc,
                         "module '" + inst->module + "' is not declared");
      }
      if (std::count(ctx.expansion_stack.begin(), ctx.expansion_stack.end(),
                     inst->module)) {
        return loc_error(Errc::bad_params, inst->loc,
                         "recursive instantiation of module '" + inst->module +
                             "'");
      }
      const ModuleDecl& target = *mit->second;
      if (inst->args.size() != target.params.size()) {
        return loc_error(Errc::bad_params, inst->loc,
                         "module '" + inst->module + "' takes " +
                             std::to_string(target.params.size()) +
                             " arguments");
      }
      std::map<std::string, Arg> inner;
      for (std::size_t i = 0; i < inst->args.size(); ++i) {
        inner[target.params[i]] = resolve_arg(inst->args[i], bindings, prefix);
      }
      ctx.expansion_stack.push_back(inst->module);
      if (Result<void> r = expand_body(
              target, prefix + inst->name + ".", inner, ctx);
          !r) {
        return r;
      }
      ctx.expansion_stack.pop_back();
    }
  }
  return {};
}

}  // namespace

Result<std::pair<DecodingNet, ConfigSpaces>> compile(const PlatformAst& ast) {
  CompileCtx ctx;
  for (const auto& m : ast.modules) ctx.modules[m.name] = &m;
  if (Result<void> r = expand_body(ast.top, "", {}, ctx); !r) return r.error();

  std::set<NodeId> ids;
  for (const auto& n : ctx.nodes) {
    if (!ids.insert(n.id).second) {
      return loc_error(Errc::duplicate_node, ctx.locs[n.id],
                       "node '" + n.id + "' defined twice");
    }
  }
  DecodingNet net = DecodingNet::from_nodes_unchecked(ctx.nodes);
  std::vector<Violation> violations = well_formed(net);
  std::erase_if(violations, [](const Violation& v) {
    return v.code == Errc::loop_detected;
  });
  if (!violations.empty()) {
    const Violation& v = violations.front();
    SourceLoc loc = ctx.locs.count(v.node) ? ctx.locs[v.node] : SourceLoc{};
    return loc_error(v.code, loc, "node '" + v.node + "': " + v.detail);
  }
  return std::pair{std::move(net), std::move(ctx.conf)};
}

Result<std::pair<DecodingNet, ConfigSpaces>> compile_text(
    std::string_view text) {
  Result<PlatformAst> ast = parse(text);
  if (!ast) return ast.error();
  return compile(ast.value());
}

// ------------------------------------------------- translation table

namespace {

struct Piece {
  AddressRange local;
  std::optional<Name> canonical;  // nullopt: undecodable gap
};

// Local extent of a node: everything at or below its highest
// accept/map/overlay-visible address can be classified.
std::uint64_t node_hull(const DecodingNet& net, const NodeId& id,
                        std::set<NodeId> visited) {
  const Node* node = net.find(id);
  if (!node || visited.count(id)) return 0;
  visited.insert(id);
  std::uint64_t hull = 0;
  for (const auto& r : node->accept) hull = std::max(hull, r.end());
  for (const auto& s : node->segments) hull = std::max(hull, s.src.end());
  if (node->overlay) {
    hull = std::max(hull, node_hull(net, *node->overlay, visited));
  }
  return hull;
}

void walk(const DecodingNet& net, const NodeId& id, AddressRange window,
          std::set<NodeId> visited, std::uint64_t back_shift, bool back_neg,
          std::vector<Piece>& out);

// Emits [lo, hi) of node `id` seen through the inverse offset mapping
// described by (back_shift, back_neg): local = here +/- back_shift.
void emit_window(const DecodingNet& net, const Node* node, AddressRange window,
                 const std::set<NodeId>& visited, std::uint64_t back_shift,
                 bool back_neg, std::vector<Piece>& out) {
  auto to_local = [&](Address a) {
    return back_neg ? a - back_shift : a + back_shift;
  };
  if (!node) {
    out.push_back({{to_local(window.base), window.size}, std::nullopt});
    return;
  }

  struct Region {
    AddressRange range;
    const TranslateSegment* seg;  // nullptr: accept
  };
  std::vector<Region> regions;
  for (const auto& r : node->accept) regions.push_back({r, nullptr});
  for (const auto& s : node->segments) regions.push_back({s.src, &s});
  std::sort(regions.begin(), regions.end(),
            [](const Region& a, const Region& b) {
              return a.range.base < b.range.base;
            });

  Address cur = window.base;
  Address end = window.end();
  auto fill_uncovered = [&](Address from, Address to) {
    if (from >= to) return;
    if (node->overlay) {
      walk(net, *node->overlay, {from, to - from}, visited, back_shift,
           back_neg, out);
    } else {
      out.push_back({{to_local(from), to - from}, std::nullopt});
    }
  };
  for (const auto& region : regions) {
    if (region.range.end() <= cur) continue;
    if (region.range.base >= end) break;
    Address seg_lo = std::max(cur, region.range.base);
    Address seg_hi = std::min(end, region.range.end());
    fill_uncovered(cur, std::max(cur, region.range.base));
    if (region.seg == nullptr) {
      out.push_back({{to_local(seg_lo), seg_hi - seg_lo},
                     Name{node->id, seg_lo}});
    } else {
      const TranslateSegment& s = *region.seg;
      Address target_lo = s.dst_base + (seg_lo - s.src.base);
      // Compose the inverse mappings so recursion can translate
      // target-space addresses back into the original local space.
      std::uint64_t shift;
      bool neg;
      Address local_lo = to_local(seg_lo);
      if (target_lo >= local_lo) {
        shift = target_lo - local_lo;
        neg = true;
      } else {
        shift = local_lo - target_lo;
        neg = false;
      }
      walk(net, s.dst_node, {target_lo, seg_hi - seg_lo}, visited, shift, neg,
           out);
    }
    cur = seg_hi;
  }
  fill_uncovered(cur, end);
}

void walk(const DecodingNet& net, const NodeId& id, AddressRange window,
          std::set<NodeId> visited, std::uint64_t back_shift, bool back_neg,
          std::vector<Piece>& out) {
  auto to_local = [&](Address a) {
    return back_neg ? a - back_shift : a + back_shift;
  };
  if (window.size == 0) return;
  if (visited.count(id)) {  // decode loop: undecodable
    out.push_back({{to_local(window.base), window.size}, std::nullopt});
    return;
  }
  visited.insert(id);
  emit_window(net, net.find(id), window, visited, back_shift, back_neg, out);
}

}  // namespace

Result<TranslationTable> emit_translation_table(const DecodingNet& net,
                                                const NodeId& node) {
  if (!net.has(node)) {
    return make_error(Errc::unknown_node, "no node '" + node + "'");
  }
  TranslationTable table;
  table.node = node;
  std::uint64_t hull = node_hull(net, node, {});
  if (hull == 0) return table;

  std::vector<Piece> pieces;
  walk(net, node, {0, hull}, {}, 0, false, pieces);
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    return a.local.base < b.local.base;
  });

  for (const auto& p : pieces) {
    if (p.canonical) {
      if (!table.entries.empty()) {
        TranslationEntry& last = table.entries.back();
        if (last.canonical.node == p.canonical->node &&
            last.local.end() == p.local.base &&
            last.canonical.addr + last.local.size == p.canonical->addr) {
          last.local.size += p.local.size;
          continue;
        }
      }
      table.entries.push_back({p.local, *p.canonical});
    } else {
      if (!table.gaps.empty() && table.gaps.back().end() == p.local.base) {
        table.gaps.back().size += p.local.size;
      } else {
        table.gaps.push_back(p.local);
      }
    }
  }
  return table;
}

std::string translation_table_facts(const TranslationTable& table) {
  std::string out;
  for (const auto& e : table.entries) {
    out += "xlate(" + table.node + ", " + hex(e.local.base) + ", " +
           hex(e.local.size) + ", " + e.canonical.node + ", " +
           hex(e.canonical.addr) + ").\n";
  }
  return out;
}

// -------------------------------------------------- simulator config

std::string emit_simulator_config(const DecodingNet& net,
                                  const ConfigSpaces& conf) {
  // Initiators: nodes nothing routes into.
  std::set<NodeId> has_incoming;
  for (const auto& [id, node] : net.nodes()) {
    for (const auto& s : node.segments) has_incoming.insert(s.dst_node);
    if (node.overlay) has_incoming.insert(*node.overlay);
  }
  for (const auto& [id, desc] : conf) {
    for (const auto& t : desc.targets) has_incoming.insert(t);
  }
  std::vector<NodeId> cores;
  std::map<NodeId, TranslationTable> tables;
  for (const auto& [id, node] : net.nodes()) {
    if (has_incoming.count(id)) continue;
    Result<TranslationTable> table = emit_translation_table(net, id);
    if (!table || table.value().entries.empty()) continue;
    cores.push_back(id);
    tables.emplace(id, table.take());
  }
  if (cores.empty()) return "";

  // A target is private when a single core resolves into it.
  std::map<NodeId, int> target_cores;
  for (const auto& id : cores) {
    std::set<NodeId> seen;
    for (const auto& e : tables.at(id).entries) seen.insert(e.canonical.node);
    for (const auto& t : seen) ++target_cores[t];
  }

  std::string out;
  out += "# simulator memory-map configuration\n";
  out += "# one [core <id>] section per initiator; region.N maps the local\n";
  out += "# window [local_base, local_base+size) onto the backing memory\n";
  out += "# node; sharing is 'shared' when another core reaches the same\n";
  out += "# node, 'private' otherwise.\n";
  for (const auto& id : cores) {
    out += "\n[core " + id + "]\n";
    const TranslationTable& table = tables.at(id);
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
      const TranslationEntry& e = table.entries[i];
      std::string p = "region." + std::to_string(i) + ".";
      out += p + "local_base = " + hex(e.local.base) + "\n";
      out += p + "size = " + hex(e.local.size) + "\n";
      out += p + "target = " + e.canonical.node + "\n";
      out += p + "target_base = " + hex(e.canonical.addr) + "\n";
      out += p + "sharing = " +
             (target_cores[e.canonical.node] > 1 ? "shared" : "private") +
             "\n";
    }
  }
  return out;
}

// ------------------------------------------------- builtin topologies

std::optional<TopologyKind> topology_from_name(std::string_view name) {
  if (name == "uniform") return TopologyKind::uniform;
  if (name == "swapped") return TopologyKind::swapped;
  if (name == "private") return TopologyKind::private_;
  if (name == "private-swapped") return TopologyKind::private_swapped;
  return std::nullopt;
}

std::string_view topology_name(TopologyKind k) {
  switch (k) {
    case TopologyKind::uniform:
      return "uniform";
    case TopologyKind::swapped:
      return "swapped";
    case TopologyKind::private_:
      return "private";
    case TopologyKind::private_swapped:
      return "private-swapped";
  }
  return "uniform";
}

namespace {

NodeDecl accept_node(const std::string& name, std::uint64_t size) {
  NodeDecl n;
  n.name = name;
  n.accepts.push_back({Arg::num(0), Arg::num(size)});
  return n;
}

void add_map(NodeDecl& n, std::uint64_t lo, std::uint64_t hi,
             const std::string& dst, std::uint64_t base) {
  n.maps.push_back({Arg::num(lo), Arg::num(hi), Arg::id(dst), Arg::num(base)});
}

}  // namespace

Result<PlatformAst> builtin_topology(TopologyKind kind,
                                     const TopologyParams& p) {
  const std::uint64_t d = p.dram_size;
  const std::uint64_t priv = p.private_size;
  const std::uint64_t g = p.granularity;
  bool swapped = kind == TopologyKind::swapped ||
                 kind == TopologyKind::private_swapped;
  bool with_private = kind == TopologyKind::private_ ||
                      kind == TopologyKind::private_swapped;
  if (g == 0 || d == 0 || d % g != 0) {
    return make_error(Errc::bad_params,
                      "dram size must be a positive multiple of the "
                      "granularity");
  }
  if (swapped && d % (2 * g) != 0) {
    return make_error(Errc::bad_params,
                      "swapped topologies need dram halves aligned to the "
                      "granularity");
  }
  if (with_private && (priv == 0 || priv % g != 0)) {
    return make_error(Errc::bad_params,
                      "private size must be a positive multiple of the "
                      "granularity");
  }
  if (with_private && d > ~std::uint64_t{0} - priv) {
    return make_error(Errc::bad_params, "address window overflows");
  }

  PlatformAst ast;
  ast.top.body.push_back(accept_node("dram", d));
  if (with_private) {
    ast.top.body.push_back(accept_node("core0_mem", priv));
    ast.top.body.push_back(accept_node("core1_mem", priv));
  }
  const std::uint64_t h = d / 2;
  for (int core = 0; core < 2; ++core) {
    NodeDecl n;
    n.name = core == 0 ? "core0" : "core1";
    if (swapped) {
      // core0 sees the upper half low; core1 keeps the identity view.
      if (core == 0) {
        add_map(n, 0, h, "dram", h);
        add_map(n, h, d, "dram", 0);
      } else {
        add_map(n, 0, h, "dram", 0);
        add_map(n, h, d, "dram", h);
      }
    } else {
      add_map(n, 0, d, "dram", 0);
    }
    if (with_private) {
      add_map(n, d, d + priv, core == 0 ? "core0_mem" : "core1_mem", 0);
    }
    ast.top.body.push_back(std::move(n));
  }
  return ast;
}

}  // namespace addrnet::dsl
