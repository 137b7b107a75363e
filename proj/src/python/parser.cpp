// Copyright 2026 The repoaware Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "repoaware/python/parser.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace repoaware::py {
namespace {

constexpr std::array<std::string_view, 13> kAugAssign = {
    "+=", "-=", "*=", "/=", "//=", "%=", "@=", "&=", "|=", "^=", ">>=", "<<=",
    "**="};

bool is_aug_assign(const Token& t) {
  return t.kind == TokenKind::kOp &&
         std::find(kAugAssign.begin(), kAugAssign.end(), t.text) !=
             kAugAssign.end();
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

struct LiteralParts {
  std::string_view prefix;
  std::string_view body;
};

LiteralParts split_literal(std::string_view token) {
  std::size_t q = token.find_first_of("'\"");
  std::string_view prefix = token.substr(0, q);
  char quote = token[q];
  bool triple = token.size() >= q + 6 && token[q + 1] == quote &&
                token[q + 2] == quote;
  std::size_t open = triple ? 3 : 1;
  return {prefix, token.substr(q + open, token.size() - q - 2 * open)};
}

bool prefix_has(std::string_view prefix, char c) {
  for (char p : prefix) {
    if ((p | 0x20) == c) return true;
  }
  return false;
}

// Index just past the replacement-field expression starting at `i`.
std::size_t scan_field_expression(std::string_view body, std::size_t i) {
  int depth = 0;
  char quote = 0;
  for (; i < body.size(); ++i) {
    char c = body[i];
    if (quote) {
      if (c == quote) quote = 0;
      continue;
    }
    if (c == '\'' || c == '"') {
      quote = c;
    } else if (c == '(' || c == '[' || c == '{') {
      ++depth;
    } else if (c == ')' || c == ']' || c == '}') {
      if (depth == 0) return i;
      --depth;
    } else if (depth == 0) {
      char next = i + 1 < body.size() ? body[i + 1] : '\0';
      char prev = i > 0 ? body[i - 1] : '\0';
      if (c == '!' && next != '=') return i;
      if (c == ':') return i;
      if (c == '=' && next != '=' && prev != '=' && prev != '!' &&
          prev != '<' && prev != '>') {
        return i;
      }
    }
  }
  return i;
}

// Validates the replacement fields of an f-string body.
void check_fstring(std::string_view body, std::uint32_t line,
                   std::uint32_t col, int nesting = 0) {
  auto fail = [&](const std::string& what) {
    throw SyntaxError("f-string: " + what, line, col);
  };
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c == '}') {
      if (i + 1 < body.size() && body[i + 1] == '}' && nesting == 0) {
        ++i;
        continue;
      }
      fail("single '}' is not allowed");
    }
    if (c != '{') continue;
    if (i + 1 < body.size() && body[i + 1] == '{' && nesting == 0) {
      ++i;
      continue;
    }
    if (nesting >= 2) fail("expressions nested too deeply");
    std::size_t start = i + 1;
    std::size_t stop = scan_field_expression(body, start);
    std::string_view expr = body.substr(start, stop - start);
    if (expr.find_first_not_of(" \t\n") == std::string_view::npos) {
      fail("empty expression not allowed");
    }
    if (expr.find('\\') != std::string_view::npos) {
      fail("expression part cannot include a backslash");
    }
    try {
      Module m = parse("(" + std::string(expr) + "\n)");
      if (m.root.children.size() != 1 ||
          m.root.children[0].kind != NodeKind::kExprStmt) {
        fail("invalid syntax");
      }
    } catch (const SyntaxError&) {
      fail("invalid syntax");
    }
    i = stop;
    if (i < body.size() && body[i] == '=') {
      ++i;
      while (i < body.size() && (body[i] == ' ' || body[i] == '\n')) ++i;
    }
    if (i < body.size() && body[i] == '!') {
      ++i;
      if (i >= body.size() || std::string_view("rsa").find(body[i]) ==
                                  std::string_view::npos) {
        fail("invalid conversion character");
      }
      ++i;
    }
    if (i < body.size() && body[i] == ':') {
      std::size_t spec_start = ++i;
      int depth = 0;
      for (; i < body.size(); ++i) {
        if (body[i] == '{') ++depth;
        if (body[i] == '}') {
          if (depth == 0) break;
          --depth;
        }
      }
      check_fstring(body.substr(spec_start, i - spec_start), line, col,
                    nesting + 1);
    }
    if (i >= body.size() || body[i] != '}') fail("expecting '}'");
  }
}

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {
    for (const Token& t : tokenize(src_)) {
      if (t.kind != TokenKind::kComment && t.kind != TokenKind::kNl) {
        toks_.push_back(t);
      }
    }
  }

  Node parse_module() {
    Node module = make(NodeKind::kModule, cur());
    while (cur().kind != TokenKind::kEndMarker) {
      if (cur().kind == TokenKind::kNewline) {
        advance();
        continue;
      }
      parse_statement(module.children);
    }
    module.begin = 0;
    module.line = 1;
    module.end = src_.size();
    module.end_line = toks_.back().end_line;
    return module;
  }

 private:
  // ---- token cursor -------------------------------------------------------

  const Token& cur() const { return toks_[i_]; }
  const Token& peek(std::size_t k = 1) const {
    return toks_[std::min(i_ + k, toks_.size() - 1)];
  }

  void advance() {
    TokenKind k = cur().kind;
    if (k != TokenKind::kNewline && k != TokenKind::kIndent &&
        k != TokenKind::kDedent && k != TokenKind::kEndMarker) {
      last_real_ = i_;
    }
    if (i_ + 1 < toks_.size()) ++i_;
  }

  bool at_op(std::string_view op) const { return cur().is_op(op); }
  bool at_kw(std::string_view kw) const { return cur().is_name(kw); }

  bool accept_op(std::string_view op) {
    if (!at_op(op)) return false;
    advance();
    return true;
  }

  bool accept_kw(std::string_view kw) {
    if (!at_kw(kw)) return false;
    advance();
    return true;
  }

  [[noreturn]] void error(const std::string& msg) const {
    throw SyntaxError(msg, cur().line, cur().col);
  }

  [[noreturn]] void invalid() const {
    if (cur().kind == TokenKind::kIndent) error("unexpected indent");
    if (cur().kind == TokenKind::kEndMarker) error("unexpected EOF");
    error("invalid syntax");
  }

  void expect_op(std::string_view op) {
    if (!accept_op(op)) {
      if (cur().kind == TokenKind::kNewline || cur().kind == TokenKind::kEndMarker)
        error("expected '" + std::string(op) + "'");
      invalid();
    }
  }

  void expect_kw(std::string_view kw) {
    if (!accept_kw(kw)) error("expected '" + std::string(kw) + "'");
  }

  void expect_kind(TokenKind kind, const char* what) {
    if (cur().kind != kind) error(std::string("expected ") + what);
    advance();
  }

  std::string expect_identifier() {
    if (cur().kind != TokenKind::kName || is_keyword(cur().text)) invalid();
    std::string name(cur().text);
    advance();
    return name;
  }

  Node make(NodeKind kind, const Token& start) const {
    Node n;
    n.kind = kind;
    n.line = start.line;
    n.begin = start.begin;
    return n;
  }

  void finish(Node& n) const {
    const Token& last = toks_[last_real_];
    n.end = std::max(n.begin, last.end);
    n.end_line = std::max(n.line, last.end_line);
  }

  Node empty_node() const {
    Node n;
    n.line = n.end_line = cur().line;
    n.begin = n.end = cur().begin;
    return n;
  }

  // Wraps `inner` so the wrapper starts where `inner` started.
  Node wrap(NodeKind kind, const Node& start_like) const {
    Node n;
    n.kind = kind;
    n.line = start_like.line;
    n.begin = start_like.begin;
    return n;
  }

  bool at_line_end() const {
    return cur().kind == TokenKind::kNewline || at_op(";") ||
           cur().kind == TokenKind::kEndMarker;
  }

  bool starts_expression() const {
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::kNumber:
      case TokenKind::kString:
        return true;
      case TokenKind::kName:
        if (!is_keyword(t.text)) return true;
        return t.text == "None" || t.text == "True" || t.text == "False" ||
               t.text == "not" || t.text == "lambda" || t.text == "await" ||
               t.text == "yield";
      case TokenKind::kOp:
        return t.text == "(" || t.text == "[" || t.text == "{" ||
               t.text == "-" || t.text == "+" || t.text == "~" ||
               t.text == "*" || t.text == "..." || t.text == "**";
      default:
        return false;
    }
  }

  void check_target(const Node& n, bool simple = false) const {
    switch (n.kind) {
      case NodeKind::kName:
      case NodeKind::kAttribute:
      case NodeKind::kSubscript:
        return;
      case NodeKind::kTuple:
      case NodeKind::kList:
      case NodeKind::kStarred:
        if (!simple) {
          for (const Node& c : n.children) check_target(c);
          return;
        }
        break;
      default:
        break;
    }
    throw SyntaxError("cannot assign to " + std::string(kind_name(n.kind)),
                      n.line, 0);
  }

  // ---- statements ---------------------------------------------------------

  void parse_statement(std::vector<Node>& out) {
    const Token& t = cur();
    if (t.kind == TokenKind::kIndent) error("unexpected indent");
    if (t.kind == TokenKind::kName) {
      std::string_view w = t.text;
      if (w == "if") return out.push_back(parse_if());
      if (w == "while") return out.push_back(parse_while());
      if (w == "for") return out.push_back(parse_for(t));
      if (w == "try") return out.push_back(parse_try());
      if (w == "with") return out.push_back(parse_with(t));
      if (w == "def") return out.push_back(parse_funcdef(t, Node{}));
      if (w == "class") return out.push_back(parse_classdef(t, Node{}));
      if (w == "async") return out.push_back(parse_async());
      if (w == "match") {
        std::size_t save = i_;
        std::size_t save_real = last_real_;
        Node m;
        if (try_parse_match(m)) return out.push_back(std::move(m));
        i_ = save;
        last_real_ = save_real;
      }
    }
    if (t.is_op("@")) return out.push_back(parse_decorated());
    parse_simple_statements(out);
  }

  void parse_simple_statements(std::vector<Node>& out) {
    for (;;) {
      out.push_back(parse_small_statement());
      if (accept_op(";")) {
        if (cur().kind == TokenKind::kNewline) break;
        continue;
      }
      break;
    }
    if (cur().kind == TokenKind::kEndMarker) return;
    if (cur().kind != TokenKind::kNewline) invalid();
    advance();
  }

  Node parse_small_statement() {
    const Token& t = cur();
    if (t.kind == TokenKind::kName) {
      std::string_view w = t.text;
      if (w == "pass") return keyword_stmt(NodeKind::kPass);
      if (w == "break") return keyword_stmt(NodeKind::kBreak);
      if (w == "continue") return keyword_stmt(NodeKind::kContinue);
      if (w == "return") {
        Node n = make(NodeKind::kReturn, t);
        advance();
        if (!at_line_end()) n.children.push_back(parse_testlist_star_expr());
        finish(n);
        return n;
      }
      if (w == "raise") {
        Node n = make(NodeKind::kRaise, t);
        advance();
        if (!at_line_end()) {
          n.children.push_back(parse_test());
          if (accept_kw("from")) n.children.push_back(parse_test());
        }
        finish(n);
        return n;
      }
      if (w == "global" || w == "nonlocal") {
        Node n = make(w == "global" ? NodeKind::kGlobal : NodeKind::kNonlocal, t);
        advance();
        do {
          Node name = make(NodeKind::kName, cur());
          name.value = expect_identifier();
          finish(name);
          n.children.push_back(std::move(name));
        } while (accept_op(","));
        finish(n);
        return n;
      }
      if (w == "del") {
        Node n = make(NodeKind::kDelete, t);
        advance();
        n.children.push_back(parse_target_list());
        check_target(n.children.back());
        finish(n);
        return n;
      }
      if (w == "assert") {
        Node n = make(NodeKind::kAssert, t);
        advance();
        n.children.push_back(parse_test());
        if (accept_op(",")) n.children.push_back(parse_test());
        finish(n);
        return n;
      }
      if (w == "import") return parse_import();
      if (w == "from") return parse_from_import();
      if (w == "type" && peek().kind == TokenKind::kName &&
          (peek(2).is_op("=") || peek(2).is_op("["))) {
        return parse_type_alias();
      }
    }
    return parse_expr_statement();
  }

  Node keyword_stmt(NodeKind kind) {
    Node n = make(kind, cur());
    advance();
    finish(n);
    return n;
  }

  Node parse_type_alias() {
    Node n = make(NodeKind::kTypeAlias, cur());
    advance();
    Node name = make(NodeKind::kName, cur());
    name.value = expect_identifier();
    finish(name);
    n.children.push_back(std::move(name));
    if (at_op("[")) skip_brackets();
    expect_op("=");
    n.children.push_back(parse_test());
    finish(n);
    return n;
  }

  void skip_brackets() {
    int depth = 0;
    do {
      if (at_op("[") || at_op("(") || at_op("{")) ++depth;
      if (at_op("]") || at_op(")") || at_op("}")) --depth;
      advance();
    } while (depth > 0 && cur().kind != TokenKind::kEndMarker);
  }

  std::string parse_dotted_name() {
    std::string name = expect_identifier();
    while (at_op(".")) {
      advance();
      name += '.';
      name += expect_identifier();
    }
    return name;
  }

  Node parse_import() {
    Node n = make(NodeKind::kImport, cur());
    advance();
    do {
      Node alias = make(NodeKind::kAlias, cur());
      alias.value = parse_dotted_name();
      if (accept_kw("as")) alias.detail = expect_identifier();
      finish(alias);
      n.children.push_back(std::move(alias));
    } while (accept_op(","));
    finish(n);
    return n;
  }

  Node parse_from_import() {
    Node n = make(NodeKind::kImportFrom, cur());
    advance();
    while (at_op(".") || at_op("...")) {
      n.level += at_op(".") ? 1 : 3;
      advance();
    }
    if (!at_kw("import")) n.value = parse_dotted_name();
    if (n.level == 0 && n.value.empty()) invalid();
    expect_kw("import");
    if (at_op("*")) {
      Node alias = make(NodeKind::kAlias, cur());
      alias.value = "*";
      advance();
      finish(alias);
      n.children.push_back(std::move(alias));
      finish(n);
      return n;
    }
    bool paren = accept_op("(");
    do {
      if (paren && at_op(")")) break;
      Node alias = make(NodeKind::kAlias, cur());
      alias.value = expect_identifier();
      if (accept_kw("as")) alias.detail = expect_identifier();
      finish(alias);
      n.children.push_back(std::move(alias));
    } while (accept_op(","));
    if (n.children.empty()) invalid();
    if (paren) expect_op(")");
    finish(n);
    return n;
  }

  Node parse_expr_statement() {
    const Token& start = cur();
    Node first = at_kw("yield") ? parse_yield() : parse_testlist_star_expr();
    if (at_op(":")) {
      Node n = make(NodeKind::kAnnAssign, start);
      advance();
      check_target(first, true);
      n.children.push_back(std::move(first));
      n.children.push_back(parse_test());
      if (accept_op("=")) n.children.push_back(parse_assign_value());
      finish(n);
      return n;
    }
    if (is_aug_assign(cur())) {
      Node n = make(NodeKind::kAugAssign, start);
      n.value = std::string(cur().text);
      advance();
      check_target(first, true);
      n.children.push_back(std::move(first));
      n.children.push_back(parse_assign_value());
      finish(n);
      return n;
    }
    if (at_op("=")) {
      Node n = make(NodeKind::kAssign, start);
      n.children.push_back(std::move(first));
      while (accept_op("=")) n.children.push_back(parse_assign_value());
      for (std::size_t k = 0; k + 1 < n.children.size(); ++k) {
        check_target(n.children[k]);
      }
      finish(n);
      return n;
    }
    Node n = make(NodeKind::kExprStmt, start);
    n.children.push_back(std::move(first));
    finish(n);
    return n;
  }

  Node parse_assign_value() {
    return at_kw("yield") ? parse_yield() : parse_testlist_star_expr();
  }

  Node parse_block() {
    expect_op(":");
    Node block = make(NodeKind::kBlock, cur());
    if (cur().kind == TokenKind::kNewline) {
      advance();
      if (cur().kind != TokenKind::kIndent) error("expected an indented block");
      advance();
      block.line = cur().line;
      block.begin = cur().begin;
      while (cur().kind != TokenKind::kDedent &&
             cur().kind != TokenKind::kEndMarker) {
        parse_statement(block.children);
      }
      finish(block);
      if (cur().kind == TokenKind::kDedent) advance();
    } else {
      parse_simple_statements(block.children);
      finish(block);
    }
    return block;
  }

  Node parse_else_clause() {
    Node n = make(NodeKind::kElse, cur());
    advance();
    n.children.push_back(parse_block());
    finish(n);
    return n;
  }

  Node parse_if() {
    Node n = make(NodeKind::kIf, cur());
    advance();
    n.children.push_back(parse_namedexpr_test());
    n.children.push_back(parse_block());
    if (at_kw("elif")) {
      Node e = make(NodeKind::kElse, cur());
      e.children.push_back(parse_if());
      finish(e);
      n.children.push_back(std::move(e));
    } else if (at_kw("else")) {
      n.children.push_back(parse_else_clause());
    }
    finish(n);
    return n;
  }

  Node parse_while() {
    Node n = make(NodeKind::kWhile, cur());
    advance();
    n.children.push_back(parse_namedexpr_test());
    n.children.push_back(parse_block());
    if (at_kw("else")) n.children.push_back(parse_else_clause());
    finish(n);
    return n;
  }

  Node parse_for(const Token& start) {
    Node n = make(NodeKind::kFor, start);
    expect_kw("for");
    n.children.push_back(parse_target_list());
    check_target(n.children.back());
    expect_kw("in");
    n.children.push_back(parse_testlist_star_expr());
    n.children.push_back(parse_block());
    if (at_kw("else")) n.children.push_back(parse_else_clause());
    finish(n);
    return n;
  }

  Node parse_try() {
    Node n = make(NodeKind::kTry, cur());
    advance();
    n.children.push_back(parse_block());
    bool handlers = false;
    while (at_kw("except")) {
      handlers = true;
      Node h = make(NodeKind::kExceptHandler, cur());
      advance();
      accept_op("*");
      if (!at_op(":")) {
        h.children.push_back(parse_test());
        if (at_op(",")) {
          Node tuple = wrap(NodeKind::kTuple, h.children.back());
          tuple.children.push_back(std::move(h.children.back()));
          while (accept_op(",")) tuple.children.push_back(parse_test());
          finish(tuple);
          h.children.back() = std::move(tuple);
        }
        if (accept_kw("as")) h.value = expect_identifier();
      } else {
        h.children.push_back(empty_node());
      }
      h.children.push_back(parse_block());
      finish(h);
      n.children.push_back(std::move(h));
    }
    if (handlers && at_kw("else")) n.children.push_back(parse_else_clause());
    if (at_kw("finally")) {
      Node f = make(NodeKind::kFinally, cur());
      advance();
      f.children.push_back(parse_block());
      finish(f);
      n.children.push_back(std::move(f));
    } else if (!handlers) {
      error("expected 'except' or 'finally' block");
    }
    finish(n);
    return n;
  }

  Node parse_with_item() {
    Node item = make(NodeKind::kWithItem, cur());
    item.children.push_back(parse_test());
    if (accept_kw("as")) {
      item.children.push_back(parse_target());
      check_target(item.children.back());
    } else {
      item.children.push_back(empty_node());
    }
    finish(item);
    return item;
  }

  Node parse_with(const Token& start) {
    Node n = make(NodeKind::kWith, start);
    expect_kw("with");
    bool done = false;
    if (at_op("(")) {
      // Parenthesized item list; falls back to an ordinary expression.
      std::size_t save = i_, save_real = last_real_;
      try {
        advance();
        std::vector<Node> items;
        do {
          if (at_op(")")) break;
          items.push_back(parse_with_item());
        } while (accept_op(","));
        expect_op(")");
        if (!at_op(":")) throw SyntaxError("not an item list", 0, 0);
        for (Node& it : items) n.children.push_back(std::move(it));
        done = true;
      } catch (const SyntaxError&) {
        i_ = save;
        last_real_ = save_real;
      }
    }
    if (!done) {
      do {
        n.children.push_back(parse_with_item());
      } while (accept_op(","));
    }
    n.children.push_back(parse_block());
    finish(n);
    return n;
  }

  Node parse_async() {
    const Token& start = cur();
    advance();
    if (at_kw("def")) return parse_funcdef(start, Node{});
    Node n;
    if (at_kw("for")) {
      n = parse_for(start);
    } else if (at_kw("with")) {
      n = parse_with(start);
    } else {
      invalid();
    }
    n.is_async = true;
    return n;
  }

  Node parse_decorated() {
    const Token& start = cur();
    Node decorators = make(NodeKind::kDecorators, start);
    while (accept_op("@")) {
      decorators.children.push_back(parse_namedexpr_test());
      expect_kind(TokenKind::kNewline, "newline after decorator");
    }
    finish(decorators);
    if (at_kw("def")) return parse_funcdef(start, std::move(decorators));
    if (at_kw("class")) return parse_classdef(start, std::move(decorators));
    if (at_kw("async") && peek().is_name("def")) {
      advance();
      return parse_funcdef(start, std::move(decorators));
    }
    invalid();
  }

  // Joins header tokens, keeping intra-line spacing and folding line breaks.
  std::string header_text(std::size_t first, std::size_t last) const {
    std::string out;
    for (std::size_t k = first; k < last; ++k) {
      const Token& t = toks_[k];
      if (t.kind == TokenKind::kNewline || t.kind == TokenKind::kIndent ||
          t.kind == TokenKind::kDedent)
        continue;
      if (!out.empty()) {
        const Token& p = toks_[k - 1];
        if (p.end_line == t.line) {
          out.append(src_, p.end, t.begin - p.end);
        } else if (!(p.is_op("(") || p.is_op("[") || t.is_op(")") ||
                     t.is_op("]"))) {
          out.push_back(' ');
        }
      }
      out.append(t.text);
    }
    return out;
  }

  Node parse_funcdef(const Token& start, Node decorators) {
    Node n = make(NodeKind::kFunctionDef, start);
    std::size_t header_first = i_;
    if (i_ > 0 && toks_[i_ - 1].is_name("async")) {
      n.is_async = true;
      --header_first;
    }
    expect_kw("def");
    n.value = expect_identifier();
    if (at_op("[")) skip_brackets();
    if (decorators.kind != NodeKind::kDecorators) {
      decorators = make(NodeKind::kDecorators, cur());
      decorators.end = decorators.begin;
      decorators.end_line = decorators.line;
    }
    n.children.push_back(std::move(decorators));
    expect_op("(");
    n.children.push_back(parse_parameters(")", true));
    expect_op(")");
    if (accept_op("->")) {
      Node r = make(NodeKind::kReturns, cur());
      r.children.push_back(parse_test());
      finish(r);
      n.children.push_back(std::move(r));
    } else {
      n.children.push_back(empty_node());
    }
    if (!at_op(":")) invalid();
    n.detail = header_text(header_first, i_);
    n.children.push_back(parse_block());
    finish(n);
    return n;
  }

  Node parse_classdef(const Token& start, Node decorators) {
    Node n = make(NodeKind::kClassDef, start);
    expect_kw("class");
    n.value = expect_identifier();
    if (at_op("[")) skip_brackets();
    if (decorators.kind != NodeKind::kDecorators) {
      decorators = make(NodeKind::kDecorators, cur());
      decorators.end = decorators.begin;
      decorators.end_line = decorators.line;
    }
    n.children.push_back(std::move(decorators));
    Node bases = make(NodeKind::kTuple, cur());
    if (accept_op("(")) {
      parse_arguments(bases.children, false);
      expect_op(")");
    }
    finish(bases);
    n.children.push_back(std::move(bases));
    n.children.push_back(parse_block());
    finish(n);
    return n;
  }

  // Parameter list of a def (annotations allowed) or lambda (up to ':').
  Node parse_parameters(std::string_view closer, bool annotations) {
    Node params = make(NodeKind::kParameters, cur());
    bool slash = false, star = false, kwargs = false, defaults = false;
    bool bare_star = false;
    while (!at_op(closer)) {
      if (kwargs) error("arguments cannot follow var-keyword argument");
      Node p = make(NodeKind::kParam, cur());
      if (accept_op("/")) {
        if (slash || star || params.children.empty()) invalid();
        slash = true;
        p.detail = "/";
      } else if (accept_op("**")) {
        kwargs = true;
        p.detail = "**";
        p.value = expect_identifier();
      } else if (accept_op("*")) {
        if (star) error("* argument may appear only once");
        star = true;
        p.detail = "*";
        if (cur().kind == TokenKind::kName) {
          p.value = expect_identifier();
        } else {
          bare_star = true;
        }
      } else {
        p.value = expect_identifier();
        bare_star = false;
      }
      if (annotations && !p.value.empty() && accept_op(":")) {
        p.children.push_back(p.detail == "*" && at_op("*") ? parse_star_expr()
                                                           : parse_test());
      } else {
        p.children.push_back(empty_node());
      }
      if (p.detail.empty() && accept_op("=")) {
        if (!star) defaults = true;
        p.children.push_back(parse_test());
      } else {
        if (p.detail.empty() && !star && defaults) {
          error("non-default argument follows default argument");
        }
        p.children.push_back(empty_node());
      }
      finish(p);
      params.children.push_back(std::move(p));
      if (!accept_op(",")) break;
    }
    if (bare_star) error("named arguments must follow bare *");
    if (!at_op(closer)) invalid();
    finish(params);
    return params;
  }

  bool try_parse_match(Node& out) {
    const Token& start = cur();
    Node n = make(NodeKind::kMatch, start);
    try {
      advance();
      if (at_line_end() || at_op("=") || at_op(".") || at_op(":")) return false;
      n.children.push_back(parse_testlist_star_expr(true));
      expect_op(":");
      expect_kind(TokenKind::kNewline, "newline");
      expect_kind(TokenKind::kIndent, "indent");
      if (!at_kw("case")) return false;
    } catch (const SyntaxError&) {
      return false;
    }
    while (at_kw("case")) {
      Node c = make(NodeKind::kMatchCase, cur());
      advance();
      c.children.push_back(parse_pattern());
      if (accept_kw("if")) {
        c.children.push_back(parse_namedexpr_test());
      } else {
        c.children.push_back(empty_node());
      }
      c.children.push_back(parse_block());
      finish(c);
      n.children.push_back(std::move(c));
    }
    if (cur().kind != TokenKind::kDedent) invalid();
    advance();
    finish(n);
    out = std::move(n);
    return true;
  }

  Node parse_as_pattern() {
    Node p = at_op("*") ? parse_star_expr() : parse_bitor();
    if (accept_kw("as")) {
      Node named = wrap(NodeKind::kNamedExpr, p);
      Node target = make(NodeKind::kName, cur());
      target.value = expect_identifier();
      finish(target);
      named.children.push_back(std::move(target));
      named.children.push_back(std::move(p));
      finish(named);
      return named;
    }
    return p;
  }

  Node parse_pattern() {
    Node first = parse_as_pattern();
    if (!at_op(",")) return first;
    Node tuple = wrap(NodeKind::kTuple, first);
    tuple.children.push_back(std::move(first));
    while (accept_op(",")) {
      if (at_op(":") || at_kw("if")) break;
      tuple.children.push_back(parse_as_pattern());
    }
    finish(tuple);
    return tuple;
  }

  // ---- expressions --------------------------------------------------------

  // exprlist used by `for` targets and `del`.
  Node parse_target_list() {
    Node first = parse_target();
    if (!at_op(",")) return first;
    Node tuple = wrap(NodeKind::kTuple, first);
    tuple.children.push_back(std::move(first));
    while (accept_op(",")) {
      if (at_kw("in") || at_line_end() || at_op("=")) break;
      tuple.children.push_back(parse_target());
    }
    finish(tuple);
    return tuple;
  }

  Node parse_target() { return at_op("*") ? parse_star_expr() : parse_bitor(); }

  // Statement-level expression list; `named` admits an unparenthesized
  // walrus, as a match subject does.
  Node parse_testlist_star_expr(bool named = false) {
    auto element = [&] {
      if (at_op("*")) return parse_star_expr();
      return named ? parse_namedexpr_test() : parse_test();
    };
    Node first = element();
    if (!at_op(",")) return first;
    Node tuple = wrap(NodeKind::kTuple, first);
    tuple.children.push_back(std::move(first));
    while (accept_op(",")) {
      if (!starts_expression() || at_kw("yield")) break;
      tuple.children.push_back(element());
    }
    finish(tuple);
    return tuple;
  }

  Node parse_star_or_named() {
    return at_op("*") ? parse_star_expr() : parse_namedexpr_test();
  }

  Node parse_star_expr() {
    Node n = make(NodeKind::kStarred, cur());
    expect_op("*");
    n.children.push_back(parse_bitor());
    finish(n);
    return n;
  }

  Node parse_namedexpr_test() {
    if (cur().kind == TokenKind::kName && peek().is_op(":=")) {
      Node n = make(NodeKind::kNamedExpr, cur());
      Node target = make(NodeKind::kName, cur());
      target.value = expect_identifier();
      finish(target);
      advance();
      n.children.push_back(std::move(target));
      n.children.push_back(parse_test());
      finish(n);
      return n;
    }
    return parse_test();
  }

  Node parse_test() {
    if (at_kw("lambda")) return parse_lambda();
    Node body = parse_or();
    if (at_kw("if")) {
      Node n = wrap(NodeKind::kIfExp, body);
      advance();
      Node test = parse_or();
      expect_kw("else");
      n.children.push_back(std::move(body));
      n.children.push_back(std::move(test));
      n.children.push_back(parse_test());
      finish(n);
      return n;
    }
    return body;
  }

  Node parse_lambda() {
    Node n = make(NodeKind::kLambda, cur());
    advance();
    n.children.push_back(parse_parameters(":", false));
    expect_op(":");
    n.children.push_back(parse_test());
    finish(n);
    return n;
  }

  Node parse_bool(std::string_view op, Node (Parser::*next)()) {
    Node first = (this->*next)();
    if (!at_kw(op)) return first;
    Node n = wrap(NodeKind::kBoolOp, first);
    n.value = std::string(op);
    n.children.push_back(std::move(first));
    while (accept_kw(op)) n.children.push_back((this->*next)());
    finish(n);
    return n;
  }

  Node parse_or() { return parse_bool("or", &Parser::parse_and); }
  Node parse_and() { return parse_bool("and", &Parser::parse_not); }

  Node parse_not() {
    if (at_kw("not")) {
      Node n = make(NodeKind::kUnaryOp, cur());
      n.value = "not";
      advance();
      n.children.push_back(parse_not());
      finish(n);
      return n;
    }
    return parse_comparison();
  }

  bool take_comparison_op(std::string& op) {
    const Token& t = cur();
    if (t.kind == TokenKind::kOp &&
        (t.text == "<" || t.text == ">" || t.text == "==" || t.text == ">=" ||
         t.text == "<=" || t.text == "!=")) {
      op = std::string(t.text);
      advance();
      return true;
    }
    if (t.is_name("in")) {
      op = "in";
      advance();
      return true;
    }
    if (t.is_name("not") && peek().is_name("in")) {
      op = "not in";
      advance();
      advance();
      return true;
    }
    if (t.is_name("is")) {
      advance();
      op = accept_kw("not") ? "is not" : "is";
      return true;
    }
    return false;
  }

  Node parse_comparison() {
    Node first = parse_bitor();
    std::string op;
    if (!take_comparison_op(op)) return first;
    Node n = wrap(NodeKind::kCompare, first);
    n.children.push_back(std::move(first));
    do {
      if (!n.detail.empty()) n.detail += ' ';
      n.detail += op;
      n.children.push_back(parse_bitor());
    } while (take_comparison_op(op));
    finish(n);
    return n;
  }

  Node parse_binary(std::initializer_list<std::string_view> ops,
                    Node (Parser::*next)()) {
    Node left = (this->*next)();
    for (;;) {
      bool matched = false;
      for (std::string_view op : ops) {
        if (at_op(op)) {
          matched = true;
          break;
        }
      }
      if (!matched) return left;
      Node n = wrap(NodeKind::kBinOp, left);
      n.value = std::string(cur().text);
      advance();
      n.children.push_back(std::move(left));
      n.children.push_back((this->*next)());
      finish(n);
      left = std::move(n);
    }
  }

  Node parse_bitor() { return parse_binary({"|"}, &Parser::parse_xor); }
  Node parse_xor() { return parse_binary({"^"}, &Parser::parse_bitand); }
  Node parse_bitand() { return parse_binary({"&"}, &Parser::parse_shift); }
  Node parse_shift() { return parse_binary({"<<", ">>"}, &Parser::parse_arith); }
  Node parse_arith() { return parse_binary({"+", "-"}, &Parser::parse_term); }
  Node parse_term() {
    return parse_binary({"*", "/", "//", "%", "@"}, &Parser::parse_factor);
  }

  Node parse_factor() {
    if (at_op("+") || at_op("-") || at_op("~")) {
      Node n = make(NodeKind::kUnaryOp, cur());
      n.value = std::string(cur().text);
      advance();
      n.children.push_back(parse_factor());
      finish(n);
      return n;
    }
    return parse_power();
  }

  Node parse_power() {
    Node base;
    if (at_kw("await")) {
      base = make(NodeKind::kAwait, cur());
      advance();
      base.children.push_back(parse_primary());
      finish(base);
    } else {
      base = parse_primary();
    }
    if (!at_op("**")) return base;
    Node n = wrap(NodeKind::kBinOp, base);
    n.value = "**";
    advance();
    n.children.push_back(std::move(base));
    n.children.push_back(parse_factor());
    finish(n);
    return n;
  }

  Node parse_primary() {
    Node node = parse_atom();
    for (;;) {
      if (at_op("(")) {
        Node call = wrap(NodeKind::kCall, node);
        advance();
        call.children.push_back(std::move(node));
        parse_arguments(call.children);
        expect_op(")");
        finish(call);
        node = std::move(call);
      } else if (at_op("[")) {
        Node sub = wrap(NodeKind::kSubscript, node);
        advance();
        sub.children.push_back(std::move(node));
        sub.children.push_back(parse_subscript_list());
        expect_op("]");
        finish(sub);
        node = std::move(sub);
      } else if (at_op(".")) {
        Node attr = wrap(NodeKind::kAttribute, node);
        advance();
        if (cur().kind != TokenKind::kName) invalid();
        attr.value = std::string(cur().text);
        advance();
        attr.children.push_back(std::move(node));
        finish(attr);
        node = std::move(attr);
      } else {
        return node;
      }
    }
  }

  void parse_arguments(std::vector<Node>& out, bool allow_generator = true) {
    bool keyword_seen = false, unpack_seen = false, bare_generator = false;
    std::size_t first = out.size();
    while (!at_op(")")) {
      if (at_op("*")) {
        if (unpack_seen) {
          error("iterable argument unpacking follows keyword argument "
                "unpacking");
        }
        out.push_back(parse_star_expr());
      } else if (at_op("**")) {
        Node n = make(NodeKind::kDoubleStarred, cur());
        advance();
        n.children.push_back(parse_test());
        finish(n);
        out.push_back(std::move(n));
        unpack_seen = true;
      } else if (cur().kind == TokenKind::kName && peek().is_op("=") &&
                 !is_keyword(cur().text)) {
        Node kw = make(NodeKind::kKeyword, cur());
        kw.value = std::string(cur().text);
        advance();
        advance();
        kw.children.push_back(parse_test());
        finish(kw);
        out.push_back(std::move(kw));
        keyword_seen = true;
      } else {
        if (unpack_seen) {
          error("positional argument follows keyword argument unpacking");
        }
        if (keyword_seen) error("positional argument follows keyword argument");
        Node arg = parse_namedexpr_test();
        if (at_kw("for") || (at_kw("async") && peek().is_name("for"))) {
          if (!allow_generator) invalid();
          arg = parse_comprehension(NodeKind::kGeneratorExp, std::move(arg));
          bare_generator = true;
        }
        out.push_back(std::move(arg));
      }
      if (!accept_op(",")) break;
      if (bare_generator) error("Generator expression must be parenthesized");
    }
    if (bare_generator && out.size() - first > 1) {
      error("Generator expression must be parenthesized");
    }
  }

  Node parse_subscript_list() {
    Node first = parse_subscript();
    if (!at_op(",")) return first;
    Node tuple = wrap(NodeKind::kTuple, first);
    tuple.children.push_back(std::move(first));
    while (accept_op(",")) {
      if (at_op("]")) break;
      tuple.children.push_back(parse_subscript());
    }
    finish(tuple);
    return tuple;
  }

  Node parse_subscript() {
    if (at_op("*")) return parse_star_expr();
    Node lower = at_op(":") ? empty_node() : parse_namedexpr_test();
    if (!at_op(":")) return lower;
    Node slice = lower.empty() ? make(NodeKind::kSlice, cur())
                               : wrap(NodeKind::kSlice, lower);
    slice.children.push_back(std::move(lower));
    advance();
    slice.children.push_back(at_op(":") || at_op(",") || at_op("]")
                                 ? empty_node()
                                 : parse_test());
    if (accept_op(":")) {
      slice.children.push_back(at_op(",") || at_op("]") ? empty_node()
                                                        : parse_test());
    } else {
      slice.children.push_back(empty_node());
    }
    finish(slice);
    return slice;
  }

  // Consumes one or more `for ... in ...` clauses with their `if` filters.
  Node parse_comprehension(NodeKind kind, Node element,
                           Node value = Node{}) {
    if (element.kind == NodeKind::kStarred) {
      throw SyntaxError("iterable unpacking cannot be used in comprehension",
                        element.line, 0);
    }
    Node n = wrap(kind, element);
    n.children.push_back(std::move(element));
    if (kind == NodeKind::kDictComp) n.children.push_back(std::move(value));
    while (at_kw("for") || (at_kw("async") && peek().is_name("for"))) {
      Node c = make(NodeKind::kComprehension, cur());
      if (accept_kw("async")) c.is_async = true;
      expect_kw("for");
      c.children.push_back(parse_target_list());
      check_target(c.children.back());
      expect_kw("in");
      c.children.push_back(parse_or());
      while (accept_kw("if")) {
        c.children.push_back(at_kw("lambda") ? parse_lambda() : parse_or());
      }
      finish(c);
      n.children.push_back(std::move(c));
    }
    finish(n);
    return n;
  }

  bool at_comprehension() const {
    return at_kw("for") || (at_kw("async") && peek().is_name("for"));
  }

  Node parse_yield() {
    const Token& start = cur();
    expect_kw("yield");
    if (accept_kw("from")) {
      Node n = make(NodeKind::kYieldFrom, start);
      n.children.push_back(parse_test());
      finish(n);
      return n;
    }
    Node n = make(NodeKind::kYield, start);
    if (starts_expression() && !at_kw("yield")) {
      n.children.push_back(parse_testlist_star_expr());
    }
    finish(n);
    return n;
  }

  Node parse_atom() {
    const Token& t = cur();
    switch (t.kind) {
      case TokenKind::kNumber: {
        Node n = make(NodeKind::kNumber, t);
        n.value = std::string(t.text);
        advance();
        finish(n);
        return n;
      }
      case TokenKind::kString:
        return parse_strings();
      case TokenKind::kName: {
        NodeKind kind = NodeKind::kName;
        if (t.text == "None") {
          kind = NodeKind::kNone;
        } else if (t.text == "True") {
          kind = NodeKind::kTrue;
        } else if (t.text == "False") {
          kind = NodeKind::kFalse;
        } else if (is_keyword(t.text)) {
          invalid();
        }
        Node n = make(kind, t);
        n.value = std::string(t.text);
        advance();
        finish(n);
        return n;
      }
      case TokenKind::kOp:
        break;
      default:
        invalid();
    }
    if (t.text == "...") {
      Node n = make(NodeKind::kEllipsis, t);
      advance();
      finish(n);
      return n;
    }
    if (t.text == "(") return parse_paren();
    if (t.text == "[") return parse_list();
    if (t.text == "{") return parse_brace();
    invalid();
  }

  Node parse_paren() {
    const Token& open = cur();
    advance();
    if (at_op(")")) {
      Node n = make(NodeKind::kTuple, open);
      advance();
      finish(n);
      return n;
    }
    if (at_kw("yield")) {
      Node y = parse_yield();
      expect_op(")");
      return y;
    }
    Node first = parse_star_or_named();
    if (at_comprehension()) {
      Node gen = parse_comprehension(NodeKind::kGeneratorExp, std::move(first));
      expect_op(")");
      gen.line = open.line;
      gen.begin = open.begin;
      finish(gen);
      return gen;
    }
    if (!at_op(",")) {
      expect_op(")");
      return first;
    }
    Node tuple = make(NodeKind::kTuple, open);
    tuple.children.push_back(std::move(first));
    while (accept_op(",")) {
      if (at_op(")")) break;
      tuple.children.push_back(parse_star_or_named());
    }
    expect_op(")");
    finish(tuple);
    return tuple;
  }

  Node parse_list() {
    const Token& open = cur();
    advance();
    Node list = make(NodeKind::kList, open);
    if (accept_op("]")) {
      finish(list);
      return list;
    }
    Node first = parse_star_or_named();
    if (at_comprehension()) {
      Node comp = parse_comprehension(NodeKind::kListComp, std::move(first));
      expect_op("]");
      comp.line = open.line;
      comp.begin = open.begin;
      finish(comp);
      return comp;
    }
    list.children.push_back(std::move(first));
    while (accept_op(",")) {
      if (at_op("]")) break;
      list.children.push_back(parse_star_or_named());
    }
    expect_op("]");
    finish(list);
    return list;
  }

  Node parse_dict_entry() {
    if (at_op("**")) {
      Node n = make(NodeKind::kDoubleStarred, cur());
      advance();
      n.children.push_back(parse_bitor());
      finish(n);
      return n;
    }
    Node item = make(NodeKind::kDictItem, cur());
    item.children.push_back(parse_test());
    expect_op(":");
    item.children.push_back(parse_test());
    finish(item);
    return item;
  }

  Node parse_brace() {
    const Token& open = cur();
    advance();
    if (at_op("}")) {
      Node n = make(NodeKind::kDict, open);
      advance();
      finish(n);
      return n;
    }
    bool is_dict = at_op("**");
    Node first;
    Node value;
    if (is_dict) {
      first = parse_dict_entry();
    } else {
      first = parse_star_or_named();
      if (at_op(":")) {
        is_dict = true;
        advance();
        value = parse_test();
      }
    }
    if (at_comprehension()) {
      Node comp = is_dict ? parse_comprehension(NodeKind::kDictComp,
                                                std::move(first),
                                                std::move(value))
                          : parse_comprehension(NodeKind::kSetComp,
                                                std::move(first));
      expect_op("}");
      comp.line = open.line;
      comp.begin = open.begin;
      finish(comp);
      return comp;
    }
    Node n = make(is_dict ? NodeKind::kDict : NodeKind::kSet, open);
    if (is_dict && first.kind != NodeKind::kDoubleStarred) {
      Node item = wrap(NodeKind::kDictItem, first);
      item.end = value.end;
      item.end_line = value.end_line;
      item.children.push_back(std::move(first));
      item.children.push_back(std::move(value));
      n.children.push_back(std::move(item));
    } else {
      n.children.push_back(std::move(first));
    }
    while (accept_op(",")) {
      if (at_op("}")) break;
      n.children.push_back(is_dict ? parse_dict_entry()
                                   : parse_star_or_named());
    }
    expect_op("}");
    finish(n);
    return n;
  }

  Node parse_strings() {
    const Token& start = cur();
    bool any_f = false, any_b = false, any_str = false;
    std::string value;
    while (cur().kind == TokenKind::kString) {
      LiteralParts parts = split_literal(cur().text);
      bool f = prefix_has(parts.prefix, 'f') || prefix_has(parts.prefix, 't');
      bool b = prefix_has(parts.prefix, 'b');
      any_f |= f;
      any_b |= b;
      any_str |= !b;
      if (f) check_fstring(parts.body, cur().line, cur().col);
      value += f ? std::string(parts.body) : decode_string_literal(cur().text);
      advance();
    }
    if (any_b && any_str) {
      throw SyntaxError("cannot mix bytes and nonbytes literals", start.line,
                        start.col);
    }
    Node n = make(any_f ? NodeKind::kFString
                        : any_b ? NodeKind::kBytes : NodeKind::kStr,
                  start);
    n.value = std::move(value);
    finish(n);
    return n;
  }

  const std::string& src_;
  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::size_t last_real_ = 0;
};

}  // namespace

std::string decode_string_literal(std::string_view token) {
  LiteralParts parts = split_literal(token);
  std::string_view body = parts.body;
  if (prefix_has(parts.prefix, 'r')) return std::string(body);
  bool bytes = prefix_has(parts.prefix, 'b');
  std::string out;
  out.reserve(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c != '\\' || i + 1 >= body.size()) {
      out.push_back(c);
      continue;
    }
    char e = body[++i];
    switch (e) {
      case '\n':
        break;
      case '\r':
        if (i + 1 < body.size() && body[i + 1] == '\n') ++i;
        break;
      case '\\': out.push_back('\\'); break;
      case '\'': out.push_back('\''); break;
      case '"': out.push_back('"'); break;
      case 'a': out.push_back('\a'); break;
      case 'b': out.push_back('\b'); break;
      case 'f': out.push_back('\f'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      case 't': out.push_back('\t'); break;
      case 'v': out.push_back('\v'); break;
      case 'x': {
        int hi = i + 1 < body.size() ? hex_value(body[i + 1]) : -1;
        int lo = i + 2 < body.size() ? hex_value(body[i + 2]) : -1;
        if (hi < 0 || lo < 0) {
          out += "\\x";
          break;
        }
        std::uint32_t v = static_cast<std::uint32_t>(hi * 16 + lo);
        if (bytes) {
          out.push_back(static_cast<char>(v));
        } else {
          append_utf8(out, v);
        }
        i += 2;
        break;
      }
      case 'u':
      case 'U': {
        std::size_t width = e == 'u' ? 4 : 8;
        if (bytes || i + width >= body.size()) {
          out.push_back('\\');
          out.push_back(e);
          break;
        }
        std::uint32_t v = 0;
        bool ok = true;
        for (std::size_t k = 1; k <= width; ++k) {
          int h = hex_value(body[i + k]);
          if (h < 0) {
            ok = false;
            break;
          }
          v = v * 16 + static_cast<std::uint32_t>(h);
        }
        if (!ok) {
          out.push_back('\\');
          out.push_back(e);
          break;
        }
        append_utf8(out, v);
        i += width;
        break;
      }
      default:
        if (e >= '0' && e <= '7') {
          std::uint32_t v = static_cast<std::uint32_t>(e - '0');
          for (int k = 0; k < 2 && i + 1 < body.size() && body[i + 1] >= '0' &&
                          body[i + 1] <= '7';
               ++k) {
            v = v * 8 + static_cast<std::uint32_t>(body[++i] - '0');
          }
          if (bytes) {
            out.push_back(static_cast<char>(v & 0xFF));
          } else {
            append_utf8(out, v);
          }
        } else {
          // Unknown escapes (including \N{...}) are kept verbatim.
          out.push_back('\\');
          out.push_back(e);
        }
    }
  }
  return out;
}

Module parse(std::string source) {
  Module module;
  module.source = std::move(source);
  module.root = Parser(module.source).parse_module();
  return module;
}

}  // namespace repoaware::py
