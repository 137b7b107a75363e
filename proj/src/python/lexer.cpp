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

#include "repoaware/python/lexer.hpp"

#include <algorithm>
#include <array>

namespace repoaware::py {
namespace {

constexpr std::array<std::string_view, 35> kKeywords = {
    "False",  "None",   "True",    "and",      "as",       "assert", "async",
    "await",  "break",  "class",   "continue", "def",      "del",    "elif",
    "else",   "except", "finally", "for",      "from",     "global", "if",
    "import", "in",     "is",      "lambda",   "nonlocal", "not",    "or",
    "pass",   "raise",  "return",  "try",      "while",    "with",   "yield"};

constexpr std::array<std::string_view, 3> kOps3 = {"**=", "//=", "..."};
constexpr std::array<std::string_view, 2> kShiftAssign = {">>=", "<<="};
constexpr std::array<std::string_view, 20> kOps2 = {
    "**", "//", ">>", "<<", "<=", ">=", "==", "!=", "->", "+=",
    "-=", "*=", "/=", "%=", "&=", "|=", "^=", "@=", ":=", "<>"};
constexpr std::string_view kOps1 = "+-*/%@&|^~<>()[]{},:;.=";

bool is_ident_start(unsigned char c) {
  return c == '_' || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         c >= 0x80;
}

bool is_ident_char(unsigned char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_string_prefix(std::string_view p) {
  if (p.size() > 2) return false;
  std::string lower;
  for (char c : p) lower.push_back(static_cast<char>(c | 0x20));
  static constexpr std::array<std::string_view, 11> kPrefixes = {
      "r", "u", "b", "f", "br", "rb", "fr", "rf", "t", "tr", "rt"};
  return std::find(kPrefixes.begin(), kPrefixes.end(), lower) !=
         kPrefixes.end();
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {
    if (src_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    line_start_ = pos_;
  }

  std::vector<Token> run() {
    indents_.push_back(0);
    while (pos_ < src_.size()) {
      if (at_line_start_ && brackets_.empty()) {
        if (!handle_indentation()) continue;
      }
      lex_one();
    }
    finish();
    return std::move(tokens_);
  }

 private:
  std::uint32_t col() const {
    return static_cast<std::uint32_t>(pos_ - line_start_);
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, line_, col());
  }

  void emit(TokenKind kind, std::size_t begin, std::uint32_t line,
            std::uint32_t col) {
    Token t;
    t.kind = kind;
    t.text = src_.substr(begin, pos_ - begin);
    t.line = line;
    t.col = col;
    t.end_line = line_;
    t.end_col = this->col();
    t.begin = begin;
    t.end = pos_;
    tokens_.push_back(t);
  }

  void emit_empty(TokenKind kind) {
    Token t;
    t.kind = kind;
    t.text = src_.substr(pos_, 0);
    t.line = t.end_line = line_;
    t.col = t.end_col = col();
    t.begin = t.end = pos_;
    tokens_.push_back(t);
  }

  void newline_advance() {
    ++pos_;
    ++line_;
    line_start_ = pos_;
  }

  // Measures leading whitespace of a physical line. Returns false when the
  // line is blank or comment-only (already consumed).
  bool handle_indentation() {
    std::size_t width = 0;
    std::size_t p = pos_;
    while (p < src_.size()) {
      char c = src_[p];
      if (c == ' ') {
        ++width;
      } else if (c == '\t') {
        width = (width / 8 + 1) * 8;
      } else if (c == '\f') {
        width = 0;
      } else {
        break;
      }
      ++p;
    }
    pos_ = p;
    if (p >= src_.size()) {
      at_line_start_ = false;
      return false;
    }
    char c = src_[p];
    if (c == '#' || c == '\n' || c == '\r') {
      if (c == '#') lex_comment();
      if (pos_ < src_.size()) {
        std::size_t begin = pos_;
        std::uint32_t l = line_, cl = col();
        consume_line_break();
        pushback_break(TokenKind::kNl, begin, l, cl);
      }
      return false;
    }
    at_line_start_ = false;
    if (width > indents_.back()) {
      indents_.push_back(width);
      Token t;
      t.kind = TokenKind::kIndent;
      t.text = src_.substr(line_start_, pos_ - line_start_);
      t.line = t.end_line = line_;
      t.col = 0;
      t.end_col = col();
      t.begin = line_start_;
      t.end = pos_;
      tokens_.push_back(t);
    } else {
      while (width < indents_.back()) {
        indents_.pop_back();
        emit_empty(TokenKind::kDedent);
      }
      if (width != indents_.back()) {
        fail("unindent does not match any outer indentation level");
      }
    }
    return true;
  }

  void consume_line_break() {
    if (src_[pos_] == '\r' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n')
      ++pos_;
    newline_advance();
  }

  void pushback_break(TokenKind kind, std::size_t begin, std::uint32_t line,
                      std::uint32_t col) {
    Token t;
    t.kind = kind;
    t.text = src_.substr(begin, pos_ - begin);
    t.line = line;
    t.col = col;
    t.end_line = line;
    t.end_col = col + static_cast<std::uint32_t>(pos_ - begin);
    t.begin = begin;
    t.end = pos_;
    tokens_.push_back(t);
  }

  void lex_comment() {
    std::size_t begin = pos_;
    std::uint32_t c = col();
    while (pos_ < src_.size() && src_[pos_] != '\n' && src_[pos_] != '\r')
      ++pos_;
    emit(TokenKind::kComment, begin, line_, c);
  }

  void lex_one() {
    char c = src_[pos_];
    if (c == ' ' || c == '\t' || c == '\f') {
      ++pos_;
      return;
    }
    if (c == '#') {
      lex_comment();
      return;
    }
    if (c == '\n' || c == '\r') {
      std::size_t begin = pos_;
      std::uint32_t l = line_, cl = col();
      consume_line_break();
      bool logical = brackets_.empty() && !line_is_empty();
      pushback_break(logical ? TokenKind::kNewline : TokenKind::kNl, begin, l,
                     cl);
      if (brackets_.empty()) at_line_start_ = true;
      return;
    }
    if (c == '\\') {
      std::size_t n = pos_ + 1;
      if (n < src_.size() && src_[n] == '\r') ++n;
      if (n < src_.size() && src_[n] == '\n') {
        pos_ = n;
        newline_advance();
        if (pos_ >= src_.size()) fail("unexpected EOF after line continuation");
        return;
      }
      fail("unexpected character after line continuation character");
    }
    if (is_ident_start(static_cast<unsigned char>(c))) {
      lex_name_or_string();
      return;
    }
    if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() &&
                        is_digit(src_[pos_ + 1]))) {
      lex_number();
      return;
    }
    if (c == '"' || c == '\'') {
      lex_string(pos_, pos_);
      return;
    }
    lex_operator();
  }

  // True when nothing significant was emitted since the last logical line.
  bool line_is_empty() const {
    for (auto it = tokens_.rbegin(); it != tokens_.rend(); ++it) {
      switch (it->kind) {
        case TokenKind::kComment:
        case TokenKind::kNl:
          continue;
        case TokenKind::kNewline:
        case TokenKind::kIndent:
        case TokenKind::kDedent:
          return it->kind == TokenKind::kNewline;
        default:
          return false;
      }
    }
    return true;
  }

  void lex_name_or_string() {
    std::size_t begin = pos_;
    std::uint32_t c = col();
    while (pos_ < src_.size() &&
           is_ident_char(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == '"' || src_[pos_] == '\'') &&
        is_string_prefix(src_.substr(begin, pos_ - begin))) {
      lex_string(begin, pos_);
      return;
    }
    emit(TokenKind::kName, begin, line_, c);
  }

  void lex_number() {
    std::size_t begin = pos_;
    std::uint32_t c = col();
    auto digits = [&](auto pred) {
      while (pos_ < src_.size() && (pred(src_[pos_]) || src_[pos_] == '_'))
        ++pos_;
    };
    auto is_hex = [](char ch) {
      return is_digit(ch) || (ch >= 'a' && ch <= 'f') || (ch >= 'A' && ch <= 'F');
    };
    if (src_[pos_] == '0' && pos_ + 1 < src_.size() &&
        std::string_view("xXoObB").find(src_[pos_ + 1]) !=
            std::string_view::npos) {
      pos_ += 2;
      digits(is_hex);
    } else {
      digits(is_digit);
      std::string_view integer = src_.substr(begin, pos_ - begin);
      bool leading_zero = integer.size() > 1 && integer[0] == '0' &&
                          integer.find_first_not_of("0_") != std::string_view::npos;
      if (pos_ < src_.size() && src_[pos_] == '.') {
        ++pos_;
        digits(is_digit);
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t save = pos_;
        ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
          ++pos_;
        if (pos_ < src_.size() && is_digit(src_[pos_])) {
          digits(is_digit);
        } else {
          pos_ = save;
        }
      }
      if (pos_ < src_.size() && (src_[pos_] == 'j' || src_[pos_] == 'J')) ++pos_;
      if (leading_zero && pos_ == begin + integer.size()) {
        fail("leading zeros in decimal integer literals are not permitted");
      }
    }
    // Underscores only between digits, or right after a radix prefix.
    std::string_view text = src_.substr(begin, pos_ - begin);
    bool radix = text.size() > 1 && text[0] == '0' &&
                 std::string_view("xXoObB").find(text[1]) != std::string_view::npos;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] != '_') continue;
      bool prev_ok = i > 0 && (radix ? is_hex(text[i - 1]) || i == 2
                                     : is_digit(text[i - 1]));
      bool next_ok = i + 1 < text.size() &&
                     (radix ? is_hex(text[i + 1]) : is_digit(text[i + 1]));
      if (!prev_ok || !next_ok) fail("invalid decimal literal");
    }
    if (pos_ < src_.size() &&
        is_ident_start(static_cast<unsigned char>(src_[pos_]))) {
      // Allow `1if x else y`, which CPython still accepts.
      std::string_view rest = src_.substr(pos_);
      bool keyword_follows = false;
      for (std::string_view kw : {"if", "else", "and", "or", "in", "is",
                                  "not", "for"}) {
        if (rest.substr(0, kw.size()) == kw) keyword_follows = true;
      }
      if (!keyword_follows) fail("invalid decimal literal");
    }
    emit(TokenKind::kNumber, begin, line_, c);
  }

  void lex_string(std::size_t begin, std::size_t quote_pos) {
    std::uint32_t start_line = line_;
    std::uint32_t start_col = static_cast<std::uint32_t>(begin - line_start_);
    // Raw strings still let a backslash protect the quote, so the prefix
    // does not change where the literal ends.
    char q = src_[quote_pos];
    bool triple = quote_pos + 2 < src_.size() && src_[quote_pos + 1] == q &&
                  src_[quote_pos + 2] == q;
    pos_ = quote_pos + (triple ? 3 : 1);
    for (;;) {
      if (pos_ >= src_.size()) {
        throw SyntaxError(triple ? "unterminated triple-quoted string literal"
                                 : "unterminated string literal",
                          start_line, start_col);
      }
      char c = src_[pos_];
      if (c == '\\') {
        ++pos_;
        if (pos_ < src_.size()) {
          if (src_[pos_] == '\r' && pos_ + 1 < src_.size() &&
              src_[pos_ + 1] == '\n')
            ++pos_;
          if (src_[pos_] == '\n' || src_[pos_] == '\r') {
            newline_advance();
          } else {
            ++pos_;
          }
        }
        continue;
      }
      if (c == '\n' || c == '\r') {
        if (!triple) {
          throw SyntaxError("unterminated string literal", start_line,
                            start_col);
        }
        if (c == '\r' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n')
          ++pos_;
        newline_advance();
        continue;
      }
      if (c == q) {
        if (!triple) {
          ++pos_;
          break;
        }
        if (pos_ + 2 < src_.size() && src_[pos_ + 1] == q &&
            src_[pos_ + 2] == q) {
          pos_ += 3;
          break;
        }
      }
      ++pos_;
    }
    emit(TokenKind::kString, begin, start_line, start_col);
  }

  void lex_operator() {
    std::size_t begin = pos_;
    std::uint32_t c = col();
    std::string_view rest = src_.substr(pos_);
    auto try_ops = [&](const auto& ops) {
      for (std::string_view op : ops) {
        if (rest.substr(0, op.size()) == op) {
          pos_ += op.size();
          return true;
        }
      }
      return false;
    };
    if (!try_ops(kOps3) && !try_ops(kShiftAssign) && !try_ops(kOps2)) {
      if (kOps1.find(rest[0]) == std::string_view::npos) {
        fail(std::string("invalid character '") + rest[0] + "'");
      }
      ++pos_;
    }
    std::string_view op = src_.substr(begin, pos_ - begin);
    if (op == "<>") fail("invalid syntax '<>'");
    if (op == "(" || op == "[" || op == "{") {
      brackets_.push_back(op[0]);
    } else if (op == ")" || op == "]" || op == "}") {
      char open = op == ")" ? '(' : op == "]" ? '[' : '{';
      if (brackets_.empty() || brackets_.back() != open) {
        fail("unmatched '" + std::string(op) + "'");
      }
      brackets_.pop_back();
    }
    emit(TokenKind::kOp, begin, line_, c);
  }

  void finish() {
    if (!brackets_.empty()) {
      fail(std::string("'") + brackets_.back() + "' was never closed");
    }
    if (!line_is_empty()) emit_empty(TokenKind::kNewline);
    while (indents_.size() > 1) {
      indents_.pop_back();
      emit_empty(TokenKind::kDedent);
    }
    emit_empty(TokenKind::kEndMarker);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
  std::uint32_t line_ = 1;
  bool at_line_start_ = true;
  std::vector<std::size_t> indents_;
  std::vector<char> brackets_;
  std::vector<Token> tokens_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
  return Lexer(source).run();
}

bool is_keyword(std::string_view name) {
  return std::find(kKeywords.begin(), kKeywords.end(), name) !=
         kKeywords.end();
}

}  // namespace repoaware::py
