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

#ifndef REPOAWARE_PYTHON_LEXER_HPP_
#define REPOAWARE_PYTHON_LEXER_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "repoaware/errors.hpp"

namespace repoaware::py {

// Raised for any lexical or grammatical error in Python source.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::uint32_t line, std::uint32_t col)
      : Error("line " + std::to_string(line) + ":" + std::to_string(col) +
              ": " + what),
        line_(line),
        col_(col) {}
  std::uint32_t line() const noexcept { return line_; }
  std::uint32_t col() const noexcept { return col_; }

 private:
  std::uint32_t line_;
  std::uint32_t col_;
};

enum class TokenKind : std::uint8_t {
  kName,
  kNumber,
  kString,
  kOp,
  kNewline,  // logical line end
  kNl,       // non-logical line break (blank line, inside brackets)
  kComment,
  kIndent,
  kDedent,
  kEndMarker,
};

// Lines are 1-based, columns are 0-based byte offsets within the line.
struct Token {
  TokenKind kind;
  std::string_view text;
  std::uint32_t line = 0;
  std::uint32_t col = 0;
  std::uint32_t end_line = 0;
  std::uint32_t end_col = 0;
  std::size_t begin = 0;  // byte offset into the source
  std::size_t end = 0;

  bool is_op(std::string_view op) const {
    return kind == TokenKind::kOp && text == op;
  }
  bool is_name(std::string_view name) const {
    return kind == TokenKind::kName && text == name;
  }
};

// Tokenizes Python 3 source the way the reference tokenizer does: INDENT and
// DEDENT are synthesized from leading whitespace, brackets suppress NEWLINE,
// and comments/blank lines are kept as kComment/kNl. Token text views point
// into `source`, which must outlive the result.
std::vector<Token> tokenize(std::string_view source);

// True for the hard keywords of Python 3.
bool is_keyword(std::string_view name);

}  // namespace repoaware::py

#endif  // REPOAWARE_PYTHON_LEXER_HPP_
