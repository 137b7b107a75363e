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

#ifndef REPOAWARE_PYTHON_PARSER_HPP_
#define REPOAWARE_PYTHON_PARSER_HPP_

#include <string>

#include "repoaware/python/ast.hpp"
#include "repoaware/python/lexer.hpp"

namespace repoaware::py {

// Parses a complete Python 3 module. Throws SyntaxError.
Module parse(std::string source);

// Decodes the body of one string literal token (prefix and quotes included),
// processing escapes unless the literal is raw.
std::string decode_string_literal(std::string_view token);

}  // namespace repoaware::py

#endif  // REPOAWARE_PYTHON_PARSER_HPP_
