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

#include "repoaware/python/ast.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace repoaware::py {

std::string_view kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::kModule: return "Module";
    case NodeKind::kBlock: return "Block";
    case NodeKind::kEmpty: return "Empty";
    case NodeKind::kFunctionDef: return "FunctionDef";
    case NodeKind::kClassDef: return "ClassDef";
    case NodeKind::kDecorators: return "Decorators";
    case NodeKind::kParameters: return "Parameters";
    case NodeKind::kParam: return "Param";
    case NodeKind::kReturns: return "Returns";
    case NodeKind::kReturn: return "Return";
    case NodeKind::kDelete: return "Delete";
    case NodeKind::kAssign: return "Assign";
    case NodeKind::kAugAssign: return "AugAssign";
    case NodeKind::kAnnAssign: return "AnnAssign";
    case NodeKind::kTypeAlias: return "TypeAlias";
    case NodeKind::kFor: return "For";
    case NodeKind::kWhile: return "While";
    case NodeKind::kIf: return "If";
    case NodeKind::kElse: return "Else";
    case NodeKind::kWith: return "With";
    case NodeKind::kWithItem: return "WithItem";
    case NodeKind::kMatch: return "Match";
    case NodeKind::kMatchCase: return "MatchCase";
    case NodeKind::kRaise: return "Raise";
    case NodeKind::kTry: return "Try";
    case NodeKind::kExceptHandler: return "ExceptHandler";
    case NodeKind::kFinally: return "Finally";
    case NodeKind::kAssert: return "Assert";
    case NodeKind::kImport: return "Import";
    case NodeKind::kImportFrom: return "ImportFrom";
    case NodeKind::kAlias: return "Alias";
    case NodeKind::kGlobal: return "Global";
    case NodeKind::kNonlocal: return "Nonlocal";
    case NodeKind::kExprStmt: return "Expr";
    case NodeKind::kPass: return "Pass";
    case NodeKind::kBreak: return "Break";
    case NodeKind::kContinue: return "Continue";
    case NodeKind::kBoolOp: return "BoolOp";
    case NodeKind::kNamedExpr: return "NamedExpr";
    case NodeKind::kBinOp: return "BinOp";
    case NodeKind::kUnaryOp: return "UnaryOp";
    case NodeKind::kLambda: return "Lambda";
    case NodeKind::kIfExp: return "IfExp";
    case NodeKind::kDict: return "Dict";
    case NodeKind::kDictItem: return "DictItem";
    case NodeKind::kSet: return "Set";
    case NodeKind::kListComp: return "ListComp";
    case NodeKind::kSetComp: return "SetComp";
    case NodeKind::kDictComp: return "DictComp";
    case NodeKind::kGeneratorExp: return "GeneratorExp";
    case NodeKind::kComprehension: return "comprehension";
    case NodeKind::kAwait: return "Await";
    case NodeKind::kYield: return "Yield";
    case NodeKind::kYieldFrom: return "YieldFrom";
    case NodeKind::kCompare: return "Compare";
    case NodeKind::kCall: return "Call";
    case NodeKind::kKeyword: return "keyword";
    case NodeKind::kAttribute: return "Attribute";
    case NodeKind::kSubscript: return "Subscript";
    case NodeKind::kSlice: return "Slice";
    case NodeKind::kStarred: return "Starred";
    case NodeKind::kDoubleStarred: return "DoubleStarred";
    case NodeKind::kName: return "Name";
    case NodeKind::kList: return "List";
    case NodeKind::kTuple: return "Tuple";
    case NodeKind::kStr: return "Str";
    case NodeKind::kBytes: return "Bytes";
    case NodeKind::kFString: return "JoinedStr";
    case NodeKind::kNumber: return "Number";
    case NodeKind::kEllipsis: return "Ellipsis";
    case NodeKind::kNone: return "None";
    case NodeKind::kTrue: return "True";
    case NodeKind::kFalse: return "False";
  }
  return "?";
}

std::string_view source_segment(const Module& module, const Node& node) {
  std::string_view src = module.source;
  if (node.begin > src.size() || node.end < node.begin) return {};
  return src.substr(node.begin, node.end - node.begin);
}

const Node& body_of(const Node& def) {
  if (def.kind != NodeKind::kFunctionDef && def.kind != NodeKind::kClassDef) {
    throw std::invalid_argument("body_of: not a def");
  }
  return def.children.back();
}

bool docstring_of(const Node& def_or_module, std::string& out) {
  const Node& body = def_or_module.kind == NodeKind::kModule
                         ? def_or_module
                         : body_of(def_or_module);
  if (body.children.empty()) return false;
  const Node& first = body.children.front();
  if (first.kind != NodeKind::kExprStmt || first.children.empty() ||
      first.children.front().kind != NodeKind::kStr) {
    return false;
  }
  out = clean_docstring(first.children.front().value);
  return true;
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  for (;;) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      return lines;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
}

std::string_view lstrip(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  return s;
}


std::string expand_tabs(std::string_view line) {
  std::string out;
  for (char c : line) {
    if (c == '\t') {
      out.append(8 - out.size() % 8, ' ');
    } else {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string clean_docstring(std::string_view doc) {
  std::vector<std::string> lines;
  for (std::string_view l : split_lines(doc)) lines.push_back(expand_tabs(l));
  std::size_t margin = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string_view content = lstrip(lines[i]);
    if (!content.empty()) {
      margin = std::min(margin, lines[i].size() - content.size());
    }
  }
  lines[0] = std::string(lstrip(lines[0]));
  if (margin != std::numeric_limits<std::size_t>::max()) {
    for (std::size_t i = 1; i < lines.size(); ++i) {
      lines[i] = lines[i].size() > margin ? lines[i].substr(margin)
                                          : std::string(lstrip(lines[i]));
    }
  }
  while (!lines.empty() && lstrip(lines.back()).empty()) lines.pop_back();
  std::size_t first = 0;
  while (first < lines.size() && lstrip(lines[first]).empty()) ++first;
  std::string out;
  for (std::size_t i = first; i < lines.size(); ++i) {
    if (i > first) out.push_back('\n');
    out += lines[i];
  }
  return out;
}

}  // namespace repoaware::py
