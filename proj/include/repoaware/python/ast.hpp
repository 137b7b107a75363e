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

#ifndef REPOAWARE_PYTHON_AST_HPP_
#define REPOAWARE_PYTHON_AST_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace repoaware::py {

enum class NodeKind : std::uint8_t {
  kModule,
  kBlock,
  kEmpty,  // placeholder for an absent optional child
  // statements
  kFunctionDef,
  kClassDef,
  kDecorators,
  kParameters,
  kParam,
  kReturns,
  kReturn,
  kDelete,
  kAssign,
  kAugAssign,
  kAnnAssign,
  kTypeAlias,
  kFor,
  kWhile,
  kIf,
  kElse,
  kWith,
  kWithItem,
  kMatch,
  kMatchCase,
  kRaise,
  kTry,
  kExceptHandler,
  kFinally,
  kAssert,
  kImport,
  kImportFrom,
  kAlias,
  kGlobal,
  kNonlocal,
  kExprStmt,
  kPass,
  kBreak,
  kContinue,
  // expressions
  kBoolOp,
  kNamedExpr,
  kBinOp,
  kUnaryOp,
  kLambda,
  kIfExp,
  kDict,
  kDictItem,
  kSet,
  kListComp,
  kSetComp,
  kDictComp,
  kGeneratorExp,
  kComprehension,
  kAwait,
  kYield,
  kYieldFrom,
  kCompare,
  kCall,
  kKeyword,
  kAttribute,
  kSubscript,
  kSlice,
  kStarred,
  kDoubleStarred,
  kName,
  kList,
  kTuple,
  kStr,
  kBytes,
  kFString,
  kNumber,
  kEllipsis,
  kNone,
  kTrue,
  kFalse,
};

std::string_view kind_name(NodeKind kind);

// One node of the syntax tree. Child layout per kind:
//   FunctionDef  value=name detail=signature is_async
//                [Decorators, Parameters, Returns|Empty, Block]
//   ClassDef     value=name [Decorators, Tuple(bases/keywords), Block]
//   Param        value=name detail=""|"*"|"**"|"/" [annotation|Empty,
//                default|Empty]
//   If/While     [test, Block, Else?]      Else [Block|If]
//   For          [target, iter, Block, Else?]
//   Try          [Block, ExceptHandler*, Else?, Finally?]
//   ExceptHandler value=bound name [type|Empty, Block]
//   With         [WithItem+, Block]        WithItem [expr, target|Empty]
//   Assign       [target+, value]          AugAssign value=op [target, value]
//   AnnAssign    [target, annotation, value?]
//   Import       [Alias+]                  Alias value=dotted detail=asname
//   ImportFrom   value=module level [Alias+] (Alias value "*" for star)
//   Call         [func, arg*]              Keyword value=name [expr]
//   Attribute    value=attr [object]       Subscript [object, index]
//   Str          value=decoded text        Number value=literal text
struct Node {
  NodeKind kind = NodeKind::kEmpty;
  std::string value;
  std::string detail;
  std::vector<Node> children;
  bool is_async = false;
  int level = 0;
  std::uint32_t line = 0;      // first line (decorators included for defs)
  std::uint32_t end_line = 0;  // last line of the last token
  std::size_t begin = 0;       // byte offsets into the source
  std::size_t end = 0;

  bool empty() const { return kind == NodeKind::kEmpty; }
  const Node& child(std::size_t i) const { return children.at(i); }
};

// Parsed source file. Node offsets index into `source`.
struct Module {
  std::string source;
  Node root;
};

// Source text covered by `node`, like ast.get_source_segment.
std::string_view source_segment(const Module& module, const Node& node);

// Body block of a FunctionDef or ClassDef.
const Node& body_of(const Node& def);

// Python's ast.get_docstring(clean=True): the leading string statement of a
// module, class or function body, with indentation cleaned. Returns false
// when there is none.
bool docstring_of(const Node& def_or_module, std::string& out);

// inspect.cleandoc.
std::string clean_docstring(std::string_view doc);

// Preorder traversal; `visit` returns false to skip a node's children.
template <typename Visit>
void walk(const Node& node, Visit&& visit) {
  if (!visit(node)) return;
  for (const Node& child : node.children) walk(child, visit);
}

}  // namespace repoaware::py

#endif  // REPOAWARE_PYTHON_AST_HPP_
