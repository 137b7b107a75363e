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

#include "repoaware/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <utility>

#include "repoaware/errors.hpp"
#include "repoaware/python/parser.hpp"

namespace repoaware {
namespace {

bool has_space(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

std::vector<std::string_view> split_dots(std::string_view fqn) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t dot = fqn.find('.', start);
    parts.push_back(fqn.substr(start, dot - start));
    if (dot == std::string_view::npos) return parts;
    start = dot + 1;
  }
}

void check_vector(const FunctionRecord& r, const Vector& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw ConsistencyError(r.fqn + ": non-finite value in " + what);
    }
  }
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// Parses a requirement's definition as a stub function; nullopt when it is
// not exactly one def header.
std::optional<std::string> definition_name(std::string_view definition) {
  std::string header = trim(definition);
  if (header.empty()) return std::nullopt;
  if (header.back() != ':') header += ':';
  try {
    py::Module m = py::parse(header + "\n    pass\n");
    if (m.root.children.size() != 1 ||
        m.root.children[0].kind != py::NodeKind::kFunctionDef) {
      return std::nullopt;
    }
    const py::Node& body = py::body_of(m.root.children[0]);
    if (body.children.size() != 1 ||
        body.children[0].kind != py::NodeKind::kPass) {
      return std::nullopt;
    }
    return m.root.children[0].value;
  } catch (const py::SyntaxError&) {
    return std::nullopt;
  }
}

}  // namespace

FunctionRecord::FunctionRecord(RawFunction raw, std::string summary,
                               Vector summary_vector, Vector code_vector)
    : fqn(std::move(raw.fqn)),
      file_path(std::move(raw.file_path)),
      class_name(std::move(raw.class_name)),
      signature(std::move(raw.signature)),
      comment(std::move(raw.comment)),
      source(std::move(raw.source)),
      is_empty(raw.is_empty),
      summary(std::move(summary)),
      summary_vector(std::move(summary_vector)),
      code_vector(std::move(code_vector)) {}

std::string_view FunctionRecord::name() const {
  std::string_view f = fqn;
  std::size_t dot = f.rfind('.');
  return dot == std::string_view::npos ? f : f.substr(dot + 1);
}

void validate_record(const FunctionRecord& r) {
  if (r.fqn.empty() || has_space(r.fqn)) {
    throw ConsistencyError("invalid fqn '" + r.fqn + "'");
  }
  std::vector<std::string_view> parts = split_dots(r.fqn);
  for (std::string_view p : parts) {
    if (p.empty()) throw ConsistencyError("empty component in fqn " + r.fqn);
  }
  if (r.class_name) {
    if (parts.size() < 2 || parts[parts.size() - 2] != *r.class_name) {
      throw ConsistencyError(r.fqn + ": class component does not match '" +
                             *r.class_name + "'");
    }
  }
  if (r.file_path.empty()) throw ConsistencyError(r.fqn + ": empty file_path");
  if (r.summary_vector.size() != r.code_vector.size() ||
      r.summary_vector.empty()) {
    throw ConsistencyError(r.fqn + ": vector dimensions differ or are zero");
  }
  check_vector(r, r.summary_vector, "summary_vector");
  check_vector(r, r.code_vector, "code_vector");
}

FunctionBase::FunctionBase(std::size_t embed_dim, std::string provider_id)
    : embed_dim_(embed_dim), provider_id_(std::move(provider_id)) {
  if (embed_dim_ == 0) throw ContractError("embed_dim must be positive");
}

FunctionBase::FunctionBase(std::vector<FunctionRecord> records,
                           std::size_t embed_dim, std::string provider_id)
    : FunctionBase(embed_dim, std::move(provider_id)) {
  records_ = std::move(records);
  index_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const FunctionRecord& r = records_[i];
    validate_record(r);
    if (r.summary_vector.size() != embed_dim_) {
      throw ConsistencyError(r.fqn + ": dimension " +
                             std::to_string(r.summary_vector.size()) +
                             " != embed_dim " + std::to_string(embed_dim_));
    }
    if (!index_.emplace(r.fqn, i).second) {
      throw ConsistencyError("duplicate fqn " + r.fqn);
    }
  }
}

const FunctionRecord* FunctionBase::find(std::string_view fqn) const {
  auto it = index_.find(std::string(fqn));
  return it == index_.end() ? nullptr : &records_[it->second];
}

bool FunctionBase::has_file(std::string_view file_path) const {
  return std::any_of(records_.begin(), records_.end(),
                     [&](const FunctionRecord& r) {
                       return r.file_path == file_path;
                     });
}

LibraryBase::LibraryBase(std::set<std::string> names) {
  for (const std::string& n : names) add(n);
}

void LibraryBase::add(std::string name) {
  if (name.empty() || has_space(name)) {
    throw ConsistencyError("invalid library name '" + name + "'");
  }
  names_.insert(std::move(name));
}

bool LibraryBase::contains(std::string_view name) const {
  return names_.find(name) != names_.end();
}

void validate_requirement(const Requirement& req) {
  if (trim(req.description).empty()) {
    throw ContractError("requirement description is empty");
  }
  if (!definition_name(req.definition)) {
    throw ContractError("requirement definition is not a single function "
                        "definition: " + req.definition);
  }
}

std::string requirement_function_name(const Requirement& req) {
  std::optional<std::string> name = definition_name(req.definition);
  if (!name) {
    throw ContractError("requirement definition is not a single function "
                        "definition: " + req.definition);
  }
  return *name;
}

}  // namespace repoaware
