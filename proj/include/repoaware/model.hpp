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

#ifndef REPOAWARE_MODEL_HPP_
#define REPOAWARE_MODEL_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace repoaware {

using Vector = std::vector<double>;

// Basic facts about one function, as read from its source file.
struct RawFunction {
  std::string fqn;
  std::string file_path;  // repository-relative, '/'-separated
  std::optional<std::string> class_name;
  std::string signature;
  std::optional<std::string> comment;
  std::string source;
  bool is_empty = false;

  bool operator==(const RawFunction&) const = default;
};

// One indexed function. Field order here is the serialized field order.
struct FunctionRecord {
  std::string fqn;
  std::string file_path;
  std::optional<std::string> class_name;
  std::string signature;
  std::optional<std::string> comment;
  std::string source;
  bool is_empty = false;
  std::string summary;
  Vector summary_vector;
  Vector code_vector;

  FunctionRecord() = default;
  FunctionRecord(RawFunction raw, std::string summary, Vector summary_vector,
                 Vector code_vector);

  // Last dotted component of the fqn.
  std::string_view name() const;

  bool operator==(const FunctionRecord&) const = default;
};

// Throws ConsistencyError when the record breaks a structural invariant.
void validate_record(const FunctionRecord& record);

class FunctionBase {
 public:
  FunctionBase(std::size_t embed_dim, std::string provider_id);
  // Validates every record and the uniqueness of fqns.
  FunctionBase(std::vector<FunctionRecord> records, std::size_t embed_dim,
               std::string provider_id);

  const std::vector<FunctionRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  std::size_t embed_dim() const { return embed_dim_; }
  const std::string& provider_id() const { return provider_id_; }

  // nullptr when absent.
  const FunctionRecord* find(std::string_view fqn) const;
  bool has_file(std::string_view file_path) const;

  bool operator==(const FunctionBase& other) const {
    return embed_dim_ == other.embed_dim_ &&
           provider_id_ == other.provider_id_ && records_ == other.records_;
  }

 private:
  std::vector<FunctionRecord> records_;
  std::size_t embed_dim_;
  std::string provider_id_;
  std::unordered_map<std::string, std::size_t> index_;
};

class LibraryBase {
 public:
  LibraryBase() = default;
  explicit LibraryBase(std::set<std::string> names);

  // Throws ConsistencyError for an empty name or one containing whitespace.
  void add(std::string name);
  bool contains(std::string_view name) const;
  const std::set<std::string, std::less<>>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }

  bool operator==(const LibraryBase&) const = default;

 private:
  std::set<std::string, std::less<>> names_;
};

struct Requirement {
  std::string description;
  std::string definition;   // e.g. "def is_bulleted(tag) -> bool:"
  std::string target_file;  // repository-relative

  bool operator==(const Requirement&) const = default;
};

// Throws ContractError unless the description is non-empty and the
// definition is exactly one function header.
void validate_requirement(const Requirement& req);

// Function name declared by a requirement's definition line.
std::string requirement_function_name(const Requirement& req);

}  // namespace repoaware

#endif  // REPOAWARE_MODEL_HPP_
