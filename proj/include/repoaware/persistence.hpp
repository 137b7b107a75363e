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

#ifndef REPOAWARE_PERSISTENCE_HPP_
#define REPOAWARE_PERSISTENCE_HPP_

#include <filesystem>
#include <string>

#include "repoaware/model.hpp"

namespace repoaware {

inline constexpr const char* kFunctionsFile = "functions.jsonl";
inline constexpr const char* kMetaFile = "meta";
inline constexpr const char* kLibrariesFile = "libraries.txt";
inline constexpr int kFormatVersion = 1;

// Writes functions.jsonl and meta under `out`, creating the directory.
void save_function_base(const FunctionBase& base,
                        const std::filesystem::path& out);
FunctionBase load_function_base(const std::filesystem::path& dir);

void save_library_base(const LibraryBase& libs,
                       const std::filesystem::path& out);
LibraryBase load_library_base(const std::filesystem::path& dir);

// One record as a single JSON line (no trailing newline), and back.
std::string record_to_json_line(const FunctionRecord& record);
FunctionRecord record_from_json_line(const std::string& line,
                                     const std::string& file,
                                     std::size_t line_no);

// Writes `content` to `path` through a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace repoaware

#endif  // REPOAWARE_PERSISTENCE_HPP_
