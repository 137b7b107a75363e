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

#ifndef REPOAWARE_EXTRACTOR_HPP_
#define REPOAWARE_EXTRACTOR_HPP_

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "repoaware/model.hpp"
#include "repoaware/python/ast.hpp"

namespace repoaware {

struct ParsedFile {
  std::string file_path;  // root-relative, '/'-separated
  py::Module module;
};

struct SkipReport {
  std::string file_path;
  std::string reason;
};

struct ParsedRepository {
  std::vector<ParsedFile> files;
  std::vector<SkipReport> skipped;
  // Every discovered source path, parsed or not, in walk order.
  std::vector<std::string> all_paths;
};

// Directory names skipped by default in addition to hidden directories.
const std::vector<std::string>& default_excludes();

// Parses every *.py file under root in path order. Unparseable files are
// reported in `skipped`. Throws NotFoundError when root does not exist.
ParsedRepository parse_repository(
    const std::filesystem::path& root,
    const std::vector<std::string>& excludes = default_excludes());

// Reads a source file with newlines normalized; nullopt with `reason` set
// when the bytes are not valid UTF-8.
std::optional<std::string> read_source(const std::filesystem::path& path,
                                       std::string& reason);

// Module-level functions and direct methods of module-level classes, in
// source order.
std::vector<RawFunction> extract_functions(const std::string& file_path,
                                           const py::Module& module);

// Dotted module path of a source file: extension removed, a trailing
// __init__ dropped.
std::string module_path(std::string_view file_path);

std::string compute_fqn(std::string_view file_path,
                        const std::optional<std::string>& class_name,
                        std::string_view name);

// True when the body holds only pass, string statements and `...`.
bool is_empty_body(const py::Node& block);

const std::set<std::string, std::less<>>& stdlib_modules();
bool is_stdlib_module(std::string_view top_level);

// Top-level names importable from the repository itself, given all source
// paths found by the walk.
std::set<std::string> repo_local_modules(const std::vector<std::string>& paths);

// Top-level names of every absolute import in the tree (guarded and nested
// imports included). Relative imports are skipped.
std::set<std::string> imported_top_levels(const py::Module& module);

std::set<std::string> extract_third_party_imports(
    const std::string& file_path, const py::Module& module,
    const std::set<std::string>& repo_local);

LibraryBase build_library_base(const ParsedRepository& repo);
LibraryBase build_library_base(
    const std::filesystem::path& root,
    const std::vector<std::string>& excludes = default_excludes());

struct LocalKnowledgeConfig {
  bool functions = true;
  bool class_attrs = true;
  bool module_fqn = false;
  bool module_vars = false;

  bool operator==(const LocalKnowledgeConfig&) const = default;
};

struct LocalFunction {
  std::string fqn;
  std::string summary;
  std::string signature;
  std::optional<std::string> class_name;  // set for class members

  bool operator==(const LocalFunction&) const = default;
};

struct ClassInit {
  std::string class_name;
  std::string source;  // the constructor, original indentation kept

  bool operator==(const ClassInit&) const = default;
};

struct LocalContext {
  std::string file_path;
  LocalKnowledgeConfig enabled;
  std::vector<LocalFunction> local_functions;
  std::vector<ClassInit> class_init_sources;
  std::optional<std::string> module_fqn;
  // "None" when enabled and the module declares no variables.
  std::optional<std::string> module_variables;

  bool operator==(const LocalContext&) const = default;
};

// Throws ConsistencyError when a function of the file is missing from base.
LocalContext mine_local_context(const std::string& file_path,
                                const py::Module& module,
                                const FunctionBase& base,
                                const LocalKnowledgeConfig& config = {});

}  // namespace repoaware

#endif  // REPOAWARE_EXTRACTOR_HPP_
