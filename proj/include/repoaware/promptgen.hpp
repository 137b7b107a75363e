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

#ifndef REPOAWARE_PROMPTGEN_HPP_
#define REPOAWARE_PROMPTGEN_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "repoaware/extractor.hpp"
#include "repoaware/model.hpp"
#include "repoaware/providers.hpp"

namespace repoaware {

inline constexpr std::size_t kDefaultMaxPromptChars = 12000;

std::string render_local_block(const LocalContext& ctx);
std::string render_library_block(const LibraryBase& libs);

struct AblationFlags {
  bool no_local = false;
  bool no_global = false;
  bool no_libs = false;
};

struct BlockTrace {
  std::string name;  // "local", "global" or "libraries"
  bool included = false;
  std::size_t chars = 0;

  bool operator==(const BlockTrace&) const = default;
};

struct PromptBundle {
  std::string system_text;
  std::string user_text;
  std::vector<BlockTrace> trace;
};

// Throws PromptTooLongError when system and user text together exceed
// max_chars; the error lists each block's size.
PromptBundle assemble_a3_prompt(const Requirement& req,
                                const std::string& local_block,
                                const std::string& global_block,
                                const std::string& lib_block,
                                const AblationFlags& flags = {},
                                std::size_t max_chars = kDefaultMaxPromptChars);

// First fenced block; else the whole text if it parses and defines a
// function; else the longest run of lines that does. Throws
// DegenerateOutputError when nothing qualifies.
std::string extract_code(const std::string& raw_output);

struct GenerationResult {
  std::string code;
  std::string raw_output;
  std::vector<BlockTrace> bundle_trace;
  int attempts = 0;  // model calls made, the repair included
};

GenerationResult generate_code(const PromptBundle& bundle, ChatProvider& chat,
                               double temperature = 0.0,
                               const RetryPolicy& retry = {});

}  // namespace repoaware

#endif  // REPOAWARE_PROMPTGEN_HPP_
