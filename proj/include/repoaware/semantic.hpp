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

#ifndef REPOAWARE_SEMANTIC_HPP_
#define REPOAWARE_SEMANTIC_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>

#include "repoaware/extractor.hpp"
#include "repoaware/model.hpp"
#include "repoaware/providers.hpp"

namespace repoaware {

// Summary text keyed by the SHA-256 of a function's source. Safe for
// concurrent use: lookups share a lock, inserts take it exclusively.
class SummaryCache {
 public:
  std::optional<std::string> get(const std::string& source_hash) const;
  void put(const std::string& source_hash, std::string summary);
  std::size_t size() const;

  // JSONL, one {"hash", "summary"} object per line, sorted by hash.
  void load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, std::string> entries_;
};

struct SemanticOptions {
  double temperature = 0.0;
  RetryPolicy retry;
  std::size_t max_in_flight = 4;
};

std::string summarize_function(const RawFunction& raw, ChatProvider& chat,
                               SummaryCache& cache,
                               const SemanticOptions& options = {});

// Summarizes and embeds every function of the repository. Errors name the
// function that caused them.
FunctionBase build_function_base(const ParsedRepository& repo,
                                 ChatProvider& chat,
                                 EmbeddingProvider& embedder,
                                 SummaryCache& cache,
                                 const SemanticOptions& options = {});

FunctionBase build_function_base(const std::filesystem::path& root,
                                 ChatProvider& chat,
                                 EmbeddingProvider& embedder,
                                 SummaryCache& cache,
                                 const SemanticOptions& options = {});

}  // namespace repoaware

#endif  // REPOAWARE_SEMANTIC_HPP_
