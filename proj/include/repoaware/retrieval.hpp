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

#ifndef REPOAWARE_RETRIEVAL_HPP_
#define REPOAWARE_RETRIEVAL_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "repoaware/model.hpp"
#include "repoaware/providers.hpp"

namespace repoaware {

enum class Channel { kDescription, kCode, kBoth };

std::string_view channel_name(Channel channel);

struct RetrievalHit {
  std::string fqn;
  double score = 0.0;
  Channel channel = Channel::kDescription;

  bool operator==(const RetrievalHit&) const = default;
};

// Score descending, then fqn ascending.
bool hit_order(const RetrievalHit& a, const RetrievalHit& b);

// Top-k records by cosine(query_vector, record vector), skipping records of
// `exclude_file`. The query vector is supplied by the caller.
std::vector<RetrievalHit> rank_by_vector(const Vector& query,
                                         const FunctionBase& base,
                                         std::size_t k, Channel channel,
                                         std::string_view exclude_file);

std::vector<RetrievalHit> retrieve_by_summary(std::string_view query,
                                              const FunctionBase& base,
                                              std::size_t k,
                                              EmbeddingProvider& embedder,
                                              std::string_view exclude_file = {});

std::vector<RetrievalHit> retrieve_by_code(std::string_view draft,
                                           const FunctionBase& base,
                                           std::size_t k,
                                           EmbeddingProvider& embedder,
                                           std::string_view exclude_file = {});

// Union by fqn; a name in both lists keeps its larger score and becomes
// Channel::kBoth. Sorted by hit_order, never truncated.
std::vector<RetrievalHit> merge_retrievals(const std::vector<RetrievalHit>& a,
                                           const std::vector<RetrievalHit>& b);

struct GlobalEntry {
  std::string fqn;
  std::string signature;
  std::string summary;

  bool operator==(const GlobalEntry&) const = default;
};

struct GlobalKnowledgeBlock {
  std::vector<GlobalEntry> entries;
  std::string rendered_text;  // "None" when there are no entries
};

// Throws ConsistencyError when a hit is not in the base.
GlobalKnowledgeBlock unify_global_knowledge(const std::vector<RetrievalHit>& hits,
                                            const FunctionBase& base);

// Draft code for the requirement, returned as the model wrote it. Throws
// DegenerateOutputError for an empty answer.
std::string generate_what_if_code(const Requirement& req, ChatProvider& chat,
                                  double temperature = 0.0,
                                  const RetryPolicy& retry = {});

}  // namespace repoaware

#endif  // REPOAWARE_RETRIEVAL_HPP_
