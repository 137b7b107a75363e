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

#include "repoaware/retrieval.hpp"

#include <algorithm>
#include <unordered_map>

#include "repoaware/errors.hpp"
#include "repoaware/prompts.hpp"

namespace repoaware {

std::string_view channel_name(Channel channel) {
  switch (channel) {
    case Channel::kDescription: return "description";
    case Channel::kCode: return "code";
    case Channel::kBoth: return "both";
  }
  return "description";
}

bool hit_order(const RetrievalHit& a, const RetrievalHit& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.fqn < b.fqn;
}

std::vector<RetrievalHit> rank_by_vector(const Vector& query,
                                         const FunctionBase& base,
                                         std::size_t k, Channel channel,
                                         std::string_view exclude_file) {
  if (k == 0 || base.empty()) return {};
  std::vector<RetrievalHit> hits;
  hits.reserve(base.size());
  for (const FunctionRecord& r : base.records()) {
    if (!exclude_file.empty() && r.file_path == exclude_file) continue;
    const Vector& v =
        channel == Channel::kCode ? r.code_vector : r.summary_vector;
    hits.push_back({r.fqn, cosine_similarity(query, v), channel});
  }
  if (hits.size() > k) {
    std::partial_sort(hits.begin(), hits.begin() + static_cast<long>(k),
                      hits.end(), hit_order);
    hits.resize(k);
  } else {
    std::sort(hits.begin(), hits.end(), hit_order);
  }
  return hits;
}

std::vector<RetrievalHit> retrieve_by_summary(std::string_view query,
                                              const FunctionBase& base,
                                              std::size_t k,
                                              EmbeddingProvider& embedder,
                                              std::string_view exclude_file) {
  if (k == 0 || base.empty()) return {};
  return rank_by_vector(embed_text(query, embedder), base, k,
                        Channel::kDescription, exclude_file);
}

std::vector<RetrievalHit> retrieve_by_code(std::string_view draft,
                                           const FunctionBase& base,
                                           std::size_t k,
                                           EmbeddingProvider& embedder,
                                           std::string_view exclude_file) {
  if (k == 0 || base.empty()) return {};
  return rank_by_vector(embed_text(draft, embedder), base, k, Channel::kCode,
                        exclude_file);
}

std::vector<RetrievalHit> merge_retrievals(const std::vector<RetrievalHit>& a,
                                           const std::vector<RetrievalHit>& b) {
  std::vector<RetrievalHit> merged;
  std::unordered_map<std::string, std::size_t> at;
  auto add = [&](const RetrievalHit& h) {
    auto [it, fresh] = at.emplace(h.fqn, merged.size());
    if (fresh) {
      merged.push_back(h);
      return;
    }
    RetrievalHit& m = merged[it->second];
    if (m.channel != h.channel) m.channel = Channel::kBoth;
    m.score = std::max(m.score, h.score);
  };
  for (const RetrievalHit& h : a) add(h);
  for (const RetrievalHit& h : b) add(h);
  std::sort(merged.begin(), merged.end(), hit_order);
  return merged;
}

GlobalKnowledgeBlock unify_global_knowledge(const std::vector<RetrievalHit>& hits,
                                            const FunctionBase& base) {
  GlobalKnowledgeBlock block;
  for (const RetrievalHit& h : hits) {
    const FunctionRecord* r = base.find(h.fqn);
    if (r == nullptr) {
      throw ConsistencyError("retrieved function " + h.fqn +
                             " is not in the function base");
    }
    block.entries.push_back({r->fqn, r->signature, r->summary});
  }
  if (block.entries.empty()) {
    block.rendered_text = "None";
    return block;
  }
  for (const GlobalEntry& e : block.entries) {
    if (!block.rendered_text.empty()) block.rendered_text += '\n';
    block.rendered_text += "{FQN: " + e.fqn + ", Signature: " + e.signature +
                           ", Summary: " + e.summary + "}";
  }
  return block;
}

std::string generate_what_if_code(const Requirement& req, ChatProvider& chat,
                                  double temperature,
                                  const RetryPolicy& retry) {
  validate_requirement(req);
  std::string draft =
      complete_with_retry(chat, build_what_if_request(req, temperature), retry);
  if (draft.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw DegenerateOutputError("what-if generator returned nothing", draft);
  }
  return draft;
}

}  // namespace repoaware
