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

#ifndef REPOAWARE_PROVIDERS_HPP_
#define REPOAWARE_PROVIDERS_HPP_

#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "repoaware/errors.hpp"
#include "repoaware/model.hpp"

namespace repoaware {

struct ChatMessage {
  std::string role;  // "system", "user" or "assistant"
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

// What a request is for. Used by mocks and the offline provider to pick an
// answer; never sent over the wire.
enum class ChatPurpose { kSummarize, kWhatIf, kGenerate, kRepair, kOther };

std::string_view purpose_name(ChatPurpose purpose);

struct ChatRequest {
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  ChatPurpose purpose = ChatPurpose::kOther;
};

// Stable key of a request: SHA-256 over the canonical JSON of its messages
// and temperature.
std::string request_hash(const ChatRequest& request);

// Text of the last user message, or "".
std::string_view last_user_message(const ChatRequest& request);

class ChatProvider {
 public:
  virtual ~ChatProvider() = default;
  // One attempt. Throws ProviderError on failure.
  virtual std::string complete(const ChatRequest& request) = 0;
  virtual std::string id() const = 0;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual Vector embed(std::string_view text) = 0;
  virtual std::size_t dim() const = 0;
  virtual std::string id() const = 0;
};

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds base_delay{500};
};

// Runs `attempt` until it succeeds, retrying ProviderError with exponential
// backoff. The final error carries the number of attempts made.
template <typename Fn>
auto with_retry(const RetryPolicy& policy, Fn&& attempt) -> decltype(attempt()) {
  for (int tries = 1;; ++tries) {
    try {
      return attempt();
    } catch (const ProviderError& e) {
      if (tries > policy.max_retries) throw ProviderError(e.what(), tries);
      std::this_thread::sleep_for(policy.base_delay * (1 << (tries - 1)));
    }
  }
}

std::string complete_with_retry(ChatProvider& chat, const ChatRequest& request,
                                const RetryPolicy& policy);

// Throws ContractError for empty text.
Vector embed_text(std::string_view text, EmbeddingProvider& provider,
                  const RetryPolicy& policy = {});

// dot(a, b) / (|a| |b|). Throws ContractError on a dimension mismatch or a
// zero vector.
double cosine_similarity(const Vector& a, const Vector& b);

struct HttpEndpoint {
  std::string base_url;
  std::string model;
  std::string api_key_env;  // name of the variable holding the credential
  double timeout_seconds = 60.0;
};

// OpenAI-style /chat/completions client.
class HttpChatProvider : public ChatProvider {
 public:
  explicit HttpChatProvider(HttpEndpoint endpoint);
  std::string complete(const ChatRequest& request) override;
  std::string id() const override;

 private:
  HttpEndpoint endpoint_;
};

// OpenAI-style /embeddings client.
class HttpEmbeddingProvider : public EmbeddingProvider {
 public:
  HttpEmbeddingProvider(HttpEndpoint endpoint, std::size_t dim);
  Vector embed(std::string_view text) override;
  std::size_t dim() const override { return dim_; }
  std::string id() const override;

 private:
  HttpEndpoint endpoint_;
  std::size_t dim_;
};

// Bag-of-tokens embedder: lowercased alphanumeric tokens hashed (FNV-1a) into
// `dim` buckets, then L2-normalized.
class OfflineHashEmbedder : public EmbeddingProvider {
 public:
  explicit OfflineHashEmbedder(std::size_t dim = 256);
  Vector embed(std::string_view text) override;
  std::size_t dim() const override { return dim_; }
  std::string id() const override;

 private:
  std::size_t dim_;
};

// Deterministic stand-in for a chat model. Answers from the request text
// alone: summaries from docstrings and names, drafts from the definition.
class OfflineChatProvider : public ChatProvider {
 public:
  std::string complete(const ChatRequest& request) override;
  std::string id() const override { return "offline"; }
};

// Replays JSONL transcripts. Each line is an object with "response" and one
// of: "request_hash" (exact request), or "contains" (substring of the last
// user message), optionally narrowed by "purpose". Lookup order: exact hash,
// then rules in file order, then the fallback provider if any.
class MockChatProvider : public ChatProvider {
 public:
  struct Entry {
    std::optional<std::string> request_hash;
    std::optional<std::string> contains;
    std::optional<std::string> purpose;
    std::string response;
  };

  explicit MockChatProvider(std::vector<Entry> entries,
                            std::shared_ptr<ChatProvider> fallback = nullptr);
  static std::vector<Entry> load_transcript(const std::filesystem::path& path);

  std::string complete(const ChatRequest& request) override;
  std::string id() const override { return "mock"; }
  std::size_t calls() const { return calls_.load(); }

 private:
  std::vector<Entry> entries_;
  std::shared_ptr<ChatProvider> fallback_;
  std::atomic<std::size_t> calls_{0};
};

}  // namespace repoaware

#endif  // REPOAWARE_PROVIDERS_HPP_
