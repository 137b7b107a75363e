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

#include "repoaware/semantic.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "json.hpp"
#include "repoaware/errors.hpp"
#include "repoaware/hashing.hpp"
#include "repoaware/persistence.hpp"
#include "repoaware/prompts.hpp"

namespace repoaware {

using Json = nlohmann::ordered_json;

std::optional<std::string> SummaryCache::get(const std::string& hash) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find(hash);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void SummaryCache::put(const std::string& hash, std::string summary) {
  std::unique_lock lock(mu_);
  entries_[hash] = std::move(summary);
}

std::size_t SummaryCache::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

void SummaryCache::load(const std::filesystem::path& path) {
  std::string content = read_file(path);
  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  std::unique_lock lock(mu_);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      Json j = Json::parse(line);
      entries_[j.at("hash").get<std::string>()] =
          j.at("summary").get<std::string>();
    } catch (const Json::exception& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
  }
}

void SummaryCache::save(const std::filesystem::path& path) const {
  std::string out;
  {
    std::shared_lock lock(mu_);
    for (const auto& [hash, summary] : entries_) {
      Json j;
      j["hash"] = hash;
      j["summary"] = summary;
      out += j.dump(-1, ' ', false, Json::error_handler_t::replace);
      out += '\n';
    }
  }
  write_file_atomic(path, out);
}

namespace {

std::string one_paragraph(std::string_view text) {
  std::size_t b = text.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = text.find_last_not_of(" \t\r\n");
  std::string out;
  bool space = false;
  for (char c : text.substr(b, e - b + 1)) {
    if (c == '\n' || c == '\r' || c == '\t' || c == ' ') {
      space = true;
    } else {
      if (space) out.push_back(' ');
      out.push_back(c);
      space = false;
    }
  }
  return out;
}

}  // namespace

std::string summarize_function(const RawFunction& raw, ChatProvider& chat,
                               SummaryCache& cache,
                               const SemanticOptions& options) {
  if (raw.source.empty()) {
    throw ContractError("cannot summarize " + raw.fqn + ": empty source");
  }
  std::string key = sha256_hex(raw.source);
  if (auto hit = cache.get(key)) return *hit;
  ChatRequest req = build_summary_request(raw.source, options.temperature);
  std::string summary =
      one_paragraph(complete_with_retry(chat, req, options.retry));
  if (summary.empty()) {
    throw DegenerateOutputError("empty summary for " + raw.fqn);
  }
  cache.put(key, summary);
  return summary;
}

FunctionBase build_function_base(const ParsedRepository& repo,
                                 ChatProvider& chat,
                                 EmbeddingProvider& embedder,
                                 SummaryCache& cache,
                                 const SemanticOptions& options) {
  std::vector<RawFunction> raws;
  for (const ParsedFile& f : repo.files) {
    for (RawFunction& r : extract_functions(f.file_path, f.module)) {
      raws.push_back(std::move(r));
    }
  }

  std::vector<std::optional<FunctionRecord>> results(raws.size());
  std::vector<std::exception_ptr> errors(raws.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= raws.size() || failed.load()) return;
      try {
        const RawFunction& raw = raws[i];
        std::string summary = summarize_function(raw, chat, cache, options);
        Vector sv = embed_text(summary, embedder, options.retry);
        Vector cv = embed_text(raw.source, embedder, options.retry);
        results[i].emplace(raw, std::move(summary), std::move(sv),
                           std::move(cv));
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true);
      }
    }
  };
  std::size_t workers =
      std::clamp<std::size_t>(options.max_in_flight, 1, std::max<std::size_t>(raws.size(), 1));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  for (std::size_t i = 0; i < raws.size(); ++i) {
    if (!errors[i]) continue;
    const std::string prefix = raws[i].fqn + ": ";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const ProviderError& e) {
      throw ProviderError(prefix + e.what(), e.attempts());
    } catch (const DegenerateOutputError& e) {
      throw DegenerateOutputError(prefix + e.what(), e.raw_output());
    } catch (const ContractError& e) {
      throw ContractError(prefix + e.what());
    }
  }

  std::vector<FunctionRecord> records;
  records.reserve(raws.size());
  for (auto& r : results) {
    // A slot stays empty only when another function failed first.
    if (!r) throw Error("function base build was interrupted");
    records.push_back(std::move(*r));
  }
  return FunctionBase(std::move(records), embedder.dim(), embedder.id());
}

FunctionBase build_function_base(const std::filesystem::path& root,
                                 ChatProvider& chat,
                                 EmbeddingProvider& embedder,
                                 SummaryCache& cache,
                                 const SemanticOptions& options) {
  return build_function_base(parse_repository(root), chat, embedder, cache,
                             options);
}

}  // namespace repoaware
