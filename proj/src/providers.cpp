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

#include "repoaware/providers.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "repoaware/hashing.hpp"
#include "repoaware/http.hpp"
#include "repoaware/persistence.hpp"
#include "repoaware/prompts.hpp"
#include "repoaware/python/ast.hpp"

namespace repoaware {

using Json = nlohmann::json;

std::string_view purpose_name(ChatPurpose purpose) {
  switch (purpose) {
    case ChatPurpose::kSummarize: return "summarize";
    case ChatPurpose::kWhatIf: return "what_if";
    case ChatPurpose::kGenerate: return "generate";
    case ChatPurpose::kRepair: return "repair";
    case ChatPurpose::kOther: return "other";
  }
  return "other";
}

std::string request_hash(const ChatRequest& request) {
  Json messages = Json::array();
  for (const ChatMessage& m : request.messages) {
    messages.push_back({{"content", m.content}, {"role", m.role}});
  }
  Json j = {{"messages", messages}, {"temperature", request.temperature}};
  return sha256_hex(j.dump(-1, ' ', false, Json::error_handler_t::replace));
}

std::string_view last_user_message(const ChatRequest& request) {
  for (auto it = request.messages.rbegin(); it != request.messages.rend(); ++it) {
    if (it->role == "user") return it->content;
  }
  return {};
}

std::string complete_with_retry(ChatProvider& chat, const ChatRequest& request,
                                const RetryPolicy& policy) {
  return with_retry(policy, [&] { return chat.complete(request); });
}

Vector embed_text(std::string_view text, EmbeddingProvider& provider,
                  const RetryPolicy& policy) {
  if (text.empty()) throw ContractError("cannot embed empty text");
  Vector v = with_retry(policy, [&] { return provider.embed(text); });
  if (v.size() != provider.dim()) {
    throw ProviderError(provider.id() + " returned dimension " +
                        std::to_string(v.size()) + ", expected " +
                        std::to_string(provider.dim()));
  }
  return v;
}

double cosine_similarity(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw ContractError("cosine_similarity: dimensions " +
                        std::to_string(a.size()) + " and " +
                        std::to_string(b.size()) + " differ");
  }
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) throw ContractError("cosine_similarity: zero vector");
  double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

// ---- HTTP providers ---------------------------------------------------------

namespace {

std::vector<std::pair<std::string, std::string>> auth_headers(
    const HttpEndpoint& ep) {
  std::vector<std::pair<std::string, std::string>> headers;
  if (!ep.api_key_env.empty()) {
    const char* key = std::getenv(ep.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw ProviderError("credential variable " + ep.api_key_env +
                          " is not set");
    }
    headers.emplace_back("Authorization", std::string("Bearer ") + key);
  }
  return headers;
}

std::string join_url(const std::string& base, const char* path) {
  std::string url = base;
  while (!url.empty() && url.back() == '/') url.pop_back();
  return url + path;
}

Json post_or_throw(const HttpEndpoint& ep, const char* path, const Json& body) {
  std::string url = join_url(ep.base_url, path);
  HttpResult res =
      http_post_json(url, body.dump(), auth_headers(ep), ep.timeout_seconds);
  if (res.status < 200 || res.status >= 300) {
    throw ProviderError("POST " + url + " returned HTTP " +
                        std::to_string(res.status) + ": " +
                        res.body.substr(0, 200));
  }
  try {
    return Json::parse(res.body);
  } catch (const Json::parse_error& e) {
    throw ProviderError("POST " + url + " returned malformed JSON: " + e.what());
  }
}

}  // namespace

HttpChatProvider::HttpChatProvider(HttpEndpoint endpoint)
    : endpoint_(std::move(endpoint)) {}

std::string HttpChatProvider::complete(const ChatRequest& request) {
  Json messages = Json::array();
  for (const ChatMessage& m : request.messages) {
    messages.push_back({{"role", m.role}, {"content", m.content}});
  }
  Json body = {{"model", endpoint_.model},
               {"messages", messages},
               {"temperature", request.temperature}};
  Json res = post_or_throw(endpoint_, "/chat/completions", body);
  try {
    const Json& content = res.at("choices").at(0).at("message").at("content");
    return content.is_null() ? std::string() : content.get<std::string>();
  } catch (const Json::exception& e) {
    throw ProviderError("unexpected chat response shape: " +
                        std::string(e.what()));
  }
}

std::string HttpChatProvider::id() const { return "http:" + endpoint_.model; }

HttpEmbeddingProvider::HttpEmbeddingProvider(HttpEndpoint endpoint,
                                             std::size_t dim)
    : endpoint_(std::move(endpoint)), dim_(dim) {}

Vector HttpEmbeddingProvider::embed(std::string_view text) {
  Json body = {{"model", endpoint_.model}, {"input", std::string(text)}};
  Json res = post_or_throw(endpoint_, "/embeddings", body);
  try {
    return res.at("data").at(0).at("embedding").get<Vector>();
  } catch (const Json::exception& e) {
    throw ProviderError("unexpected embedding response shape: " +
                        std::string(e.what()));
  }
}

std::string HttpEmbeddingProvider::id() const {
  return "http:" + endpoint_.model;
}

// ---- offline providers ------------------------------------------------------

OfflineHashEmbedder::OfflineHashEmbedder(std::size_t dim) : dim_(dim) {
  if (dim_ == 0) throw ContractError("embedding dimension must be positive");
}

std::string OfflineHashEmbedder::id() const {
  return "offline-hash-" + std::to_string(dim_);
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool token_char(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

}  // namespace

Vector OfflineHashEmbedder::embed(std::string_view text) {
  if (text.empty()) throw ContractError("cannot embed empty text");
  Vector v(dim_, 0.0);
  std::string token;
  bool any = false;
  auto flush = [&] {
    if (token.empty()) return;
    v[fnv1a(token) % dim_] += 1.0;
    token.clear();
    any = true;
  };
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (token_char(c)) {
      token.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush();
    }
  }
  flush();
  if (!any) v[fnv1a(text) % dim_] = 1.0;
  double norm = 0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

namespace {

std::string collapse_spaces(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
    } else {
      if (space) out.push_back(' ');
      out.push_back(c);
      space = false;
    }
  }
  return out;
}

std::string first_sentence(std::string_view doc) {
  std::size_t para = doc.find("\n\n");
  std::string_view head = doc.substr(0, para);
  for (std::size_t i = 0; i + 1 <= head.size(); ++i) {
    if (head[i] == '.' && (i + 1 == head.size() ||
                           std::isspace(static_cast<unsigned char>(head[i + 1])))) {
      head = head.substr(0, i + 1);
      break;
    }
  }
  std::string s = collapse_spaces(head);
  if (!s.empty() && s.back() != '.') s.push_back('.');
  return s;
}

std::vector<std::string> name_words(std::string_view name) {
  std::vector<std::string> words;
  std::string cur;
  for (std::size_t i = 0; i < name.size(); ++i) {
    char c = name[i];
    if (c == '_') {
      if (!cur.empty()) words.push_back(cur);
      cur.clear();
      continue;
    }
    if (std::isupper(static_cast<unsigned char>(c)) && !cur.empty() &&
        std::islower(static_cast<unsigned char>(cur.back()))) {
      words.push_back(cur);
      cur.clear();
    }
    cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (!cur.empty()) words.push_back(cur);
  return words;
}

struct DefHeader {
  std::string name;
  std::vector<std::string> params;
  std::size_t body_start = std::string::npos;
};

// Finds the first def header in `code` by scanning text, so that sources with
// unusual indentation still yield an answer.
DefHeader scan_def(std::string_view code) {
  DefHeader h;
  std::size_t pos = 0;
  while (pos < code.size()) {
    std::size_t eol = code.find('\n', pos);
    if (eol == std::string_view::npos) eol = code.size();
    std::string_view line = code.substr(pos, eol - pos);
    std::size_t first = line.find_first_not_of(" \t");
    if (first != std::string_view::npos) {
      std::string_view rest = line.substr(first);
      if (rest.substr(0, 6) == "async ") rest = rest.substr(6);
      if (rest.substr(0, 4) == "def ") {
        std::size_t def_at = pos + (rest.data() - line.data()) + 4;
        std::size_t open = code.find('(', def_at);
        if (open == std::string_view::npos) break;
        h.name = collapse_spaces(code.substr(def_at, open - def_at));
        int depth = 0;
        std::string param;
        std::size_t i = open;
        for (; i < code.size(); ++i) {
          char c = code[i];
          if (c == '(' || c == '[' || c == '{') {
            if (depth++ == 0) continue;
          } else if (c == ')' || c == ']' || c == '}') {
            if (--depth == 0) break;
          }
          if (depth == 1 && c == ',') {
            h.params.push_back(param);
            param.clear();
          } else if (depth >= 1) {
            param.push_back(c);
          }
        }
        h.params.push_back(param);
        for (std::string& p : h.params) {
          p = collapse_spaces(p.substr(0, p.find_first_of(":=")));
        }
        std::erase_if(h.params, [](const std::string& p) {
          return p.empty() || p == "self" || p == "cls" || p == "/" || p == "*";
        });
        std::size_t nl = code.find('\n', i);
        h.body_start = nl == std::string_view::npos ? code.size() : nl + 1;
        return h;
      }
    }
    pos = eol + 1;
  }
  return h;
}

std::optional<std::string> scan_docstring(std::string_view code,
                                          std::size_t from) {
  std::size_t p = code.find_first_not_of(" \t\n", from);
  if (p == std::string_view::npos) return std::nullopt;
  if (p < code.size() && (code[p] == 'r' || code[p] == 'R')) ++p;
  for (std::string_view q : {"\"\"\"", "'''", "\"", "'"}) {
    if (code.substr(p, q.size()) == q) {
      std::size_t end = code.find(q, p + q.size());
      if (end == std::string_view::npos) return std::nullopt;
      return py::clean_docstring(code.substr(p + q.size(), end - p - q.size()));
    }
  }
  return std::nullopt;
}

std::string offline_summary(std::string_view code) {
  DefHeader h = scan_def(code);
  if (h.name.empty()) {
    return "Code fragment of " + std::to_string(code.size()) + " characters.";
  }
  if (auto doc = scan_docstring(code, h.body_start)) {
    std::string s = first_sentence(*doc);
    if (!s.empty() && s != ".") return s;
  }
  std::string params;
  for (const std::string& p : h.params) {
    if (!params.empty()) params += ", ";
    params += p;
  }
  if (h.name == "__init__") {
    return params.empty() ? "Initialize the object."
                          : "Initialize the object with " + params + ".";
  }
  std::string words;
  for (const std::string& w : name_words(h.name)) {
    if (!words.empty()) words += ' ';
    words += w;
  }
  if (words.empty()) words = h.name;
  words[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(words[0])));
  return params.empty() ? words + "." : words + " given " + params + ".";
}

std::string offline_draft(const ChatRequest& request) {
  RequirementText req;
  for (auto it = request.messages.rbegin(); it != request.messages.rend(); ++it) {
    if (it->role == "user" && parse_requirement_text(it->content, req)) break;
  }
  if (req.definition.empty()) return "";
  std::string def = req.definition;
  while (!def.empty() && std::isspace(static_cast<unsigned char>(def.back()))) {
    def.pop_back();
  }
  if (def.back() != ':') def += ':';
  std::string doc = collapse_spaces(req.description);
  std::string escaped;
  for (char c : doc) {
    if (c == '\\' || c == '"') escaped.push_back('\\');
    escaped.push_back(c);
  }
  return "```python\n" + def + "\n    \"\"\"" + escaped +
         "\"\"\"\n    raise NotImplementedError\n```\n";
}

}  // namespace

std::string OfflineChatProvider::complete(const ChatRequest& request) {
  switch (request.purpose) {
    case ChatPurpose::kSummarize: {
      std::string_view user = last_user_message(request);
      std::string code = extract_fenced(user).value_or(std::string(user));
      return offline_summary(code);
    }
    case ChatPurpose::kWhatIf:
    case ChatPurpose::kGenerate:
    case ChatPurpose::kRepair:
      return offline_draft(request);
    case ChatPurpose::kOther:
      break;
  }
  return "";
}

// ---- mock provider ----------------------------------------------------------

MockChatProvider::MockChatProvider(std::vector<Entry> entries,
                                   std::shared_ptr<ChatProvider> fallback)
    : entries_(std::move(entries)), fallback_(std::move(fallback)) {}

std::vector<MockChatProvider::Entry> MockChatProvider::load_transcript(
    const std::filesystem::path& path) {
  std::string content = read_file(path);
  std::vector<Entry> entries;
  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
    auto text = [&](const char* key) -> std::optional<std::string> {
      auto it = j.find(key);
      if (it == j.end() || it->is_null()) return std::nullopt;
      if (!it->is_string()) {
        throw ParseError(path.string(), line_no,
                         std::string("'") + key + "' must be a string");
      }
      return it->get<std::string>();
    };
    Entry e;
    e.request_hash = text("request_hash");
    e.contains = text("contains");
    e.purpose = text("purpose");
    std::optional<std::string> response = text("response");
    if (!response) {
      throw ParseError(path.string(), line_no, "missing 'response'");
    }
    e.response = std::move(*response);
    entries.push_back(std::move(e));
  }
  return entries;
}

std::string MockChatProvider::complete(const ChatRequest& request) {
  ++calls_;
  std::string hash = request_hash(request);
  for (const Entry& e : entries_) {
    if (e.request_hash && *e.request_hash == hash) return e.response;
  }
  std::string_view user = last_user_message(request);
  std::string_view purpose = purpose_name(request.purpose);
  for (const Entry& e : entries_) {
    if (e.request_hash) continue;
    if (e.purpose && *e.purpose != purpose) continue;
    if (e.contains && user.find(*e.contains) == std::string_view::npos) continue;
    return e.response;
  }
  if (fallback_) return fallback_->complete(request);
  throw ProviderError("mock transcript has no entry for " +
                      std::string(purpose) + " request " + hash);
}

}  // namespace repoaware
