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

#ifndef REPOAWARE_CLI_HPP_
#define REPOAWARE_CLI_HPP_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "repoaware/extractor.hpp"
#include "repoaware/promptgen.hpp"
#include "repoaware/providers.hpp"

namespace repoaware {

struct Config {
  bool offline = false;
  HttpEndpoint chat{"", "gpt-3.5-turbo", "OPENAI_API_KEY", 60.0};
  HttpEndpoint embed{"", "text-embedding-ada-002", "OPENAI_API_KEY", 60.0};
  std::size_t embed_dim = 1536;
  std::size_t offline_embed_dim = 256;
  std::size_t k = 5;
  LocalKnowledgeConfig local;
  std::vector<std::string> excludes = default_excludes();
  std::size_t max_prompt_chars = kDefaultMaxPromptChars;
  std::size_t max_in_flight = 4;
  double temperature = 0.0;
  std::optional<std::string> mock_transcript;
  RetryPolicy retry;
};

// Sets one key. Throws ContractError for unknown keys, bad values and
// anything that looks like an inline credential.
void apply_setting(Config& config, const std::string& key,
                   const std::string& value);

// key=value lines; '#' starts a comment. Throws ParseError.
void apply_config_text(Config& config, const std::string& text,
                       const std::string& file_name);

// Every key may be overridden by REPOAWARE_<KEY>, with dots as underscores.
void apply_env_overrides(
    Config& config,
    const std::function<std::optional<std::string>(const std::string&)>& getenv);

std::vector<std::string> config_keys();

std::shared_ptr<ChatProvider> make_chat_provider(const Config& config);
std::shared_ptr<EmbeddingProvider> make_embedding_provider(
    const Config& config);

// Runs one command line (program name excluded). Results go to out,
// diagnostics to err. Returns the exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace repoaware

#endif  // REPOAWARE_CLI_HPP_
