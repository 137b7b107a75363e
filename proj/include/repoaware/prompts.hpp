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

#ifndef REPOAWARE_PROMPTS_HPP_
#define REPOAWARE_PROMPTS_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "repoaware/model.hpp"
#include "repoaware/providers.hpp"

namespace repoaware {

// "Function description: ...\nFunction definition: ..."
std::string render_requirement(const Requirement& req);

struct RequirementText {
  std::string description;
  std::string definition;
};

// Inverse of render_requirement, applied to any text that embeds it.
bool parse_requirement_text(std::string_view text, RequirementText& out);

// Contents of the first ``` fenced block, or nullopt. An unterminated fence
// runs to the end of the text.
std::optional<std::string> extract_fenced(std::string_view text);

// Replaces each {name} placeholder; unknown placeholders are left as is.
std::string fill_template(
    std::string_view templ,
    std::initializer_list<std::pair<std::string_view, std::string_view>> values);

// Task description, five demonstrations, then the function source.
ChatRequest build_summary_request(const std::string& source,
                                  double temperature);

// Task description with three rules, three examples, then the requirement.
ChatRequest build_what_if_request(const Requirement& req, double temperature);

// A3 generation unit: system text (commands, rules, examples), the input
// template, and the repair instruction sent when extraction fails.
const std::string& a3_system_text();
const std::string& a3_input_template();
const std::string& a3_repair_instruction();

}  // namespace repoaware

#endif  // REPOAWARE_PROMPTS_HPP_
